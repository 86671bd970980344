"""Domain errors. Every error carries a stable machine-readable code used
verbatim by the HTTP layer and the CLI exit paths."""


class ReqGridError(Exception):
    code = "internal_error"

    def __init__(self, message: str = "", details: dict | None = None):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details = details or {}


class NoRatings(ReqGridError):
    code = "no_ratings"


class UnknownStakeholder(ReqGridError):
    code = "unknown_stakeholder"


class UnknownRequirement(ReqGridError):
    code = "unknown_requirement"


class SelfSimilarity(ReqGridError):
    code = "self_similarity"


class AlreadyRated(ReqGridError):
    code = "already_rated"


class TargetHasNoRatings(ReqGridError):
    code = "target_has_no_ratings"


class OutOfScale(ReqGridError):
    code = "out_of_scale"


class CatalogTooSmall(ReqGridError):
    code = "catalog_too_small"


class WrongState(ReqGridError):
    code = "wrong_state"


class WrongItems(ReqGridError):
    code = "wrong_items"


class UnknownRecommendedItem(ReqGridError):
    code = "unknown_recommended_item"


class StarsOutOfRange(ReqGridError):
    code = "stars_out_of_range"


class ParseError(ReqGridError):
    code = "parse_error"

    def __init__(self, message: str = "", line: int | None = None, details: dict | None = None):
        details = dict(details or {})
        if line is not None:
            details["line"] = line
        super().__init__(message, details)
        self.line = line


class DuplicateId(ReqGridError):
    code = "duplicate_id"


class UnknownReference(ReqGridError):
    code = "unknown_reference"


class SchemaVersionMismatch(ReqGridError):
    code = "schema_version_mismatch"


class SessionNotFound(ReqGridError):
    code = "session_not_found"

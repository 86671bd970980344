"""Shared domain types: requirements, stakeholders, the bipolar grid
instrument, and the sparse stakeholder-by-requirement rating matrix."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NoRatings, OutOfScale, UnknownRequirement, UnknownStakeholder


class EducationLevel(str, Enum):
    PHD = "PhD"
    MASTER = "Master"
    BACHELOR = "Bachelor"
    UNSPECIFIED = "Unspecified"

    @classmethod
    def parse(cls, text: str) -> "EducationLevel":
        normalized = text.strip().replace(".", "").replace(" ", "").lower()
        for level in cls:
            if level.value.lower() == normalized:
                return level
        if normalized in ("phd", "ph"):
            return cls.PHD
        raise ValueError(f"unknown education level: {text!r}")


@dataclass(frozen=True)
class ConstructPair:
    """Bipolar construct pair: a score near the scale minimum expresses the
    left pole, near the maximum the right pole."""

    left_pole: str
    right_pole: str

    def __post_init__(self):
        if not self.left_pole or not self.right_pole:
            raise ValueError("construct poles must be non-empty")
        if self.left_pole == self.right_pole:
            raise ValueError("construct poles must differ")


@dataclass(frozen=True)
class Requirement:
    id: str
    label: str
    construct_pair: ConstructPair
    description: str = ""

    def __post_init__(self):
        if not self.label:
            raise ValueError("requirement label must be non-empty")


@dataclass(frozen=True)
class Stakeholder:
    id: str
    education_level: EducationLevel = EducationLevel.UNSPECIFIED


@dataclass(frozen=True)
class RatingScale:
    min: int = 1
    max: int = 5

    def __post_init__(self):
        if self.min >= self.max:
            raise ValueError("scale min must be below max")

    def contains(self, score: int) -> bool:
        return self.min <= score <= self.max

    def clamp(self, value: float) -> float:
        return min(float(self.max), max(float(self.min), float(value)))


class RatingMatrix:
    """Sparse (stakeholder, requirement) -> integer score store.

    Re-rating a pair overwrites; entries must reference registered ids.
    Safe for concurrent readers; writers are serialized by the owner.
    """

    def __init__(self, scale: RatingScale = RatingScale()):
        self.scale = scale
        self._stakeholders: dict[str, Stakeholder] = {}
        self._requirements: dict[str, Requirement] = {}
        # per-stakeholder rows for fast mean/corated lookups
        self._rows: dict[str, dict[str, int]] = {}

    # -- registration ------------------------------------------------------

    def register_stakeholder(self, stakeholder: Stakeholder) -> None:
        self._stakeholders[stakeholder.id] = stakeholder
        self._rows.setdefault(stakeholder.id, {})

    def register_requirement(self, requirement: Requirement) -> None:
        self._requirements[requirement.id] = requirement

    def has_stakeholder(self, stakeholder_id: str) -> bool:
        return stakeholder_id in self._stakeholders

    def has_requirement(self, requirement_id: str) -> bool:
        return requirement_id in self._requirements

    def stakeholder(self, stakeholder_id: str) -> Stakeholder:
        try:
            return self._stakeholders[stakeholder_id]
        except KeyError:
            raise UnknownStakeholder(stakeholder_id) from None

    @property
    def stakeholder_ids(self) -> list[str]:
        return sorted(self._stakeholders)

    @property
    def requirement_ids(self) -> list[str]:
        return sorted(self._requirements)

    # -- ratings -----------------------------------------------------------

    def rate(self, stakeholder_id: str, requirement_id: str, score: int) -> None:
        if stakeholder_id not in self._stakeholders:
            raise UnknownStakeholder(stakeholder_id)
        if requirement_id not in self._requirements:
            raise UnknownRequirement(requirement_id)
        if not isinstance(score, int) or not self.scale.contains(score):
            raise OutOfScale(f"score {score} outside [{self.scale.min}, {self.scale.max}]")
        self._rows[stakeholder_id][requirement_id] = score

    def get(self, stakeholder_id: str, requirement_id: str) -> int | None:
        return self._rows.get(stakeholder_id, {}).get(requirement_id)

    def row(self, stakeholder_id: str) -> dict[str, int]:
        return dict(self._rows.get(stakeholder_id, {}))

    def rated_items(self, stakeholder_id: str) -> set[str]:
        return set(self._rows.get(stakeholder_id, {}))

    def entry_count(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def entries(self) -> list[tuple[str, str, int]]:
        out = []
        for sid in sorted(self._rows):
            for rid in sorted(self._rows[sid]):
                out.append((sid, rid, self._rows[sid][rid]))
        return out

    def rater_count(self, requirement_id: str) -> int:
        return sum(1 for r in self._rows.values() if requirement_id in r)

    def to_arrays(self) -> tuple[list[str], list[str], np.ndarray, np.ndarray]:
        """Dense view for the batch kernels: (stakeholder ids, requirement
        ids, ratings array, rated mask), ids in sorted order."""
        sids = self.stakeholder_ids
        rids = self.requirement_ids
        ratings = np.zeros((len(sids), len(rids)), dtype=np.float64)
        mask = np.zeros((len(sids), len(rids)), dtype=np.bool_)
        rid_index = {rid: j for j, rid in enumerate(rids)}
        for i, sid in enumerate(sids):
            for rid, score in self._rows[sid].items():
                j = rid_index[rid]
                ratings[i, j] = score
                mask[i, j] = True
        return sids, rids, ratings, mask


def mean_rating(matrix: RatingMatrix, stakeholder_id: str) -> float:
    """Arithmetic mean of every score the stakeholder has given."""
    row = matrix._rows.get(stakeholder_id)
    if not row:
        raise NoRatings(stakeholder_id)
    return sum(row.values()) / len(row)


def corated_items(matrix: RatingMatrix, a: str, b: str) -> set[str]:
    """Requirements rated by both stakeholders; empty for unknown ids."""
    return matrix.rated_items(a) & matrix.rated_items(b)


@dataclass
class RepertoryGrid:
    """The elicitation instrument: requirement rows in stable presentation
    order plus each stakeholder's partial response row."""

    requirements: list[Requirement]
    scale: RatingScale = field(default_factory=RatingScale)
    responses: dict[str, dict[str, int]] = field(default_factory=dict)

    def record(self, stakeholder_id: str, requirement_id: str, score: int) -> None:
        if requirement_id not in {r.id for r in self.requirements}:
            raise UnknownRequirement(requirement_id)
        if not self.scale.contains(score):
            raise OutOfScale(str(score))
        self.responses.setdefault(stakeholder_id, {})[requirement_id] = score

    def row_order(self) -> list[str]:
        return [r.id for r in self.requirements]

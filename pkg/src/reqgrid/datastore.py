"""Persistence and ingestion: CSV catalogs and rating files, a JSON state
store with an explicit schema version, and the seeded catalog of the
twelve stock constructs. Also hosts the deterministic synthetic fixture
generator used throughout testing (no real study data is published)."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .domain import (
    ConstructPair,
    EducationLevel,
    RatingMatrix,
    RatingScale,
    Requirement,
    Stakeholder,
)
from .engine import Prediction, Recommendation
from .errors import (
    DuplicateId,
    OutOfScale,
    ParseError,
    SchemaVersionMismatch,
    UnknownReference,
)
from .session import FeedbackRecord, Session, SessionState

SCHEMA_VERSION = 1

CATALOG_COLUMNS = ["id", "label", "left_pole", "right_pole", "description"]
RATINGS_COLUMNS = ["stakeholder_id", "education_level", "requirement_id", "score"]


@dataclass
class Dataset:
    catalog: list[Requirement] = field(default_factory=list)
    stakeholders: list[Stakeholder] = field(default_factory=list)
    matrix: RatingMatrix = field(default_factory=RatingMatrix)
    sessions: list[Session] = field(default_factory=list)
    feedback: list[FeedbackRecord] = field(default_factory=list)

    def find_session(self, session_id: str) -> Session | None:
        for s in self.sessions:
            if s.id == session_id:
                return s
        return None

    def all_feedback(self) -> list[FeedbackRecord]:
        collected = list(self.feedback)
        for s in self.sessions:
            collected.extend(s.feedback)
        return collected


def _open_source(source) -> io.TextIOBase:
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8", newline="")
    return source


def load_catalog(source) -> list[Requirement]:
    """Parse a catalog CSV (header id,label,left_pole,right_pole,description;
    description optional). Requirements come back in file order."""
    fh = _open_source(source)
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return []
        if [h.strip() for h in header[:4]] != CATALOG_COLUMNS[:4]:
            raise ParseError(f"bad catalog header: {header}", line=1)
        requirements: list[Requirement] = []
        seen: set[str] = set()
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < 4:
                raise ParseError(f"expected at least 4 columns, got {len(row)}", line=lineno)
            rid, label, left, right = (c.strip() for c in row[:4])
            description = row[4].strip() if len(row) > 4 else ""
            if rid in seen:
                raise DuplicateId(rid, details={"line": lineno})
            seen.add(rid)
            try:
                requirements.append(
                    Requirement(
                        id=rid,
                        label=label,
                        construct_pair=ConstructPair(left, right),
                        description=description,
                    )
                )
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from exc
    return requirements


def seed_catalog() -> list[Requirement]:
    """The bundled twelve-requirement university-enrolment catalog."""
    text = resources.files("reqgrid.data").joinpath("seed_catalog.csv").read_text("utf-8")
    return load_catalog(io.StringIO(text))


@dataclass
class RatingsLoad:
    matrix: RatingMatrix
    stakeholders: list[Stakeholder]
    overwrites: int  # duplicate rows that overwrote an earlier score


def load_ratings(
    source,
    catalog: list[Requirement],
    stakeholders: list[Stakeholder] | None = None,
    scale: RatingScale = RatingScale(),
) -> RatingsLoad:
    """Parse a ratings CSV (header stakeholder_id,education_level,
    requirement_id,score). Unknown requirement ids are rejected; stakeholders
    are taken from the file unless a fixed roster is supplied. Later
    duplicate rows overwrite earlier ones; the overwrite count is reported."""
    matrix = RatingMatrix(scale)
    known_reqs = {r.id for r in catalog}
    for req in catalog:
        matrix.register_requirement(req)
    roster = {s.id: s for s in stakeholders} if stakeholders is not None else None
    if roster:
        for s in roster.values():
            matrix.register_stakeholder(s)
    loaded: dict[str, Stakeholder] = dict(roster or {})
    overwrites = 0

    fh = _open_source(source)
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty ratings file", line=1)
        if [h.strip() for h in header] != RATINGS_COLUMNS:
            raise ParseError(f"bad ratings header: {header}", line=1)
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise ParseError(f"expected 4 columns, got {len(row)}", line=lineno)
            sid, level_text, rid, score_text = (c.strip() for c in row)
            if rid not in known_reqs:
                raise UnknownReference(f"requirement {rid}", details={"line": lineno})
            try:
                level = EducationLevel.parse(level_text)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            try:
                score = int(score_text)
            except ValueError:
                raise ParseError(f"bad score {score_text!r}", line=lineno)
            if not scale.contains(score):
                raise OutOfScale(f"score {score} at line {lineno}", details={"line": lineno})
            if roster is not None and sid not in roster:
                raise UnknownReference(f"stakeholder {sid}", details={"line": lineno})
            if sid not in loaded:
                loaded[sid] = Stakeholder(sid, level)
                matrix.register_stakeholder(loaded[sid])
            if matrix.get(sid, rid) is not None:
                overwrites += 1
            matrix.rate(sid, rid, score)
    order = sorted(loaded)
    return RatingsLoad(matrix=matrix, stakeholders=[loaded[s] for s in order], overwrites=overwrites)


# -- state store -----------------------------------------------------------


def _requirement_to_dict(r: Requirement) -> dict:
    return {
        "id": r.id,
        "label": r.label,
        "left_pole": r.construct_pair.left_pole,
        "right_pole": r.construct_pair.right_pole,
        "description": r.description,
    }


def _requirement_from_dict(d: dict) -> Requirement:
    return Requirement(
        id=d["id"],
        label=d["label"],
        construct_pair=ConstructPair(d["left_pole"], d["right_pole"]),
        description=d.get("description", ""),
    )


def _recommendation_to_dict(rec: Recommendation) -> dict:
    return {
        "target": rec.target,
        "n": rec.n_seeds,
        "m": rec.m_neighbors,
        "k": rec.k_recommendations,
        "items": [
            {
                "requirement": p.requirement,
                "raw_value": p.raw_value,
                "clamped_value": p.clamped_value,
                "neighbor_support": p.neighbor_support,
            }
            for p in rec.items
        ],
    }


def _recommendation_from_dict(d: dict) -> Recommendation:
    return Recommendation(
        target=d["target"],
        n_seeds=d["n"],
        m_neighbors=d["m"],
        k_recommendations=d["k"],
        items=tuple(
            Prediction(
                requirement=p["requirement"],
                raw_value=p["raw_value"],
                clamped_value=p["clamped_value"],
                neighbor_support=p["neighbor_support"],
            )
            for p in d["items"]
        ),
    )


def _session_to_dict(s: Session) -> dict:
    return {
        "id": s.id,
        "stakeholder": {"id": s.stakeholder.id, "education_level": s.stakeholder.education_level.value},
        "state": s.state.name,
        "presented_seeds": list(s.presented_seeds),
        "recommendation": _recommendation_to_dict(s.recommendation) if s.recommendation else None,
        "feedback": [_feedback_to_dict(f) for f in s.feedback],
        "created_at": s.created_at,
        "updated_at": s.updated_at,
    }


def _session_from_dict(d: dict) -> Session:
    return Session(
        id=d["id"],
        stakeholder=Stakeholder(d["stakeholder"]["id"], EducationLevel(d["stakeholder"]["education_level"])),
        state=SessionState[d["state"]],
        presented_seeds=list(d["presented_seeds"]),
        recommendation=_recommendation_from_dict(d["recommendation"]) if d.get("recommendation") else None,
        feedback=[_feedback_from_dict(f) for f in d.get("feedback", [])],
        created_at=d.get("created_at", 0.0),
        updated_at=d.get("updated_at", 0.0),
    )


def _feedback_to_dict(f: FeedbackRecord) -> dict:
    return {
        "session_id": f.session_id,
        "requirement_id": f.requirement_id,
        "stars": f.stars,
        "education_level": f.education_level,
    }


def _feedback_from_dict(d: dict) -> FeedbackRecord:
    return FeedbackRecord(
        session_id=d["session_id"],
        requirement_id=d["requirement_id"],
        stars=d["stars"],
        education_level=d["education_level"],
    )


def dataset_to_dict(dataset: Dataset) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "scale": {"min": dataset.matrix.scale.min, "max": dataset.matrix.scale.max},
        "catalog": [_requirement_to_dict(r) for r in dataset.catalog],
        "stakeholders": [
            {"id": s.id, "education_level": s.education_level.value} for s in dataset.stakeholders
        ],
        "ratings": [
            {"stakeholder_id": sid, "requirement_id": rid, "score": score}
            for sid, rid, score in dataset.matrix.entries()
        ],
        "sessions": [_session_to_dict(s) for s in dataset.sessions],
        "feedback": [_feedback_to_dict(f) for f in dataset.feedback],
    }


def dataset_from_dict(data: dict) -> Dataset:
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(f"expected schema_version {SCHEMA_VERSION}, got {version}")
    scale = RatingScale(data["scale"]["min"], data["scale"]["max"])
    catalog = [_requirement_from_dict(d) for d in data["catalog"]]
    stakeholders = [
        Stakeholder(d["id"], EducationLevel(d["education_level"])) for d in data["stakeholders"]
    ]
    matrix = RatingMatrix(scale)
    for r in catalog:
        matrix.register_requirement(r)
    for s in stakeholders:
        matrix.register_stakeholder(s)
    for entry in data["ratings"]:
        matrix.rate(entry["stakeholder_id"], entry["requirement_id"], entry["score"])
    return Dataset(
        catalog=catalog,
        stakeholders=stakeholders,
        matrix=matrix,
        sessions=[_session_from_dict(d) for d in data["sessions"]],
        feedback=[_feedback_from_dict(d) for d in data["feedback"]],
    )


def save_state(dataset: Dataset, path: str | Path) -> None:
    """Atomic write: serialize to a sibling temp file, then rename."""
    path = Path(path)
    payload = json.dumps(dataset_to_dict(dataset), indent=2)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(payload, encoding="utf-8")
    os.replace(tmp, path)


def load_state(path: str | Path) -> Dataset:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"corrupt state store: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("state store root must be an object")
    return dataset_from_dict(data)


# -- synthetic fixture -----------------------------------------------------


def synthetic_dataset(
    seed: int = 42,
    n_stakeholders: int = 50,
    catalog: list[Requirement] | None = None,
    density: float = 1.0,
    scale: RatingScale = RatingScale(),
) -> Dataset:
    """Deterministic random fixture (the source study published no raw
    ratings). Same seed, same dataset."""
    rng = np.random.default_rng(seed)
    catalog = catalog if catalog is not None else seed_catalog()
    levels = [EducationLevel.PHD, EducationLevel.MASTER, EducationLevel.BACHELOR]
    width = len(str(max(1, n_stakeholders)))
    stakeholders = [
        Stakeholder(f"u{idx:0{width}d}", levels[int(rng.integers(len(levels)))])
        for idx in range(1, n_stakeholders + 1)
    ]
    matrix = RatingMatrix(scale)
    for r in catalog:
        matrix.register_requirement(r)
    for s in stakeholders:
        matrix.register_stakeholder(s)
    for s in stakeholders:
        for r in catalog:
            if density >= 1.0 or rng.random() < density:
                matrix.rate(s.id, r.id, int(rng.integers(scale.min, scale.max + 1)))
    return Dataset(catalog=catalog, stakeholders=stakeholders, matrix=matrix)

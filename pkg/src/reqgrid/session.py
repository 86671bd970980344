"""Per-stakeholder elicitation sessions: seed presentation, seed rating,
recommendation delivery, and star feedback.

States only move forward; every operation validates fully before mutating
anything, so a rejected call leaves both the session and the matrix
untouched.
"""

from __future__ import annotations

import time
import uuid
from dataclasses import dataclass, field
from enum import IntEnum

from .domain import RatingMatrix, RatingScale, Requirement, Stakeholder
from .engine import STANDARD, PREDICTION_FORMS, Recommendation, recommend
from .errors import (
    CatalogTooSmall,
    OutOfScale,
    StarsOutOfRange,
    UnknownRecommendedItem,
    WrongItems,
    WrongState,
)


class SessionState(IntEnum):
    SEEDS_PRESENTED = 1
    SEEDS_RATED = 2
    RECOMMENDED = 3
    FEEDBACK_COLLECTED = 4


@dataclass(frozen=True)
class SessionConfig:
    n_seeds: int = 3
    m_neighbors: int = 5
    k_recommendations: int = 5
    scale: RatingScale = RatingScale()
    prediction_form: str = STANDARD

    def __post_init__(self):
        if self.n_seeds < 1 or self.m_neighbors < 1 or self.k_recommendations < 1:
            raise ValueError("n, m, k must all be >= 1")
        if self.prediction_form not in PREDICTION_FORMS:
            raise ValueError(f"unknown prediction form: {self.prediction_form}")


@dataclass(frozen=True)
class FeedbackRecord:
    session_id: str
    requirement_id: str
    stars: int  # 0 = "no idea", 1..5 = ascending satisfaction
    education_level: str


@dataclass
class Session:
    id: str
    stakeholder: Stakeholder
    state: SessionState
    presented_seeds: list[str]
    recommendation: Recommendation | None = None
    feedback: list[FeedbackRecord] = field(default_factory=list)
    created_at: float = 0.0
    updated_at: float = 0.0


def select_seeds(catalog: list[Requirement], matrix: RatingMatrix, n: int) -> list[str]:
    """The n most-rated requirements; ties by ascending id. An empty matrix
    yields the first n in catalog order."""
    if len(catalog) < n:
        raise CatalogTooSmall(f"catalog has {len(catalog)} < {n} requirements")
    if matrix.entry_count() == 0:
        return [r.id for r in catalog[:n]]
    by_popularity = sorted(catalog, key=lambda r: (-matrix.rater_count(r.id), r.id))
    return [r.id for r in by_popularity[:n]]


def start_session(
    stakeholder: Stakeholder,
    config: SessionConfig,
    catalog: list[Requirement],
    matrix: RatingMatrix,
    now=time.time,
) -> Session:
    seeds = select_seeds(catalog, matrix, config.n_seeds)
    ts = now()
    return Session(
        id=uuid.uuid4().hex,
        stakeholder=stakeholder,
        state=SessionState.SEEDS_PRESENTED,
        presented_seeds=seeds,
        created_at=ts,
        updated_at=ts,
    )


def submit_seed_ratings(
    session: Session,
    ratings: list[tuple[str, int]],
    matrix: RatingMatrix,
    now=time.time,
) -> Session:
    """Write the seed ratings into the matrix under the session's
    stakeholder. The rated set must equal the presented set exactly."""
    if session.state != SessionState.SEEDS_PRESENTED:
        raise WrongState(f"expected SeedsPresented, session is {session.state.name}")
    rated_ids = [rid for rid, _ in ratings]
    if sorted(rated_ids) != sorted(session.presented_seeds) or len(set(rated_ids)) != len(rated_ids):
        raise WrongItems("ratings must cover exactly the presented seeds")
    scale = matrix.scale
    for rid, score in ratings:
        if not isinstance(score, int) or not scale.contains(score):
            raise OutOfScale(f"score {score} for {rid}")
    if not matrix.has_stakeholder(session.stakeholder.id):
        matrix.register_stakeholder(session.stakeholder)
    for rid, score in ratings:
        matrix.rate(session.stakeholder.id, rid, score)
    session.state = SessionState.SEEDS_RATED
    session.updated_at = now()
    return session


def get_recommendations(
    session: Session,
    config: SessionConfig,
    matrix: RatingMatrix,
    now=time.time,
) -> Session:
    if session.state != SessionState.SEEDS_RATED:
        raise WrongState(f"expected SeedsRated, session is {session.state.name}")
    session.recommendation = recommend(
        matrix,
        session.stakeholder.id,
        n_seeds=config.n_seeds,
        m_neighbors=config.m_neighbors,
        k_recommendations=config.k_recommendations,
        form=config.prediction_form,
    )
    session.state = SessionState.RECOMMENDED
    session.updated_at = now()
    return session


def submit_feedback(
    session: Session,
    feedback: list[tuple[str, int]],
    now=time.time,
) -> Session:
    """Record star feedback for recommended items. Partial feedback is
    accepted; 0 stars encodes "no idea"."""
    if session.state != SessionState.RECOMMENDED:
        raise WrongState(f"expected Recommended, session is {session.state.name}")
    assert session.recommendation is not None
    recommended = {p.requirement for p in session.recommendation.items}
    for rid, stars in feedback:
        if rid not in recommended:
            raise UnknownRecommendedItem(rid)
        if not isinstance(stars, int) or not 0 <= stars <= 5:
            raise StarsOutOfRange(f"stars {stars} for {rid}")
    session.feedback = [
        FeedbackRecord(
            session_id=session.id,
            requirement_id=rid,
            stars=stars,
            education_level=session.stakeholder.education_level.value,
        )
        for rid, stars in feedback
    ]
    session.state = SessionState.FEEDBACK_COLLECTED
    session.updated_at = now()
    return session

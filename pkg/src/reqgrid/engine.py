"""User-based collaborative filtering: Pearson similarity, top-M
neighborhood selection, mean-offset (Resnick-style) rating prediction, and
top-K recommendation ranking.

All operations are pure functions of a matrix snapshot; tie-breaks are by
ascending id everywhere so results are byte-for-byte reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels
from .domain import RatingMatrix, corated_items, mean_rating
from .errors import (
    AlreadyRated,
    SelfSimilarity,
    TargetHasNoRatings,
    UnknownRequirement,
    UnknownStakeholder,
)

STANDARD = "standard"
PAPER_LITERAL = "paper-literal"
PREDICTION_FORMS = (STANDARD, PAPER_LITERAL)


@dataclass(frozen=True)
class SimilarityScore:
    neighbor: str
    value: float  # in [-1, 1]; 0 when degenerate
    corated_count: int


@dataclass(frozen=True)
class NeighborSet:
    target: str
    neighbors: tuple[SimilarityScore, ...]

    def __len__(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True)
class Prediction:
    requirement: str
    raw_value: float
    clamped_value: float
    neighbor_support: int  # 0 means mean-of-target fallback


@dataclass(frozen=True)
class Recommendation:
    target: str
    items: tuple[Prediction, ...]
    n_seeds: int
    m_neighbors: int
    k_recommendations: int


def pearson_similarity(matrix: RatingMatrix, a: str, b: str) -> SimilarityScore:
    """Pearson correlation over the co-rated set, with each stakeholder's
    mean taken over their full rated set. Degenerate pairs score 0."""
    if not matrix.has_stakeholder(a):
        raise UnknownStakeholder(a)
    if not matrix.has_stakeholder(b):
        raise UnknownStakeholder(b)
    if a == b:
        raise SelfSimilarity(a)
    value, count = _pcc_value(matrix, a, b)
    return SimilarityScore(neighbor=b, value=value, corated_count=count)


def _pcc_value(matrix: RatingMatrix, a: str, b: str) -> tuple[float, int]:
    common = sorted(corated_items(matrix, a, b))
    if len(common) < 2:
        return 0.0, len(common)
    mean_a = mean_rating(matrix, a)
    mean_b = mean_rating(matrix, b)
    row_a = matrix.row(a)
    row_b = matrix.row(b)
    num = den_a = den_b = 0.0
    for rid in common:
        da = row_a[rid] - mean_a
        db = row_b[rid] - mean_b
        num += da * db
        den_a += da * da
        den_b += db * db
    if den_a == 0.0 or den_b == 0.0:
        return 0.0, len(common)
    value = num / (math.sqrt(den_a) * math.sqrt(den_b))
    return min(1.0, max(-1.0, value)), len(common)


def select_neighbors(matrix: RatingMatrix, target: str, m: int) -> NeighborSet:
    """Top-m stakeholders by similarity to the target, descending, ties by
    ascending id. Degenerate (zero) similarities compete like any other 0."""
    if not matrix.has_stakeholder(target):
        raise UnknownStakeholder(target)
    if m < 1:
        raise ValueError("m must be >= 1")
    sids, _, ratings, mask = matrix.to_arrays()
    t = sids.index(target)
    values, counts = kernels.similarity_batch(ratings, mask, t)
    scored = [
        SimilarityScore(neighbor=sid, value=float(values[i]), corated_count=int(counts[i]))
        for i, sid in enumerate(sids)
        if sid != target
    ]
    scored.sort(key=lambda s: (-s.value, s.neighbor))
    return NeighborSet(target=target, neighbors=tuple(scored[:m]))


def predict_rating(
    matrix: RatingMatrix,
    target: str,
    item: str,
    neighbors: NeighborSet,
    form: str = STANDARD,
) -> Prediction:
    """Mean-offset weighted prediction over the neighbors who rated the
    item. The standard form adds the target's own mean; the paper-literal
    form omits it. Falls back to the target's mean when no neighbor with a
    non-zero similarity rated the item."""
    if form not in PREDICTION_FORMS:
        raise ValueError(f"unknown prediction form: {form}")
    if not matrix.has_stakeholder(target):
        raise UnknownStakeholder(target)
    if not matrix.has_requirement(item):
        raise UnknownRequirement(item)
    if item in matrix.rated_items(target):
        raise AlreadyRated(item)
    if not matrix.rated_items(target):
        raise TargetHasNoRatings(target)

    target_mean = mean_rating(matrix, target)
    num = den = 0.0
    support = 0
    for score in neighbors.neighbors:
        if score.value == 0.0:
            continue
        rating = matrix.get(score.neighbor, item)
        if rating is None:
            continue
        num += (rating - mean_rating(matrix, score.neighbor)) * score.value
        den += abs(score.value)
        support += 1

    if support == 0 or den == 0.0:
        raw = target_mean
        support = 0
    elif form == STANDARD:
        raw = target_mean + num / den
    else:
        raw = num / den
    return Prediction(
        requirement=item,
        raw_value=raw,
        clamped_value=matrix.scale.clamp(raw),
        neighbor_support=support,
    )


def recommend(
    matrix: RatingMatrix,
    target: str,
    n_seeds: int = 3,
    m_neighbors: int = 5,
    k_recommendations: int = 5,
    form: str = STANDARD,
) -> Recommendation:
    """Full pipeline: neighborhood, predictions for every unrated
    requirement, top-k by clamped value. Among equal clamped values,
    supported predictions outrank fallbacks; final ties go to ascending
    requirement id."""
    if m_neighbors < 1 or k_recommendations < 1:
        raise ValueError("m and k must be >= 1")
    if not matrix.has_stakeholder(target):
        raise UnknownStakeholder(target)
    if not matrix.rated_items(target):
        raise TargetHasNoRatings(target)
    neighbors = select_neighbors(matrix, target, m_neighbors)
    rated = matrix.rated_items(target)
    predictions = [
        predict_rating(matrix, target, rid, neighbors, form)
        for rid in matrix.requirement_ids
        if rid not in rated
    ]
    predictions.sort(
        key=lambda p: (-p.clamped_value, p.neighbor_support == 0, p.requirement)
    )
    return Recommendation(
        target=target,
        items=tuple(predictions[:k_recommendations]),
        n_seeds=n_seeds,
        m_neighbors=m_neighbors,
        k_recommendations=k_recommendations,
    )

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from reqgrid.domain import (
    ConstructPair,
    RatingMatrix,
    RatingScale,
    Requirement,
    Stakeholder,
)


def make_requirement(rid, label=None):
    return Requirement(
        id=rid,
        label=label or f"requirement {rid}",
        construct_pair=ConstructPair("low", "high"),
    )


def make_matrix(rows, scale=RatingScale(), extra_requirements=(), extra_stakeholders=()):
    """Build a RatingMatrix from {stakeholder: {requirement: score}}."""
    matrix = RatingMatrix(scale)
    rids = {rid for row in rows.values() for rid in row} | set(extra_requirements)
    for rid in sorted(rids):
        matrix.register_requirement(make_requirement(rid))
    for sid in sorted(set(rows) | set(extra_stakeholders)):
        matrix.register_stakeholder(Stakeholder(sid))
    for sid, row in rows.items():
        for rid, score in row.items():
            matrix.rate(sid, rid, score)
    return matrix


def random_rows(rng, n_users, n_items, density, scale=RatingScale()):
    """Random sparse rows; every user keeps at least one rating."""
    rows = {}
    items = [f"r{j:02d}" for j in range(1, n_items + 1)]
    for u in range(1, n_users + 1):
        row = {}
        for rid in items:
            if rng.random() < density:
                row[rid] = int(rng.integers(scale.min, scale.max + 1))
        if not row:
            row[items[int(rng.integers(n_items))]] = int(
                rng.integers(scale.min, scale.max + 1)
            )
        rows[f"u{u:02d}"] = row
    return rows, items


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

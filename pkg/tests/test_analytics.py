import json
import random

import numpy as np
import pytest

from reqgrid.analytics import (
    SimulatedPopulation,
    random_baseline_hit_rate,
    satisfaction_report,
    simulate_study,
)
from reqgrid.datastore import dataset_to_dict, seed_catalog
from reqgrid.session import FeedbackRecord, SessionConfig


def record(session_id, stars, level="Master", rid="r05"):
    return FeedbackRecord(
        session_id=session_id, requirement_id=rid, stars=stars, education_level=level
    )


class TestSatisfactionReport:
    def test_participant_counts_by_level(self):
        # one session per participant: 60 PhD, 46 Master, 21 Bachelor
        feedback = []
        for i in range(60):
            feedback.append(record(f"phd{i}", 4, "PhD"))
        for i in range(46):
            feedback.append(record(f"msc{i}", 3, "Master"))
        for i in range(21):
            feedback.append(record(f"bsc{i}", 5, "Bachelor"))
        report = satisfaction_report(feedback)
        counts = {lvl: s.participant_count for lvl, s in report.per_level.items()}
        assert counts == {"PhD": 60, "Master": 46, "Bachelor": 21}
        assert report.participant_count == 127

    def test_all_no_idea_means_absent(self):
        report = satisfaction_report([record("s1", 0), record("s2", 0, "PhD")])
        assert report.mean_stars is None
        assert report.normalized_percentage is None
        for stats in report.per_level.values():
            assert stats.rated_count == 0
            assert stats.mean_stars is None

    def test_two_point_mean(self):
        report = satisfaction_report([record("s1", 2), record("s1", 4)])
        assert report.mean_stars == pytest.approx(3.0)
        assert report.normalized_percentage == pytest.approx(60.0)

    def test_zero_stars_excluded_from_mean_not_counts(self):
        report = satisfaction_report([record("s1", 0), record("s1", 4)])
        assert report.mean_stars == pytest.approx(4.0)
        stats = report.per_level["Master"]
        assert stats.no_idea_count == 1
        assert stats.rated_count == 1

    def test_empty_input(self):
        report = satisfaction_report([])
        assert report.participant_count == 0
        assert report.per_level == {}

    def test_permutation_invariant(self):
        records = [record(f"s{i % 7}", i % 6, ["PhD", "Master", "Bachelor"][i % 3]) for i in range(40)]
        base = satisfaction_report(records).as_dict()
        shuffled = records[:]
        random.Random(3).shuffle(shuffled)
        assert satisfaction_report(shuffled).as_dict() == base

    def test_normalized_percentage_floor(self):
        report = satisfaction_report([record("s1", 1)])
        assert report.normalized_percentage == pytest.approx(20.0)


class TestSimulator:
    def test_homogeneous_zero_noise_perfect_hit_rate(self):
        population = SimulatedPopulation.generate(
            seed=42, n_core=50, n_probes=20, n_items=12, clusters=1, noise_level=0.0
        )
        result = simulate_study(seed_catalog(), SessionConfig(), population)
        assert result.hit_rate == 1.0

    def test_two_cluster_zero_noise_perfect_hit_rate(self):
        population = SimulatedPopulation.generate(
            seed=42, n_core=50, n_probes=20, n_items=12, clusters=2, noise_level=0.0
        )
        result = simulate_study(seed_catalog(), SessionConfig(), population)
        assert result.hit_rate == 1.0

    def test_fixed_seed_byte_identical(self):
        def run():
            population = SimulatedPopulation.generate(
                seed=42, n_core=30, n_probes=10, n_items=12, clusters=2, noise_level=0.4
            )
            result = simulate_study(seed_catalog(), SessionConfig(), population)
            return json.dumps(
                {
                    "report": result.report.as_dict(),
                    "hit_rate": result.hit_rate,
                    "dataset": dataset_to_dict(result.dataset),
                },
                sort_keys=True,
            )

        assert run() == run()

    def test_sessions_complete_and_feedback_recorded(self):
        population = SimulatedPopulation.generate(
            seed=7, n_core=20, n_probes=5, n_items=12, clusters=2, noise_level=0.5
        )
        result = simulate_study(seed_catalog(), SessionConfig(), population)
        assert len(result.dataset.sessions) == 5
        assert all(s.feedback for s in result.dataset.sessions)
        assert result.report.participant_count == 5

    def test_cf_beats_random_baseline_on_clustered_population(self):
        population = SimulatedPopulation.generate(
            seed=42, n_core=50, n_probes=20, n_items=12, clusters=2, noise_level=0.0
        )
        result = simulate_study(seed_catalog(), SessionConfig(), population)
        baseline = random_baseline_hit_rate(n_items=12, k=5, trials=10000, seed=42)
        assert result.hit_rate > baseline


class TestRandomBaseline:
    def test_combinatorial_expectation(self):
        # picking 5 of 12 uniformly against a fixed top-5: E[hit] = 5/12
        rate = random_baseline_hit_rate(n_items=12, k=5, trials=10000, seed=0)
        assert rate == pytest.approx(5 / 12, abs=0.02)

    def test_deterministic_given_seed(self):
        a = random_baseline_hit_rate(12, 5, 2000, seed=9)
        b = random_baseline_hit_rate(12, 5, 2000, seed=9)
        assert a == b

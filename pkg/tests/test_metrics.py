import numpy as np
import pytest

from faultfuse.corpus.model import StatementRecord, make_dataset
from faultfuse.errors import NoFaultsError, SingleClassError
from faultfuse.metrics import (
    accuracy_stability,
    aggregate_reports,
    auc,
    baseline_rankers,
    build_report,
    rank_statements,
    time_accounting,
)


def random_dataset(rng, n_stmt=10, n_test=12):
    statements = [StatementRecord(i, "p", i + 1, "m = z;") for i in range(n_stmt)]
    coverage = (rng.random((n_test, n_stmt)) < 0.6).astype(np.uint8)
    failed = rng.random(n_test) < 0.3
    failed[0] = True
    fault = int(rng.integers(0, n_stmt))
    coverage[failed, fault] = 1  # keep the fixture realistic: fault always covered
    return make_dataset(statements, coverage, [f"t{i}" for i in range(n_test)],
                        failed, faults=[fault])


class TestRanks:
    def test_strictly_ordered_scores(self):
        assert rank_statements([0.9, 0.5, 0.1]).tolist() == [1.0, 2.0, 3.0]

    def test_midrank_ties(self):
        assert rank_statements([0.9, 0.9, 0.1]).tolist() == [1.5, 1.5, 3.0]

    def test_rank_sum_closed_form(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(1, 40))
            scores = rng.integers(0, 5, n).astype(float)
            assert rank_statements(scores).sum() == pytest.approx(n * (n + 1) / 2)

    def test_matches_bruteforce_position_assignment(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            n = int(rng.integers(1, 25))
            scores = rng.integers(0, 4, n).astype(float)
            expected = np.empty(n)
            order = sorted(range(n), key=lambda i: -scores[i])
            positions = {}
            for pos, idx in enumerate(order, start=1):
                positions.setdefault(scores[idx], []).append(pos)
            for i in range(n):
                occupied = positions[scores[i]]
                expected[i] = sum(occupied) / len(occupied)
            assert rank_statements(scores).tolist() == expected.tolist()

    def test_shift_invariance(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            scores = rng.random(15)
            assert np.array_equal(rank_statements(scores), rank_statements(scores + 3.7))


class TestAuc:
    def test_perfect_separation(self):
        assert auc([0.9, 0.8, 0.1, 0.2], [1, 1, 0, 0]) == 1.0

    def test_all_ties(self):
        assert auc([0.5] * 6, [1, 0, 1, 0, 0, 0]) == 0.5

    def test_matches_pairwise_bruteforce(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            n = 20
            scores = rng.integers(0, 6, n).astype(float)
            labels = (rng.random(n) < 0.4).astype(int)
            if labels.sum() in (0, n):
                labels[0] = 1 - labels[0]
            pos = scores[labels == 1]
            neg = scores[labels == 0]
            wins = sum(
                1.0 if p > q else 0.5 if p == q else 0.0 for p in pos for q in neg
            )
            assert auc(scores, labels) == wins / (len(pos) * len(neg))

    def test_antisymmetry_identity(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            scores = rng.integers(0, 5, 15).astype(float)
            labels = (rng.random(15) < 0.5).astype(int)
            if labels.sum() in (0, 15):
                labels[0] = 1 - labels[0]
            assert auc(scores, labels) + auc(scores, 1 - labels) == 1.0

    def test_single_class_rejected(self):
        with pytest.raises(SingleClassError):
            auc([0.1, 0.2], [1, 1])


class TestAccuracyStability:
    def test_identical_folds(self):
        acc, stab = accuracy_stability([0.9, 0.9, 0.9])
        assert acc == pytest.approx(0.9) and stab == 0.0

    def test_population_std(self):
        acc, stab = accuracy_stability([0.8, 1.0])
        assert acc == pytest.approx(0.9)
        assert stab == pytest.approx(0.1, abs=1e-12)

    def test_single_fold(self):
        assert accuracy_stability([0.7])[1] == 0.0


class TestReports:
    def test_single_fault_ranked_first(self):
        ds = random_dataset(np.random.default_rng(5))
        scores = np.zeros(ds.n_statements)
        scores[ds.faults[0]] = 1.0
        report = build_report("model", scores, ds)
        assert report.first_rank == 1.0
        assert (report.top1, report.top3, report.top5) == (1, 1, 1)
        assert report.average_rank == 1.0

    def test_multi_statement_fault_first_and_average(self):
        statements = [StatementRecord(i, "p", i + 1, "m = z;") for i in range(8)]
        coverage = np.ones((4, 8), dtype=np.uint8)
        failed = np.array([True, False, False, False])
        ds = make_dataset(statements, coverage, list("abcd"), failed, faults=[2, 5])
        scores = np.array([0.9, 0.3, 0.8, 0.4, 0.5, 0.2, 0.1, 0.05])
        # descending ranks: stmt2 -> 2, stmt5 -> 6
        report = build_report("model", scores, ds)
        assert report.first_rank == 2.0
        assert report.average_rank == 4.0
        assert report.top1 == 0 and report.top3 == 1

    def test_topn_monotone(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            ds = random_dataset(rng)
            report = build_report("m", rng.random(ds.n_statements), ds)
            assert report.top1 <= report.top3 <= report.top5

    def test_average_rank_never_below_first(self):
        rng = np.random.default_rng(7)
        statements = [StatementRecord(i, "p", i + 1, "m = z;") for i in range(12)]
        coverage = np.ones((3, 12), dtype=np.uint8)
        failed = np.array([True, False, False])
        for _ in range(50):
            faults = rng.choice(12, size=3, replace=False)
            ds = make_dataset(statements, coverage, list("abc"), failed, faults=faults)
            report = build_report("m", rng.random(12), ds)
            assert report.average_rank >= report.first_rank

    def test_no_faults_rejected(self):
        statements = [StatementRecord(0, "p", 1, "m = z;")]
        ds = make_dataset(statements, np.ones((1, 1), dtype=np.uint8), ["a"],
                          np.array([True]))
        with pytest.raises(NoFaultsError):
            build_report("m", [0.5], ds)

    def test_identical_scores_identical_metrics(self):
        ds = random_dataset(np.random.default_rng(8))
        scores = np.random.default_rng(9).random(ds.n_statements)
        a = build_report("first", scores, ds)
        b = build_report("second", scores, ds)
        assert (a.ranks, a.first_rank, a.auc) == (b.ranks, b.first_rank, b.auc)

    def test_top1_localization_accuracy_percentage(self):
        # 243 of 434 faults in Top-1 is 56.0 percent
        assert round(243 / 434 * 100, 1) == 56.0


class TestBaselines:
    def test_failing_only_statement_ranks_first(self):
        statements = [StatementRecord(i, "p", i + 1, "m = z;") for i in range(3)]
        coverage = np.array([[1, 1, 0], [0, 1, 1]], dtype=np.uint8)
        failed = np.array([True, False])
        ds = make_dataset(statements, coverage, ["a", "b"], failed, faults=[0])
        reports = baseline_rankers(ds)
        assert min(reports["tarantula"].ranks) == reports["tarantula"].ranks[0]

    def test_tarantula_consistent_with_feature_column(self, median3_dataset, median3_matrix):
        # the min-max normalized column is a monotone transform, so ranks agree
        report = baseline_rankers(median3_dataset)["tarantula"]
        column_ranks = rank_statements(median3_matrix.column("tarantula"))
        assert report.ranks == column_ranks.tolist()

    def test_dstar_matches_independent_reimplementation(self):
        rng = np.random.default_rng(10)
        for _ in range(20):
            ds = random_dataset(rng)
            report = baseline_rankers(ds)["dstar"]
            total_failed = int(ds.failed.sum())
            expected = []
            for s in range(ds.n_statements):
                ef = sum(int(ds.coverage[t, s]) for t in range(ds.n_tests) if ds.failed[t])
                ep = sum(int(ds.coverage[t, s]) for t in range(ds.n_tests) if not ds.failed[t])
                nf = total_failed - ef
                expected.append(ef**2 / (ep + nf) if ep + nf else float(ef**2))
            assert report.scores == pytest.approx(expected)


class TestAggregation:
    def test_aggregates_over_datasets(self):
        rng = np.random.default_rng(11)
        reports = []
        for _ in range(6):
            ds = random_dataset(rng)
            scores = np.zeros(ds.n_statements)
            scores[ds.faults[0]] = 1.0
            reports.append(build_report("m", scores, ds))
        agg = aggregate_reports(reports)
        assert agg["top1"] == 6 and agg["mfr"] == 1.0
        assert agg["loc_acc@1"] == 1.0


class TestTimeAccounting:
    def test_zero_instances(self):
        out = time_accounting("mopso", 100, 10, 0, avg_instance_seconds=0.5)
        assert out["total_seconds"] == 0.0

    def test_counts_always_reported(self):
        out = time_accounting("nsga2", 20100, 200, 14)
        assert out["evaluation_count"] == 20100
        assert "total_seconds" not in out

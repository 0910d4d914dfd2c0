import numpy as np
import pytest

from faultfuse.errors import EmptyBallotsError, EmptySelectionError
from faultfuse.features import FeatureMatrix
from faultfuse.fusion import (
    FusedFeatureSet,
    default_keep,
    fuse,
    load_fused,
    save_fused,
    vote,
    weigh,
)
from faultfuse.selection import Chromosome, ParetoArchive


def archive_of(bit_rows, width):
    archive = ParetoArchive(capacity=len(bit_rows))
    for i, ones in enumerate(bit_rows):
        bits = np.zeros(width, dtype=np.uint8)
        bits[list(ones)] = 1
        archive.members.append(Chromosome(bits, np.array([float(i), 0.0, 0.0])))
    return archive


class TestVote:
    def test_three_round_example(self):
        # ballots over f1..f6 (ids 0..5): {f1,f4,f6}, {f2,f4}, {f2,f4,f6}
        ballots = [{0, 3, 5}, {1, 3}, {1, 3, 5}]
        assert vote(ballots, keep=3) == {1, 3, 5}

    def test_single_ballot_identity(self):
        assert vote([{0}], keep=1) == {0}

    def test_unanimous_feature_always_retained(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            ballots = [set(rng.choice(10, size=rng.integers(1, 5), replace=False)) | {9}
                       for _ in range(5)]
            keep = int(rng.integers(1, 8))
            assert 9 in vote(ballots, keep)

    def test_empty_ballot_rejected(self):
        with pytest.raises(EmptyBallotsError):
            vote([], keep=2)
        with pytest.raises(EmptyBallotsError):
            vote([{1}, set()], keep=2)

    def test_cutoff_tie_breaks_toward_lower_id(self):
        ballots = [{0, 7}, {7}, {3}]
        assert vote(ballots, keep=2) == {0, 7}

    def test_monotone_in_added_ballot(self):
        base = [{0, 1}, {1, 2}]
        without = vote(base, keep=2)
        with_extra = vote(base + [{0}], keep=2)
        assert 0 in with_extra or 0 in without


class TestWeigh:
    def test_graded_frequencies_scale_to_half_one_three_halves(self):
        # f2 in 1 of 4 members, f4 in 2, f6 in 3 -> weights 0.5 / 1 / 1.5
        archive = archive_of([{1, 3, 5}, {3, 5}, {5}, {0}], width=6)
        fused = weigh({1, 3, 5}, archive)
        assert fused.entries == ((5, 1.5), (3, 1.0), (1, 0.5))

    def test_uniform_selection_gives_unit_weights(self):
        archive = archive_of([{0, 1, 2}] * 4, width=3)
        fused = weigh({0, 1, 2}, archive)
        assert all(w == 1.0 for _, w in fused.entries)

    def test_frequency_mean_normalization(self):
        # f3 selected by 3 of 4 members, f5 by 1 -> 1.5 and 0.5
        archive = archive_of([{3}, {3}, {3, 5}, set()], width=6)
        archive.members[-1].bits[0] = 1  # keep the last ballot non-empty
        fused = weigh({3, 5}, archive)
        assert fused.weight_of(3) == pytest.approx(1.5)
        assert fused.weight_of(5) == pytest.approx(0.5)

    def test_empty_selection(self):
        archive = archive_of([{0}], width=2)
        with pytest.raises(EmptySelectionError):
            weigh(set(), archive)


class TestFuse:
    def test_single_chromosome_uniform(self):
        archive = archive_of([{0, 2, 4}], width=5)
        fused = fuse(archive, keep=3)
        assert fused.entries == ((0, 1.0), (2, 1.0), (4, 1.0))

    def test_vote_then_weigh_orders_by_frequency(self):
        # voting keeps {f2,f4,f6}; frequencies then order them f6 > f4 > f2
        archive = archive_of([{1, 3, 5}, {3, 5}, {5}, {5}], width=6)
        fused = fuse(archive, keep=3)
        assert [fid for fid, _ in fused.entries] == [5, 3, 1]

    def test_ids_come_from_ballots_only(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            rows = [set(rng.choice(12, size=rng.integers(1, 6), replace=False))
                    for _ in range(6)]
            archive = archive_of(rows, width=12)
            fused = fuse(archive, keep=4)
            union = set().union(*rows)
            assert set(fused.ids()) <= union

    def test_archive_order_invariant(self):
        rows = [{0, 3, 5}, {1, 3}, {1, 3, 5}, {5}]
        a = fuse(archive_of(rows, width=6), keep=3)
        b = fuse(archive_of(list(reversed(rows)), width=6), keep=3)
        assert a.entries == b.entries

    def test_order_invariant_under_frequency_scaling(self):
        rows = [{0, 1}, {1}, {1, 2}, {2}, {1, 2}]
        order = [fid for fid, _ in fuse(archive_of(rows, width=3), keep=3).entries]
        doubled = rows + rows  # double every count; frequencies scale uniformly
        order2 = [fid for fid, _ in fuse(archive_of(doubled, width=3), keep=3).entries]
        assert order == order2

    def test_default_keep_is_a_third(self):
        assert default_keep(17) == 6
        assert default_keep(3) == 1


class TestIo:
    def test_round_trip(self, tmp_path):
        matrix = FeatureMatrix(
            np.zeros((2, 4)), ("a", "b", "c", "d"), ("sbfl", "sbfl", "mbfl", "tbfl")
        )
        fused = FusedFeatureSet(((2, 1.5), (0, 1.0), (3, 0.5)))
        path = save_fused(fused, matrix, tmp_path / "fused.json")
        assert load_fused(path, matrix).entries == fused.entries

    def test_family_weights(self):
        matrix = FeatureMatrix(
            np.zeros((2, 4)), ("a", "b", "c", "d"), ("sbfl", "sbfl", "mbfl", "tbfl")
        )
        fused = FusedFeatureSet(((1, 2.0), (0, 1.0), (2, 0.5)))
        assert fused.family_weights(matrix) == {"sbfl": 3.0, "mbfl": 0.5}

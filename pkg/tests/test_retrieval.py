import numpy as np
import pytest

from phasemem.errors import AntipodalMemories, DimensionMismatch, ParameterOutOfRange, WrongMemoryCount
from phasemem.glyphs import corpus
from phasemem.noise import FlipBits, corrupt
from phasemem.patterns import GrayPattern
from phasemem.retrieval import (
    InOrder,
    Seeded,
    TournamentConfig,
    expected_rounds,
    retrieve_pair,
    subgroup,
    tournament,
)

from conftest import bp, random_distinct


class TestSubgroup:
    def test_in_order(self):
        assert subgroup([1, 2, 3, 4, 5]) == [(1, 2), (3, 4), (5,)]
        assert subgroup([7]) == [(7,)]

    def test_seeded_is_permutation_and_reproducible(self):
        a = subgroup(range(1, 10), Seeded(4), 2)
        assert a == subgroup(range(1, 10), Seeded(4), 2)
        assert sorted(x for g in a for x in g) == list(range(1, 10))
        assert [len(g) for g in a] == [2, 2, 2, 2, 1]

    def test_seeded_depends_on_round(self):
        assert subgroup(range(1, 17), Seeded(4), 1) != subgroup(range(1, 17), Seeded(4), 2)

    def test_empty(self):
        with pytest.raises(ValueError):
            subgroup([])


class TestRetrievePair:
    def test_zeroed_entry(self, block_pair):
        d = block_pair[1].entries.astype(float)
        d[3] = 0.0
        res = retrieve_pair(*block_pair, GrayPattern(d))
        assert res.winner == 2 and res.overlaps[1] > 0.999
        assert res.epsilon == pytest.approx(0.25)

    def test_dimension(self, block_pair):
        with pytest.raises(DimensionMismatch):
            retrieve_pair(*block_pair, GrayPattern(np.zeros(5)))


class TestTournament:
    def test_single_standard(self):
        out = tournament([bp("+-+-")], GrayPattern(np.zeros(4)))
        assert out.winner_index == 1 and out.total_integrations == 0 and out.rounds == ()

    @pytest.mark.parametrize("pairing", [InOrder()] + [Seeded(s) for s in range(5)])
    def test_exact_copy_wins(self, rng, pairing):
        mems = random_distinct(np.random.default_rng(11), 16, 4)
        out = tournament(mems, GrayPattern.from_binary(mems[2]), TournamentConfig(pairing=pairing))
        assert out.winner_index == 3
        assert out.total_integrations == 3 and len(out.rounds) == expected_rounds(4)

    def test_all_zero_input_deterministic(self, rng):
        mems = random_distinct(np.random.default_rng(5), 10, 3)
        a = tournament(mems, GrayPattern(np.zeros(10)))
        b = tournament(mems, GrayPattern(np.zeros(10)))
        assert a.winner_index == b.winner_index
        assert any(np.array_equal(a.winner.entries, m.entries) for m in mems)

    def test_glyph_with_three_flips(self):
        pats = corpus()
        q = corrupt(pats[1], FlipBits(3, seed=7))
        out = tournament(list(pats), q)
        assert out.winner_index == 2

    def test_rounds_and_winner_invariant(self):
        pats = corpus()
        out = tournament(pats, corrupt(pats[4], FlipBits(2, seed=1)), TournamentConfig(pairing=Seeded(9)))
        assert len(out.rounds) == expected_rounds(len(pats))
        assert out.rounds[0].round == 1
        assert np.array_equal(out.winner.entries, pats[out.winner_index - 1].entries)
        for rec in out.rounds:
            for g, d in zip(rec.subgroups, rec.diagnostics):
                assert (d is None) == (len(g) == 1)

    def test_errors(self, block_pair):
        with pytest.raises(WrongMemoryCount):
            tournament([], GrayPattern(np.zeros(6)))
        with pytest.raises(AntipodalMemories):
            tournament([block_pair[0], -block_pair[0]], GrayPattern(np.zeros(6)))
        with pytest.raises(ParameterOutOfRange):
            TournamentConfig(epsilon_fraction=1.0)


def test_expected_rounds():
    assert [expected_rounds(m) for m in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]

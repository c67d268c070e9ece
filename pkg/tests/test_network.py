import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from phasemem.errors import AntipodalMemories, DimensionMismatch, NegativeEpsilon
from phasemem.network import (
    PhaseState,
    bipolar_state,
    build_network,
    overlap,
    overlaps,
    potential,
    rhs,
    state_jacobian,
)
from phasemem.patterns import BinaryPattern, random_pattern

from conftest import bp, direct_potential, direct_rhs, fd_jacobian, random_distinct


class TestBuild:
    def test_single_memory_coupling(self):
        net = build_network([bp("+-")], 0.0)
        assert net.coupling.tolist() == [[1, -1], [-1, 1]]

    def test_block_pair_coupling(self, block_pair):
        C = build_network(block_pair, 0.1).coupling
        same = np.array([[(i < 3) == (j < 3) for j in range(6)] for i in range(6)])
        assert np.array_equal(C, np.where(same, 2.0, 0.0))

    def test_triple_matches_outer_products(self, triple5):
        C = build_network(triple5, 0.0).coupling
        brute = sum(np.outer(p.entries, p.entries) for p in triple5)
        assert np.array_equal(C, brute)

    def test_errors(self):
        with pytest.raises(AntipodalMemories):
            build_network([bp("+-+"), bp("-+-")], 0.1)
        with pytest.raises(NegativeEpsilon):
            build_network([bp("+-+")], -0.1)
        with pytest.raises(DimensionMismatch):
            build_network([bp("+-+"), bp("+-")], 0.1)

    def test_memory_sign_invariance(self, rng):
        mems = random_distinct(rng, 9, 3)
        flipped = [mems[0], -mems[1], mems[2]]
        assert np.array_equal(build_network(mems, 0.2).coupling, build_network(flipped, 0.2).coupling)

    def test_coupling_invariants(self, rng):
        for M in (1, 2, 3, 4):
            C = build_network(random_distinct(rng, 10, M), 0.0).coupling
            assert np.array_equal(C, C.T)
            assert np.all(np.diag(C) == M)
            assert np.all(np.abs(C) <= M)
            assert np.all((C - M) % 2 == 0)


class TestVectorField:
    def test_two_oscillator_example(self):
        net = build_network([bp("++")], 0.0)
        assert np.allclose(rhs(net, [0.0, np.pi / 2]), [0.5, -0.5], atol=1e-15)

    def test_equal_phases(self, block_pair):
        net = build_network(block_pair, 0.3)
        assert np.max(np.abs(rhs(net, np.full(6, 1.234)))) < 1e-14

    def test_dimension_mismatch(self, block_pair):
        with pytest.raises(DimensionMismatch):
            rhs(build_network(block_pair, 0.3), np.zeros(5))

    def test_matches_double_sum(self, rng):
        for M in (1, 2, 3, 4):
            net = build_network(random_distinct(rng, 11, M), 0.37)
            phi = rng.uniform(-np.pi, np.pi, 11)
            assert np.allclose(rhs(net, phi), direct_rhs(net.coupling, 0.37, phi), atol=1e-13)

    def test_bipolar_states_are_equilibria(self, rng):
        for _ in range(100):
            N = int(rng.integers(4, 20))
            M = int(rng.integers(1, 5))
            net = build_network(random_distinct(rng, N, M), float(rng.uniform(0, 1)))
            eta = random_pattern(rng, N)
            assert np.max(np.abs(rhs(net, bipolar_state(eta)))) < 1e-12

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**31 - 1), st.floats(-10, 10))
    def test_shift_invariance_and_zero_sum(self, seed, c):
        rng = np.random.default_rng(seed)
        net = build_network(random_distinct(rng, 8, 2), 0.4)
        phi = rng.uniform(0, 2 * np.pi, 8)
        f = rhs(net, phi)
        assert abs(f.sum()) < 1e-12
        assert np.allclose(rhs(net, phi + c), f, atol=1e-12)
        assert abs(potential(net, phi + c) - potential(net, phi)) < 1e-12


class TestPotential:
    def test_block_pair_at_memory(self, block_pair):
        net = build_network(block_pair, 0.5)
        assert potential(net, bipolar_state(block_pair[0])) == pytest.approx(-3.75, abs=1e-12)

    def test_equal_phases_double_sum(self, block_pair):
        net = build_network(block_pair, 0.0)
        phi = np.zeros(6)
        assert potential(net, phi) == pytest.approx(direct_potential(net.coupling, 0.0, phi), abs=1e-12)
        assert potential(net, phi) == pytest.approx(-(9 + 9) / 6, abs=1e-12)

    def test_matches_double_sum(self, rng):
        for M in (1, 2, 3):
            net = build_network(random_distinct(rng, 9, M), 0.21)
            phi = rng.uniform(-np.pi, np.pi, 9)
            assert potential(net, phi) == pytest.approx(direct_potential(net.coupling, 0.21, phi), abs=1e-12)

    def test_negative_gradient(self, rng):
        net = build_network(random_distinct(rng, 7, 3), 0.3)
        phi = rng.uniform(-np.pi, np.pi, 7)
        h = 1e-5
        grad = np.array([(potential(net, phi + h * e) - potential(net, phi - h * e)) / (2 * h)
                         for e in np.eye(7)])
        assert np.max(np.abs(rhs(net, phi) + grad)) < 1e-6


class TestStateJacobian:
    def test_matches_finite_difference(self, rng):
        net = build_network(random_distinct(rng, 8, 2), 0.3)
        phi = rng.uniform(-np.pi, np.pi, 8)
        assert np.allclose(state_jacobian(net, phi), fd_jacobian(net, phi), atol=1e-7)


class TestBipolarAndOverlap:
    def test_bipolar_examples(self):
        assert bipolar_state(bp("+++")).phases.tolist() == [0, 0, 0]
        assert bipolar_state(bp("+-+")).phases.tolist() == [0, np.pi, 0]

    def test_overlap_examples(self):
        eta = bp("++++----")
        assert overlap(bipolar_state(eta), eta) == 1.0
        assert overlap(bipolar_state(bp("++--++--")), eta) == pytest.approx(0.0, abs=1e-15)
        assert overlap(bipolar_state(bp("--++----")), eta) == pytest.approx(0.5, abs=1e-15)

    def test_overlap_sign_and_shift(self, rng):
        eta = random_pattern(rng, 12)
        phi = rng.uniform(0, 2 * np.pi, 12)
        m = overlap(phi, eta)
        assert overlap(phi, -eta) == pytest.approx(m, abs=1e-12)
        assert overlap(phi + 0.77, eta) == pytest.approx(m, abs=1e-12)
        assert 0.0 <= m <= 1.0

    def test_overlaps_vector(self, block_pair):
        m = overlaps(bipolar_state(block_pair[0]), block_pair)
        assert m.tolist() == pytest.approx([1.0, 0.0], abs=1e-15)

    def test_phase_state(self):
        s = PhaseState([0.0, 7.0], 1.5)
        assert s.N == 2 and s.time == 1.5
        assert s.wrapped()[1] == pytest.approx(7.0 - 2 * np.pi)
        assert s.shifted(1.0).phases.tolist() == [1.0, 8.0]

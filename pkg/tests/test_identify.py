import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bilinid import (TYPE_I, TYPE_II, FourTuple, IdentifyConfig, PulseOracle,
                     Tolerances, identify, io_equivalent, is_canonical,
                     oracle_from_tuple, realize_free_response, recover_states,
                     respond_pulse, sample_in_M, similarity_between)
from bilinid.errors import OrderAmbiguous, PoorFit, UnobservablePair

LOOSE = Tolerances(rank_tol=1e-10, residual_tol=1e-5, agree_tol=1e-7)
SCALAR = FourTuple([[-1.0]], [[0.5]], [1.0], [2.0])


def _identify(truth, alpha=1.0, seed=0, **cfg):
    config = IdentifyConfig(n_max=4, **cfg)
    return identify(oracle_from_tuple(truth, alpha), config,
                    rng=np.random.default_rng(seed))


class TestOracle:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from([TYPE_I, TYPE_II]))
    def test_matches_the_simulator(self, seed, kind):
        rng = np.random.default_rng(seed)
        t = FourTuple(0.5 * rng.standard_normal((2, 2)),
                      0.5 * rng.standard_normal((2, 2)),
                      rng.standard_normal(2), rng.standard_normal(2), kind)
        oracle = oracle_from_tuple(t, 0.8)
        for tau, time in ((1.0, 0.4), (1.0, 1.0), (1.0, 2.3), (0.0, 1.7)):
            direct = oracle.respond(tau, time)
            via_sim = respond_pulse(t, tau, 0.8, 0.0, [max(time, 1e-12)])
            assert direct == pytest.approx(float(via_sim.outputs[0]),
                                           abs=1e-11)

    def test_rejects_zero_amplitude(self):
        with pytest.raises(ValueError):
            oracle_from_tuple(SCALAR, 0.0)

    def test_rejects_negative_times(self):
        oracle = oracle_from_tuple(SCALAR, 1.0)
        with pytest.raises(ValueError):
            oracle.respond(-1.0, 0.5)
        with pytest.raises(ValueError):
            oracle.respond(1.0, -0.5)


class TestRealizeFreeResponse:
    def test_finds_the_order_and_the_gap(self):
        truth, _ = sample_in_M(2, 1.0, np.random.default_rng(5), scale=0.5)
        oracle = oracle_from_tuple(truth, 1.0)
        A, x0, c, svals = realize_free_response(oracle, 1.0, 0.2, 5)
        assert A.shape == (2, 2)
        assert svals[1] / svals[2] > 10.0
        assert sorted(np.linalg.eigvals(A)) == pytest.approx(
            sorted(np.linalg.eigvals(truth.A)), abs=1e-8)

    def test_zero_response_is_ambiguous(self):
        silent = PulseOracle(lambda tau, t: 0.0, 1.0, TYPE_I)
        with pytest.raises(OrderAmbiguous):
            realize_free_response(silent, 1.0, 0.2, 5)

    def test_saturated_hankel_is_ambiguous(self):
        truth, _ = sample_in_M(2, 1.0, np.random.default_rng(6), scale=0.5)
        oracle = oracle_from_tuple(truth, 1.0)
        with pytest.raises(OrderAmbiguous):
            realize_free_response(oracle, 1.0, 0.2, 2)  # m = n


class TestRecoverStates:
    def test_unobservable_pair_is_rejected(self):
        stub = PulseOracle(lambda tau, t: 0.0, 1.0, TYPE_I)
        with pytest.raises(UnobservablePair):
            recover_states(stub, np.eye(2), np.array([1.0, 0.0]),
                           [0.5], 0.2, 5)

    def test_states_match_the_truth_basis(self):
        # feeding the true (A, c) must return the true end-of-pulse states
        truth, _ = sample_in_M(2, 1.0, np.random.default_rng(7), scale=0.5)
        oracle = oracle_from_tuple(truth, 1.0)
        taus = [0.5, 1.0, 1.5]
        states, res = recover_states(oracle, truth.A, truth.c, taus, 0.2, 5)
        from bilinid import phi1
        for tau, x in zip(taus, states):
            expect = phi1(truth.A + truth.N, tau) @ truth.b
            assert np.allclose(x, expect, atol=1e-9)
        assert np.max(res) < 1e-18


class TestIdentify:
    def test_scalar_example(self):
        res = _identify(SCALAR)
        assert res.n_identified == 1
        assert res.tuple.A[0, 0] == pytest.approx(-1.0, abs=1e-6)
        assert res.tuple.N[0, 0] == pytest.approx(0.5, abs=1e-6)
        assert float(res.tuple.c @ res.tuple.b) == pytest.approx(2.0,
                                                                 abs=1e-6)

    def test_scalar_example_kind_ii(self):
        res = _identify(SCALAR.with_kind(TYPE_II))
        assert res.tuple.kind == TYPE_II
        assert res.tuple.A[0, 0] == pytest.approx(-1.0, abs=1e-6)
        assert res.tuple.N[0, 0] == pytest.approx(0.5, abs=1e-6)
        assert float(res.tuple.c @ res.tuple.b) == pytest.approx(2.0,
                                                                 abs=1e-6)

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10 ** 6), st.sampled_from([TYPE_I, TYPE_II]),
           st.sampled_from([1.0, -0.5]))
    def test_round_trip(self, seed, kind, alpha):
        truth, _ = sample_in_M(2, alpha, np.random.default_rng(seed),
                               kind=kind, scale=0.5)
        res = _identify(truth, alpha, seed)
        assert res.n_identified == 2
        assert is_canonical(res.tuple)
        eq, _ = io_equivalent(res.tuple, truth, LOOSE)
        assert eq
        w = similarity_between(res.tuple, truth, LOOSE)
        assert w.max_residual < 1e-5

    def test_three_state_round_trip(self):
        truth, _ = sample_in_M(3, 1.0, np.random.default_rng(11), scale=0.5)
        res = _identify(truth)
        assert res.n_identified == 3
        eq, _ = io_equivalent(res.tuple, truth, LOOSE)
        assert eq

    def test_two_runs_identify_similar_systems(self):
        truth, _ = sample_in_M(2, 1.0, np.random.default_rng(13), scale=0.5)
        r1 = _identify(truth, seed=1)
        r2 = _identify(truth, seed=2)
        w = similarity_between(r1.tuple, r2.tuple, LOOSE)
        assert w.max_residual < 1e-5

    def test_diagnostics_are_reported(self):
        res = _identify(SCALAR)
        d = res.diagnostics
        assert set(d) >= {"hankel_singular_values", "fit_residual",
                          "max_state_residual", "tau0", "h"}
        assert d["fit_residual"] < 1e-8
        assert 0.5 <= d["tau0"] <= 1.5

    def test_inconsistent_oracle_raises_poor_fit(self):
        # responses that are free responses of a genuine (A, c) for every
        # width, yet with widths that do not follow any bilinear flow
        truth, _ = sample_in_M(2, 1.0, np.random.default_rng(17),
                               kind=TYPE_II, scale=0.5)
        base = oracle_from_tuple(truth, 1.0)
        warped = PulseOracle(
            lambda tau, t: base.respond(tau, t)
            + 0.01 * tau * tau * base.respond(0.0, t - tau),
            1.0, TYPE_II)
        with pytest.raises(PoorFit):
            identify(warped, IdentifyConfig(n_max=4),
                     rng=np.random.default_rng(0))

    def test_silent_system_is_ambiguous(self):
        silent = PulseOracle(lambda tau, t: 0.0, 1.0, TYPE_I)
        with pytest.raises(OrderAmbiguous):
            identify(silent, IdentifyConfig(n_max=3),
                     rng=np.random.default_rng(0))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bilinid import (DEFAULT_TOL, Tolerances, eigenvalues, expm, phi1,
                     pinv_rank, principal_logm, rank_of)
from bilinid.errors import Overflow, SpectrumOnCut

from oracles import expm_series, phi1_quadrature


def _random_matrix(seed, n=None, scale=1.0):
    rng = np.random.default_rng(seed)
    n = n if n is not None else int(rng.integers(1, 5))
    return scale * rng.standard_normal((n, n))


class TestExpm:
    def test_nilpotent(self):
        M = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.allclose(expm(M), [[1.0, 1.0], [0.0, 1.0]], atol=1e-14)

    def test_half_turn(self):
        M = np.array([[0.0, -np.pi], [np.pi, 0.0]])
        assert np.allclose(expm(M), -np.eye(2), atol=1e-12)

    def test_overflow_is_reported(self):
        with pytest.raises(Overflow):
            expm(np.array([[1e6]]) * 1e3)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_matches_series_oracle(self, seed):
        M = _random_matrix(seed)
        E = expm(M)
        assert np.allclose(E, expm_series(M), atol=1e-10, rtol=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_inverse_pairing(self, seed):
        M = _random_matrix(seed, scale=2.0)
        if np.linalg.norm(M) > 10:
            M = 10 * M / np.linalg.norm(M)
        assert np.allclose(expm(M) @ expm(-M), np.eye(M.shape[0]), atol=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_commuting_factors(self, seed):
        # polynomials in the same matrix commute
        M = _random_matrix(seed)
        P = 0.3 * M @ M - 0.7 * M
        assert np.allclose(expm(M + P), expm(M) @ expm(P), atol=1e-9,
                           rtol=1e-9)


class TestPhi1:
    def test_scalar_value(self):
        assert phi1(np.array([[1.0]]), 1.0)[0, 0] == pytest.approx(
            np.e - 1.0, abs=1e-12)

    def test_zero_time(self):
        assert np.allclose(phi1(np.eye(3), 0.0), np.zeros((3, 3)))

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            phi1(np.eye(2), -1.0)

    def test_singular_argument(self):
        # phi1 must not invert Q
        Q = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.allclose(phi1(Q, 2.0), phi1_quadrature(Q, 2.0), atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6), st.floats(0.1, 3.0))
    def test_matches_quadrature_oracle(self, seed, t):
        Q = _random_matrix(seed)
        assert np.allclose(phi1(Q, t), phi1_quadrature(Q, t), atol=1e-9,
                           rtol=1e-9)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_time_derivative(self, seed):
        # d/dt phi1(Q, t) = e^{tQ}, checked by a central difference
        Q = _random_matrix(seed)
        t, h = 0.8, 1e-5
        fd = (phi1(Q, t + h) - phi1(Q, t - h)) / (2 * h)
        assert np.max(np.abs(fd - expm(t * Q))) < 1e-6


class TestPinvRank:
    def test_projection_example(self):
        M = np.array([[1.0, 0.0], [0.0, 0.0]])
        P, r = pinv_rank(M, DEFAULT_TOL)
        assert r == 1
        assert np.allclose(P, M)

    def test_zero_matrix(self):
        P, r = pinv_rank(np.zeros((2, 3)), DEFAULT_TOL)
        assert r == 0
        assert P.shape == (3, 2)
        assert np.all(P == 0)

    def test_rank_of(self):
        assert rank_of(np.array([[1.0, 2.0], [2.0, 4.0]]), DEFAULT_TOL) == 1

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10 ** 6), st.integers(1, 6), st.integers(1, 6))
    def test_penrose_identities(self, seed, rows, cols):
        M = np.random.default_rng(seed).standard_normal((rows, cols))
        P, r = pinv_rank(M, DEFAULT_TOL)
        assert r == min(rows, cols)
        assert np.allclose(M @ P @ M, M, atol=1e-9)
        assert np.allclose(P @ M @ P, P, atol=1e-9)
        assert np.allclose((M @ P).T, M @ P, atol=1e-9)
        assert np.allclose((P @ M).T, P @ M, atol=1e-9)


class TestPrincipalLogm:
    def test_negative_real_spectrum_is_rejected(self):
        with pytest.raises(SpectrumOnCut):
            principal_logm(-np.eye(2))

    def test_rotation_round_trip(self):
        M = np.array([[0.0, 0.1], [-0.1, 0.0]])
        assert np.allclose(principal_logm(expm(M)), M, atol=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10 ** 6))
    def test_round_trip_inside_principal_strip(self, seed):
        M = _random_matrix(seed, scale=0.5)
        if np.max(np.abs(eigenvalues(M).imag)) > 3.0:
            M = 0.2 * M
        assert np.allclose(principal_logm(expm(M)), M, atol=1e-8)


class TestTolerances:
    def test_defaults(self):
        assert DEFAULT_TOL.rank_tol == 1e-10
        assert DEFAULT_TOL.residual_tol == 1e-8
        assert DEFAULT_TOL.agree_tol == 1e-7

    def test_positive_required(self):
        with pytest.raises(ValueError):
            Tolerances(rank_tol=-1.0, residual_tol=1e-8, agree_tol=1e-7)

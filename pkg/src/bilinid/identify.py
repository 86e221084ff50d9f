"""Identification of a bilinear system from its responses to pulses of a
fixed amplitude alpha and varying width tau.

The pipeline rests on two facts about the pulse response. After the pulse
ends the system coasts: y(tau + s) = c e^{As} x(tau), so (A, c) and the
states x(tau) are recoverable by linear realization (Hankel SVD, then
least squares through the observability map). And the end-of-pulse state
as a function of width,

    kind I:  x(tau) = alpha * int_0^tau e^{(A+alpha N)s} ds b
    kind II: x(tau) = e^{(A+alpha N)tau} b,

has w(tau) := x'(tau)/alpha (kind I) or x(tau) (kind II) equal to
e^{(A+alpha N)tau} b, so b = w(0) and the regression w'(tau) = G w(tau)
yields G = A + alpha N, hence N = (G - A)/alpha.

Everything is exact up to matrix-exponential accuracy plus finite-difference
truncation; the stencils below use a micro-step well separated from the
tau-grid spacing to keep truncation near roundoff.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import TYPE_I, TYPE_II, FourTuple, validate
from .errors import (NotCanonicalResult, OrderAmbiguous, PoorFit,
                     SpectrumOnCut, UnobservablePair)
from .matfun import DEFAULT_TOL, Tolerances, expm, phi1, principal_logm, rank_of
from .realization import is_canonical, krylov


@dataclass(frozen=True)
class PulseOracle:
    """respond(tau, t) is y(t) under the input alpha*[0 <= t < tau]."""

    respond: Callable[[float, float], float]
    alpha: float
    kind: str


@dataclass(frozen=True)
class IdentificationResult:
    tuple: FourTuple
    n_identified: int
    diagnostics: dict


@dataclass(frozen=True)
class IdentifyConfig:
    n_max: int = 8
    h: float = 0.2
    tau_span: float = 2.0
    fd_step: float = 0.01
    richardson_step: float = 0.08
    tau0_low: float = 0.5
    tau0_high: float = 1.5
    max_tau0_draws: int = 8
    max_h_halvings: int = 6


def oracle_from_tuple(t: FourTuple, alpha: float) -> PulseOracle:
    """Exact in-process oracle for a known system (the test-harness black
    box). Caches end-of-pulse states and free-response propagators."""
    validate(t)
    if alpha == 0:
        raise ValueError("pulse amplitude must be nonzero")
    A, b, c = t.A, t.b, t.c
    G = t.A + alpha * t.N
    x_end: dict = {}
    coast: dict = {}

    def state_at_end(tau: float):
        x = x_end.get(tau)
        if x is None:
            if t.kind == TYPE_I:
                x = phi1(G, tau) @ (alpha * b)
            else:
                x = expm(G * tau) @ b
            x_end[tau] = x
        return x

    def respond(tau: float, time: float) -> float:
        if tau < 0 or time < 0:
            raise ValueError("tau and t must be nonnegative")
        if time <= tau:
            if t.kind == TYPE_I:
                x = phi1(G, time) @ (alpha * b)
            else:
                x = expm(G * time) @ b
        else:
            s = time - tau
            E = coast.get(s)
            if E is None:
                E = expm(A * s)
                coast[s] = E
            x = E @ state_at_end(tau)
        return float(c @ x)

    return PulseOracle(respond, float(alpha), t.kind)


def realize_free_response(oracle: PulseOracle, tau0: float, h: float, m: int,
                          tol: Tolerances = DEFAULT_TOL):
    """Linear realization of the post-pulse coast for pulse width tau0.

    Samples y(tau0 + j h) for j = 0..2m-1, forms the m x m Hankel, truncates
    its SVD at rank_tol to fix the order n, factors it into observability and
    state parts, and lifts the discrete transition to continuous time through
    the principal logarithm. Returns (A, x(tau0), c, singular_values), all in
    the identified basis.
    """
    ys = np.array([oracle.respond(tau0, tau0 + j * h) for j in range(2 * m)])
    H0 = np.array([[ys[i + j] for j in range(m)] for i in range(m)])
    H1 = np.array([[ys[i + j + 1] for j in range(m)] for i in range(m)])
    U, s, Vh = np.linalg.svd(H0)
    if s[0] <= 1e-300:
        raise OrderAmbiguous("response is identically zero")
    n = int(np.count_nonzero(s > tol.rank_tol * s[0]))
    if n == m:
        raise OrderAmbiguous(f"no rank gap within Hankel size {m}")
    if s[n] > 0 and s[n - 1] / s[n] < 10.0:
        raise OrderAmbiguous(
            f"singular-value gap {s[n - 1] / s[n]:.2f} below 10 at order {n}"
        )
    root = np.sqrt(s[:n])
    Obs = U[:, :n] * root
    Ctr = root[:, None] * Vh[:n, :]
    F_d = np.linalg.pinv(Obs) @ H1 @ np.linalg.pinv(Ctr)
    A = principal_logm(F_d) / h
    return A, Ctr[:, 0].copy(), Obs[0, :].copy(), s


def recover_states(oracle: PulseOracle, A, c, tau_grid, h: float, m: int,
                   tol: Tolerances = DEFAULT_TOL):
    """States x(tau) in the identified basis, one per grid point, solved from
    [c; c e^{Ah}; ...; c e^{A(m-1)h}] x = [y(tau), y(tau+h), ...].
    Returns (states, residuals)."""
    A = np.asarray(A, dtype=float)
    c = np.ravel(np.asarray(c, dtype=float))
    n = A.shape[0]
    E = expm(A * h)
    rows = [c]
    for _ in range(m - 1):
        rows.append(rows[-1] @ E)
    Gam = np.array(rows)
    if rank_of(Gam, tol) < n:
        raise UnobservablePair("(A, c) is not observable at rank_tol")
    states, residuals = [], []
    for tau in tau_grid:
        ys = np.array([oracle.respond(tau, tau + j * h) for j in range(m)])
        x, res, *_ = np.linalg.lstsq(Gam, ys, rcond=None)
        states.append(x)
        residuals.append(float(res[0]) if res.size else 0.0)
    return np.array(states), np.array(residuals)


def _realize_with_retries(oracle, m, rng, cfg, tol):
    h = cfg.h
    last = None
    for _ in range(cfg.max_h_halvings + 1):
        for _ in range(cfg.max_tau0_draws):
            tau0 = float(rng.uniform(cfg.tau0_low, cfg.tau0_high))
            try:
                A, x0, c, svals = realize_free_response(oracle, tau0, h, m, tol)
                return A, x0, c, svals, tau0, h
            except OrderAmbiguous as e:
                last = e
            except SpectrumOnCut as e:
                last = e
                break
        else:
            raise last
        h *= 0.5
    raise last


# 7-point interior stencils (6th order); offsets are -3..3 in units of the step
_D1 = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2 = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
_OFFSETS = np.arange(-3, 4)


def identify(oracle: PulseOracle, config: Optional[IdentifyConfig] = None,
             tol: Tolerances = DEFAULT_TOL,
             rng: Optional[np.random.Generator] = None) -> IdentificationResult:
    """Full pipeline: realize (A, c), recover states on a tau-grid, form
    w(tau), read off b = w(0), regress w' = G w, set N = (G - A)/alpha."""
    cfg = config or IdentifyConfig()
    rng = rng if rng is not None else np.random.default_rng(0)
    alpha = oracle.alpha
    m = cfg.n_max + 1

    A, _, c, svals, tau0, h_used = _realize_with_retries(oracle, m, rng, cfg, tol)
    n = A.shape[0]

    K = 2 * cfg.n_max + 2
    tau_grid = cfg.tau_span * np.arange(1, K + 1) / K
    # first-derivative step small, second-derivative step larger (its
    # roundoff grows as 1/step^2); both stencils must stay inside (0, tau_1)
    t1 = float(tau_grid[0])
    d = min(cfg.fd_step, t1 / 8.0)
    d2 = min(3.0 * cfg.fd_step, t1 / 4.0)

    wanted = [0.0]
    rich = [cfg.richardson_step / 2.0 ** k for k in range(4)]
    if oracle.kind == TYPE_I:
        wanted += rich
    for tau in tau_grid:
        wanted += [tau + k * d for k in _OFFSETS]
        if oracle.kind == TYPE_I:
            wanted += [tau + k * d2 for k in _OFFSETS]
    taus = sorted({float(v) for v in wanted})
    states, state_res = recover_states(oracle, A, c, taus, h_used, m, tol)
    x = dict(zip(taus, states))

    if oracle.kind == TYPE_I:
        # w = x'/alpha and w' = x''/alpha from the micro-stencils
        W = np.array([
            sum(_D1[i] * x[tau + _OFFSETS[i] * d] for i in range(7)) / (d * alpha)
            for tau in tau_grid
        ])
        Wp = np.array([
            sum(_D2[i] * x[tau + _OFFSETS[i] * d2] for i in range(7)) / (d2 * d2 * alpha)
            for tau in tau_grid
        ])
        # b = w(0) = x'(0)/alpha by Richardson extrapolation of one-sided
        # difference quotients (x(0) enters exactly; kind I starts at 0)
        R = [(x[s] - x[0.0]) / s for s in rich]
        for j in range(1, 4):
            R = [(2.0 ** j * R[i + 1] - R[i]) / (2.0 ** j - 1.0)
                 for i in range(len(R) - 1)]
        b = R[0] / alpha
    else:
        W = np.array([x[tau] for tau in tau_grid])
        Wp = np.array([
            sum(_D1[i] * x[tau + _OFFSETS[i] * d] for i in range(7)) / d
            for tau in tau_grid
        ])
        b = x[0.0]

    # W rows are w(tau_j)'; solve W G' = Wp for G
    G, *_ = np.linalg.lstsq(W, Wp, rcond=None)
    G = G.T
    scale = max(1.0, float(np.linalg.norm(Wp)))
    fit = float(np.linalg.norm(W @ G.T - Wp)) / scale
    if fit > 1e-5:
        raise PoorFit(f"state-derivative regression residual {fit:.3e}")
    N = (G - A) / alpha

    result = FourTuple(A, N, b, c, oracle.kind)
    r_reach = rank_of(krylov(A, b), tol)
    r_obs = rank_of(krylov(A.T, c).T, tol)
    r_alpha = rank_of(krylov(G, b), tol)
    if not (is_canonical(result, tol) and r_reach == n and r_obs == n
            and r_alpha == n):
        raise NotCanonicalResult(
            f"identified tuple fails rank checks: reach {r_reach}, "
            f"obs {r_obs}, pulse-reach {r_alpha} of {n}"
        )
    return IdentificationResult(
        tuple=result,
        n_identified=n,
        diagnostics={
            "hankel_singular_values": svals.tolist(),
            "fit_residual": fit,
            "max_state_residual": float(np.max(state_res)) if state_res.size else 0.0,
            "tau0": tau0,
            "h": h_used,
        },
    )

"""Normed distance between two points of a credal set over a normal cone.

For a vertex ``E`` with centered cone basis ``f'_i`` and another point
``P``, write ``D = P - E`` and split every basis gamble as
``f'_i = lambda_i D + u_i`` with ``u_i . D = 0``.  With ``h = sum a_i f'_i``::

    (P - E) . h = (a . lambda) |D|^2,    |h|^2 = a Pi a,
    Pi = |D|^2 lambda lambda^T + U U^T.

The largest ratio ``(P - E) . h / |h|`` over ``a >= 0`` is ``1 / sqrt(q)``
where ``q`` is the minimum of ``a Pi a`` subject to ``(a . lambda)|D|^2 = 1``
and ``a >= 0``.

Since ``Pi`` is the Gram matrix of the ``f'_i``, that minimum is tied to the
projection of ``D`` onto the cone they generate: if ``a*`` solves the
nonnegative least squares problem ``min |sum a_i f'_i - D|``, then
``t = a* . gain`` equals ``|sum a*_i f'_i|^2`` and ``q = 1 / t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .core import EPS_VERTEX
from .cone import NormalConeBasis

# Relative pivot size below which a support is treated as linearly dependent.
_RANK_TOL = 1e-10


class DegeneratePairError(ValueError):
    """The two points coincide, so there is no direction to measure along."""


class QPInfeasible(Exception):
    """No nonnegative combination of the basis has positive gain along D."""


@dataclass(frozen=True)
class DecompositionData:
    lam: np.ndarray  # (k,)
    u_rows: np.ndarray  # (k, s)
    pi: np.ndarray  # (k, k)
    d_norm: float
    centered: np.ndarray  # (k, s), the f'_i the data was built from

    @property
    def gain(self) -> np.ndarray:
        """Coefficients of the equality constraint: ``lambda_i |D|^2``."""
        return self.lam * self.d_norm**2


@dataclass(frozen=True)
class QPSolution:
    alpha: np.ndarray
    objective: float


@dataclass(frozen=True)
class NormedDistanceResult:
    distance: float
    alpha: np.ndarray
    witness: np.ndarray  # sum alpha_i f'_i, not normalized; zeros when distance is 0


def decompose(basis: NormalConeBasis, E, P) -> DecompositionData:
    D = np.asarray(P, dtype=float) - np.asarray(E, dtype=float)
    d_norm = float(np.linalg.norm(D))
    if d_norm <= EPS_VERTEX:
        raise DegeneratePairError("E and P coincide")
    if len(basis) == 0:
        raise ValueError("empty cone basis")
    F = basis.centered
    lam = F @ D / d_norm**2
    U = F - np.outer(lam, D)
    pi = d_norm**2 * np.outer(lam, lam) + U @ U.T
    pi = 0.5 * (pi + pi.T)
    return DecompositionData(lam, U, pi, d_norm, F)


def _gram_rank_ok(pi_s: np.ndarray) -> bool:
    scale = max(float(np.max(np.diag(pi_s))), 1e-300)
    try:
        L = np.linalg.cholesky(pi_s)
    except np.linalg.LinAlgError:
        return False
    return bool(np.min(np.diag(L)) ** 2 > _RANK_TOL * scale)


def solve_qp(data: DecompositionData) -> QPSolution:
    """Globally minimize ``a Pi a`` s.t. ``a . gain = 1``, ``a >= 0``.

    Solved as a cone projection with NNLS.  The columns
    ``(|D| lambda_i, u_i)`` have Gram matrix ``Pi`` and inner products
    ``gain`` with ``(|D|, 0, ..., 0)``, so no copy of ``D`` is needed.
    """
    c = data.gain
    if not (c > 0).any():
        raise QPInfeasible("all lambda_i <= 0")
    A = np.vstack([data.d_norm * data.lam, data.u_rows.T])
    b = np.zeros(A.shape[0])
    b[0] = data.d_norm
    a_star, _ = nnls(A, b)
    t = float(c @ a_star)
    if t <= 0:
        raise QPInfeasible("projection onto the cone is zero")
    return QPSolution(a_star / t, 1.0 / t)


def solve_qp_exhaustive(data: DecompositionData, max_support: int | None = None) -> QPSolution:
    """Reference solver for ``solve_qp``; exponential in the basis size.

    Exact active-set enumeration: every support with linearly independent
    basis gambles is solved through its KKT system and the best feasible
    candidate wins.  Because ``Pi`` is the Gram matrix of the basis, any
    optimum can be rewritten on an independent support (conic
    Caratheodory), so supports larger than the rank are never needed.
    """
    c = data.gain
    k = c.shape[0]
    positive = c > 0
    if not positive.any():
        raise QPInfeasible("all lambda_i <= 0")
    rank = np.linalg.matrix_rank(data.centered) if max_support is None else max_support
    best_alpha, best_obj = None, np.inf
    for size in range(1, min(k, rank) + 1):
        for support in itertools.combinations(range(k), size):
            idx = list(support)
            c_s = c[idx]
            if not (c_s > 0).any():
                continue
            pi_s = data.pi[np.ix_(idx, idx)]
            if not _gram_rank_ok(pi_s):
                continue
            y = np.linalg.solve(pi_s, c_s)
            t = float(c_s @ y)
            if t <= 0:
                continue
            a_s = y / t
            if a_s.min() < -1e-12 * max(1.0, a_s.max()):
                continue
            obj = 1.0 / t
            if obj < best_obj:
                best_obj = obj
                best_alpha = np.zeros(k)
                best_alpha[idx] = np.clip(a_s, 0.0, None)
    if best_alpha is None:
        raise QPInfeasible("no feasible support")
    return QPSolution(best_alpha, best_obj)


def normed_distance(basis: NormalConeBasis, E, P) -> NormedDistanceResult:
    """Largest ``(P(h) - E(h)) / |h|`` over gambles ``h`` in the cone at ``E``."""
    k, s = basis.centered.shape
    try:
        data = decompose(basis, E, P)
        sol = solve_qp(data)
    except (DegeneratePairError, QPInfeasible, ValueError):
        return NormedDistanceResult(0.0, np.zeros(k), np.zeros(s))
    witness = sol.alpha @ data.centered
    return NormedDistanceResult(1.0 / np.sqrt(sol.objective), sol.alpha, witness)

"""Normal cones at the vertices of a credal set, and vertex dominance on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .core import EPS_TIGHT, center_gamble, center_rows
from .polytope import CredalSet


@dataclass(frozen=True)
class NormalConeBasis:
    """Positive basis of the normal cone at one vertex.

    ``raw`` holds the tight constraint rows, ``centered`` the same rows
    shifted to sum zero.  Gambles in the cone are exactly the nonnegative
    combinations of ``centered`` plus a constant.
    """

    vertex_index: int
    row_indices: tuple[int, ...]
    raw: np.ndarray  # (k, s)
    centered: np.ndarray  # (k, s)

    def __len__(self):
        return len(self.row_indices)


def normal_cone_basis(cs: CredalSet, vertex_index: int) -> NormalConeBasis:
    if not 0 <= vertex_index < len(cs):
        raise IndexError(f"vertex {vertex_index} out of range")
    rows = tuple(int(i) for i in np.flatnonzero(cs.incidence[vertex_index]))
    raw = cs.constraints.rows[list(rows)]
    return NormalConeBasis(vertex_index, rows, raw, center_rows(raw))


def dominates(basis: NormalConeBasis, candidate, other, tol: float = EPS_TIGHT) -> bool:
    """``candidate`` is at least ``other`` on every basis gamble."""
    return bool(np.all(basis.raw @ np.asarray(candidate) >= basis.raw @ np.asarray(other) - tol))


def dominated_points(basis: NormalConeBasis, candidate, pool, tol: float = EPS_TIGHT) -> set[int]:
    """Indices of ``pool`` dominated by ``candidate`` on the cone.

    A dominated point is never farther (in normed distance over the cone)
    from the cone's vertex than ``candidate``, so its QP can be skipped.
    """
    pool = np.atleast_2d(np.asarray(pool, dtype=float))
    if pool.shape[0] == 0 or pool.size == 0:
        return set()
    cand = basis.raw @ np.asarray(candidate, dtype=float)
    values = pool @ basis.raw.T
    return {int(j) for j in np.flatnonzero(np.all(cand >= values - tol, axis=1))}


def cone_membership(basis: NormalConeBasis, h, tol: float = EPS_TIGHT) -> bool:
    """Is ``h`` a nonnegative combination of the basis plus a constant?"""
    target = center_gamble(h)
    scale = max(1.0, float(np.abs(target).max(initial=0.0)))
    if len(basis) == 0:
        return bool(np.abs(target).max(initial=0.0) <= tol * scale)
    _, residual = nnls(basis.centered.T, target)
    return bool(residual <= tol * scale)

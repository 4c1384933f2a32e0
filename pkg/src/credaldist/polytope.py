"""Credal sets as H-polytopes inside the probability simplex.

Every constraint row ``f`` stands for ``p . f >= 0``; the equality
``p . 1 = 1`` is always implied and never stored as a row.  Vertices are
found with an incremental double description: start from the unit masses
of the simplex and cut with one half-space at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.spatial import cKDTree

from .core import EPS_TIGHT, EPS_VERTEX, Assessment, shift_to_zero

BRUTE_FORCE_LIMIT = 32


@dataclass(frozen=True)
class ConstraintSystem:
    rows: np.ndarray  # (m, s)
    is_original: np.ndarray  # (m,) bool
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2:
            raise ValueError("rows must be a 2-d array")
        flags = np.array(self.is_original, dtype=bool).reshape(-1)
        if flags.shape[0] != rows.shape[0]:
            raise ValueError("one is_original flag per row")
        labels = tuple(self.labels) or tuple(f"r{i}" for i in range(rows.shape[0]))
        for arr in (rows, flags):
            arr.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "is_original", flags)
        object.__setattr__(self, "labels", labels)

    @property
    def s(self) -> int:
        return self.rows.shape[1]

    def __len__(self):
        return self.rows.shape[0]

    @classmethod
    def from_assessment(cls, a: Assessment) -> "ConstraintSystem":
        shifted = shift_to_zero(a)
        return cls(shifted.gambles, np.ones(len(a), dtype=bool), a.labels)

    def with_coordinate_rows(self) -> "ConstraintSystem":
        s = self.s
        return ConstraintSystem(
            np.vstack([self.rows, np.eye(s)]),
            np.concatenate([self.is_original, np.zeros(s, dtype=bool)]),
            self.labels + tuple(f"1_{x}" for x in range(s)),
        )

    def scaled_rows(self) -> np.ndarray:
        """Rows divided by their max-abs entry, so tolerances are scale free."""
        scale = np.abs(self.rows).max(axis=1, initial=0.0)
        scale[scale == 0.0] = 1.0
        return self.rows / scale[:, None]


@dataclass(frozen=True)
class Face:
    constraint_index: int
    vertex_indices: frozenset[int]


@dataclass(frozen=True)
class CredalSet:
    constraints: ConstraintSystem
    vertices: np.ndarray  # (v, s)
    incidence: np.ndarray  # (v, m) bool
    incoherent: bool = field(default=False)

    @property
    def s(self) -> int:
        return self.constraints.s

    @property
    def is_empty(self) -> bool:
        return self.vertices.shape[0] == 0

    def __len__(self):
        return self.vertices.shape[0]

    def original_rows(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.constraints.is_original)]


def incidence_matrix(constraints: ConstraintSystem, vertices: np.ndarray) -> np.ndarray:
    if vertices.shape[0] == 0:
        return np.zeros((0, len(constraints)), dtype=bool)
    return np.abs(vertices @ constraints.scaled_rows().T) <= EPS_TIGHT


def _finish(constraints: ConstraintSystem, vertices) -> CredalSet:
    vertices = dedup_vertices(np.asarray(vertices, dtype=float).reshape(-1, constraints.s))
    vertices.flags.writeable = False
    incidence = incidence_matrix(constraints, vertices)
    incidence.flags.writeable = False
    return CredalSet(constraints, vertices, incidence)


def dedup_vertices(points: np.ndarray, tol: float = EPS_VERTEX) -> np.ndarray:
    """Sort points lexicographically and drop near-duplicates."""
    if points.shape[0] == 0:
        return points.copy()
    points = points[np.lexsort(points.T[::-1])]
    drop = np.zeros(len(points), dtype=bool)
    for i, j in sorted(cKDTree(points).query_pairs(tol, p=np.inf, output_type="ndarray").tolist()):
        # keep the first point of each cluster, in sorted order
        if not drop[i]:
            drop[j] = True
    return points[~drop]


def enumerate_vertices(c: ConstraintSystem) -> CredalSet:
    """Extreme points of ``{p >= 0, p . 1 = 1, p . f >= 0 for all rows}``.

    The coordinate rows ``1_x`` are appended (as non-original rows) before
    enumeration.  An empty vertex array means the credal set is empty.
    """
    full = c.with_coordinate_rows()
    s, m = full.s, len(full)
    rows = full.scaled_rows()

    # Homogeneous version: extreme rays of the cone {p >= 0, p . f >= 0}.
    rays = np.eye(s)
    zeros = np.zeros((s, m), dtype=bool)
    coord = np.arange(len(c), m)
    zeros[:, coord] = ~np.eye(s, dtype=bool)

    for j in range(len(c)):
        vals = rays @ rows[j]
        plus = np.flatnonzero(vals > EPS_TIGHT)
        minus = np.flatnonzero(vals < -EPS_TIGHT)
        on = np.flatnonzero(np.abs(vals) <= EPS_TIGHT)
        zeros[on, j] = True
        if minus.size == 0:
            continue
        if plus.size == 0 and on.size == 0:
            return _finish(full, np.zeros((0, s)))

        new_rays, new_zeros = [], []
        not_z = (~zeros).astype(np.int32).T
        for a in plus:
            common = zeros[a] & zeros[minus]
            # adjacent rays of an s-dimensional cone share at least s - 2 zeros
            enough = np.count_nonzero(common, axis=1) >= s - 2
            if not enough.any():
                continue
            common = common[enough]
            cand = minus[enough]
            # A pair is adjacent iff only the two rays themselves contain the
            # common zero set.
            missing = common.astype(np.int32) @ not_z
            adjacent = np.count_nonzero(missing == 0, axis=1) == 2
            for b, common_ab in zip(cand[adjacent], common[adjacent]):
                r = vals[a] * rays[b] - vals[b] * rays[a]
                new_rays.append(r / r.sum())
                z = common_ab.copy()
                z[j] = True
                new_zeros.append(z)
        keep = np.concatenate([plus, on])
        keep.sort()
        rays = np.vstack([rays[keep]] + ([np.array(new_rays)] if new_rays else []))
        zeros = np.vstack([zeros[keep]] + ([np.array(new_zeros)] if new_zeros else []))

    return _finish(full, rays)


def brute_force_vertices(c: ConstraintSystem) -> CredalSet:
    """Reference enumeration over every (s-1)-subset of rows.

    Only meant for small systems; used to cross-check ``enumerate_vertices``.
    """
    if len(c) + c.s > BRUTE_FORCE_LIMIT:
        raise ValueError(
            f"brute force limited to rows + s <= {BRUTE_FORCE_LIMIT}, got {len(c) + c.s}"
        )
    full = c.with_coordinate_rows()
    s = full.s
    rows = full.scaled_rows()
    ones = np.ones((1, s))
    rhs = np.zeros(s)
    rhs[-1] = 1.0
    found = []
    for subset in itertools.combinations(range(len(full)), s - 1):
        A = np.vstack([rows[list(subset)], ones])
        if np.linalg.matrix_rank(A) < s:
            continue
        p = np.linalg.solve(A, rhs)
        if np.all(rows @ p >= -EPS_TIGHT):
            found.append(p)
    return _finish(full, np.array(found).reshape(-1, s))


def credal_set(a: Assessment) -> CredalSet:
    return enumerate_vertices(ConstraintSystem.from_assessment(a))


def remove_loose_constraints(cs: CredalSet) -> CredalSet:
    """Drop rows that are tight at no vertex.

    A dropped original row means the assessed value is not attained, i.e.
    the assessment is incoherent; ``incoherent`` is set on the result.
    """
    if cs.is_empty:
        raise ValueError("cannot remove loose constraints of an empty credal set")
    used = cs.incidence.any(axis=0)
    c = cs.constraints
    dropped_original = bool(np.any(c.is_original & ~used))
    kept = np.flatnonzero(used)
    reduced = ConstraintSystem(
        c.rows[kept], c.is_original[kept], tuple(c.labels[i] for i in kept)
    )
    incidence = cs.incidence[:, kept].copy()
    incidence.flags.writeable = False
    return replace(
        cs,
        constraints=reduced,
        incidence=incidence,
        incoherent=cs.incoherent or dropped_original,
    )


def face_vertices(cs: CredalSet, row_index: int) -> Face:
    if not 0 <= row_index < len(cs.constraints):
        raise IndexError(f"row {row_index} out of range")
    idx = np.flatnonzero(cs.incidence[:, row_index])
    return Face(row_index, frozenset(int(i) for i in idx))

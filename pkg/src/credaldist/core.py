"""Gambles, linear previsions and assessments over a finite sample space.

Gambles and probability mass vectors are plain read-only ``float64`` numpy
vectors.  Comparison between them is always explicit (``np.array_equal`` for
bit equality, :func:`close` for approximate equality).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

# Tolerances shared by every module.
EPS_FEAS = 1e-9
EPS_TIGHT = 1e-7
EPS_VERTEX = 1e-8


class DimensionError(ValueError):
    """Vectors that should live on the same sample space do not."""


class SureLossError(ValueError):
    """The credal set of an assessment is empty."""


class DegenerateAssessmentError(ValueError):
    """The assessment has no original gambles to work with."""


def as_gamble(values, s: int | None = None) -> np.ndarray:
    g = np.array(values, dtype=float)
    if g.ndim != 1:
        raise DimensionError(f"a gamble must be a vector, got shape {g.shape}")
    if s is not None and g.shape[0] != s:
        raise DimensionError(f"expected {s} values, got {g.shape[0]}")
    if g.shape[0] < 1:
        raise DimensionError("empty sample space")
    if not np.all(np.isfinite(g)):
        raise ValueError("gamble values must be finite")
    g.flags.writeable = False
    return g


def as_prevision(mass, s: int | None = None) -> np.ndarray:
    """Validate a probability mass vector (within ``EPS_FEAS``)."""
    p = as_gamble(mass, s)
    if p.min() < -EPS_FEAS or abs(p.sum() - 1.0) > EPS_FEAS:
        raise ValueError(f"not a probability mass vector: {p}")
    return p


def inner_product(f, g) -> float:
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise DimensionError(f"length mismatch: {f.shape} vs {g.shape}")
    return float(f @ g)


def norm(f) -> float:
    return float(np.sqrt(inner_product(f, f)))


def distance(f, g) -> float:
    return norm(np.asarray(f, dtype=float) - np.asarray(g, dtype=float))


def close(f, g, tol: float = EPS_VERTEX) -> bool:
    return bool(np.max(np.abs(np.asarray(f) - np.asarray(g)), initial=0.0) <= tol)


def indicator(subset: Iterable[int], s: int) -> np.ndarray:
    g = np.zeros(s)
    for x in subset:
        if not 0 <= x < s:
            raise IndexError(f"state {x} outside 0..{s - 1}")
        g[x] = 1.0
    return as_gamble(g)


def center_gamble(f) -> np.ndarray:
    """Shift ``f`` by a constant so that it sums to zero.

    This is the minimum-norm gamble among ``f + c`` for real ``c``.
    """
    f = np.asarray(f, dtype=float)
    return f - f.mean()


def center_rows(rows: np.ndarray) -> np.ndarray:
    rows = np.asarray(rows, dtype=float)
    return rows - rows.mean(axis=1, keepdims=True)


@dataclass(frozen=True)
class Assessment:
    """Lower previsions assessed on a finite list of gambles."""

    space_size: int
    gambles: np.ndarray  # (n, s)
    lowers: np.ndarray  # (n,)
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        s = int(self.space_size)
        if s < 1:
            raise DimensionError("space_size must be at least 1")
        gambles = np.atleast_2d(np.array(self.gambles, dtype=float)) if np.size(self.gambles) else np.zeros((0, s))
        if gambles.ndim != 2 or gambles.shape[1] != s:
            raise DimensionError(f"gambles must have {s} columns")
        lowers = np.array(self.lowers, dtype=float).reshape(-1)
        if lowers.shape[0] != gambles.shape[0]:
            raise DimensionError("one lower value per gamble is required")
        if not (np.all(np.isfinite(gambles)) and np.all(np.isfinite(lowers))):
            raise ValueError("assessment values must be finite")
        labels = tuple(self.labels) or tuple(f"f{i + 1}" for i in range(len(lowers)))
        if len(labels) != len(lowers):
            raise ValueError("one label per gamble is required")
        gambles.flags.writeable = False
        lowers.flags.writeable = False
        object.__setattr__(self, "space_size", s)
        object.__setattr__(self, "gambles", gambles)
        object.__setattr__(self, "lowers", lowers)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_items(cls, s: int, items: Sequence[tuple[Sequence[float], float]], labels=()):
        gambles = [as_gamble(g, s) for g, _ in items]
        return cls(s, np.array(gambles).reshape(len(gambles), s), [low for _, low in items], labels)

    def __len__(self):
        return len(self.lowers)

    def items(self):
        return list(zip(self.gambles, self.lowers))

    def with_lowers(self, lowers) -> "Assessment":
        return Assessment(self.space_size, self.gambles, lowers, self.labels)


def shift_to_zero(a: Assessment) -> Assessment:
    """Replace every ``(f, l)`` by ``(f - l, 0)``; the credal set is unchanged."""
    return Assessment(
        a.space_size, a.gambles - a.lowers[:, None], np.zeros(len(a)), a.labels
    )

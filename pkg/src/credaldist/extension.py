"""Natural extension, coherence and desirability on a vertex-enumerated credal set."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EPS_TIGHT, Assessment, DegenerateAssessmentError, SureLossError
from .polytope import CredalSet, credal_set


@dataclass(frozen=True)
class CoherenceReport:
    avoids_sure_loss: bool
    coherent: bool
    slack_per_item: np.ndarray  # natural extension minus assessed value; NaN on sure loss


def _require_nonempty(cs: CredalSet):
    if cs.is_empty:
        raise SureLossError("the credal set is empty (the assessment incurs sure loss)")


def natural_extension(cs: CredalSet, h) -> float:
    """Lower envelope of ``h`` over the credal set (minimum over its vertices)."""
    _require_nonempty(cs)
    return float(np.min(cs.vertices @ np.asarray(h, dtype=float)))


def natural_extension_many(cs: CredalSet, gambles) -> np.ndarray:
    _require_nonempty(cs)
    return np.min(cs.vertices @ np.atleast_2d(np.asarray(gambles, dtype=float)).T, axis=0)


def check(a: Assessment, cs: CredalSet | None = None) -> CoherenceReport:
    """Coherence report; ``cs`` may be passed when the credal set of ``a`` is already built."""
    if cs is None:
        cs = credal_set(a)
    if cs.is_empty:
        return CoherenceReport(False, False, np.full(len(a), np.nan))
    if len(a) == 0:
        return CoherenceReport(True, True, np.zeros(0))
    slack = natural_extension_many(cs, a.gambles) - a.lowers
    return CoherenceReport(True, bool(np.all(slack <= EPS_TIGHT)), slack)


def is_desirable(cs: CredalSet, h) -> bool:
    return natural_extension(cs, h) >= -EPS_TIGHT


def tight_upper_envelope(cs: CredalSet, h) -> float:
    """Largest value a coherent extension of the assessment can give ``h``.

    For each original row take the best vertex of its face, then the worst
    such row.  Rows with an empty face (only possible for incoherent input)
    are skipped.
    """
    _require_nonempty(cs)
    rows = cs.original_rows()
    if not rows:
        raise DegenerateAssessmentError("no assessed gambles to bound the extension")
    values = cs.vertices @ np.asarray(h, dtype=float)
    best = [values[cs.incidence[:, r]].max() for r in rows if cs.incidence[:, r].any()]
    if not best:
        raise DegenerateAssessmentError("no assessed gamble is attained on the credal set")
    return float(min(best))

"""Worst-case distance between coherent extensions of an assessment.

For every vertex ``E`` of the natural extension's credal set, each assessed
gamble ``f`` contributes the largest normed distance from ``E`` to a vertex
of the face ``M_f``; the smallest contribution over ``f`` is the value at
``E`` and the largest value over ``E`` is the bound::

    max_E  min_f  max_{F in ext(M_f)}  d_E(E, F)

Faces of non-negativity rows ``1_x`` never enter the minimum.  Two pruning
rules keep the number of QP solves down: a vertex dominated (on the cone
basis at ``E``) by an already evaluated vertex of the same face is skipped,
and a face with a vertex dominating a whole evaluated face cannot lower the
minimum and is not evaluated.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import EPS_TIGHT, Assessment, DegenerateAssessmentError, SureLossError, center_gamble
from .cone import NormalConeBasis, normal_cone_basis
from .distance import normed_distance
from .extension import check, natural_extension, natural_extension_many, tight_upper_envelope
from .polytope import CredalSet, Face, credal_set, face_vertices, remove_loose_constraints

log = logging.getLogger(__name__)

BRUTE_FORCE_VERTEX_LIMIT = 200


@dataclass
class Counters:
    qp_calls: int = 0
    distances_needed: int = 0
    dominance_skips: int = 0
    extra_faces: int = 0  # non-adjacent faces that survived filtering
    adjacent_pairs: int = 0  # (E, face through E, F != E) triples

    def __iadd__(self, other: "Counters"):
        self.qp_calls += other.qp_calls
        self.distances_needed += other.distances_needed
        self.dominance_skips += other.dominance_skips
        self.extra_faces += other.extra_faces
        self.adjacent_pairs += other.adjacent_pairs
        return self


@dataclass(frozen=True)
class VertexResult:
    vertex: int
    value: float
    face: int | None
    far_vertex: int | None
    witness: np.ndarray | None  # unnormalized centered gamble


@dataclass(frozen=True)
class DistanceReport:
    max_distance: float
    witness_vertex: int | None
    witness_face: int | None
    witness_far_vertex: int | None
    witness_gamble: np.ndarray | None  # unit norm, None when max_distance == 0
    per_vertex: list[tuple[int, float]]
    counters: Counters
    credal_set: CredalSet = field(repr=False)
    corrected: bool = False


def prepare(a: Assessment) -> tuple[CredalSet, bool]:
    """Credal set without loose rows; incoherent lower values are raised to
    their natural extension first (with a warning)."""
    if len(a) == 0:
        raise DegenerateAssessmentError("the assessment has no gambles")
    cs = credal_set(a)
    report = check(a, cs)
    if not report.avoids_sure_loss:
        raise SureLossError("the assessment incurs sure loss")
    corrected = False
    if not report.coherent:
        log.warning(
            "assessment is not coherent; replacing lower values by their natural extension"
        )
        a = a.with_lowers(a.lowers + np.maximum(report.slack_per_item, 0.0))
        cs = credal_set(a)
        corrected = True
    return remove_loose_constraints(cs), corrected


def filter_dominating_faces(
    cs: CredalSet,
    basis: NormalConeBasis,
    processed_faces: list[Face],
    tol: float = EPS_TIGHT,
) -> list[int]:
    """Original rows not yet processed whose faces might still lower the minimum.

    A face is dropped when one of its vertices dominates every vertex of
    some processed face: its farthest vertex is then at least as far as
    that processed face's farthest vertex.
    """
    done = {face.constraint_index for face in processed_faces}
    values = cs.vertices @ basis.raw.T  # (v, k)
    # A vertex dominates a processed face if it beats that face's
    # coordinatewise maximum of basis values.
    face_tops = [values[sorted(face.vertex_indices)].max(axis=0) for face in processed_faces if face.vertex_indices]
    if face_tops:
        tops = np.array(face_tops)
        dominating = np.any(np.all(values[:, None, :] >= tops[None, :, :] - tol, axis=2), axis=1)
    else:
        dominating = np.zeros(len(cs), dtype=bool)
    survivors = []
    for r in cs.original_rows():
        if r in done:
            continue
        members = cs.incidence[:, r]
        if not members.any() or dominating[members].any():
            continue
        survivors.append(r)
    return survivors


class _VertexWorker:
    def __init__(self, cs: CredalSet, e: int, use_filter: bool, tol: float = EPS_TIGHT):
        self.cs = cs
        self.tol = tol
        self.e = e
        self.use_filter = use_filter
        self.E = cs.vertices[e]
        self.basis = normal_cone_basis(cs, e)
        self.values = cs.vertices @ self.basis.raw.T
        self.counters = Counters()
        self.cache: dict[int, tuple[float, np.ndarray]] = {}

    def distance_to(self, j: int):
        if j not in self.cache:
            self.counters.qp_calls += 1
            res = normed_distance(self.basis, self.E, self.cs.vertices[j])
            self.cache[j] = (float(res.distance), res.witness)
        return self.cache[j]

    def face_distance(self, row: int):
        """Largest normed distance from E to a vertex of the face of ``row``."""
        members = np.flatnonzero(self.cs.incidence[:, row])
        others = [int(j) for j in members if j != self.e]
        self.counters.distances_needed += len(others)
        if self.cs.incidence[self.e, row]:
            self.counters.adjacent_pairs += len(others)
        # Farthest first: distant vertices tend to dominate the rest.
        eu = np.linalg.norm(self.cs.vertices[others] - self.E, axis=1) if others else []
        order = [others[i] for i in np.argsort(-np.asarray(eu), kind="stable")]
        best, best_j, best_w = 0.0, None, None
        dominated: set[int] = set()
        for j in order:
            if self.use_filter and j in dominated:
                self.counters.dominance_skips += 1
                continue
            d, w = self.distance_to(j)
            if best_j is None or d > best:
                best, best_j, best_w = d, j, w
            if self.use_filter:
                beaten = np.all(self.values[j] >= self.values[order] - self.tol, axis=1)
                dominated.update(o for o, hit in zip(order, beaten) if hit)
        return best, best_j, best_w

    def run(self) -> VertexResult:
        cs = self.cs
        original = cs.original_rows()
        adjacent = [r for r in self.basis.row_indices if cs.constraints.is_original[r]]
        best = (np.inf, None, None, None)

        def visit(row):
            nonlocal best
            d, j, w = self.face_distance(row)
            if d < best[0]:
                best = (d, row, j, w)

        if not self.use_filter:
            for r in original:
                if cs.incidence[:, r].any():
                    visit(r)
        else:
            # Incremental form of filter_dominating_faces: the basis is fixed
            # at E, so each processed face only adds to the dominating set.
            inc = cs.incidence[:, original]
            open_faces = inc.any(axis=0)
            dominating = np.zeros(len(cs), dtype=bool)

            def process(k):
                nonlocal dominating
                visit(original[k])
                open_faces[k] = False
                top = self.values[inc[:, k]].max(axis=0)
                dominating |= np.all(self.values >= top - self.tol, axis=1)

            position = {r: k for k, r in enumerate(original)}
            for r in adjacent:
                process(position[r])
            while True:
                survivors = np.flatnonzero(open_faces & ~(inc & dominating[:, None]).any(axis=0))
                if survivors.size == 0:
                    break
                self.counters.extra_faces += 1
                process(int(survivors[0]))
        value, row, far, witness = best
        if not np.isfinite(value):
            value = 0.0
        return VertexResult(self.e, float(value), row, far, witness)


def _evaluate(cs: CredalSet, use_filter: bool, threads: int, tol: float):
    def one(e):
        worker = _VertexWorker(cs, e, use_filter, tol)
        return worker.run(), worker.counters

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, range(len(cs))))
    return [one(e) for e in range(len(cs))]


def maximal_distance(
    a: Assessment, use_filter: bool = True, threads: int = 1, tol: float = EPS_TIGHT
) -> DistanceReport:
    """Evaluate the max-min-max bound with witnesses and work counters.

    ``use_filter=False`` turns off both dominance rules (every original face
    and every vertex is evaluated); the value must not change.  ``tol`` is
    the slack allowed in dominance comparisons.
    """
    cs, corrected = prepare(a)
    results = _evaluate(cs, use_filter, threads, tol)
    counters = Counters()
    for _, c in results:
        counters += c
    per_vertex = [(r.vertex, r.value) for r, _ in results]
    top = max((r for r, _ in results), key=lambda r: r.value)
    witness = None
    if top.value > 0 and top.witness is not None:
        witness = top.witness / np.linalg.norm(top.witness)
    return DistanceReport(
        max_distance=top.value,
        witness_vertex=top.vertex,
        witness_face=top.face,
        witness_far_vertex=top.far_vertex,
        witness_gamble=witness,
        per_vertex=per_vertex,
        counters=counters,
        credal_set=cs,
        corrected=corrected,
    )


def maximal_distance_bruteforce(a: Assessment) -> float:
    """Every (E, f, F) triple through the QP; no pruning, no caching."""
    cs, _ = prepare(a)
    if len(cs) > BRUTE_FORCE_VERTEX_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_VERTEX_LIMIT} vertices")
    best = 0.0
    for e in range(len(cs)):
        basis = normal_cone_basis(cs, e)
        face_maxima = []
        for r in cs.original_rows():
            members = np.flatnonzero(cs.incidence[:, r])
            if members.size:
                face_maxima.append(
                    max(normed_distance(basis, cs.vertices[e], cs.vertices[j]).distance for j in members)
                )
        if face_maxima:
            best = max(best, min(face_maxima))
    return float(best)


def extension_gap(a: Assessment | CredalSet, h) -> float:
    """Spread of coherent extensions on ``h``: tight upper envelope minus
    natural extension.  Divide by ``|center_gamble(h)|`` for the normed gap."""
    h = np.asarray(h, dtype=float)
    if np.ptp(h) == 0:
        return 0.0
    cs = a if isinstance(a, CredalSet) else prepare(a)[0]
    return tight_upper_envelope(cs, h) - natural_extension(cs, h)


def normed_gap(cs: CredalSet, h) -> float:
    h = np.asarray(h, dtype=float)
    n = np.linalg.norm(center_gamble(h))
    return 0.0 if n == 0 else extension_gap(cs, h) / n


def normed_gaps(cs: CredalSet, gambles) -> np.ndarray:
    """Vectorized :func:`normed_gap` over the rows of ``gambles``."""
    H = np.atleast_2d(np.asarray(gambles, dtype=float))
    values = cs.vertices @ H.T  # (v, m)
    uppers = np.full(H.shape[0], np.inf)
    for r in cs.original_rows():
        members = cs.incidence[:, r]
        if members.any():
            uppers = np.minimum(uppers, values[members].max(axis=0))
    gaps = uppers - natural_extension_many(cs, H)
    norms = np.linalg.norm(H - H.mean(axis=1, keepdims=True), axis=1)
    return np.where(norms > 0, gaps / np.where(norms > 0, norms, 1.0), 0.0)

"""Random coherent lower probabilities and the instrumented benchmark."""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from .core import Assessment
from .maxdist import Counters, maximal_distance

MIN_SIZE, MAX_SIZE = 2, 8


@dataclass(frozen=True)
class BenchStats:
    space_size: int
    trials: int
    avg_vertices: float
    avg_qp_calls: float
    avg_distances_needed: float
    ratio: float  # qp calls / distances needed; 1.0 when nothing was needed

    def as_record(self) -> dict:
        return asdict(self)


def nontrivial_events(s: int) -> list[tuple[int, ...]]:
    """All events other than the empty set and the whole space, by size then lexicographically."""
    return [
        ev for k in range(1, s) for ev in itertools.combinations(range(s), k)
    ]


def random_lower_probability(s: int, seed: int, m: int | None = None) -> Assessment:
    """Lower envelope of ``m`` uniform draws from the simplex, on every
    nontrivial event.  Envelopes of linear previsions are always coherent.
    ``m`` defaults to a draw from ``[s + 1, 3 s]``."""
    if not MIN_SIZE <= s <= MAX_SIZE:
        raise ValueError(f"space size must be in [{MIN_SIZE}, {MAX_SIZE}], got {s}")
    rng = np.random.default_rng(seed)
    if m is None:
        m = int(rng.integers(s + 1, 3 * s + 1))
    if m < 1:
        raise ValueError("need at least one generating distribution")
    points = rng.dirichlet(np.ones(s), size=m)
    events = nontrivial_events(s)
    gambles = np.zeros((len(events), s))
    for i, ev in enumerate(events):
        gambles[i, list(ev)] = 1.0
    lowers = (points @ gambles.T).min(axis=0)
    labels = ["{" + ",".join(map(str, ev)) + "}" for ev in events]
    return Assessment(s, gambles, lowers, labels)


def trial_seeds(seed: int, s: int, trials: int) -> list[int]:
    """Per-trial seeds; they depend only on the master seed and the size."""
    state = np.random.SeedSequence([seed, s]).generate_state(trials, dtype=np.uint64)
    return [int(x) for x in state]


def run_size(s: int, trials: int, seed: int, m: int | None = None, threads: int = 1) -> BenchStats:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    total = Counters()
    vertices = 0
    for t_seed in trial_seeds(seed, s, trials):
        report = maximal_distance(random_lower_probability(s, t_seed, m), threads=threads)
        total += report.counters
        vertices += len(report.credal_set)
    ratio = total.qp_calls / total.distances_needed if total.distances_needed else 1.0
    return BenchStats(
        space_size=s,
        trials=trials,
        avg_vertices=vertices / trials,
        avg_qp_calls=total.qp_calls / trials,
        avg_distances_needed=total.distances_needed / trials,
        ratio=ratio,
    )


def run_benchmark(sizes, trials: int, seed: int, m: int | None = None, threads: int = 1) -> list[BenchStats]:
    sizes = list(sizes)
    for s in sizes:
        if not MIN_SIZE <= s <= MAX_SIZE:
            raise ValueError(f"space size must be in [{MIN_SIZE}, {MAX_SIZE}], got {s}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    return [run_size(s, trials, seed, m, threads) for s in sizes]


def format_table(stats: list[BenchStats]) -> str:
    lines = [
        f"{'|Omega|':>7}  {'ext. pts':>10}  {'dist. calculated':>16}  {'dist. needed':>14}  {'ratio':>8}"
    ]
    for st in stats:
        lines.append(
            f"{st.space_size:>7d}  {st.avg_vertices:>10.1f}  {st.avg_qp_calls:>16.1f}  "
            f"{st.avg_distances_needed:>14.1f}  {100 * st.ratio:>7.2f}%"
        )
    return "\n".join(lines)

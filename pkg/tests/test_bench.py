import math

import numpy as np
import pytest

from credaldist.bench import (
    BenchStats,
    format_table,
    nontrivial_events,
    random_lower_probability,
    run_benchmark,
    trial_seeds,
)
from credaldist.extension import check
from credaldist.maxdist import maximal_distance


def test_three_state_instance():
    a = random_lower_probability(3, 0)
    assert len(a) == 6
    assert check(a).coherent
    assert a.labels[0] == "{0}" and a.labels[-1] == "{1,2}"


def test_single_generator_gives_singleton():
    a = random_lower_probability(3, 5, m=1)
    r = maximal_distance(a)
    assert len(r.credal_set) == 1
    assert r.max_distance == 0.0


def test_deterministic():
    a, b = random_lower_probability(4, 11), random_lower_probability(4, 11)
    assert np.array_equal(a.gambles, b.gambles) and np.array_equal(a.lowers, b.lowers)
    assert trial_seeds(42, 3, 5) == trial_seeds(42, 3, 5)
    assert trial_seeds(42, 3, 5) != trial_seeds(42, 4, 5)


@pytest.mark.parametrize("s", [1, 9])
def test_size_out_of_range(s):
    with pytest.raises(ValueError):
        random_lower_probability(s, 0)


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        run_benchmark([3], 0, 1)


def test_event_count():
    for s in range(2, 7):
        assert len(nontrivial_events(s)) == 2**s - 2


@pytest.mark.parametrize("seed", range(20))
def test_generated_lower_probabilities(seed):
    s = 2 + seed % 4
    a = random_lower_probability(s, seed)
    report = check(a)
    assert report.avoids_sure_loss and report.coherent
    value = {frozenset(np.flatnonzero(f)): low for f, low in a.items()}
    value[frozenset()] = 0.0
    value[frozenset(range(s))] = 1.0
    for A in value:
        for B in value:
            if A <= B:
                assert value[A] <= value[B] + 1e-12


@pytest.mark.parametrize("seed", range(10))
def test_adjacent_pairs_match_brute_count(seed):
    s = 3 + seed % 2
    r = maximal_distance(random_lower_probability(s, seed))
    cs = r.credal_set
    inc = cs.incidence[:, cs.original_rows()]
    expected = int((inc * (inc.sum(axis=0) - 1)).sum())
    assert r.counters.adjacent_pairs == expected


def test_benchmark_bounds_and_trend():
    stats = run_benchmark([3, 4], trials=10, seed=42)
    for st in stats:
        assert st.avg_vertices <= math.factorial(st.space_size)
        assert 0 < st.ratio <= 1
        assert st.avg_qp_calls <= st.avg_distances_needed
    assert stats[1].ratio <= stats[0].ratio + 0.25


def test_singleton_benchmark_has_no_calls():
    (st,) = run_benchmark([3], trials=1, seed=0, m=1)
    assert st.avg_vertices == 1
    assert st.avg_qp_calls == 0
    assert st.ratio == 1.0


def test_threads_do_not_change_stats():
    assert run_benchmark([3, 4], 3, 7) == run_benchmark([3, 4], 3, 7, threads=3)


def test_table_layout():
    st = BenchStats(3, 10, 5.9, 11.8, 11.8, 1.0)
    lines = format_table([st]).splitlines()
    assert "ext. pts" in lines[0] and "dist. needed" in lines[0]
    assert lines[1].split() == ["3", "5.9", "11.8", "11.8", "100.00%"]
    assert st.as_record()["avg_vertices"] == 5.9

from pathlib import Path

import numpy as np
import pytest

from credaldist.core import Assessment

ASSESSMENTS = Path(__file__).resolve().parents[1] / "assessments"

EXAMPLE1_GAMBLES = [
    (0.0, 1.0, 0.5),
    (0.0, 0.5, 1.0),
    (0.15, 0.0, 1.0),
    (1.0, 0.0, 0.6),
    (0.2, 1.0, 0.0),
]
EXAMPLE1_LOWERS = [0.46, 0.4, 0.25, 0.44, 0.4]


def example1() -> Assessment:
    return Assessment(3, EXAMPLE1_GAMBLES, EXAMPLE1_LOWERS, ("f1", "f2", "f3", "f4", "f5"))


def two_states() -> Assessment:
    return Assessment.from_items(2, [((1.0, 0.0), 0.3)])


def singleton(p=(0.2, 0.3, 0.5)) -> Assessment:
    s = len(p)
    eye = np.eye(s)
    return Assessment(s, np.vstack([eye, -eye]), np.concatenate([p, -np.asarray(p)]))


def random_coherent(s: int, seed: int, n: int | None = None, m: int | None = None) -> Assessment:
    """Random gambles with lower values taken from an envelope of random
    distributions, which makes the assessment coherent."""
    rng = np.random.default_rng(seed)
    n = n if n is not None else int(rng.integers(2, 2 * s + 2))
    m = m if m is not None else int(rng.integers(2, 3 * s))
    gambles = np.round(rng.uniform(-1, 1, size=(n, s)), 3)
    points = rng.dirichlet(np.ones(s), size=m)
    lowers = (points @ gambles.T).min(axis=0)
    return Assessment(s, gambles, lowers)


@pytest.fixture
def ex1():
    return example1()


@pytest.fixture
def two():
    return two_states()


_criteria: dict[str, dict[str, bool]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed or report.skipped:
        number, _, rest = name.removeprefix("test_criterion_").partition("_")
        parts = _criteria.setdefault(number.rstrip("abcd"), {})
        parts[f"{number} {rest.replace('_', ' ')}"] = parts.get(f"{number} {rest.replace('_', ' ')}", True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria, key=int):
        parts = _criteria[number]
        status = "PASS" if all(parts.values()) else "FAIL"
        detail = "; ".join(f"{k}: {'pass' if v else 'FAIL'}" for k, v in parts.items())
        terminalreporter.write_line(f"criterion {number}: {status}  ({detail})")

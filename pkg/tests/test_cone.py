import numpy as np
import pytest

from credaldist.cone import cone_membership, dominated_points, dominates, normal_cone_basis
from credaldist.core import center_gamble
from credaldist.distance import normed_distance
from credaldist.extension import natural_extension
from credaldist.polytope import ConstraintSystem, credal_set, enumerate_vertices, remove_loose_constraints

from conftest import example1, random_coherent, two_states


def vertex_near(cs, point):
    return int(np.argmin(np.max(np.abs(cs.vertices - np.asarray(point)), axis=1)))


@pytest.fixture(scope="module")
def cs1():
    return remove_loose_constraints(credal_set(example1()))


def test_basis_at_e1(cs1):
    e1 = vertex_near(cs1, (0.4, 0.32, 0.28))
    basis = normal_cone_basis(cs1, e1)
    assert [cs1.constraints.labels[i] for i in basis.row_indices] == ["f1", "f5"]
    assert basis.centered == pytest.approx(np.array([[-0.5, 0.5, 0.0], [-0.2, 0.6, -0.4]]))
    assert np.all(np.abs(basis.centered.sum(axis=1)) <= 1e-12 * 3)


def test_basis_two_states():
    cs = remove_loose_constraints(credal_set(two_states()))
    basis = normal_cone_basis(cs, vertex_near(cs, (1, 0)))
    assert [cs.constraints.labels[i] for i in basis.row_indices] == ["1_1"]


def test_basis_simplex_vertex():
    cs = enumerate_vertices(ConstraintSystem(np.zeros((0, 3)), np.zeros(0, dtype=bool)))
    basis = normal_cone_basis(cs, vertex_near(cs, (1, 0, 0)))
    assert [cs.constraints.labels[i] for i in basis.row_indices] == ["1_1", "1_2"]
    with pytest.raises(IndexError):
        normal_cone_basis(cs, 7)


def test_dominated_points_basics():
    cs = remove_loose_constraints(credal_set(two_states()))
    basis = normal_cone_basis(cs, vertex_near(cs, (1, 0)))
    pool = np.array([[0.65, 0.35], [0.3, 0.7]])
    assert dominated_points(basis, (0.3, 0.7), pool) == {0, 1}
    assert dominated_points(basis, (0.65, 0.35), pool) == {0}


def test_dominance_implies_smaller_distance_example1(cs1):
    e1 = vertex_near(cs1, (0.4, 0.32, 0.28))
    basis = normal_cone_basis(cs1, e1)
    E = cs1.vertices[e1]
    dist = [normed_distance(basis, E, F).distance for F in cs1.vertices]
    for c, F in enumerate(cs1.vertices):
        for j in dominated_points(basis, F, cs1.vertices):
            assert dist[j] <= dist[c] + 1e-9


@pytest.mark.parametrize("seed", range(25))
def test_dominance_monotone_random(seed):
    cs = remove_loose_constraints(credal_set(random_coherent(3 + seed % 2, seed)))
    for e in range(len(cs)):
        basis = normal_cone_basis(cs, e)
        E = cs.vertices[e]
        dist = [normed_distance(basis, E, F).distance for F in cs.vertices]
        for c, F in enumerate(cs.vertices):
            for j in dominated_points(basis, F, cs.vertices):
                assert dist[j] <= dist[c] + 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_dominance_reflexive_and_transitive(seed):
    cs = remove_loose_constraints(credal_set(random_coherent(4, seed)))
    basis = normal_cone_basis(cs, 0)
    V = cs.vertices
    for a in range(len(V)):
        assert dominates(basis, V[a], V[a])
        for b in range(len(V)):
            for c in range(len(V)):
                if dominates(basis, V[a], V[b], tol=0) and dominates(basis, V[b], V[c], tol=0):
                    assert dominates(basis, V[a], V[c], tol=0)


def test_cone_membership(cs1):
    basis = normal_cone_basis(cs1, vertex_near(cs1, (0.4, 0.32, 0.28)))
    f1c, f5c = basis.centered
    assert cone_membership(basis, f1c)
    assert cone_membership(basis, f1c + 2 * f5c + 3.0)
    assert not cone_membership(basis, -f1c)
    single = type(basis)(basis.vertex_index, basis.row_indices[:1], basis.raw[:1], basis.centered[:1])
    assert not cone_membership(single, -f1c)


@pytest.mark.parametrize("seed", range(15))
def test_cone_members_are_minimized_at_vertex(seed):
    rng = np.random.default_rng(seed)
    cs = remove_loose_constraints(credal_set(random_coherent(3 + seed % 2, seed)))
    for e in range(len(cs)):
        basis = normal_cone_basis(cs, e)
        alpha = rng.uniform(0, 2, len(basis))
        h = alpha @ basis.raw + rng.normal()
        assert cone_membership(basis, h)
        assert natural_extension(cs, h) == pytest.approx(cs.vertices[e] @ h, abs=1e-9)
        # a random gamble minimized elsewhere is not in the cone
        g = rng.normal(size=cs.s)
        if cs.vertices[e] @ g > natural_extension(cs, g) + 1e-6:
            assert not cone_membership(basis, g)
        assert np.abs(center_gamble(h).sum()) <= 1e-12

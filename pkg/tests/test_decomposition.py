import numpy as np
import pytest

from starwalk.decomposition import (JacobiSequences, k2_sequences, quantum_decompose,
                                    star_lattice_sequences, stratum_matrix)
from starwalk.graphs import (RootedGraph, build_cycle, build_k2, build_path, build_star_lattice,
                             star_power, stratify)

TREE = RootedGraph(6, ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5)), 0, "tree")


def invariant_graphs():
    for N in (1, 2, 3, 6):
        yield star_power(build_path(3), N)
        yield star_power(build_cycle(4), N)
        yield build_star_lattice(N, 5)
    yield build_k2()
    yield build_cycle(5)
    yield build_cycle(6)


@pytest.mark.parametrize("N", range(1, 9))
def test_star_p3_sequences(N):
    j, report = quantum_decompose(star_power(build_path(3), N))
    assert report.invariant
    np.testing.assert_allclose(j.omega, [N, 1], atol=1e-10)
    np.testing.assert_allclose(j.alpha, [0, 0, 0], atol=1e-12)


@pytest.mark.parametrize("N", range(1, 9))
def test_star_c4_sequences(N):
    j, report = quantum_decompose(star_power(build_cycle(4), N))
    assert report.invariant
    np.testing.assert_allclose(j.omega, [2 * N, 2], atol=1e-10)
    np.testing.assert_allclose(j.alpha, [0, 0, 0], atol=1e-12)


@pytest.mark.parametrize("N,L", [(1, 4), (3, 2), (4, 7), (8, 12)])
def test_star_lattice_sequences(N, L):
    j, report = quantum_decompose(build_star_lattice(N, L))
    assert report.invariant
    np.testing.assert_allclose(j.omega, [N] + [1] * (L - 1), atol=1e-10)
    assert np.allclose(j.alpha, 0)


def test_tree_is_not_invariant():
    j, report = quantum_decompose(TREE)
    assert not report.invariant
    # A|phi_2> = (2|a> + |b>)/sqrt(3); its part orthogonal to |phi_1> has norm 1/sqrt(6)
    assert report.per_stratum_residuals[2] == pytest.approx(1 / np.sqrt(6), abs=1e-12)
    assert report.per_stratum_residuals[0] == pytest.approx(0, abs=1e-12)


def test_k2_sequences():
    j = k2_sequences()
    assert j.depth == 2
    assert j.omega == (1.0,) and j.alpha == (0.0, 0.0)
    assert j == quantum_decompose(build_k2())[0]


@pytest.mark.parametrize("g", list(invariant_graphs()), ids=lambda g: g.label)
def test_jacobi_matrix_reproduces_stratum_matrix(g):
    s = stratify(g)
    j, report = quantum_decompose(g, s)
    assert report.invariant
    np.testing.assert_allclose(j.jacobi_matrix(), stratum_matrix(g, s), atol=1e-12)


@pytest.mark.parametrize("g", list(invariant_graphs()) + [TREE], ids=lambda g: g.label)
def test_first_omega_is_root_degree(g):
    j, _ = quantum_decompose(g)
    assert j.omega[0] == pytest.approx(g.degree(g.root), abs=1e-12)


def test_scaling_of_first_omega():
    for N in range(1, 51):
        j, _ = quantum_decompose(star_power(build_path(3), N))
        assert abs(j.omega[0] - N) < 1e-10


def test_cycle_alpha_nonzero_on_odd_cycle():
    j, report = quantum_decompose(build_cycle(5))
    assert report.invariant
    np.testing.assert_allclose(j.omega, [2, 1], atol=1e-12)
    np.testing.assert_allclose(j.alpha, [0, 0, 1], atol=1e-12)


def test_report_tolerance_controls_verdict():
    _, loose = quantum_decompose(TREE, tolerance=1.0)
    assert loose.invariant
    with pytest.raises(ValueError):
        quantum_decompose(TREE, tolerance=0.0)


def test_sequence_validation():
    with pytest.raises(ValueError):
        JacobiSequences((1.0, 0.0), (0, 0, 0))
    with pytest.raises(ValueError):
        JacobiSequences((1.0,), (0, 0, 0, 0))
    with pytest.raises(ValueError):
        JacobiSequences((np.inf,), (0, 0))
    assert JacobiSequences((2.0,), (0.0,)).alpha == (0.0, 0.0)


def test_unit_tail_extends_sequences():
    j = star_lattice_sequences(5)
    assert [j.w(k) for k in range(1, 5)] == [5, 1, 1, 1]
    assert j.a(40) == 0
    with pytest.raises(IndexError):
        k2_sequences().w(2)

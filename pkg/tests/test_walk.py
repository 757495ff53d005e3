import numpy as np
import pytest

from starwalk.decomposition import (JacobiSequences, k2_sequences, quantum_decompose,
                                    star_c4_sequences, star_lattice_sequences, star_p3_sequences)
from starwalk.graphs import (build_cycle, build_k2, build_path, build_star_lattice, star_power,
                             stratify)
from starwalk.spectral import quadrature_measure, star_lattice_measure
from starwalk.walk import (AmplitudeSeries, amplitudes_oracle, amplitudes_spectral,
                           convergence_study, line_bessel_amplitudes, path_bessel_amplitudes,
                           per_vertex_probability, qclt_amplitudes, qclt_limit,
                           star_c4_closed_form, star_p3_closed_form, vertex_amplitudes_oracle)

T = np.arange(0.0, 10.0 + 1e-12, 0.5)


def finite_graphs():
    for N in range(1, 9):
        yield star_power(build_path(3), N)
        yield star_power(build_cycle(4), N)
    for N in (1, 2, 3, 8):
        for L in (4, 7, 12):
            yield build_star_lattice(N, L)


@pytest.mark.parametrize("g", list(finite_graphs()), ids=lambda g: g.label)
def test_spectral_matches_oracle(g):
    s = stratify(g)
    j, report = quantum_decompose(g, s)
    assert report.invariant
    spec = amplitudes_spectral(j, times=T)
    orac = amplitudes_oracle(g, s, T)
    assert np.max(np.abs(spec.amplitudes - orac.amplitudes)) < 1e-8
    assert np.max(np.abs(spec.total_probability() - 1)) < 1e-8
    assert np.max(np.abs(orac.total_probability() - 1)) < 1e-12


@pytest.mark.parametrize("N", [1, 3, 8])
def test_star_p3_closed_forms(N):
    t = np.linspace(0, 4 * np.pi, 256)
    spec = amplitudes_spectral(star_p3_sequences(N), times=t)
    np.testing.assert_allclose(spec.amplitudes, star_p3_closed_form(N, t).amplitudes, atol=1e-10)


@pytest.mark.parametrize("N", range(1, 9))
def test_star_c4_second_stratum_from_oracle(N):
    g = star_power(build_cycle(4), N)
    t = np.linspace(0, 4 * np.pi, 64)
    oracle = amplitudes_oracle(g, times=t).amplitudes
    np.testing.assert_allclose(oracle, star_c4_closed_form(N, t).amplitudes, atol=1e-10)
    assert abs(oracle[0, 2]) < 1e-12


def test_q0_at_half_pi_for_three_copies():
    g = star_power(build_path(3), 3)
    t = [np.pi / 2]
    assert amplitudes_oracle(g, times=t).amplitudes[0, 0] == pytest.approx(-0.5, abs=1e-12)
    assert amplitudes_spectral(star_p3_sequences(3), times=t).amplitudes[0, 0] == pytest.approx(-0.5, abs=1e-12)


def test_k2_walk():
    t = np.linspace(0, 7, 50)
    want = np.column_stack([np.cos(t), -1j * np.sin(t)])
    np.testing.assert_allclose(amplitudes_oracle(build_k2(), times=t).amplitudes, want, atol=1e-14)
    np.testing.assert_allclose(amplitudes_spectral(k2_sequences(), times=t).amplitudes, want, atol=1e-14)


def test_initial_state_is_root():
    for j in (star_p3_sequences(4), star_c4_sequences(2), k2_sequences()):
        q = amplitudes_spectral(j, times=[0.0]).amplitudes[0]
        np.testing.assert_allclose(q, np.eye(1, j.depth)[0], atol=1e-13)
    q = amplitudes_spectral(star_lattice_sequences(5), k_max=5, times=[0.0]).amplitudes[0]
    np.testing.assert_allclose(q, np.eye(1, 6)[0], atol=1e-12)


def test_strata_beyond_depth_are_zero():
    q = amplitudes_spectral(star_p3_sequences(2), k_max=5, times=T).amplitudes
    assert np.all(q[:, 3:] == 0)


@pytest.mark.parametrize("j", [star_p3_sequences(5), star_c4_sequences(3),
                               quantum_decompose(build_star_lattice(3, 6))[0]], ids=str)
def test_time_reversal_is_conjugation(j):
    fwd = amplitudes_spectral(j, times=T).amplitudes
    back = amplitudes_spectral(j, times=-T).amplitudes
    np.testing.assert_allclose(back, fwd.conj(), atol=1e-12)


def test_path_bessel_forms():
    t = np.linspace(0, 20, 161)
    got = amplitudes_spectral(star_lattice_sequences(1), k_max=6, times=t).amplitudes
    np.testing.assert_allclose(got, path_bessel_amplitudes(6, t).amplitudes, atol=1e-8)


def test_line_bessel_forms():
    t = np.linspace(0, 20, 161)
    got = amplitudes_spectral(star_lattice_sequences(2), k_max=6, times=t).amplitudes
    np.testing.assert_allclose(got, line_bessel_amplitudes(6, t).amplitudes, atol=1e-8)


@pytest.mark.parametrize("N", [3, 5])
def test_infinite_lattice_matches_long_truncation(N):
    # the root-side strata of a long truncation see no boundary before t ~ L/2
    t = np.linspace(0, 5, 26)
    inf = amplitudes_spectral(star_lattice_sequences(N), k_max=4, times=t).amplitudes
    g = build_star_lattice(N, 40)
    fin = amplitudes_oracle(g, times=t).amplitudes[:, :5]
    np.testing.assert_allclose(inf, fin, atol=1e-9)


@pytest.mark.parametrize("N", [1, 2, 4])
@pytest.mark.parametrize("L", [12, 16])
def test_truncation_stability_of_return_amplitude(N, L):
    t = np.linspace(0, L / 2, 41)
    short = amplitudes_oracle(build_star_lattice(N, L), times=t).amplitudes[:, 0]
    long = amplitudes_oracle(build_star_lattice(N, L + 4), times=t).amplitudes[:, 0]
    assert np.max(np.abs(short - long)) < 1e-6


def test_infinite_lattice_conserves_probability_in_bulk():
    t = np.linspace(0, 3, 13)
    q = amplitudes_spectral(star_lattice_sequences(4), k_max=30, times=t)
    np.testing.assert_allclose(q.total_probability(), 1, atol=1e-8)


def test_inconsistent_measure_rejected():
    j = star_c4_sequences(4)
    bumped = JacobiSequences((j.omega[0] * (1 + 1e-3), j.omega[1]), j.alpha)
    with pytest.raises(ValueError, match="orthogonalise"):
        amplitudes_spectral(bumped, quadrature_measure(j), times=T)
    with pytest.raises(ValueError):
        amplitudes_spectral(star_lattice_sequences(3), star_lattice_measure(4), k_max=3, times=T)


def test_infinite_sequence_needs_k_max():
    with pytest.raises(ValueError):
        amplitudes_spectral(star_lattice_sequences(3), times=T)


def test_oracle_size_cap():
    with pytest.raises(ValueError, match="cap"):
        amplitudes_oracle(build_path(30), times=T, max_vertices=20)


# ------------------------------------------------------------- per vertex

def test_per_vertex_probability():
    g = star_power(build_path(3), 3)
    s = stratify(g)
    j, _ = quantum_decompose(g, s)
    series = amplitudes_spectral(j, times=T)
    probs = per_vertex_probability(series, s)
    np.testing.assert_allclose(probs.sum(axis=1), 1, atol=1e-12)
    assert probs[0, 0] == pytest.approx(1)
    for v in s.strata[1]:
        np.testing.assert_allclose(probs[:, v], np.abs(series.amplitudes[:, 1]) ** 2 / 3)
    with pytest.raises(ValueError):
        per_vertex_probability(amplitudes_spectral(j, k_max=1, times=T), s)


@pytest.mark.parametrize("g", [star_power(build_cycle(4), 3), build_star_lattice(4, 5)], ids=str)
def test_vertex_oracle_is_uniform_on_strata(g):
    s = stratify(g)
    psi = vertex_amplitudes_oracle(g, T)
    prob = np.abs(psi) ** 2
    series = amplitudes_oracle(g, s, T)
    np.testing.assert_allclose(prob, per_vertex_probability(series, s), atol=1e-12)


# ----------------------------------------------------------------- QCLT

def test_qclt_limit_walk():
    lim = qclt_limit([np.pi / 4, 0.0, 1.3]).amplitudes
    np.testing.assert_allclose(np.abs(lim[0]) ** 2, [0.5, 0.5])
    np.testing.assert_allclose((np.abs(lim) ** 2).sum(axis=1), 1)
    assert lim[1, 1] == 0
    assert qclt_limit([1.0], k_max=3).amplitudes.shape == (1, 4)


@pytest.mark.parametrize("N", [1, 10, 1000])
def test_qclt_star_p3_closed_form(N):
    t = np.linspace(0, 2 * np.pi, 50)
    q = qclt_amplitudes(star_p3_sequences, N, 2, t).amplitudes
    c = np.sqrt((N + 1) / N)
    np.testing.assert_allclose(q[:, 0], (1 + N * np.cos(c * t)) / (N + 1), atol=1e-12)


def test_qclt_star_p3_second_stratum_vanishes_slowly():
    t = np.linspace(0, 2 * np.pi, 256)
    tails = [np.abs(qclt_amplitudes(star_p3_sequences, N, 2, t).amplitudes[:, 2]).max()
             for N in (10, 100, 1000, 10000)]
    assert all(b < a for a, b in zip(tails, tails[1:]))
    # sup_t |q_2| = 2 sqrt(N) / (N + 1), reached where the rescaled cosine hits -1
    np.testing.assert_allclose(tails, [2 * np.sqrt(N) / (N + 1) for N in (10, 100, 1000, 10000)], rtol=1e-3)


def test_qclt_lattice_higher_strata_vanish():
    t = np.linspace(0, 2 * np.pi, 128)
    q = qclt_amplitudes(star_lattice_sequences, 10000, 5, t).amplitudes
    lim = qclt_limit(t).amplitudes
    assert np.abs(q[:, :2] - lim).max() < 1e-3
    assert np.abs(q[:, 3:]).max() < 1e-3


def test_convergence_study_examples():
    t = np.linspace(0, 2 * np.pi, 256)
    r = convergence_study(star_p3_sequences, [1, 10, 100, 1000, 10000], 2, t)
    assert r.sup_errors[2] < r.sup_errors[1]
    assert all(b < a for a, b in zip(r.sup_errors[1:], r.sup_errors[2:]))
    direct = qclt_amplitudes(star_p3_sequences, 1, 2, t).amplitudes
    lim = np.column_stack([np.cos(t), -1j * np.sin(t), np.zeros_like(t)])
    assert r.sup_errors[0] == pytest.approx(np.abs(direct - lim).max())
    assert r.sup_errors[0] > 0.5
    with pytest.raises(ValueError):
        convergence_study(star_p3_sequences, [], 2, t)


def test_series_validation():
    with pytest.raises(ValueError):
        AmplitudeSeries(np.zeros(3), np.zeros((2, 2)), "spectral")
    with pytest.raises(ValueError):
        AmplitudeSeries(np.zeros(2), np.zeros((2, 2)), "magic")

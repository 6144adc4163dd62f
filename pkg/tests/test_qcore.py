import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fourqubit.families import g_ag, ghz4, phi2
from fourqubit.qcore import (PAIRS, SIGMA_X, SIGMA_Z, EigenConvergenceError, PureState4, StateFileError,
                             apply_local, basis_state, eig_complex, eig_complex_4, expectation, is_hermitian,
                             kron_all, load_state, local_det, random_state, reduced_density,
                             reduced_density_single, save_state, sphere_quadratic_max, state_from_amplitudes,
                             state_from_json, state_to_json)

from conftest import brute_partial_trace, random_su2

I2 = np.eye(2)


# -- construction ---------------------------------------------------------------

def test_from_amplitudes_basis():
    s = state_from_amplitudes(np.eye(16)[0], renormalize=True)
    assert s.amps[0] == 1 and s.normalized


def test_from_amplitudes_scaling():
    s = state_from_amplitudes([2] + [0] * 15, renormalize=True)
    assert s.amps[0] == 1


def test_from_amplitudes_uniform():
    s = state_from_amplitudes(np.ones(16), renormalize=True)
    np.testing.assert_allclose(s.amps, 0.25, atol=1e-15)


def test_from_amplitudes_errors():
    with pytest.raises(ValueError):
        state_from_amplitudes(np.ones(15))
    with pytest.raises(ValueError):
        state_from_amplitudes(np.zeros(16), renormalize=True)
    with pytest.raises(ValueError):
        state_from_amplitudes([np.nan] + [0] * 15)


def test_roundtrip_is_identity(rng):
    a = rng.normal(size=16) + 1j * rng.normal(size=16)
    s = state_from_amplitudes(a)
    assert np.array_equal(s.amps, a)
    assert not s.normalized


def test_normalized_flag_requires_unit_norm():
    with pytest.raises(ValueError):
        PureState4(np.ones(16, complex), normalized=True)


def test_amps_read_only():
    s = basis_state("0000")
    with pytest.raises(ValueError):
        s.amps[0] = 2


def test_basis_state_bit_order():
    assert basis_state("0011").amps[3] == 1
    assert basis_state("1000").amps[8] == 1
    with pytest.raises(ValueError):
        basis_state("012")


def test_equality_and_hash():
    assert basis_state("0101") == basis_state("0101")
    assert hash(basis_state("0101")) == hash(basis_state("0101"))
    assert basis_state("0101") != basis_state("1010")


# -- local operations -------------------------------------------------------------

def test_apply_identity_exact(rng):
    s = random_state(rng)
    assert np.array_equal(apply_local(s, [I2] * 4).amps, s.amps)


def test_apply_bit_flip_qubit1():
    out = apply_local(basis_state("0000"), [SIGMA_X, I2, I2, I2])
    assert out.amps[8] == 1 and np.count_nonzero(out.amps) == 1


def test_apply_matches_kron(rng):
    s = random_state(rng)
    ops = [rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4)]
    np.testing.assert_allclose(apply_local(s, ops).amps, kron_all(*ops) @ s.amps, atol=1e-13)


def test_apply_does_not_renormalize():
    out = apply_local(basis_state("0000"), [2 * I2, I2, I2, I2])
    assert out.amps[0] == 2 and not out.normalized


def test_local_det():
    assert local_det(np.array([[2, 1], [1, 1]])) == pytest.approx(1)


def test_is_hermitian():
    assert is_hermitian(SIGMA_X)
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))


# -- reductions -------------------------------------------------------------------

def test_reduced_basis():
    np.testing.assert_array_equal(reduced_density(basis_state("0000"), (1, 2)), np.diag([1, 0, 0, 0]))


def test_reduced_ghz():
    np.testing.assert_allclose(reduced_density(ghz4(2**-0.5), (1, 2)), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)


@pytest.mark.parametrize("pair", PAIRS)
def test_reduced_matches_brute_force(pair):
    for s in (phi2(2, 2), g_ag(0.2)):
        rho = reduced_density(s, pair)
        ref = brute_partial_trace(s.amps, tuple(q - 1 for q in pair))
        np.testing.assert_allclose(rho, ref, atol=1e-14)
        assert abs(np.trace(rho) - 1) < 1e-12
        assert is_hermitian(rho)
        assert np.linalg.eigvalsh(rho).min() > -1e-12


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_reduced_single_matches_brute_force(q):
    s = g_ag(0.2)
    np.testing.assert_allclose(reduced_density_single(s, q), brute_partial_trace(s.amps, (q - 1,)),
                               atol=1e-14)


def test_reduced_single_ghz():
    g = 0.6
    np.testing.assert_allclose(reduced_density_single(ghz4(g), 1), np.diag([g * g, 1 - g * g]), atol=1e-15)


def test_reduced_pair_traces_to_single(rng):
    s = random_state(rng)
    for i, j in PAIRS:
        r = reduced_density(s, (i, j)).reshape(2, 2, 2, 2)
        np.testing.assert_allclose(np.einsum("ajbj->ab", r), reduced_density_single(s, i), atol=1e-12)
        np.testing.assert_allclose(np.einsum("iaib->ab", r), reduced_density_single(s, j), atol=1e-12)


@pytest.mark.parametrize("pair", [(1, 1), (2, 1), (0, 1), (1, 5)])
def test_reduced_bad_pair(pair):
    with pytest.raises(ValueError):
        reduced_density(basis_state("0000"), pair)


def test_reduced_needs_normalized():
    with pytest.raises(ValueError):
        reduced_density(state_from_amplitudes(np.ones(16)), (1, 2))


# -- expectation --------------------------------------------------------------------

def test_expectation_identity(rng):
    assert expectation(random_state(rng), np.eye(16)) == pytest.approx(1, abs=1e-14)


def test_expectation_parity():
    zzzz = kron_all(*[SIGMA_Z] * 4)
    assert expectation(ghz4(0.3), zzzz) == pytest.approx(1, abs=1e-14)


def test_expectation_xxxx():
    xxxx = kron_all(*[SIGMA_X] * 4)
    psi = ghz4(2**-0.5).amps
    assert expectation(ghz4(2**-0.5), xxxx) == pytest.approx((psi.conj() @ xxxx @ psi).real, abs=1e-15)
    assert expectation(ghz4(2**-0.5), xxxx) == pytest.approx(1, abs=1e-14)


def test_expectation_rejects_non_hermitian():
    m = np.zeros((16, 16))
    m[0, 1] = 1
    with pytest.raises(ValueError):
        expectation(basis_state("0000"), m)


# -- eigenvalues ----------------------------------------------------------------------

def test_eig_identity():
    np.testing.assert_allclose(eig_complex_4(np.eye(4)), 1, atol=1e-14)


def test_eig_diag():
    np.testing.assert_allclose(eig_complex_4(np.diag([1.0, 3, 2, 4])), [4, 3, 2, 1], atol=1e-14)


def test_eig_companion_fourth_roots():
    # companion matrix of x^4 - 1
    c = np.zeros((4, 4))
    c[1:, :3] = np.eye(3)
    c[0, 3] = 1
    lam = eig_complex_4(c)
    np.testing.assert_allclose(lam, [1, 1j, -1j, -1], atol=1e-12)
    assert lam[0].real >= lam[1].real >= lam[3].real


def _charpoly_residual(m, lam):
    return abs(np.linalg.det(m - lam * np.eye(4)))


def test_eig_random_against_numpy(rng):
    for _ in range(200):
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        lam = eig_complex_4(m)
        ref = np.linalg.eigvals(m)
        assert np.all(np.diff(lam.real) <= 1e-12)
        # match as multisets
        for v in lam:
            assert np.min(np.abs(ref - v)) < 1e-9 * max(1, np.abs(ref).max())
        scale = np.linalg.norm(m, 2)
        assert max(_charpoly_residual(m, v) for v in lam) <= 1e-9 * scale**4
        assert abs(lam.sum() - np.trace(m)) <= 1e-9 * scale
        assert abs(np.prod(lam) - np.linalg.det(m)) <= 1e-9 * scale**4


def test_eig_density_products():
    for s in (phi2(2, 2), g_ag(0.3), ghz4(0.6)):
        rho = reduced_density(s, (1, 2))
        lam = eig_complex_4(rho)
        np.testing.assert_allclose(np.sort(lam.real), np.linalg.eigvalsh(rho), atol=1e-12)


def test_eig_general_size(rng):
    m = rng.normal(size=(7, 7))
    lam = eig_complex(m)
    ref = np.linalg.eigvals(m)
    for v in lam:
        assert np.min(np.abs(ref - v)) < 1e-9


def test_eig_rejects_bad_input():
    with pytest.raises(ValueError):
        eig_complex_4(np.eye(3))
    with pytest.raises(ValueError):
        eig_complex_4(np.full((4, 4), np.inf))


def test_eig_error_type():
    assert issubclass(EigenConvergenceError, RuntimeError)


# -- sphere quadratic --------------------------------------------------------------------

def _sphere_grid(step=1e-3):
    th = np.arange(0, math.pi + step, step)
    ph = np.arange(0, 2 * math.pi, step)
    t, p = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], -1).reshape(-1, 3)


def _obj(Q, b, a):
    return np.einsum("ni,ij,nj->n", a, Q, a) + 2 * a @ b


def test_sphere_top_eigenvector():
    a, v = sphere_quadratic_max(np.diag([3.0, 1, 0]), np.zeros(3))
    np.testing.assert_allclose(a, [1, 0, 0], atol=1e-15)
    assert v == pytest.approx(3, abs=1e-14)


def test_sphere_linear_only():
    a, v = sphere_quadratic_max(np.zeros((3, 3)), np.array([0.0, 2, 0]))
    np.testing.assert_allclose(a, [0, 1, 0], atol=1e-15)
    assert v == pytest.approx(4, abs=1e-14)


def test_sphere_against_angular_grid():
    Q = np.diag([2.0, 1, 0])
    b = np.array([0.3, 0.4, 0])
    a, v = sphere_quadratic_max(Q, b)
    best = _obj(Q, b, _sphere_grid()).max()
    assert abs(v - best) < 1e-5
    assert v >= best - 1e-12
    assert abs(np.linalg.norm(a) - 1) < 1e-12
    assert abs(a @ Q @ a + 2 * b @ a - v) < 1e-12


def test_sphere_tie_break_lowest_index():
    a, _ = sphere_quadratic_max(np.eye(3), np.zeros(3))
    np.testing.assert_allclose(np.abs(a), [1, 0, 0], atol=1e-15)


def test_sphere_hard_case():
    # b orthogonal to the top eigenvector: maximiser leaves the b direction
    Q = np.diag([1.0, 0.0, 0.0])
    b = np.array([0.0, 0.2, 0.0])
    a, v = sphere_quadratic_max(Q, b)
    best = _obj(Q, b, _sphere_grid(2e-3)).max()
    assert v == pytest.approx(1 + 0.04, abs=1e-12)
    assert v >= best - 1e-12


def test_sphere_rejects_asymmetric():
    with pytest.raises(ValueError):
        sphere_quadratic_max(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], float), np.zeros(3))


sym3 = st.lists(st.floats(-5, 5), min_size=9, max_size=9)
vec3 = st.lists(st.floats(-5, 5), min_size=3, max_size=3)


@settings(max_examples=60, deadline=None)
@given(sym3, vec3, st.integers(0, 2**32 - 1))
def test_sphere_beats_random_points(q, b, seed):
    Q = np.array(q).reshape(3, 3)
    Q = (Q + Q.T) / 2
    b = np.array(b)
    a, v = sphere_quadratic_max(Q, b)
    assert abs(np.linalg.norm(a) - 1) < 1e-12
    assert abs(a @ Q @ a + 2 * b @ a - v) <= 1e-12 * max(1, abs(v))
    x = np.random.default_rng(seed).normal(size=(1000, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    assert v >= _obj(Q, b, x).max() - 1e-12 * max(1, abs(v))


# -- state files ---------------------------------------------------------------------------

def test_json_roundtrip(tmp_path, rng):
    s = random_state(rng)
    path = tmp_path / "s.json"
    save_state(s, path)
    t = load_state(path)
    assert np.array_equal(t.amps, s.amps) and t.normalized


def test_json_schema():
    doc = json.loads(state_to_json(ghz4(0.6)))
    assert set(doc) == {"amplitudes", "normalized"}
    assert len(doc["amplitudes"]) == 16 and all(len(p) == 2 for p in doc["amplitudes"])


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"amplitudes": [[1, 0]], "normalized": true}',
    '{"amplitudes": ' + json.dumps([[0, 0]] * 16) + ', "normalized": false}',
    '{"amplitudes": ' + json.dumps([[1, 0, 0]] + [[0, 0]] * 15) + ', "normalized": true}',
    '{"amplitudes": ' + json.dumps([["a", 0]] + [[0, 0]] * 15) + ', "normalized": true}',
    '{"amplitudes": ' + json.dumps([[1, 0]] + [[0, 0]] * 15) + ', "normalized": "yes"}',
    '{"normalized": true}',
])
def test_json_schema_errors(text):
    with pytest.raises(StateFileError):
        state_from_json(text)


def test_json_unnormalized_input_is_renormalized():
    doc = {"amplitudes": [[3, 0]] + [[0, 0]] * 14 + [[0, 4]], "normalized": False}
    s = state_from_json(json.dumps(doc))
    assert s.normalized
    np.testing.assert_allclose(s.amps[[0, 15]], [0.6, 0.8j])


def test_random_state_normalized(rng):
    for _ in range(10):
        assert abs(random_state(rng).norm() - 1) < 1e-12


def test_su2_is_unitary(rng):
    u = random_su2(rng)
    np.testing.assert_allclose(u @ u.conj().T, I2, atol=1e-14)

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from quditbell import (
    DimensionError,
    QuditObservable,
    ValidationError,
    bloch_ball_radius,
    build_basis,
    from_bloch,
    in_bloch_region,
    in_pm1_shell,
    make_diag_pm1,
    make_offdiag_imag_pm1,
    make_offdiag_real_pm1,
    random_pm1_observable,
    to_bloch,
)

from conftest import SX, SY, SZ, random_traceless_hermitian


class TestCorrespondence:
    def test_sigma_z_maps_to_unit_z(self):
        assert_allclose(to_bloch(SZ).coords, [0, 0, 1], atol=1e-14)

    def test_tilted_qubit_observable(self):
        r = to_bloch((SX + SZ) / np.sqrt(2))
        assert_allclose(r.coords, [1 / np.sqrt(2), 0, 1 / np.sqrt(2)], atol=1e-14)

    def test_d4_diag_supported_on_diagonal_block(self):
        r = to_bloch(np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex))
        assert abs(r.norm - 1.0) <= 1e-12
        # symmetric and antisymmetric coordinates vanish
        assert np.max(np.abs(r.coords[:12])) <= 1e-14
        assert np.max(np.abs(r.coords[12:])) > 0.1

    def test_from_bloch_examples(self):
        assert_allclose(from_bloch([0, 0, 1], 2).matrix, SZ, atol=1e-14)
        assert_allclose(from_bloch([1, 0, 0], 2).matrix, SX, atol=1e-14)

    def test_norm_identity(self, rng):
        for d in (2, 3, 4, 5):
            for _ in range(40):
                x = random_traceless_hermitian(d, rng)
                r = to_bloch(x)
                assert abs(np.trace(x @ x).real - d * r.norm**2) <= 1e-9

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=2**31))
    @settings(max_examples=80, deadline=None)
    def test_roundtrip_bijection(self, d, seed):
        x = random_traceless_hermitian(d, np.random.default_rng(seed))
        back = from_bloch(to_bloch(x)).matrix
        assert np.max(np.abs(back - x)) <= 1e-11

    def test_roundtrip_corpus(self):
        rng = np.random.default_rng(99)
        for d in (2, 3, 4, 5):
            worst = 0.0
            for _ in range(1000):
                x = random_traceless_hermitian(d, rng)
                worst = max(worst, float(np.max(np.abs(from_bloch(to_bloch(x)).matrix - x))))
            assert worst <= 1e-11, f"d={d}: {worst:.2e}"

    @given(st.integers(min_value=2, max_value=5), st.integers(min_value=0, max_value=2**31))
    @settings(max_examples=40, deadline=None)
    def test_roundtrip_vector_side(self, d, seed):
        rng = np.random.default_rng(seed)
        r = rng.standard_normal(d * d - 1)
        r /= np.linalg.norm(r)
        assert_allclose(from_bloch(r, d).bloch.coords, r, atol=1e-13)
        assert_allclose(to_bloch(from_bloch(r, d).matrix).coords, r, atol=1e-12)

    def test_rejects_bad_matrices(self):
        with pytest.raises(ValidationError, match="hermitian"):
            to_bloch(np.array([[0, 1], [0, 0]], dtype=complex))
        with pytest.raises(ValidationError, match="traceless"):
            to_bloch(np.eye(2, dtype=complex))
        with pytest.raises(ValidationError):
            from_bloch([1.0, 0.0], 2)


class TestMembership:
    def test_qubit_region(self):
        assert in_bloch_region([0, 0, 1.0])
        assert not in_bloch_region([0, 0, 1.01])

    def test_qutrit_diagonal_direction_excluded(self):
        # the first diagonal generator has eigenvalues {1, -1, 0}
        r = np.zeros(8)
        r[6] = 1.0
        assert not in_bloch_region(r)

    def test_odd_dim_ball(self, rng):
        assert bloch_ball_radius(3) == pytest.approx(np.sqrt(2.0 / 3.0))
        assert bloch_ball_radius(2) == 1.0
        assert bloch_ball_radius(5) == pytest.approx(np.sqrt(4.0 / 5.0))
        # scaling an accepted vector keeps it accepted
        for _ in range(20):
            x = random_traceless_hermitian(3, rng)
            r = to_bloch(x)
            assert in_bloch_region(r, tol=1e-9)
            assert r.norm <= bloch_ball_radius(3) + 1e-10
            scaled = r.coords * rng.uniform(0.0, 1.0)
            assert in_bloch_region(scaled, tol=1e-9)

    def test_pm1_shell_qubit_any_unit_vector(self, rng):
        for _ in range(20):
            r = rng.standard_normal(3)
            r /= np.linalg.norm(r)
            assert in_pm1_shell(r, tol=1e-10)

    def test_pm1_shell_d4(self):
        assert in_pm1_shell(to_bloch(np.diag([1, 1, -1, -1]).astype(complex)), tol=1e-10)
        # unit norm but spectrum {sqrt2, -sqrt2, 0, 0}: not the +-1 shell
        r = to_bloch(np.sqrt(2) * np.diag([1.0, -1.0, 0, 0]).astype(complex))
        assert abs(r.norm - 1.0) <= 1e-12
        assert not in_pm1_shell(r)

    def test_pm1_shell_odd_dim_is_empty(self, rng):
        r = rng.standard_normal(8)
        r /= np.linalg.norm(r)
        assert not in_pm1_shell(r)


class TestConstructors:
    def test_diag_qubit(self):
        assert_allclose(make_diag_pm1(2, [1, -1]).matrix, SZ)

    def test_diag_d4(self):
        obs = make_diag_pm1(4, [1, 1, -1, -1])
        assert_allclose(obs.matrix, np.diag([1, 1, -1, -1]).astype(complex))

    def test_diag_errors(self):
        with pytest.raises(ValidationError, match="sum"):
            make_diag_pm1(4, [1, -1, 1, 1])
        with pytest.raises(DimensionError):
            make_diag_pm1(3, [1, -1, 1])
        with pytest.raises(ValidationError):
            make_diag_pm1(2, [2, -2])

    def test_offdiag_real(self):
        assert_allclose(make_offdiag_real_pm1(2, [0]).matrix, SX)
        obs = make_offdiag_real_pm1(4, [0, 0])
        expected = np.zeros((4, 4), dtype=complex)
        expected[:2, :2] = SX
        expected[2:, 2:] = SX
        assert_allclose(obs.matrix, expected)
        flipped = make_offdiag_real_pm1(4, [0, 1])
        expected[2:, 2:] = -SX
        assert_allclose(flipped.matrix, expected)

    def test_offdiag_imag(self):
        # the g = 0 block is minus the antisymmetric generator
        assert_allclose(make_offdiag_imag_pm1(2, [1]).matrix, SY)
        assert_allclose(make_offdiag_imag_pm1(2, [0]).matrix, -SY)
        obs = make_offdiag_imag_pm1(6, [1, 0, 1])
        expected = np.zeros((6, 6), dtype=complex)
        expected[:2, :2] = SY
        expected[2:4, 2:4] = -SY
        expected[4:, 4:] = SY
        assert_allclose(obs.matrix, expected)

    def test_offdiag_errors(self):
        with pytest.raises(DimensionError):
            make_offdiag_real_pm1(3, [0])
        with pytest.raises(ValidationError):
            make_offdiag_imag_pm1(4, [0, 1, 0])

    @pytest.mark.parametrize("d", [2, 4, 6])
    def test_all_constructions_have_pm1_spectrum(self, d, rng):
        observables = []
        for _ in range(4):
            signs = np.concatenate([np.ones(d // 2), -np.ones(d // 2)])
            rng.shuffle(signs)
            observables.append(make_diag_pm1(d, signs.astype(int)))
            gammas = rng.integers(0, 4, size=d // 2)
            observables.append(make_offdiag_real_pm1(d, gammas))
            observables.append(make_offdiag_imag_pm1(d, gammas))
        observables.append(random_pm1_observable(d, seed=11))
        for obs in observables:
            assert np.max(np.abs(np.abs(obs.eigenvalues()) - 1.0)) <= 1e-10
            assert in_pm1_shell(obs.bloch, tol=1e-10)


class TestRandomObservable:
    def test_deterministic(self):
        a = random_pm1_observable(4, seed=7)
        b = random_pm1_observable(4, seed=7)
        assert_allclose(a.matrix, b.matrix)
        c = random_pm1_observable(4, seed=8)
        assert np.max(np.abs(a.matrix - c.matrix)) > 1e-3

    def test_spectrum_and_shell(self):
        obs = random_pm1_observable(4, seed=7)
        assert_allclose(np.sort(obs.eigenvalues()), [-1, -1, 1, 1], atol=1e-12)
        assert abs(np.trace(obs.matrix)) <= 1e-12
        assert in_pm1_shell(obs.bloch, tol=1e-10)

    def test_odd_dim_rejected(self):
        with pytest.raises(DimensionError):
            random_pm1_observable(3, seed=0)


def test_observable_json_roundtrip():
    obs = make_offdiag_imag_pm1(4, [0, 1])
    payload = json.loads(obs.to_json())
    assert payload["dim"] == 4
    assert len(payload["matrix"]) == 16
    assert len(payload["bloch"]) == 15
    back = QuditObservable.from_json(obs.to_json())
    assert_allclose(back.matrix, obs.matrix)
    assert_allclose(back.bloch.coords, obs.bloch.coords, atol=1e-14)


def test_generators_map_to_unit_coordinates():
    basis = build_basis(3)
    for j, g in enumerate(basis.generators):
        r = to_bloch(np.sqrt(3 / 2) * g)
        expected = np.zeros(8)
        expected[j] = 1.0
        assert_allclose(r.coords, expected, atol=1e-13)

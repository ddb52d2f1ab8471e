import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oqwc.quantum import (
    apply_channel,
    check_density_block,
    check_kraus_completeness,
    dagger,
    fidelity_pure,
    gate_cnot,
    gate_hadamard,
    gate_identity,
    gate_ry,
    is_hermitian,
    kron,
    matmul,
    min_eigenvalue,
)
from oracles import random_density, random_kraus_set, random_unitary

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class TestMatrixOps:
    def test_matmul_identity(self):
        eye = gate_identity(2)
        np.testing.assert_array_equal(matmul(eye, eye), eye)

    def test_matmul_hadamard_involution(self):
        h = gate_hadamard()
        np.testing.assert_allclose(matmul(h, h), gate_identity(2), atol=1e-15)

    def test_matmul_pauli_product(self):
        # X @ Z worked out by hand
        expected = np.array([[0, -1], [1, 0]], dtype=complex)
        np.testing.assert_array_equal(matmul(PAULI_X, PAULI_Z), expected)

    def test_matmul_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            matmul(gate_identity(2), gate_identity(3))

    def test_dagger_identity(self):
        np.testing.assert_array_equal(dagger(gate_identity(2)), gate_identity(2))

    def test_dagger_hand_value(self):
        a = np.array([[0, 1j], [0, 0]])
        expected = np.array([[0, 0], [-1j, 0]])
        np.testing.assert_array_equal(dagger(a), expected)

    def test_dagger_involution(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        np.testing.assert_array_equal(dagger(dagger(a)), a)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            matmul(np.array([[np.nan, 0], [0, 1]]), gate_identity(2))

    def test_kron_identity(self):
        np.testing.assert_array_equal(
            kron(gate_identity(2), gate_identity(2)), gate_identity(4)
        )

    def test_kron_hadamard_on_leading_qubit(self):
        # (H (x) I)|00> evaluated by hand: (|00> + |10>) / sqrt(2)
        state = kron(gate_hadamard(), gate_identity(2)) @ np.array([1, 0, 0, 0])
        expected = np.array([1, 0, 1, 0]) / np.sqrt(2)
        np.testing.assert_allclose(state, expected, atol=1e-15)

    def test_kron_mixed_product(self):
        rng = np.random.default_rng(5)
        a, b, c, d = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
        np.testing.assert_allclose(
            kron(a, b) @ kron(c, d), kron(a @ c, b @ d), atol=1e-12
        )

    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
    def test_kron_dimension_law(self, da, db):
        out = kron(gate_identity(da), gate_identity(db))
        assert out.shape == (da * db, da * db)


class TestGates:
    def test_ry_zero_is_identity(self):
        np.testing.assert_array_equal(gate_ry(0.0), gate_identity(2))

    def test_hadamard_squares_to_identity(self):
        h = gate_hadamard()
        np.testing.assert_allclose(h @ h, gate_identity(2), atol=1e-15)

    def test_ry_pi_flips_zero_ket(self):
        state = gate_ry(np.pi) @ np.array([1, 0])
        assert abs(abs(state[1]) - 1.0) < 1e-15 and abs(state[0]) < 1e-15

    def test_ry_convention_on_zero_ket(self):
        angle = 0.813
        state = gate_ry(angle) @ np.array([1, 0])
        np.testing.assert_allclose(
            state, [np.cos(angle / 2), np.sin(angle / 2)], atol=1e-15
        )

    @pytest.mark.parametrize(
        "gate",
        [gate_identity(2), gate_hadamard(), gate_ry(0.37), gate_ry(-2.2), gate_cnot()],
    )
    def test_gates_are_unitary(self, gate):
        dim = gate.shape[0]
        np.testing.assert_allclose(
            dagger(gate) @ gate, gate_identity(dim), atol=1e-12
        )

    def test_cnot_flips_target_when_control_set(self):
        cnot = gate_cnot()
        np.testing.assert_array_equal(cnot @ np.array([0, 0, 1, 0]), [0, 0, 0, 1])
        np.testing.assert_array_equal(cnot @ np.array([0, 1, 0, 0]), [0, 1, 0, 0])


class TestCompleteness:
    def test_single_identity(self):
        assert check_kraus_completeness([gate_identity(2)])

    def test_weighted_identity_hadamard(self):
        ops = [np.sqrt(0.7) * gate_identity(2), np.sqrt(0.3) * gate_hadamard()]
        assert check_kraus_completeness(ops)

    def test_double_identity_fails(self):
        assert not check_kraus_completeness([gate_identity(2), gate_identity(2)])

    def test_empty_set_raises(self):
        with pytest.raises(ValueError, match="empty"):
            check_kraus_completeness([])


class TestApplyChannel:
    def test_identity_channel(self):
        rng = np.random.default_rng(11)
        rho = random_density(rng, 3)
        np.testing.assert_allclose(apply_channel([gate_identity(3)], rho), rho, atol=1e-15)

    def test_two_branch_channel_on_pure_state(self):
        lam, om = 0.3, 0.7
        u = gate_ry(1.234)
        psi = gate_ry(0.6) @ np.array([1, 0])
        rho = np.outer(psi, psi.conj())
        out = apply_channel([np.sqrt(lam) * gate_identity(2), np.sqrt(om) * u], rho)
        expected = lam * rho + om * (u @ rho @ dagger(u))
        np.testing.assert_allclose(out, expected, atol=1e-15)

    def test_trace_and_hermiticity_preserved(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            dim = int(rng.integers(2, 5))
            ops = random_kraus_set(rng, dim, int(rng.integers(1, 4)))
            rho = random_density(rng, dim)
            out = apply_channel(ops, rho)
            assert abs(out.trace() - rho.trace()) < 1e-10
            assert is_hermitian(out, 1e-10)
            assert min_eigenvalue(out) >= -1e-9

    def test_non_cptp_rejected(self):
        rho = random_density(np.random.default_rng(0), 2)
        with pytest.raises(ValueError, match="not complete"):
            apply_channel([gate_identity(2), gate_identity(2)], rho)

    def test_dimension_mismatch(self):
        rho = random_density(np.random.default_rng(0), 3)
        with pytest.raises(ValueError, match="mismatch"):
            apply_channel([gate_identity(2)], rho)


class TestDensityBlockChecks:
    def test_accepts_valid_block(self):
        rho = 0.5 * random_density(np.random.default_rng(1), 2)
        check_density_block(rho)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            check_density_block(np.array([[0.5, 0.3], [0.0, 0.5]]))

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="semidefinite"):
            check_density_block(np.diag([1.2, -0.2]))

    def test_rejects_trace_above_one(self):
        with pytest.raises(ValueError, match="trace"):
            check_density_block(np.diag([0.8, 0.5]))


class TestFidelityPure:
    def test_matching_pure_state(self):
        rho = np.diag([1.0, 0.0])
        assert fidelity_pure(rho, [1, 0]) == pytest.approx(1.0)

    def test_orthogonal_pure_state(self):
        rho = np.diag([1.0, 0.0])
        assert fidelity_pure(rho, [0, 1]) == pytest.approx(0.0)

    def test_maximally_mixed(self):
        assert fidelity_pure(np.eye(2) / 2, [1, 0]) == pytest.approx(0.5)

    def test_rejects_unnormalized_density(self):
        with pytest.raises(ValueError, match="density"):
            fidelity_pure(np.diag([0.7, 0.0]), [1, 0])

    def test_rejects_unnormalized_vector(self):
        with pytest.raises(ValueError, match="state vector"):
            fidelity_pure(np.eye(2) / 2, [1, 1])

    def test_invariant_under_conjugation(self):
        rng = np.random.default_rng(9)
        u = random_unitary(rng, 4)
        rho = random_density(rng, 4)
        psi = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi /= np.linalg.norm(psi)
        f1 = fidelity_pure(rho, psi)
        f2 = fidelity_pure(u @ rho @ dagger(u), u @ psi)
        assert f1 == pytest.approx(f2, abs=1e-12)

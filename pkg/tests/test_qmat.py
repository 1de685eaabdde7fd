import numpy as np
import pytest

from helpers import charpoly_eigenvalues, damped_pair_table, random_density, random_hermitian
from nmteleport import qmat

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)


def test_matmul_identity_and_involution():
    assert np.array_equal(qmat.matmul(I2, X), X)
    assert np.array_equal(qmat.matmul(X, X), I2)


def test_matmul_damping_operator_square():
    k0 = np.diag([1.0, np.sqrt(0.25)]).astype(np.complex128)
    assert np.allclose(qmat.matmul(k0, qmat.dagger(k0)), np.diag([1.0, 0.25]), atol=1e-15)


def test_matmul_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        qmat.matmul(I2, np.eye(4))


def test_matmul_distributes_over_addition():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = random_hermitian(rng, 4)
        b = random_hermitian(rng, 4)
        c = random_hermitian(rng, 4)
        lhs = qmat.matmul(a, b + c)
        rhs = qmat.matmul(a, b) + qmat.matmul(a, c)
        assert np.max(np.abs(lhs - rhs)) <= 1e-13


def test_kron_identities():
    assert np.array_equal(qmat.kron(I2, I2), np.eye(4))
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    p1 = np.diag([0.0, 1.0]).astype(np.complex128)
    proj01 = qmat.kron(p0, p1)
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0
    assert np.array_equal(proj01, expected)


def test_kron_damping_pattern_at_full_decay():
    k0 = np.diag([1.0, 0.0]).astype(np.complex128)
    k1 = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    result = qmat.kron(k0, k1)
    expected = np.zeros((4, 4), dtype=np.complex128)
    expected[0, 1] = 1.0
    assert np.array_equal(result, expected)


def test_kron_associative():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 2)
        c = random_hermitian(rng, 2)
        left = qmat.kron(qmat.kron(a, b), c)
        right = qmat.kron(a, qmat.kron(b, c))
        assert np.max(np.abs(left - right)) <= 1e-15


def test_kron_rejects_oversized_result():
    with pytest.raises(ValueError, match="exceed"):
        qmat.kron(np.eye(4), np.eye(4))


def test_partial_trace_product_state():
    rng = np.random.default_rng(3)
    rho_a = random_density(rng, 2)
    rho_b = random_density(rng, 2)
    joint = np.kron(rho_a, rho_b)
    assert np.allclose(qmat.partial_trace(joint, (0,), (2, 2)), rho_a, atol=1e-14)
    assert np.allclose(qmat.partial_trace(joint, (1,), (2, 2)), rho_b, atol=1e-14)


def test_partial_trace_bell_marginal():
    bell = np.zeros(4, dtype=np.complex128)
    bell[0] = bell[3] = 1 / np.sqrt(2)
    rho = np.outer(bell, bell.conj())
    assert np.allclose(qmat.partial_trace(rho, (1,), (2, 2)), I2 / 2, atol=1e-15)


def test_partial_trace_recovers_channel_state():
    # Tracing the input qubit out of |psi><psi| (x) rho_pair returns rho_pair.
    rng = np.random.default_rng(5)
    psi = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    psi /= np.linalg.norm(psi)
    pair = damped_pair_table(0.385)
    full = np.kron(np.outer(psi, psi.conj()), pair)
    reduced = qmat.partial_trace(full, (1, 2), (2, 2, 2))
    assert np.max(np.abs(reduced - pair)) <= 1e-14


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(9)
    for dims, keep in [((2, 2), (0,)), ((2, 2, 2), (2,)), ((2, 4), (1,)), ((2, 2, 2), (0, 2))]:
        rho = random_density(rng, int(np.prod(dims)))
        reduced = qmat.partial_trace(rho, keep, dims)
        assert abs(np.trace(reduced) - np.trace(rho)) <= 1e-13


def test_partial_trace_rejects_bad_dims():
    rho = random_density(np.random.default_rng(0), 4)
    with pytest.raises(ValueError, match="factor"):
        qmat.partial_trace(rho, (0,), (2, 3))
    with pytest.raises(ValueError, match="at least one"):
        qmat.partial_trace(rho, (), (2, 2))


def test_eigenvalues_diagonal_and_pauli():
    assert np.allclose(qmat.hermitian_eigenvalues(np.diag([3.0, -1.0]).astype(complex)), [-1, 3])
    assert np.allclose(qmat.hermitian_eigenvalues(X), [-1, 1], atol=1e-15)


def test_eigenvalues_of_damped_pair_state():
    # Strong-coupling channel state partway through the first collapse.
    from nmteleport import BathParams, mu

    mu_val = mu(0.3, BathParams(20.0))
    rho = damped_pair_table(mu_val)
    eigs = qmat.hermitian_eigenvalues(rho)
    assert abs(np.sum(eigs) - 1.0) <= 1e-10
    assert eigs[0] >= -1e-10
    # The polynomial oracle loses half its digits on the doubly degenerate
    # single-excitation eigenvalue, hence the loose comparison.
    assert np.max(np.abs(eigs - charpoly_eigenvalues(rho))) <= 1e-6


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_eigenvalues_match_lapack(dim):
    rng = np.random.default_rng(dim)
    for _ in range(25):
        h = random_hermitian(rng, dim)
        ours = qmat.hermitian_eigenvalues(h)
        ref = np.linalg.eigvalsh(h)
        assert np.max(np.abs(ours - ref)) <= 1e-11


def test_eigenvalues_of_density_sum_to_one():
    rng = np.random.default_rng(21)
    for dim in (2, 4, 8):
        rho = random_density(rng, dim)
        eigs = qmat.hermitian_eigenvalues(rho)
        assert abs(np.sum(eigs) - 1.0) <= 1e-10


def test_eigenvalues_reject_non_hermitian():
    bad = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    with pytest.raises(ValueError, match="Hermitian"):
        qmat.hermitian_eigenvalues(bad)


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError, match="square"):
        qmat.as_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="dimension"):
        qmat.as_matrix(np.zeros((3, 3)))
    with pytest.raises(ValueError, match="finite"):
        qmat.as_matrix(np.array([[np.nan, 0], [0, 0]]))


def test_check_density_matrix():
    rng = np.random.default_rng(2)
    rho = random_density(rng, 4)
    qmat.check_density_matrix(rho)
    skewed = np.eye(4, dtype=np.complex128) / 4
    skewed[0, 1] = 1e-6
    with pytest.raises(ValueError, match="Hermitian"):
        qmat.check_density_matrix(skewed)
    with pytest.raises(ValueError, match="trace"):
        qmat.check_density_matrix(1.5 * rho)
    with pytest.raises(ValueError, match="negative eigenvalue"):
        qmat.check_density_matrix(np.diag([1.5, -0.5, 0, 0]).astype(complex))
    assert not qmat.is_density_matrix(1.5 * rho)
    assert qmat.is_density_matrix(rho)

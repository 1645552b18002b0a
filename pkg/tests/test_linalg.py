import numpy as np
import pytest

from qsot import (
    DimensionMismatch,
    NotHermitian,
    anticommutator,
    hermitian_eigendecomposition,
    hs_inner,
    partial_trace,
    tensor,
)
from qsot.observables import PAULI


def test_anticommutator_paulis():
    assert np.allclose(anticommutator(PAULI[1], PAULI[2]), 0)
    B = np.array([[1, 2j], [-2j, 5]])
    assert np.allclose(anticommutator(np.eye(2), B), 2 * B)


def test_anticommutator_hermitian_output():
    rng = np.random.default_rng(0)
    for _ in range(10):
        A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        A = A + A.conj().T
        B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        B = B + B.conj().T
        C = anticommutator(A, B)
        assert np.linalg.norm(C - C.conj().T) < 1e-12


def test_anticommutator_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        anticommutator(np.eye(2), np.eye(3))


def test_tensor_sigma3_identity():
    assert np.allclose(tensor(PAULI[3], np.eye(2)), np.diag([1, 1, -1, -1]))


def test_tensor_trace_multiplicative():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    assert np.isclose(np.trace(tensor(A, B)), np.trace(A) * np.trace(B))


def test_tensor_sigma1_sigma1_spectrum():
    w = np.linalg.eigvalsh(tensor(PAULI[1], PAULI[1]))
    assert np.allclose(np.sort(w), [-1, -1, 1, 1])


def test_tensor_index_convention():
    # entry ((a1,b1),(a2,b2)) = A[a1,a2] B[b1,b2] with flat index a*dimB + b
    A = np.arange(4).reshape(2, 2) + 0j
    B = np.arange(9).reshape(3, 3) + 0j
    T = tensor(A, B)
    for a1 in range(2):
        for a2 in range(2):
            for b1 in range(3):
                for b2 in range(3):
                    assert T[a1 * 3 + b1, a2 * 3 + b2] == A[a1, a2] * B[b1, b2]


def test_hs_inner_paulis():
    for a in range(4):
        for b in range(4):
            want = 2.0 if a == b else 0.0
            assert np.isclose(hs_inner(PAULI[a], PAULI[b]), want)


def test_hs_inner_positive_and_symmetric():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    B = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    self_inner = hs_inner(A, A)
    assert self_inner.real >= 0
    assert abs(self_inner.imag) < 1e-12
    assert np.isclose(hs_inner(A, B), np.conj(hs_inner(B, A)))


@pytest.mark.parametrize("d", [2, 3, 4, 6, 9])
def test_eigendecomposition_reconstructs(d):
    rng = np.random.default_rng(d)
    for _ in range(200):
        G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        H = (G + G.conj().T) / 2
        dec = hermitian_eigendecomposition(H)
        assert np.linalg.norm(dec.reconstruct() - H) < 1e-9


def test_projector_algebra():
    rng = np.random.default_rng(3)
    G = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    dec = hermitian_eigendecomposition((G + G.conj().T) / 2)
    Ps = dec.projectors
    for a, P in enumerate(Ps):
        for b, Q in enumerate(Ps):
            want = P if a == b else np.zeros_like(P)
            assert np.linalg.norm(P @ Q - want) < 1e-10
    assert np.linalg.norm(sum(Ps) - np.eye(5)) < 1e-10


def test_eigendecomposition_merges_degenerate_clusters():
    dec = hermitian_eigendecomposition(np.diag([1.0, 1.0 + 1e-12, 3.0]))
    assert len(dec.eigenvalues) == 2
    assert dec.ranks() == [2, 1]
    # ascending order
    assert dec.eigenvalues[0] < dec.eigenvalues[1]


def test_eigendecomposition_rejects_nonhermitian():
    with pytest.raises(NotHermitian):
        hermitian_eigendecomposition(np.array([[0, 1], [0, 0]]))


def test_partial_trace_of_product():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    B = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    T = tensor(A, B)
    assert np.linalg.norm(partial_trace(T, 2, 3, "A") - np.trace(A) * B) < 1e-12
    assert np.linalg.norm(partial_trace(T, 2, 3, "B") - np.trace(B) * A) < 1e-12


def test_partial_trace_shape_check():
    with pytest.raises(DimensionMismatch):
        partial_trace(np.eye(5), 2, 3, "A")

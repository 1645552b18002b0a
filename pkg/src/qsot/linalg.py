"""Dense complex linear algebra on hermitian matrices.

Tensor products use the A-major index convention throughout the package:
the flattened composite index is ``a * dimB + b``, so ``tensor(A, B)`` is
``np.kron(A, B)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NumericalFailure

HERMITICITY_RTOL = 1e-9


def as_matrix(M) -> np.ndarray:
    """Coerce to a 2-d complex array and reject non-finite entries."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={M.ndim}")
    if not np.all(np.isfinite(M)):
        raise NumericalFailure("matrix contains NaN/Inf entries")
    return M


def check_hermitian(M: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Return M if hermitian within relative tolerance, else raise NotHermitian."""
    M = as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"hermitian check needs a square matrix, got {M.shape}")
    scale = max(1.0, float(np.linalg.norm(M)))
    if np.linalg.norm(M - M.conj().T) > rtol * scale:
        raise NotHermitian("matrix is not hermitian within tolerance")
    return M


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct real eigenvalues with orthogonal projectors resolving the identity.

    Eigenvalues are ascending; ``projectors[k]`` projects onto the full
    eigenspace of ``eigenvalues[k]`` (degenerate eigenspaces are never split).
    """

    dim: int
    eigenvalues: np.ndarray
    projectors: tuple

    def reconstruct(self) -> np.ndarray:
        return sum(lam * P for lam, P in zip(self.eigenvalues, self.projectors))

    def ranks(self) -> list:
        return [int(round(np.trace(P).real)) for P in self.projectors]


def default_cluster_tol(eigenvalues: np.ndarray) -> float:
    return 1e-8 * max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0)))


def hermitian_eigendecomposition(H, cluster_tol: float | None = None) -> SpectralDecomposition:
    """Eigendecompose a hermitian matrix into distinct-eigenvalue projectors.

    Eigenvalues closer than ``cluster_tol`` are merged into a single cluster;
    the cluster eigenvalue is the multiplicity-weighted mean and the projector
    is the sum over the cluster. Zero eigenvalues are kept so the projectors
    always resolve the identity.
    """
    H = check_hermitian(H)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigensolver failed: {exc}") from exc
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(w)

    # Greedy clustering over ascending eigenvalues.
    clusters = []
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > cluster_tol:
            clusters.append(slice(start, k))
            start = k
    eigenvalues = np.array([float(np.mean(w[s])) for s in clusters])
    projectors = tuple(V[:, s] @ V[:, s].conj().T for s in clusters)
    return SpectralDecomposition(dim=H.shape[0], eigenvalues=eigenvalues, projectors=projectors)


def tensor(A, B) -> np.ndarray:
    """Kronecker product under the A-major index convention."""
    return np.kron(as_matrix(A), as_matrix(B))


def partial_trace(M, dimA: int, dimB: int, which: str) -> np.ndarray:
    """Trace out factor ``which`` ('A' or 'B') of a matrix on A x B."""
    M = as_matrix(M)
    d = dimA * dimB
    if M.shape != (d, d):
        raise DimensionMismatch(f"expected {(d, d)}, got {M.shape}")
    T = M.reshape(dimA, dimB, dimA, dimB)
    if which == "A":
        return np.trace(T, axis1=0, axis2=2)
    if which == "B":
        return np.trace(T, axis1=1, axis2=3)
    raise DimensionMismatch(f"which must be 'A' or 'B', got {which!r}")


def anticommutator(A, B) -> np.ndarray:
    """AB + BA for equal-dimension square matrices."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"incompatible shapes {A.shape} and {B.shape}")
    return A @ B + B @ A


def hs_inner(A, B) -> complex:
    """Hilbert-Schmidt inner product Tr[A^dagger B]."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"incompatible shapes {A.shape} and {B.shape}")
    return complex(np.sum(A.conj() * B))

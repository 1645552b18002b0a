"""Two-time expectation values of sequential projective measurements.

The value <O_A, O_B> for a process (E, rho) is
sum_i lam_i Tr[E(P_i rho P_i) O_B], summed over the distinct-eigenvalue
projectors P_i of O_A. Equivalently sum_{ij} lam_i mu_j P(i, j) with
P(i, j) = Tr[E(P_i rho P_i) Q_j].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import Process, apply, isometry_embed, random_hermitian
from .errors import DimensionMismatch, InvalidParameter, NumericalFailure
from .linalg import tensor
from .observables import Observable, hermitian_basis, light_touch_spanning_set

PROB_CLAMP = 1e-12
PROB_NEG_LIMIT = 1e-9


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome distribution of the two sequential measurements."""

    outcomes_A: np.ndarray
    outcomes_B: np.ndarray
    probs: np.ndarray = field(repr=False)

    def marginal_A(self) -> np.ndarray:
        return self.probs.sum(axis=1)

    def marginal_B(self) -> np.ndarray:
        return self.probs.sum(axis=0)

    def expectation(self) -> float:
        return float(self.outcomes_A @ self.probs @ self.outcomes_B)


def _check_dims(process: Process, O_A: Observable, O_B: Observable) -> None:
    if O_A.dim != process.dim_in:
        raise DimensionMismatch(f"O_A dim {O_A.dim} != channel input {process.dim_in}")
    if O_B.dim != process.dim_out:
        raise DimensionMismatch(f"O_B dim {O_B.dim} != channel output {process.dim_out}")


def _clamp(p: float) -> float:
    if p < -PROB_NEG_LIMIT:
        raise NumericalFailure(f"probability {p} below clamping limit")
    return max(p, 0.0)


def joint_distribution(process: Process, O_A: Observable, O_B: Observable) -> JointDistribution:
    """P(i, j) = Tr[E(P_i rho P_i) Q_j] over distinct-eigenvalue projectors."""
    _check_dims(process, O_A, O_B)
    decA, decB = O_A.spectral, O_B.spectral
    probs = np.zeros((len(decA.eigenvalues), len(decB.eigenvalues)))
    for i, P in enumerate(decA.projectors):
        evolved = apply(process.channel, P @ process.rho @ P)
        for j, Q in enumerate(decB.projectors):
            probs[i, j] = _clamp(float(np.trace(evolved @ Q).real))
    total = probs.sum()
    if abs(total - 1.0) > 1e-8:
        raise NumericalFailure(f"joint distribution sums to {total}")
    return JointDistribution(
        outcomes_A=decA.eigenvalues.copy(), outcomes_B=decB.eigenvalues.copy(), probs=probs
    )


def two_time_ev(process: Process, O_A: Observable, O_B: Observable) -> float:
    """sum_i lam_i Tr[E(P_i rho P_i) O_B]; real up to roundoff."""
    _check_dims(process, O_A, O_B)
    dec = O_A.spectral
    total = 0.0
    for lam, P in zip(dec.eigenvalues, dec.projectors):
        evolved = apply(process.channel, P @ process.rho @ P)
        total += lam * float(np.trace(evolved @ O_B.matrix).real)
    return total


def sot_trace_value(X: np.ndarray, O_A: Observable, O_B: Observable) -> float:
    """Tr[X (O_A (x) O_B)], the candidate bilinear representation."""
    return float(np.trace(X @ tensor(O_A.matrix, O_B.matrix)).real)


def representability_residual(process: Process, X, probes) -> float:
    """Worst normalized deviation |<O_A, O_B> - Tr[X (O_A (x) O_B)]| over probes.

    Each probe is normalized by max(1, ||O_A|| ||O_B||) in spectral norm so
    residuals are comparable across probe scales.
    """
    X = np.asarray(X, dtype=complex)
    dA, dB = process.dim_in, process.dim_out
    if X.shape != (dA * dB, dA * dB):
        raise DimensionMismatch(f"X must be {(dA * dB, dA * dB)}, got {X.shape}")
    worst = 0.0
    for O_A, O_B in probes:
        ev = two_time_ev(process, O_A, O_B)
        lin = sot_trace_value(X, O_A, O_B)
        scale = max(
            1.0,
            float(np.linalg.norm(O_A.matrix, 2)) * float(np.linalg.norm(O_B.matrix, 2)),
        )
        worst = max(worst, abs(ev - lin) / scale)
    return worst


def light_touch_probes(dim_in: int, dim_out: int) -> list:
    """Product probes with light-touch first factors: spanning set x hermitian basis."""
    return [
        (A, B)
        for A in light_touch_spanning_set(dim_in)
        for B in hermitian_basis(dim_out)
    ]


def general_probes(dim_in: int, dim_out: int, rng: np.random.Generator, count: int = 20) -> list:
    """Random hermitian probe pairs, generically non-light-touch on both sides."""
    pairs = []
    for _ in range(count):
        pairs.append(
            (Observable(random_hermitian(dim_in, rng)), Observable(random_hermitian(dim_out, rng)))
        )
    return pairs


@dataclass(frozen=True)
class NonrepresentableWitness:
    """The constructed non-representable process with its nonlinearity certificate."""

    process: Process
    O_A1: Observable
    O_A2: Observable
    O_B: Observable
    gap: float

    @property
    def O_A_diff(self) -> Observable:
        return Observable(self.O_A1.matrix - self.O_A2.matrix)


def _embed_top_left(block: np.ndarray, dim: int, fill: complex = 0.0) -> np.ndarray:
    M = np.eye(dim, dtype=complex) * fill
    M[:2, :2] = block
    return M


def nonrepresentable_witness(m: int, n: int, a: float = 2.0, c: float = 2.0) -> NonrepresentableWitness:
    """Construct a non-representable process on M_m -> M_n with nonlinearity gap c.

    The channel isometrically embeds span(e0, e1) and discards the rest into
    the maximally mixed state; the state is |-><-| in the top-left block. The
    two first observables are qubit spin observables padded so their spectra
    match the 2x2 case, and the nonlinearity gap
    <O1 - O2, O_B> - (<O1, O_B> - <O2, O_B>) evaluates exactly to c, the
    second-Pauli coefficient of O_B. The default a = c = 2 yields gap 2; any
    c != 0 certifies nonlinearity.
    """
    if m < 2 or n < 2:
        raise InvalidParameter("both dimensions must be at least 2")
    channel = isometry_embed(m, n)
    minus = 0.5 * np.array([[1, -1], [-1, 1]], dtype=complex)
    process = Process(channel, _embed_top_left(minus, m))

    def four_vector_obs(y0, y1, y2, y3):
        return np.array(
            [[y0 + y3, y1 - 1j * y2], [y1 + 1j * y2, y0 - y3]], dtype=complex
        )

    # x = (1, 1, 0, 0), y = (-1, 0, 1, 0); pads are x0 + |x| and y0 + |y|.
    O_A1 = Observable(_embed_top_left(four_vector_obs(1, 1, 0, 0), m, fill=2.0))
    O_A2 = Observable(_embed_top_left(four_vector_obs(-1, 0, 1, 0), m, fill=0.0))
    O_B = Observable(_embed_top_left(four_vector_obs(a, 0, c, 0), n, fill=0.0))

    diff = Observable(O_A1.matrix - O_A2.matrix)
    gap = (
        two_time_ev(process, diff, O_B)
        - two_time_ev(process, O_A1, O_B)
        + two_time_ev(process, O_A2, O_B)
    )
    return NonrepresentableWitness(process=process, O_A1=O_A1, O_A2=O_A2, O_B=O_B, gap=gap)

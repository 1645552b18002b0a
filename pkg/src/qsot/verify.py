"""Numerical verification suites for the library's structural claims.

Each suite runs seeded random instances, records the worst residual per claim
against a fixed tolerance, and reports pass/fail. Suites back the CLI's
``verify`` subcommand.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channels import (
    Process,
    apply,
    discard_prepare,
    random_density,
    random_hermitian,
    random_process,
)
from .linalg import hs_inner, tensor
from .observables import (
    Observable,
    gram_matrix,
    hermitian_basis,
    light_touch_basis_qutrit,
    light_touch_spanning_set,
    permutation_matrix,
    sic_fiducial_v,
    sic_fiducial_w,
    sic_povm,
)
from .sot import canonical_sot, maximality_counterexample, reconstruct_unique
from .twotime import (
    general_probes,
    light_touch_probes,
    nonrepresentable_witness,
    representability_residual,
    two_time_ev,
)


@dataclass(frozen=True)
class Claim:
    name: str
    residual: float
    tolerance: float
    direction: str = "max"  # "max": residual <= tol passes; "min": residual >= tol passes

    @property
    def passed(self) -> bool:
        if self.direction == "min":
            return self.residual >= self.tolerance
        return self.residual <= self.tolerance


@dataclass
class SuiteReport:
    suite: str
    seed: int
    claims: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def add(self, name: str, residual: float, tolerance: float, direction: str = "max"):
        self.claims.append(Claim(name, float(residual), tolerance, direction))


def _dim_pairs(dims):
    return [(a, b) for a in dims for b in dims]


def verify_theorems(dims=(2, 3), trials: int = 25, seed: int = 0xC0FFEE,
                    tol: float | None = None) -> SuiteReport:
    """Uniqueness/trace-formula, special-case, marginal, and maximality checks."""
    rng = np.random.default_rng(seed)
    report = SuiteReport(suite="theorems", seed=seed)

    worst_lt = worst_rec = worst_marg = 0.0
    for dA, dB in _dim_pairs(dims):
        probes = light_touch_probes(dA, dB)
        for _ in range(trials):
            process = random_process(dA, dB, rng)
            sot = canonical_sot(process)
            worst_lt = max(worst_lt, representability_residual(process, sot.matrix, probes))
            rec = reconstruct_unique(process)
            worst_rec = max(worst_rec, float(np.linalg.norm(rec.matrix - sot.matrix)))
            O_A = Observable(random_hermitian(dA, rng))
            O_B = Observable(random_hermitian(dB, rng))
            eye_B = Observable(np.eye(dB))
            eye_A = Observable(np.eye(dA))
            worst_marg = max(
                worst_marg,
                abs(two_time_ev(process, O_A, eye_B)
                    - float(np.trace(process.rho @ O_A.matrix).real)),
                abs(two_time_ev(process, eye_A, O_B)
                    - float(np.trace(apply(process.channel, process.rho) @ O_B.matrix).real)),
            )
    report.add("light-touch trace formula (uniqueness theorem)", worst_lt, tol or 1e-10)
    report.add("reconstruction matches closed form", worst_rec, tol or 1e-8)
    report.add("one-time marginal identities", worst_marg, tol or 1e-10)

    # Special-case bilinearity: maximally mixed input and discard-and-prepare.
    worst_mm = worst_dp = 0.0
    for dA, dB in _dim_pairs(dims):
        for _ in range(trials):
            chan = random_process(dA, dB, rng).channel
            mixed = Process(chan, np.eye(dA) / dA)
            X_mm = chan.jamiolkowski / dA
            sigma = random_density(dB, rng)
            rho = random_density(dA, rng)
            for _ in range(5):
                O_A = Observable(random_hermitian(dA, rng))
                O_B = Observable(random_hermitian(dB, rng))
                worst_mm = max(
                    worst_mm,
                    abs(two_time_ev(mixed, O_A, O_B)
                        - float(np.trace(X_mm @ tensor(O_A.matrix, O_B.matrix)).real)),
                )
            dp = Process(discard_prepare(sigma, dim_in=dA), rho)
            X_dp = tensor(rho, sigma)
            for _ in range(5):
                O_A = Observable(random_hermitian(dA, rng))
                O_B = Observable(random_hermitian(dB, rng))
                worst_dp = max(
                    worst_dp,
                    abs(two_time_ev(dp, O_A, O_B)
                        - float(np.trace(X_dp @ tensor(O_A.matrix, O_B.matrix)).real)),
                )
    report.add("maximally mixed input is representable", worst_mm, tol or 1e-10)
    report.add("discard-and-prepare is representable", worst_dp, tol or 1e-10)

    # Maximality: every non-light-touch observable admits a counterexample.
    worst_gap = np.inf
    for d in dims:
        for _ in range(trials):
            M = random_hermitian(d, rng)
            O_A = Observable(M)
            if O_A.is_light_touch:
                continue
            _, _, residual = maximality_counterexample(O_A)
            worst_gap = min(worst_gap, residual)
    report.add("non-light-touch counterexample residual", worst_gap, 1e-6, direction="min")
    return report


def verify_nogo(dim_pairs=((2, 2), (3, 3), (2, 4), (4, 2)), seed: int = 0xC0FFEE,
                tol: float | None = None) -> SuiteReport:
    """Constructed witness: exact nonlinearity gap, light-touch vs general residuals."""
    rng = np.random.default_rng(seed)
    report = SuiteReport(suite="nogo", seed=seed)
    worst_gap_dev = 0.0
    worst_lt = 0.0
    min_general = np.inf
    for m, n in dim_pairs:
        witness = nonrepresentable_witness(m, n)
        worst_gap_dev = max(worst_gap_dev, abs(witness.gap - 2.0))
        X = canonical_sot(witness.process).matrix
        worst_lt = max(
            worst_lt,
            representability_residual(witness.process, X, light_touch_probes(m, n)),
        )
        probes = [(witness.O_A_diff, witness.O_B)] + general_probes(m, n, rng)
        min_general = min(
            min_general, representability_residual(witness.process, X, probes)
        )
    report.add("witness nonlinearity gap equals 2", worst_gap_dev, tol or 1e-10)
    report.add("light-touch residual of witness", worst_lt, tol or 1e-10)
    report.add("general-probe residual of witness", min_general, 0.1, direction="min")
    return report


def sic_fiducial_grid():
    """Thirty-plus fiducials across the V and W families and all permutations."""
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    angles = (np.pi / 3, np.pi, 5 * np.pi / 3)
    fiducials = []
    r0_values = (1 / np.sqrt(2) + 1e-3, 0.75, np.sqrt(2 / 3))
    for perm in perms:
        for chi in np.linspace(0.0, 2 * np.pi, 10, endpoint=False):
            fiducials.append(sic_fiducial_w(chi, perm))
        for r0 in r0_values:
            for theta in angles:
                for phi in angles:
                    fiducials.append(sic_fiducial_v(r0, theta, phi, perm))
    return fiducials


def verify_sic(seed: int = 0xC0FFEE, tol: float | None = None) -> SuiteReport:
    """SIC overlap, resolution of identity, and light-touch Gram checks."""
    report = SuiteReport(suite="sic", seed=seed)
    tol = tol or 1e-10
    worst_overlap = worst_sum = worst_gram = 0.0
    for psi in sic_fiducial_grid():
        povm = sic_povm(psi)
        for a in range(9):
            for b in range(a + 1, 9):
                overlap = float(np.trace(povm.projectors[a] @ povm.projectors[b]).real)
                worst_overlap = max(worst_overlap, abs(overlap - 0.25))
        total = sum(povm.projectors) / 3
        worst_sum = max(worst_sum, float(np.linalg.norm(total - np.eye(3))))
        basis = light_touch_basis_qutrit(povm)
        worst_gram = max(
            worst_gram, float(np.abs(gram_matrix(basis) - 3 * np.eye(9)).max())
        )
    report.add("pairwise overlaps equal 1/4", worst_overlap, tol)
    report.add("rescaled projectors resolve identity", worst_sum, tol)
    report.add("light-touch basis Gram equals 3I", worst_gram, tol)

    # Negative control: the same construction in d=4 has cross terms 4/5.
    u = np.zeros(4, dtype=complex)
    u[0] = 1.0
    v = np.array([1.0, 2.0, 0.0, 0.0], dtype=complex) / np.sqrt(5)
    L_u = 2 * np.outer(u, u.conj()) - np.eye(4)
    L_v = 2 * np.outer(v, v.conj()) - np.eye(4)
    cross = hs_inner(L_u, L_v).real
    report.add("d=4 analogue cross term equals 4/5", abs(cross - 0.8), tol)
    return report


def run_suites(names, dims=(2, 3), trials: int = 25, seed: int = 0xC0FFEE,
               tol: float | None = None) -> list:
    out = []
    for name in names:
        if name == "theorems":
            out.append(verify_theorems(dims=dims, trials=trials, seed=seed, tol=tol))
        elif name == "nogo":
            out.append(verify_nogo(seed=seed, tol=tol))
        elif name == "sic":
            out.append(verify_sic(seed=seed, tol=tol))
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out

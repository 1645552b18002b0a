"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 validation
error. All randomness flows from --seed (default 0xC0FFEE). --threads and the
QSOT_THREADS fallback cap worker parallelism; computations are deterministic
regardless of the setting.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .errors import (
    FailedOverlapCondition,
    InvalidParameter,
    ParameterOutOfRange,
    QsotError,
)
from .observables import (
    hermitian_basis,
    light_touch_basis_qutrit,
    pauli_basis,
    sic_fiducial_v,
    sic_fiducial_w,
    sic_povm,
)
from .sampler import estimate_ev, estimate_pdm, sample_sequential
from .sot import canonical_sot, reconstruct_unique
from .twotime import two_time_ev
from .verify import run_suites

DEFAULT_SEED = 0xC0FFEE

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                        help="seed for all randomness (default 0xC0FFEE)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker cap, 0 = hardware default (QSOT_THREADS fallback)")
    parser.add_argument("--tol", type=float, default=None,
                        help="override default verification tolerances")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    parser.add_argument("--format", choices=("json", "pretty"), default="pretty",
                        help="output formatting")


def _resolve_threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("QSOT_THREADS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParameter(f"QSOT_THREADS must be an integer, got {env!r}")
    return 0


def _emit(doc: dict, args) -> None:
    io.dump_document(doc, args.out, pretty=args.format == "pretty")


def cmd_sot(args) -> int:
    _, payload = io.load_document(args.process_file, expect_kind="process")
    process = io.process_from_payload(payload)
    _emit(io.sot_doc(canonical_sot(process)), args)
    return EXIT_OK


def cmd_sic(args) -> int:
    permutation = tuple(int(c) for c in args.permutation)
    if args.family == "W":
        fiducial = sic_fiducial_w(args.chi, permutation)
    else:
        if args.r0 is None:
            raise ParameterOutOfRange("family V requires --r0")
        fiducial = sic_fiducial_v(args.r0, args.theta, args.phi, permutation)
    povm = sic_povm(fiducial)
    basis = light_touch_basis_qutrit(povm)
    worst = 0.0
    for a in range(9):
        for b in range(a + 1, 9):
            overlap = float(np.trace(povm.projectors[a] @ povm.projectors[b]).real)
            worst = max(worst, abs(overlap - 0.25))
    doc = io.envelope(
        "report",
        {
            "fiducial": [[float(z.real), float(z.imag)] for z in povm.fiducial],
            "projectors": [io.matrix_to_json(P) for P in povm.projectors],
            "light_touch_basis": [io.matrix_to_json(L.matrix) for L in basis],
            "overlap_residual": worst,
            "passed": True,
        },
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    names = ("theorems", "nogo", "sic") if args.suite == "all" else (args.suite,)
    dims = tuple(int(d) for d in args.dims.split(","))
    if any(d < 2 or d > 6 for d in dims):
        raise InvalidParameter("dims must lie in 2..6")
    if args.trials < 1:
        raise InvalidParameter("trials must be at least 1")
    reports = run_suites(names, dims=dims, trials=args.trials, seed=args.seed, tol=args.tol)
    for report in reports:
        for claim in report.claims:
            status = "PASS" if claim.passed else "FAIL"
            print(f"[{status}] {report.suite}: {claim.name} "
                  f"(residual {claim.residual:.3e}, tolerance {claim.tolerance:g})",
                  file=sys.stderr)
    _emit(io.report_doc(reports), args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY_FAILED


def cmd_sample(args) -> int:
    _, payload = io.load_document(args.process_file, expect_kind="process")
    process = io.process_from_payload(payload)
    _, pa = io.load_document(args.observable_a, expect_kind="observable")
    _, pb = io.load_document(args.observable_b, expect_kind="observable")
    O_A = io.observable_from_payload(pa)
    O_B = io.observable_from_payload(pb)
    if args.shots < 1:
        raise InvalidParameter("shots must be at least 1")
    record = sample_sequential(process, O_A, O_B, args.shots, args.seed)
    mean, stderr = estimate_ev(record, O_A.spectral.eigenvalues, O_B.spectral.eigenvalues)
    exact = two_time_ev(process, O_A, O_B)
    doc = io.envelope(
        "report",
        {
            "shots": record.shots,
            "seed": record.seed,
            "outcomes_A": [float(x) for x in O_A.spectral.eigenvalues],
            "outcomes_B": [float(x) for x in O_B.spectral.eigenvalues],
            "counts": [[int(c) for c in row] for row in record.counts],
            "estimate": mean,
            "stderr": stderr,
            "exact": exact,
            "passed": True,
        },
    )
    _emit(doc, args)
    return EXIT_OK


def _orthogonal_light_touch_basis(d: int):
    if d == 3:
        return light_touch_basis_qutrit(sic_povm(sic_fiducial_w(0.0)))
    m = d.bit_length() - 1
    if d == 1 << m:
        return pauli_basis(m)
    raise InvalidParameter(
        f"no orthogonal light-touch basis available for dimension {d}"
    )


def cmd_pdm_reconstruct(args) -> int:
    _, payload = io.load_document(args.process_file, expect_kind="process")
    process = io.process_from_payload(payload)
    if args.shots is None:
        sot = reconstruct_unique(process)
    else:
        if args.shots < 1:
            raise InvalidParameter("shots must be at least 1")
        basis_A = _orthogonal_light_touch_basis(process.dim_in)
        basis_B = hermitian_basis(process.dim_out)
        sot = estimate_pdm(process, basis_A, basis_B, args.shots, args.seed)
    _emit(io.sot_doc(sot), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsot",
        description="States over time, pseudo-density matrices, and sequential "
                    "measurement statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sot", help="canonical state over time of a process file")
    p.add_argument("process_file")
    _add_common(p)
    p.set_defaults(func=cmd_sot)

    p = sub.add_parser("sic", help="generate a qutrit SIC-POVM and its light-touch basis")
    p.add_argument("--family", choices=("W", "V"), default="W")
    p.add_argument("--chi", type=float, default=0.0, help="W-family phase in [0, 2 pi)")
    p.add_argument("--r0", type=float, default=None, help="V-family radial parameter")
    p.add_argument("--theta", type=float, default=np.pi, help="V-family phase")
    p.add_argument("--phi", type=float, default=np.pi, help="V-family phase")
    p.add_argument("--permutation", default="012", help="basis permutation, e.g. 120")
    _add_common(p)
    p.set_defaults(func=cmd_sic)

    p = sub.add_parser("verify", help="run numerical verification suites")
    p.add_argument("suite", choices=("theorems", "nogo", "sic", "all"))
    p.add_argument("--dims", default="2,3", help="comma-separated dimensions in 2..6")
    p.add_argument("--trials", type=int, default=25)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="simulate the sequential measurement protocol")
    p.add_argument("process_file")
    p.add_argument("observable_a")
    p.add_argument("observable_b")
    p.add_argument("--shots", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("pdm-reconstruct",
                       help="reconstruct the pseudo-density matrix (exact or sampled)")
    p.add_argument("process_file")
    p.add_argument("--shots", type=int, default=None,
                   help="shots per basis pair; omit for exact reconstruction")
    _add_common(p)
    p.set_defaults(func=cmd_pdm_reconstruct)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _resolve_threads(args)
        return args.func(args)
    except io.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FailedOverlapCondition, InvalidParameter, QsotError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())

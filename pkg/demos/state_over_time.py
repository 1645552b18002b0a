"""Walkthrough: canonical states over time and the limits of bilinearity.

Builds the qutrit identity-channel example, shows its negativity, reconstructs
it from light-touch correlation data, and then constructs a process whose
two-time expectation values cannot be represented by any single operator.
"""

import numpy as np

import qsot


def main():
    # A qutrit prepared in |0><0| and left alone by the identity channel.
    proc = qsot.Process(qsot.identity_channel(3), np.diag([1.0, 0.0, 0.0]))
    sot = qsot.canonical_sot(proc)
    print("state over time, qutrit identity channel on |0><0|:")
    print(np.round(sot.matrix.real, 3))
    min_eig, negativity = qsot.causality_witness(sot)
    print(f"min eigenvalue {min_eig:+.3f}, negativity {negativity:.3f}")
    print("negativity > 0: these correlations cannot come from a bipartite state\n")

    # The same operator, recovered purely from two-time expectation values
    # over the SIC light-touch basis.
    basis = qsot.light_touch_basis_qutrit(qsot.sic_povm(qsot.sic_fiducial_w(0.0)))
    evs = np.array(
        [[qsot.two_time_ev(proc, A, B) for B in basis] for A in basis]
    )
    rec = qsot.pdm_from_correlations(3, 3, basis, basis, evs)
    print("reconstruction from light-touch correlations, deviation:",
          f"{np.linalg.norm(rec.matrix - sot.matrix):.2e}\n")

    # Outside the light-touch class no single operator works: an explicit
    # witness process with a nonlinearity gap of 2.
    w = qsot.nonrepresentable_witness(3, 3)
    X = qsot.canonical_sot(w.process).matrix
    light = qsot.representability_residual(
        w.process, X, qsot.light_touch_probes(3, 3)
    )
    general = qsot.representability_residual(w.process, X, [(w.O_A_diff, w.O_B)])
    print(f"witness nonlinearity gap: {w.gap:.3f}")
    print(f"residual over light-touch probes: {light:.2e}")
    print(f"residual on the witness probe:    {general:.3f}")


if __name__ == "__main__":
    main()

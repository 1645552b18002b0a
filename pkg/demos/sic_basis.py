"""Walkthrough: qutrit SIC-POVMs and their light-touch observable basis.

Generates the Weyl-Heisenberg orbit of the fiducial (1, 1, 0)/sqrt(2), checks
the defining overlap condition, and shows that the induced dichotomous
observables L_jk = 2 P_jk - 1 form an orthogonal basis, while the analogous
construction in dimension 4 does not.
"""

import numpy as np

import qsot


def main():
    povm = qsot.sic_povm(qsot.sic_fiducial_w(0.0))
    overlaps = [
        np.trace(povm.projectors[a] @ povm.projectors[b]).real
        for a in range(9)
        for b in range(a + 1, 9)
    ]
    print("qutrit SIC-POVM from fiducial (1, 1, 0)/sqrt(2)")
    print(f"pairwise overlaps: all equal 1/4 within "
          f"{max(abs(x - 0.25) for x in overlaps):.1e}")
    print(f"resolution of identity: |sum P / 3 - 1| = "
          f"{np.linalg.norm(sum(povm.projectors) / 3 - np.eye(3)):.1e}\n")

    basis = qsot.light_touch_basis_qutrit(povm)
    from qsot.observables import gram_matrix

    G = gram_matrix(basis)
    print("Gram matrix of L_jk = 2 P_jk - 1 (orthogonal, norm^2 = 3):")
    print(np.round(G, 10))

    # Dimension 4 negative control: unit vectors meeting the d = 4 overlap
    # condition 1/(d+1) give cross terms 4/5 instead of 0.
    u = np.array([1.0, 0.0, 0.0, 0.0])
    v = np.array([1.0, 2.0, 0.0, 0.0]) / np.sqrt(5)
    L_u = 2 * np.outer(u, u) - np.eye(4)
    L_v = 2 * np.outer(v, v) - np.eye(4)
    cross = np.trace(L_u @ L_v).real
    print(f"\nd = 4 analogue cross term: {cross:.3f} (nonzero, not orthogonal)")


if __name__ == "__main__":
    main()

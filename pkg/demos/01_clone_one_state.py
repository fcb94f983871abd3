#!/usr/bin/env python3
"""Clone qubit 1 of a two-qubit state and look at what comes out.

Builds the 32-dimensional output of the machine explicitly, traces out the
spectator and the ancilla, and compares with the closed-form clone states.
"""

import numpy as np

from partial_qcm import (
    Amplitudes2Q,
    ClonerParams,
    apply_qcm,
    build_ancilla_frame,
    fidelity,
    joint_output,
    reduce_first,
    single_output,
    w_closed,
)
from partial_qcm.linmath import partial_trace
from partial_qcm.qcm import XI_DIMS


def main():
    psi = Amplitudes2Q.from_vector([0.8, 0.36j, 0.3, -0.372]).canonical()
    psi = Amplitudes2Q.from_vector(psi.vector() / np.sqrt(psi.norm_sq()))
    p = ClonerParams(zeta=0.725, nu=1.0)

    rho = reduce_first(psi)
    print("input qubit: A =", round(rho.A, 6), " B =", np.round(rho.B, 6))

    frame = build_ancilla_frame(p)
    xi = apply_qcm(psi, frame)
    print("|Xi> has", xi.size, "amplitudes, norm", np.vdot(xi, xi).real)

    brute = partial_trace(np.outer(xi, xi.conj()), XI_DIMS, keep=[0, 1])
    closed = joint_output(rho, p)
    print("clone pair, brute force vs closed form: max diff", np.max(np.abs(brute - closed)))
    print(np.round(closed, 4))

    out = single_output(rho, p)
    print("one clone:   A =", round(out.A, 6), " B =", np.round(out.B, 6))
    print("fidelity with the input:", fidelity(rho, out))
    print("distance W:", w_closed(p, rho.A, abs(rho.B)))

    # the same qubit state reached through a different two-qubit state gives the same clones
    u = np.array([[0, 1j], [1j, 0]])
    other = Amplitudes2Q.from_matrix(psi.matrix() @ u.T)
    print("different spectator, same clones:", np.allclose(joint_output(reduce_first(other), p), closed))


if __name__ == "__main__":
    main()

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: per-sample evaluation of stretched (M = J)
rotational state amplitudes on large Euler-angle sample sets.

The ladder over body projections k uses a tangent-half-angle recurrence
that only ever multiplies by ratios <= 1, so it is stable at both poles
and never overflows; prefactors (signed square-root binomials times the
state's expansion coefficients) are precomputed by the caller.
"""

from libc.math cimport cos, sin, sqrt

cimport cython


def stretched_state_values(int J, double[::1] pref, double norm,
                           double[::1] theta, double[::1] phi,
                           double[::1] chi, int M,
                           double complex[::1] out, double complex amp):
    """out += amp * norm * e^{i M phi} sum_k pref[k+J] e^{i k chi} T_k(theta)

    with T_k(theta) = cos^{J+k}(theta/2) sin^{J-k}(theta/2); pref folds the
    signed sqrt-binomial and the state coefficient A_k.
    """
    cdef Py_ssize_t n = theta.shape[0]
    cdef Py_ssize_t i
    cdef int k, dim = 2 * J + 1
    cdef double c, s, half, r, p
    cdef double complex eik, step, acc, phase

    for i in range(n):
        half = 0.5 * theta[i]
        c = cos(half)
        s = sin(half)
        acc = 0.0
        if c >= s:
            # ladder downward from k = J: T_J = c^{2J}, T_{k-1} = T_k * (s/c)
            r = s / c if c > 0.0 else 0.0
            p = c ** (2 * J)
            eik = cos(J * chi[i]) + 1j * sin(J * chi[i])
            step = cos(chi[i]) - 1j * sin(chi[i])
            for k in range(dim - 1, -1, -1):
                acc = acc + pref[k] * p * eik
                p *= r
                eik *= step
        else:
            # ladder upward from k = -J: T_{-J} = s^{2J}
            r = c / s
            p = s ** (2 * J)
            eik = cos(J * chi[i]) - 1j * sin(J * chi[i])
            step = cos(chi[i]) + 1j * sin(chi[i])
            for k in range(0, dim):
                acc = acc + pref[k] * p * eik
                p *= r
                eik *= step
        phase = cos(M * phi[i]) + 1j * sin(M * phi[i])
        out[i] = out[i] + amp * norm * phase * acc

"""Pure-NumPy fallback for the compiled kernels.

Mirrors the signatures in ``_kernels.pyx`` exactly; results agree with the
compiled versions to floating-point reordering (~1e-14 relative).
"""

import numpy as np


def stretched_state_values(J, pref, norm, theta, phi, chi, M, out, amp):
    """out += amp * norm * e^{i M phi} sum_k pref[k+J] e^{i k chi} T_k(theta)

    with T_k(theta) = cos^{J+k}(theta/2) sin^{J-k}(theta/2).
    """
    half = 0.5 * np.asarray(theta)
    c, s = np.cos(half), np.sin(half)
    chi = np.asarray(chi)
    acc = np.zeros(len(half), dtype=complex)
    for idx in np.nonzero(pref)[0]:
        k = int(idx) - J
        acc += pref[idx] * (c ** (J + k)) * (s ** (J - k)) * np.exp(1j * k * chi)
    out += amp * norm * np.exp(1j * M * np.asarray(phi)) * acc
    return out

"""Accelerated polarization-rotation pulse model.

The optical carrier is eliminated (cycle-averaged quadratic Stark
interaction), leaving the slow degrees of freedom: the field intensity
envelope and the in-plane polarization angle phi(t) = (beta/2)(t-t0)^2
whose angular velocity grows linearly at the acceleration rate beta.
beta is quoted in GHz/ps and is an *angular*-velocity acceleration:
1 GHz/ps = 1e9 rad/s per ps = 1e-3 rad/ps^2.  The two-photon (Raman)
angular-frequency sweep is 2*beta*(t-t0), so a ladder hop of frequency
omega_k (cm^-1, i.e. 2*pi*c*omega_k rad/ps) becomes resonant at

    t_k = t0 + 2*pi*c*omega_k / (2 beta).

The intensity envelope is a sum of sinc lobes centered at the scheduled
resonance times; the field amplitude is E0 * sqrt(max(sum, 0)).  A switch
selects sinc-shaped amplitude instead, for comparison.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import coupling, rotor
from .constants import FIELD_AU_IN_V_PER_CM, HARTREE_IN_INVCM, TWO_PI_C

# 1 GHz/ps of angular-velocity acceleration in rad/ps^2.
BETA_RAD_PS2_PER_GHZ_PS = 1e-3


@dataclass(frozen=True)
class CentrifugeParams:
    """Pulse parameters: peak field (V/cm), acceleration rate (GHz/ps),
    sinc width (ps), handedness (+1/-1), start time (ps)."""

    E0: float
    beta: float
    sigma: float
    handedness: int = +1
    t0: float = 0.0
    envelope_mode: str = "intensity-sinc"  # or "amplitude-sinc"
    # Each sinc lobe is kept within +/- lobe_window * sigma of its center;
    # integer windows end on exact sinc zeros, so truncation is continuous.
    lobe_window: float = 4.0

    def __post_init__(self):
        if self.E0 <= 0 or self.beta <= 0 or self.sigma <= 0:
            raise rotor.ConfigError("E0, beta, sigma must be positive")
        if self.handedness not in (+1, -1):
            raise rotor.ConfigError("handedness must be +1 or -1")
        if self.envelope_mode not in ("intensity-sinc", "amplitude-sinc"):
            raise rotor.ConfigError(f"unknown envelope mode {self.envelope_mode!r}")


@dataclass
class EnvelopeSchedule:
    """Resonance-time entries (t_k ps, hop label, omega_k cm^-1)."""

    entries: list  # [(t_ps, label, omega_cm1), ...]

    @property
    def times(self):
        return [e[0] for e in self.entries]

    @property
    def t_end(self):
        return self.entries[-1][0] if self.entries else 0.0


def resonance_schedule(path, params):
    """Map a ladder's hop frequencies onto pulse resonance times.

    t_k = t0 + omega_k/(2 beta), with omega_k the angular hop frequency
    2*pi*c*dE and beta the angular acceleration (GHz/ps -> rad/ps^2).
    Emits a warning (but still returns the schedule) if the hop
    frequencies are not monotonically increasing, since an accelerating
    sweep then crosses them out of ladder order.
    """
    if len(path.states) == 0:
        raise rotor.ConfigError("empty path")
    omegas = list(path.omegas_cm1)
    if any(w2 <= w1 for w1, w2 in zip(omegas, omegas[1:])):
        warnings.warn(
            "hop frequencies are not monotonically increasing along the path",
            stacklevel=2,
        )
    beta_rad = params.beta * BETA_RAD_PS2_PER_GHZ_PS
    entries = []
    for i, w in enumerate(omegas):
        t_k = params.t0 + TWO_PI_C * w / (2.0 * beta_rad)
        frm, to = path.states[i], path.states[i + 1]
        label = f"J{frm.J}h{frm.h}->J{to.J}h{to.h}"
        entries.append((t_k, label, w))
    return EnvelopeSchedule(entries)


def envelope(t, schedule, params):
    """Field amplitude (V/cm) of the scheduled pulse at time(s) t.

    The sum of sinc((t - t_k)/sigma) lobes shapes the *intensity*; the
    amplitude is its square root with negative excursions clamped to zero.
    In "amplitude-sinc" mode the sum shapes the amplitude directly.
    """
    t = np.asarray(t, dtype=float)
    total = np.zeros_like(t)
    for t_k, _, _ in schedule.entries:
        x = (t - t_k) / params.sigma
        total += np.where(np.abs(x) <= params.lobe_window, np.sinc(x), 0.0)
    if params.envelope_mode == "intensity-sinc":
        amp = params.E0 * np.sqrt(np.clip(total, 0.0, None))
    else:
        amp = params.E0 * np.clip(total, 0.0, None)
    return amp if amp.ndim else float(amp)


def polarization_phase(t, params):
    """Polarization angle phi(t) = (beta/2)(t-t0)^2 in radians."""
    beta_rad = params.beta * BETA_RAD_PS2_PER_GHZ_PS  # rad/ps^2
    dt = np.asarray(t, dtype=float) - params.t0
    return params.handedness * 0.5 * beta_rad * dt * dt


class BasisIndex:
    """Flattened eigenbasis over (J, h, tau, M) with energies."""

    def __init__(self, spec, j_max, embedding="b", m_values="even"):
        self.spec = spec
        self.j_max = j_max
        self.embedding = embedding
        keys, energies = [], []
        for J in range(j_max + 1):
            if m_values == "even":
                ms = [m for m in range(-J, J + 1) if m % 2 == 0]
            else:
                ms = list(range(-J, J + 1))
            for st in rotor.diagonalize_multiplet(J, spec, embedding):
                for M in ms:
                    keys.append(coupling.StateKey(J, st.h, st.tau, M))
                    energies.append(st.energy_cm1)
        self.keys = keys
        self.energies = np.array(energies)
        self.index = {k: i for i, k in enumerate(keys)}

    def __len__(self):
        return len(self.keys)


def _coupling_matrix(basis, p, floor=1e-10):
    """Sparse matrix of the anisotropic lab component p over the basis (a.u.)."""
    spec, emb = basis.spec, basis.embedding
    multiplets = {
        J: rotor.diagonalize_multiplet(J, spec, emb) for J in range(basis.j_max + 1)
    }
    rows, cols, vals = [], [], []
    for J1 in range(basis.j_max + 1):
        for J2 in range(max(0, J1 - 2), min(basis.j_max, J1 + 2) + 1):
            red = np.array(
                [
                    [coupling.reduced_moment(u, l, spec, emb) for l in multiplets[J1]]
                    for u in multiplets[J2]
                ]
            )
            if not np.any(np.abs(red) > floor):
                continue
            for ket in (k for k in basis.keys if k.J == J1):
                M2 = ket.M + p
                if abs(M2) > J2:
                    continue
                ori = coupling.orientation_factor(J2, M2, J1, ket.M, p)
                if ori == 0.0:
                    continue
                for up in multiplets[J2]:
                    v = ori * red[up.h - 1, ket.h - 1]
                    if abs(v) > floor:
                        bra = coupling.StateKey(J2, up.h, up.tau, M2)
                        i2 = basis.index.get(bra)
                        if i2 is not None:
                            rows.append(i2)
                            cols.append(basis.index[ket])
                            vals.append(v)
    return sp.csr_matrix(
        (vals, (rows, cols)), shape=(len(basis), len(basis)), dtype=float
    )


class InteractionOperator:
    """Time-dependent cycle-averaged Stark coupling over a fixed basis.

    H(t) = -(E_au(t)^2/4) [ mean_alpha * 1
                            - (1/sqrt6) A0
                            + (1/2)(e^{+2i phi(t)} A-2 + e^{-2i phi(t)} A+2) ]

    converted hartree -> cm^-1.  A_p are the sparse lab-component matrices;
    A-2 = A+2^dagger, so H is Hermitian at every t.  The scalar (mean
    polarizability) term is a state-independent shift, kept separately so
    propagation can apply it as an exact global phase.
    """

    def __init__(self, basis, schedule, params):
        self.basis = basis
        self.schedule = schedule
        self.params = params
        a0 = _coupling_matrix(basis, 0)
        self.a0 = ((a0 + a0.T) * 0.5).tocsr()  # exact symmetry
        self.a_plus2 = _coupling_matrix(basis, +2)
        self.a_minus2 = self.a_plus2.T.tocsr()
        self.mean_alpha, _ = coupling.body_spherical_alpha(
            basis.spec, basis.embedding
        )

    def prefactor(self, t):
        """-(E_au^2/4) in cm^-1 at time t (includes hartree->cm^-1)."""
        e_au = envelope(t, self.schedule, self.params) / FIELD_AU_IN_V_PER_CM
        return -(e_au * e_au / 4.0) * HARTREE_IN_INVCM

    def coefficients(self, t):
        """(c0, c2, shift): H(t) = c0 A0 + c2 A+2 + conj(c2) A-2 + shift*1."""
        pref = self.prefactor(t)
        phase = np.exp(-2j * polarization_phase(t, self.params))
        c0 = pref * (-1.0 / math.sqrt(6.0))
        c2 = pref * 0.5 * phase
        return c0, c2, pref * self.mean_alpha

    def matvec(self, t, v):
        c0, c2, _ = self.coefficients(t)
        out = c0 * (self.a0 @ v)
        out += c2 * (self.a_plus2 @ v)
        out += np.conj(c2) * (self.a_minus2 @ v)
        return out

    def dense(self, t, include_shift=False):
        c0, c2, shift = self.coefficients(t)
        h = (
            c0 * self.a0.toarray()
            + c2 * self.a_plus2.toarray()
            + np.conj(c2) * self.a_minus2.toarray()
        ).astype(complex)
        if include_shift:
            h += shift * np.eye(len(self.basis))
        return h

    def norm_bound(self, t):
        """Cheap upper bound on ||H(t)|| for step-size diagnostics."""
        c0, c2, _ = self.coefficients(t)
        return abs(c0) * sp.linalg.norm(self.a0, np.inf) + 2 * abs(c2) * sp.linalg.norm(
            self.a_plus2, np.inf
        )


def pulse_descriptor(params, schedule):
    return {
        "E0_V_per_cm": params.E0,
        "beta_GHz_per_ps": params.beta,
        "sigma_ps": params.sigma,
        "handedness": "+" if params.handedness > 0 else "-",
        "t0_ps": params.t0,
        "envelope_mode": params.envelope_mode,
        "schedule": [
            {"t_ps": t, "transition": label, "omega_cm1": w}
            for t, label, w in schedule.entries
        ],
    }

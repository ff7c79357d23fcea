"""Measurement-side quantities.

Wavefunction evaluation on Euler-angle grids, Monte-Carlo 2D alignment
cosines with importance sampling over the rotation group, closed-form
coherence beat formulas, the two-component "cogwheel" density, nuclear
probability clouds and body-frame rotation-axis distributions.

In-plane angle conventions: for stretched (M = J) coherences the body
z-axis sits near the lab Z-axis, so the azimuth of any in-plane body axis
is the combination Phi = phi + chi of Euler angles (the z-y-z rotation
degenerates to a single in-plane rotation as theta -> 0).  The analytic
beat formulas below are exact expectations of cos^2(phi + chi); the
Euler angle phi alone carries no dJ = 2 beat for stretched states (the
chi integral forbids it), which is why Phi is the meaningful in-plane
coordinate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, rotor, wigner
from .constants import GHZ_PER_INVCM, TWO_PI_C

_CHUNK = 1 << 18  # fixed MC chunk size; changing it changes sample streams
_LAB = {"X": 0, "Y": 1, "Z": 2}


# ---------------------------------------------------------------------------
# packet representation


@dataclass
class PacketComponent:
    """One angular component: a fixed-(J, M) state with real ladder
    amplitudes A_k over signed k = -J..J."""

    J: int
    M: int
    energy_cm1: float
    amps_k: np.ndarray  # length 2J+1
    tau: int | None = None
    label: str = ""

    def __post_init__(self):
        self.amps_k = np.asarray(self.amps_k, dtype=float)
        if len(self.amps_k) != 2 * self.J + 1:
            raise ValueError("amps_k must span k = -J..J")
        self._pref = wigner.top_row_prefactors(self.J) * self.amps_k
        self._norm = math.sqrt((2 * self.J + 1) / (8.0 * math.pi**2))

    def values(self, theta, phi, chi, out, amp):
        """Accumulate amp * <angles|component> into out."""
        if self.M == self.J:
            kernels.stretched_state_values(
                self.J,
                np.ascontiguousarray(self._pref),
                self._norm,
                np.ascontiguousarray(theta, dtype=float),
                np.ascontiguousarray(phi, dtype=float),
                np.ascontiguousarray(chi, dtype=float),
                self.M,
                out,
                complex(amp),
            )
        else:
            acc = np.zeros(len(theta), dtype=complex)
            for i in np.nonzero(self.amps_k)[0]:
                k = int(i) - self.J
                acc += (
                    self.amps_k[i]
                    * wigner.small_d(self.J, self.M, k, theta)
                    * np.exp(1j * k * np.asarray(chi))
                )
            out += amp * self._norm * np.exp(1j * self.M * np.asarray(phi)) * acc
        return out


@dataclass
class AngularPacket:
    """A coherent superposition of PacketComponents with amplitudes
    amps0 referenced to time t0 (ps)."""

    components: list
    amps0: np.ndarray
    t0: float = 0.0
    embedding: str = "b"

    def __post_init__(self):
        self.amps0 = np.asarray(self.amps0, dtype=complex)
        if len(self.amps0) != len(self.components):
            raise ValueError("one amplitude per component")

    @property
    def energies(self):
        return np.array([c.energy_cm1 for c in self.components])

    def amplitudes_at(self, t):
        dt = t - self.t0
        return self.amps0 * np.exp(-1j * TWO_PI_C * self.energies * dt)

    def values(self, theta, phi, chi, t=None):
        """psi(theta, phi, chi; t) as a complex array."""
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        amps = self.amps0 if t is None else self.amplitudes_at(t)
        out = np.zeros(len(theta), dtype=complex)
        for comp, a in zip(self.components, amps):
            if a != 0.0:
                comp.values(theta, phi, chi, out, a)
        return out


def component_from_state(state, M):
    """PacketComponent for a rotor eigenstate at lab projection M."""
    ks, amps = state.signed_amplitudes()
    return PacketComponent(
        J=state.J,
        M=M,
        energy_cm1=state.energy_cm1,
        amps_k=amps,
        tau=state.tau,
        label=f"J{state.J}h{state.h}{state.parity_label}",
    )


def handed_component(J, energy_cm1=0.0, M=None):
    """Idealized single-ladder component with A_k = delta_{k,J}."""
    amps = np.zeros(2 * J + 1)
    amps[2 * J] = 1.0
    return PacketComponent(
        J=J, M=J if M is None else M, energy_cm1=energy_cm1, amps_k=amps,
        tau=None, label=f"J{J}top",
    )


def packet_from_wavepacket(wp, spec, embedding="b"):
    comps, amps = [], []
    for key, a in zip(wp.basis, wp.amps):
        if a == 0.0:
            continue
        st = rotor.get_state(key.J, key.h, key.tau, spec, embedding)
        comps.append(component_from_state(st, key.M))
        amps.append(a)
    return AngularPacket(comps, np.array(amps), t0=wp.t, embedding=embedding)


def evaluate_wavefunction(wp, theta, phi, chi, spec=None, embedding="b", t=None):
    """psi(theta, phi, chi) of a Wavepacket or AngularPacket."""
    if isinstance(wp, AngularPacket):
        return wp.values(theta, phi, chi, t=t)
    if spec is None:
        raise rotor.ConfigError("MoleculeSpec required to resolve a Wavepacket")
    return packet_from_wavepacket(wp, spec, embedding).values(theta, phi, chi, t=t)


# ---------------------------------------------------------------------------
# coherence specifications


@dataclass
class CoherenceSpec:
    """A hand-built ladder superposition of principal rotation states.

    Members run J = j_min, j_min+2, ..., j_max, each resolved as the
    axis-principal eigenstate of its multiplet at M = J and parity tau;
    weights default to flat (normalized), static phases to zero
    ("flat") or to a seeded uniform draw ("random").
    """

    axis: str
    j_min: int
    j_max: int
    weights: np.ndarray | None = None
    phases: str | np.ndarray = "flat"
    seed: int | None = None
    tau: int = 0

    def __post_init__(self):
        if self.axis not in rotor.AXES:
            raise rotor.ConfigError(f"axis must be a/b/c, got {self.axis!r}")
        if (self.j_max - self.j_min) % 2 or self.j_max < self.j_min:
            raise rotor.ConfigError("need j_max >= j_min with even difference")

    @property
    def j_values(self):
        return list(range(self.j_min, self.j_max + 1, 2))

    def resolve(self, spec, embedding=None, idealized=False):
        emb = embedding or self.axis
        js = self.j_values
        n = len(js)
        w = (
            np.full(n, 1.0 / math.sqrt(n))
            if self.weights is None
            else np.asarray(self.weights, dtype=float)
        )
        w = w / math.sqrt(float(np.sum(w**2)))
        if isinstance(self.phases, str):
            if self.phases == "flat":
                ph = np.zeros(n)
            elif self.phases == "random":
                ph = np.random.default_rng(self.seed).uniform(0, 2 * math.pi, n)
            else:
                raise rotor.ConfigError(f"unknown phase mode {self.phases!r}")
        else:
            ph = np.asarray(self.phases, dtype=float)
        comps = []
        for J in js:
            if idealized:
                st = rotor.find_principal_state(J, self.axis, spec, tau=self.tau, embedding=emb)
                comps.append(handed_component(J, st.energy_cm1))
            else:
                st = rotor.find_principal_state(J, self.axis, spec, tau=self.tau, embedding=emb)
                comps.append(component_from_state(st, M=J))
        amps0 = w * np.exp(-1j * ph)
        return AngularPacket(comps, amps0, t0=0.0, embedding=emb)


# ---------------------------------------------------------------------------
# Monte-Carlo sampling


def sample_haar(rng, n):
    """Uniform samples of (theta, phi, chi) under sin(theta) dtheta dphi dchi."""
    theta = np.arccos(1.0 - 2.0 * rng.random(n))
    phi = 2.0 * math.pi * rng.random(n)
    chi = 2.0 * math.pi * rng.random(n)
    return theta, phi, chi


def body_axis_vector(axis, embedding):
    """Unit vector of principal axis `axis` in the embedding's body frame."""
    x, y, z = rotor.embedding_axes(embedding)
    vec = np.zeros(3)
    vec[(x, y, z).index(axis)] = 1.0
    return vec


def rotate_body_vectors(vec, theta, phi, chi):
    """Lab components of a body vector under R = Rz(phi)Ry(theta)Rz(chi)."""
    ax, ay, az = vec
    cchi, schi = np.cos(chi), np.sin(chi)
    u = ax * cchi - ay * schi
    v = ax * schi + ay * cchi
    w = np.full_like(u, az) if np.ndim(az) == 0 else az
    cth, sth = np.cos(theta), np.sin(theta)
    p = u * cth + w * sth
    r = -u * sth + w * cth
    cph, sph = np.cos(phi), np.sin(phi)
    X = p * cph - v * sph
    Y = p * sph + v * cph
    return X, Y, r


def parse_cosine(name):
    """'bZX' -> (axis 'b', ref 'Z', other 'X')."""
    if len(name) != 3 or name[0] not in rotor.AXES or name[1] not in _LAB or name[2] not in _LAB:
        raise rotor.ConfigError(f"bad cosine name {name!r}; expected e.g. 'bZX'")
    return name[0], name[1], name[2]


def _cos2_plane(vec_lab, ref, other, eps=1e-12):
    """cos^2 of the in-plane angle to `ref`; mask marks degenerate samples."""
    p = vec_lab[_LAB[ref]]
    q = vec_lab[_LAB[other]]
    denom = p * p + q * q
    mask = denom > eps * eps
    with np.errstate(invalid="ignore", divide="ignore"):
        c2 = np.where(mask, p * p / np.where(mask, denom, 1.0), 0.0)
    return c2, mask


@dataclass
class MCEstimate:
    value: float
    stderr: float
    n_samples: int
    n_skipped: int = 0

    def __iter__(self):
        yield self.value
        yield self.stderr


def mc_expectation(packet, fns, n_samples, seed, t=None):
    """Self-normalized importance-sampling expectations over |psi|^2.

    `fns` maps names to callables f(theta, phi, chi) -> (values, mask);
    samples are drawn uniformly from the Haar measure and weighted by
    |psi|^2.  Deterministic for fixed (seed, n_samples).
    """
    rng = np.random.default_rng(seed)
    acc = {name: np.zeros(5) for name in fns}  # Sw, Swf, Sw2, Sw2f, Sw2f2
    skipped = {name: 0 for name in fns}
    remaining = int(n_samples)
    while remaining > 0:
        n = min(_CHUNK, remaining)
        remaining -= n
        theta, phi, chi = sample_haar(rng, n)
        w = np.abs(packet.values(theta, phi, chi, t=t)) ** 2
        w2 = w * w
        for name, fn in fns.items():
            f, mask = fn(theta, phi, chi)
            wm = np.where(mask, w, 0.0)
            w2m = np.where(mask, w2, 0.0)
            a = acc[name]
            a[0] += wm.sum()
            a[1] += (wm * f).sum()
            a[2] += w2m.sum()
            a[3] += (w2m * f).sum()
            a[4] += (w2m * f * f).sum()
            skipped[name] += int(n - mask.sum())
    out = {}
    for name, a in acc.items():
        sw, swf, sw2, sw2f, sw2f2 = a
        v = swf / sw
        var = max(sw2f2 - 2.0 * v * sw2f + v * v * sw2, 0.0)
        out[name] = MCEstimate(float(v), float(math.sqrt(var) / sw),
                               int(n_samples), skipped[name])
    return out


def alignment_cos2_mc(packet, axis, plane, n_samples=1_000_000, seed=0,
                      t=None, ref_axis=None):
    """MC estimate of <cos^2> of the angle between the lab-plane projection
    of a molecular axis and a reference lab axis (plane's first letter by
    default)."""
    if n_samples < 10_000:
        raise rotor.ConfigError("n_samples must be at least 1e4")
    ref = ref_axis or plane[0]
    other = [c for c in plane if c != ref]
    if len(other) != 1:
        raise rotor.ConfigError(f"reference {ref!r} not in plane {plane!r}")
    vec = body_axis_vector(axis, packet.embedding)

    def fn(theta, phi, chi):
        lab = rotate_body_vectors(vec, theta, phi, chi)
        return _cos2_plane(lab, ref, other[0])

    return mc_expectation(packet, {"c": fn}, n_samples, seed, t=t)["c"]


def cos2_inplane_angle_fn():
    """f = cos^2(phi + chi): the in-plane rotation angle of stretched states."""

    def fn(theta, phi, chi):
        return np.cos(phi + chi) ** 2, np.ones(len(theta), dtype=bool)

    return fn


@dataclass
class AlignmentTrace:
    times: np.ndarray
    values: dict  # name -> ndarray
    stderr: dict  # name -> ndarray
    n_samples: int

    def write_csv(self, path):
        names = list(self.values)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["t_ps"]
                + [f"cos2_{n}" for n in names]
                + [f"stderr_{n}" for n in names]
            )
            for i, t in enumerate(self.times):
                writer.writerow(
                    [f"{t:.6f}"]
                    + [f"{self.values[n][i]:.8f}" for n in names]
                    + [f"{self.stderr[n][i]:.2e}" for n in names]
                )


def alignment_trace(packet, cosines, times, n_samples=300_000, seed=0,
                    t_block=16):
    """Time traces of several alignment cosines from one sample set.

    Basis-function values are computed once per sample chunk; between time
    points only the (analytic, field-free) phase factors change, so each
    time point costs one small matrix product.
    """
    times = np.asarray(times, dtype=float)
    names = list(cosines)
    fns = []
    for name in names:
        axis, ref, other = parse_cosine(name)
        vec = body_axis_vector(axis, packet.embedding)
        fns.append((vec, ref, other))

    rng = np.random.default_rng(seed)
    nT = len(times)
    acc = {n: np.zeros((5, nT)) for n in names}
    energies = packet.energies
    remaining = int(n_samples)
    while remaining > 0:
        n = min(_CHUNK, remaining)
        remaining -= n
        theta, phi, chi = sample_haar(rng, n)
        basis = np.empty((n, len(packet.components)), dtype=complex)
        for j, comp in enumerate(packet.components):
            col = np.zeros(n, dtype=complex)
            comp.values(theta, phi, chi, col, 1.0)
            basis[:, j] = col
        fvals = []
        for vec, ref, other in fns:
            lab = rotate_body_vectors(vec, theta, phi, chi)
            fvals.append(_cos2_plane(lab, ref, other))
        for lo in range(0, nT, t_block):
            hi = min(lo + t_block, nT)
            dt = times[lo:hi] - packet.t0
            cmat = packet.amps0[:, None] * np.exp(
                -1j * TWO_PI_C * energies[:, None] * dt[None, :]
            )
            w = np.abs(basis @ cmat) ** 2  # (n, hi-lo)
            w2 = w * w
            for name, (f, mask) in zip(names, fvals):
                wm = np.where(mask[:, None], w, 0.0)
                w2m = np.where(mask[:, None], w2, 0.0)
                a = acc[name]
                a[0, lo:hi] += wm.sum(axis=0)
                a[1, lo:hi] += (wm * f[:, None]).sum(axis=0)
                a[2, lo:hi] += w2m.sum(axis=0)
                a[3, lo:hi] += (w2m * f[:, None]).sum(axis=0)
                a[4, lo:hi] += (w2m * f[:, None] ** 2).sum(axis=0)

    values, stderr = {}, {}
    for name in names:
        sw, swf, sw2, sw2f, sw2f2 = acc[name]
        v = swf / sw
        var = np.clip(sw2f2 - 2.0 * v * sw2f + v * v * sw2, 0.0, None)
        values[name] = v
        stderr[name] = np.sqrt(var) / sw
    return AlignmentTrace(times, values, stderr, int(n_samples))


# ---------------------------------------------------------------------------
# analytic coherence formulas


def phi_integral(delta_j):
    """int_0^{2pi} cos^2(x) e^{-i x dJ} dx for integer dJ."""
    if int(delta_j) != delta_j:
        raise rotor.ConfigError("integer spacing expected")
    delta_j = int(delta_j)
    if delta_j == 0:
        return complex(math.pi)
    if abs(delta_j) == 2:
        return complex(math.pi / 2.0)
    return 0j


def chi_integral(delta_k):
    """int_0^{2pi} e^{-i x dK} dx for integer dK."""
    if int(delta_k) != delta_k:
        raise rotor.ConfigError("integer spacing expected")
    return complex(2.0 * math.pi) if int(delta_k) == 0 else 0j


def _beat_terms(packet):
    """(omega, dphi0, Xi) per consecutive dJ = 2 pair of the packet."""
    comps = packet.components
    js = [c.J for c in comps]
    if any(j2 - j1 != 2 for j1, j2 in zip(js, js[1:])):
        raise rotor.ConfigError("packet members must step by dJ = 2")
    taus = {c.tau for c in comps if c.tau is not None}
    if len(taus) > 1:
        raise rotor.ConfigError("mismatched parities in coherence packet")
    if any(c.M != c.J for c in comps):
        raise rotor.ConfigError("in-plane beat formulas require M = J members")
    terms = []
    for c1, c2, a1, a2 in zip(comps, comps[1:], packet.amps0, packet.amps0[1:]):
        xi = 0.0
        for i1, A1 in enumerate(c1.amps_k):
            if A1 == 0.0:
                continue
            k = i1 - c1.J
            i2 = (k + 2) + c2.J
            if 0 <= i2 < len(c2.amps_k) and c2.amps_k[i2] != 0.0:
                xi += A1 * c2.amps_k[i2] * wigner.d_top_overlap(
                    c1.J, k, c2.J, k + 2
                )
        xi *= 0.5 * math.sqrt((2 * c1.J + 1) * (2 * c2.J + 1))
        omega = TWO_PI_C * (c2.energy_cm1 - c1.energy_cm1)
        dphi0 = -(np.angle(a2) - np.angle(a1))
        terms.append((omega, dphi0, 0.5 * abs(a1) * abs(a2) * xi))
    return terms


def analytic_cos2phi_full(packet, t):
    """Exact <cos^2(phi+chi)>(t) for a dJ = 2 ladder packet.

    Sums the polar overlaps of every co-precessing ladder-component pair;
    reduces to the single-term beat formula when one ladder component
    dominates each member.
    """
    t = np.asarray(t, dtype=float)
    out = np.full(t.shape, 0.5)
    for omega, dphi0, g in _beat_terms(packet):
        out = out + g * np.cos(omega * (t - packet.t0) + dphi0)
    return out if out.ndim else float(out)


def analytic_cos2phi(packet, t):
    """Dominant-component beat formula for <cos^2(phi+chi)>(t).

    For ladder members J, J+2, ... with moduli |c_J|, static phases and
    energies E_J (cm^-1):

        1/2 + sum_J g_J cos(omega_{J+2,J} (t - t0) + dphi0),
        g_J = |c_J||c_{J+2}| sqrt((2J+1)(2J+5)) / (4J+6).

    Exact for idealized single-handed K = J members (where it coincides
    with analytic_cos2phi_full); an approximation for real mixed states.
    A single-member packet has no beat and returns the constant 1/2.
    """
    comps = packet.components
    js = [c.J for c in comps]
    if any(j2 - j1 != 2 for j1, j2 in zip(js, js[1:])):
        raise rotor.ConfigError("packet members must step by dJ = 2")
    t = np.asarray(t, dtype=float)
    out = np.full(t.shape, 0.5)
    for c1, c2, a1, a2 in zip(comps, comps[1:], packet.amps0, packet.amps0[1:]):
        J = c1.J
        g = (
            abs(a1) * abs(a2)
            * math.sqrt((2 * J + 1) * (2 * J + 5))
            / (4 * J + 6)
        )
        omega = TWO_PI_C * (c2.energy_cm1 - c1.energy_cm1)
        dphi0 = -(np.angle(a2) - np.angle(a1))
        out = out + g * np.cos(omega * (t - packet.t0) + dphi0)
    return out if out.ndim else float(out)


def cogwheel_period(e1_cm1, e2_cm1):
    """Revolution period (ps) of a two-state dJ = 2 coherence."""
    gap = abs(e2_cm1 - e1_cm1)
    if gap == 0.0:
        raise rotor.ConfigError("degenerate pair has no beat period")
    return 1000.0 / (GHZ_PER_INVCM * gap)


def cogwheel_density(J, theta, phi, chi, t, offsets=(0.0, 0.0, 0.0), omega=0.0):
    """Closed-form probability density of the equal-weight (J, J+2) ladder
    coherence (two co-rotating teeth), normalized to unit angular integral.

    rho = cos^{4J}(th/2)/(16 pi^2) [ (2J+1) + (2J+5) cos^8(th/2)
          + 2 sqrt((2J+1)(2J+5)) cos^4(th/2) cos(2(ph+ch) - omega t) ]

    with th, ph, ch the angle offsets from `offsets`.  Matches
    |evaluate_wavefunction|^2 of the corresponding two-component packet
    pointwise.
    """
    th = np.asarray(theta) - offsets[0]
    ph = np.asarray(phi) - offsets[1]
    ch = np.asarray(chi) - offsets[2]
    c2 = np.cos(0.5 * th) ** 2
    c4J = c2 ** (2 * J)
    bracket = (
        (2 * J + 1)
        + (2 * J + 5) * c2**4
        + 2.0 * math.sqrt((2 * J + 1) * (2 * J + 5)) * c2**2
        * np.cos(2.0 * (ph + ch) - omega * t)
    )
    return c4J * bracket / (16.0 * math.pi**2)


# ---------------------------------------------------------------------------
# densities and axis distributions


def density_cloud(packet, geometry, n_samples, seed=0, t=None, oversample=4):
    """Atom positions sampled from the packet's orientational density.

    Draws uniform orientations, importance-resamples them by |psi|^2 and
    rigidly rotates the body-frame geometry into the lab frame.  Returns
    (labels, positions) with positions of shape (n_samples, n_atoms, 3).
    """
    rng = np.random.default_rng(seed)
    n_prop = int(max(oversample * n_samples, 10_000))
    theta, phi, chi = sample_haar(rng, n_prop)
    w = np.abs(packet.values(theta, phi, chi, t=t)) ** 2
    idx = rng.choice(n_prop, size=int(n_samples), p=w / w.sum())
    theta, phi, chi = theta[idx], phi[idx], chi[idx]

    x_ax, y_ax, z_ax = rotor.embedding_axes(packet.embedding)
    order = [rotor.AXES.index(ax) for ax in (x_ax, y_ax, z_ax)]
    labels, pos = [], []
    for label, r_abc in geometry:
        r_body = np.asarray(r_abc, dtype=float)[order]
        X, Y, Z = rotate_body_vectors(r_body, theta, phi, chi)
        labels.append(label)
        pos.append(np.stack([X, Y, Z], axis=-1))
    return labels, np.stack(pos, axis=1)


def write_cloud_xyz(labels, positions, path):
    n_samples, n_atoms, _ = positions.shape
    with open(path, "w") as fh:
        fh.write(f"{n_samples * n_atoms}\n")
        fh.write("orientational density cloud; coordinates in Angstrom (lab frame)\n")
        for i in range(n_samples):
            for a in range(n_atoms):
                x, y, z = positions[i, a]
                fh.write(f"{labels[a]} {x:.6f} {y:.6f} {z:.6f}\n")


def rotation_axis_distribution(state, n_theta=91, n_phi=181):
    """Body-frame quasi-distribution of the rotation axis of an M = J state.

    Overlap density |<state | stretched state quantized along n>|^2 on the
    body sphere (theta from the body z-axis), normalized to unit maximum.
    Returns (theta_grid, phi_grid, Q[n_theta, n_phi]).
    """
    if state.J < 1:
        raise rotor.ConfigError("rotation axis distribution needs J >= 1")
    th = np.linspace(0.0, math.pi, n_theta)
    ph = np.linspace(0.0, 2.0 * math.pi, n_phi)
    ks, amps = state.signed_amplitudes()
    J = state.J
    overlap = np.zeros((n_theta, n_phi), dtype=complex)
    for k, a in zip(ks, amps):
        if a == 0.0:
            continue
        dk = ((-1.0) ** (k - J)) * wigner.d_top_row(J, k, th)
        overlap += a * dk[:, None] * np.exp(-1j * k * ph)[None, :]
    q = np.abs(overlap) ** 2
    return th, ph, q / q.max()


def write_axis_distribution_csv(theta, phi, q, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["theta_rad", "phi_rad", "value"])
        for i, th in enumerate(theta):
            for j, ph in enumerate(phi):
                writer.writerow([f"{th:.6f}", f"{ph:.6f}", f"{q[i, j]:.8e}"])

"""Split-operator propagation of rotational wavepackets.

One step over dt advances the amplitude vector as

    c <- D(dt/2) expm(-i 2 pi c H_int(t_mid) dt) D(dt/2) c

where D is the diagonal free-rotor phase exp(-i 2 pi c E_n dt/2) (energies
in cm^-1, time in ps) and the interaction exponential acts on the state
through a Hermitian Lanczos iteration in a small Krylov subspace.  The
interaction is sampled at the midpoint of every step.  The state-
independent scalar Stark shift is applied as an exact global phase rather
than entering the Krylov matrix.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import TWO_PI_C
from .coupling import StateKey


class NumericError(ArithmeticError):
    pass


class KrylovError(NumericError):
    pass


@dataclass
class Wavepacket:
    """Complex amplitudes over labeled eigenstates at time t (ps)."""

    basis: list  # list[StateKey]
    energies: np.ndarray  # cm^-1
    amps: np.ndarray  # complex
    t: float = 0.0

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        self.amps = np.asarray(self.amps, dtype=complex)
        if not (len(self.basis) == len(self.energies) == len(self.amps)):
            raise ValueError("basis/energies/amps length mismatch")

    @property
    def norm(self):
        return float(np.sum(np.abs(self.amps) ** 2))

    def population(self, key):
        try:
            i = self.basis.index(key)
        except ValueError:
            return 0.0
        return float(abs(self.amps[i]) ** 2)

    def populations(self):
        return {k: float(abs(a) ** 2) for k, a in zip(self.basis, self.amps)}

    def copy(self):
        return Wavepacket(list(self.basis), self.energies.copy(), self.amps.copy(), self.t)

    @staticmethod
    def pure(basis, energies, key, t=0.0):
        amps = np.zeros(len(basis), dtype=complex)
        amps[list(basis).index(key)] = 1.0
        return Wavepacket(list(basis), energies, amps, t)

    def to_json(self):
        return json.dumps(
            {
                "t_ps": self.t,
                "states": [
                    {
                        "J": k.J,
                        "h": k.h,
                        "tau": "+" if k.tau == 0 else "-",
                        "M": k.M,
                        "energy_cm1": float(e),
                        "re": float(a.real),
                        "im": float(a.imag),
                    }
                    for k, e, a in zip(self.basis, self.energies, self.amps)
                ],
            },
            indent=2,
        )

    @staticmethod
    def from_json(text):
        doc = json.loads(text)
        basis, energies, amps = [], [], []
        for rec in doc["states"]:
            basis.append(
                StateKey(rec["J"], rec["h"], 0 if rec["tau"] == "+" else 1, rec["M"])
            )
            energies.append(rec["energy_cm1"])
            amps.append(rec["re"] + 1j * rec["im"])
        return Wavepacket(basis, np.array(energies), np.array(amps), doc["t_ps"])


@dataclass(frozen=True)
class PropagatorConfig:
    dt: float = 0.010  # ps
    krylov_dim: int = 12
    krylov_tol: float = 1e-12
    j_max: int | None = None
    amp_floor: float = 0.0
    record_stride: int = 10
    leak_threshold: float = 1e-3

    def __post_init__(self):
        if self.dt == 0.0 or self.krylov_dim < 2:
            raise ValueError("need dt != 0 and krylov_dim >= 2")


def lanczos_expmv(matvec, v, scale, max_dim, tol):
    """w = expm(-i * scale * H) v for Hermitian H given through matvec.

    Builds a Krylov subspace with full reorthogonalization (dimensions are
    tiny) and stops once the subspace exponential has converged to `tol`
    between consecutive iterations.  Raises KrylovError if max_dim is
    exhausted without convergence.
    """
    norm_v = np.linalg.norm(v)
    if norm_v == 0.0:
        return v.copy()
    basis = [v / norm_v]
    alphas, betas = [], []
    prev = None
    w = None
    for m in range(1, max_dim + 1):
        hv = matvec(basis[-1])
        alphas.append(float(np.real(np.vdot(basis[-1], hv))))
        hv = hv - alphas[-1] * basis[-1]
        if len(basis) > 1:
            hv = hv - betas[-1] * basis[-2]
        # full reorthogonalization
        for b in basis:
            hv -= np.vdot(b, hv) * b
        beta = np.linalg.norm(hv)

        tmat = np.diag(alphas).astype(complex)
        if betas:
            off = np.array(betas)
            tmat += np.diag(off, 1) + np.diag(off, -1)
        evals, evecs = np.linalg.eigh(tmat)
        small = evecs @ (np.exp(-1j * scale * evals) * np.conj(evecs[0, :]))
        w = sum(c * b for c, b in zip(small, basis)) * norm_v

        if prev is not None:
            if np.linalg.norm(w - prev) <= tol * norm_v:
                return w
        prev = w
        if beta < 1e-14:  # invariant subspace: exact result
            return w
        betas.append(float(beta))
        basis.append(hv / beta)
    raise KrylovError(
        f"Krylov iteration did not reach tol={tol} within {max_dim} vectors; "
        f"increase krylov_dim or decrease dt"
    )


def step(wp, interaction, cfg, dt=None):
    """One split-operator step; the interaction is sampled mid-step."""
    dt = cfg.dt if dt is None else dt
    t_mid = wp.t + 0.5 * dt
    half = np.exp(-1j * TWO_PI_C * wp.energies * 0.5 * dt)
    c = half * wp.amps
    c0, c2, shift = interaction.coefficients(t_mid)
    if c0 != 0.0 or c2 != 0.0:
        c = lanczos_expmv(
            lambda x: interaction.matvec(t_mid, x),
            c,
            TWO_PI_C * dt,
            cfg.krylov_dim,
            cfg.krylov_tol,
        )
    if shift != 0.0:
        c = c * np.exp(-1j * TWO_PI_C * shift * dt)
    c = half * c
    return Wavepacket(wp.basis, wp.energies, c, wp.t + dt)


def free_evolve(wp, dt):
    """Exact field-free evolution by dt (ps)."""
    phases = np.exp(-1j * TWO_PI_C * wp.energies * dt)
    return Wavepacket(wp.basis, wp.energies, phases * wp.amps, wp.t + dt)


@dataclass
class Trajectory:
    times: np.ndarray
    norms: np.ndarray
    populations: dict  # StateKey -> ndarray
    warnings: list
    final: Wavepacket
    wall_time_s: float = 0.0

    def write_csv(self, path):
        keys = list(self.populations)
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["t_ps", "norm"]
                + [f"pop_J{k.J}_h{k.h}_{'p' if k.tau == 0 else 'm'}_M{k.M}" for k in keys]
            )
            for i, t in enumerate(self.times):
                writer.writerow(
                    [f"{t:.6f}", f"{self.norms[i]:.12f}"]
                    + [f"{self.populations[k][i]:.10e}" for k in keys]
                )


def propagate(wp0, interaction, t_span, cfg, track=None, progress=None):
    """Propagate over t_span = (t_start, t_end), recording populations.

    `track` lists StateKeys to record (default: every basis state with
    nonzero initial amplitude plus the interaction path is up to the
    caller).  Population reaching the outermost J shell above
    cfg.leak_threshold is recorded as a warning, not an error.
    """
    import time as _time

    t_start, t_end = t_span
    if abs(wp0.t - t_start) > 1e-12:
        raise ValueError(f"wavepacket at t={wp0.t}, span starts at {t_start}")
    n_steps = int(round((t_end - t_start) / cfg.dt))
    if abs(t_start + n_steps * cfg.dt - t_end) > 1e-9:
        raise ValueError("t_span must be an integer number of steps")

    track = list(track) if track is not None else [
        k for k, a in zip(wp0.basis, wp0.amps) if abs(a) > 0
    ]
    j_outer = max(k.J for k in wp0.basis)
    outer_idx = np.array([i for i, k in enumerate(wp0.basis) if k.J == j_outer])

    times, norms = [], []
    pops = {k: [] for k in track}
    warns = []
    wp = wp0.copy()

    def record():
        times.append(wp.t)
        norms.append(wp.norm)
        for k in track:
            pops[k].append(wp.population(k))

    tic = _time.perf_counter()
    record()
    max_leak = 0.0
    for i in range(n_steps):
        wp = step(wp, interaction, cfg)
        if (i + 1) % cfg.record_stride == 0 or i == n_steps - 1:
            record()
            leak = float(np.sum(np.abs(wp.amps[outer_idx]) ** 2))
            max_leak = max(max_leak, leak)
        if progress and (i + 1) % 1000 == 0:
            progress(i + 1, n_steps)
    if max_leak > cfg.leak_threshold:
        warns.append(
            f"population in the outermost J={j_outer} shell reached "
            f"{max_leak:.3e} (threshold {cfg.leak_threshold:.1e}); "
            f"increase j_max"
        )
    drift = abs(norms[-1] - norms[0])
    if drift > 1e-9:
        warns.append(f"norm drifted by {drift:.3e} over the run")

    return Trajectory(
        times=np.array(times),
        norms=np.array(norms),
        populations={k: np.array(v) for k, v in pops.items()},
        warnings=warns,
        final=wp,
        wall_time_s=_time.perf_counter() - tic,
    )


def truncate_basis(wp, cfg):
    """Drop sub-floor amplitudes when that changes the norm by < 1e-12.

    Returns (wavepacket, dropped_mass); the packet is unchanged (and the
    mass zero) whenever dropping would be observable.
    """
    if cfg.amp_floor <= 0.0:
        return wp, 0.0
    keep = np.abs(wp.amps) >= cfg.amp_floor
    dropped = float(np.sum(np.abs(wp.amps[~keep]) ** 2))
    if dropped >= 1e-12 or keep.all():
        return wp, 0.0
    basis = [k for k, m in zip(wp.basis, keep) if m]
    return (
        Wavepacket(basis, wp.energies[keep], wp.amps[keep], wp.t),
        dropped,
    )

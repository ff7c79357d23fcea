"""Rigid asymmetric-top eigenproblem in the parity-adapted basis.

Builds the rotational Hamiltonian H = A Ja^2 + B Jb^2 + C Jc^2 in a
symmetric-top basis quantized along a configurable body axis (the
"embedding"), block-diagonalizes it over the parity-adapted (Wang)
combinations, and classifies eigenstates by their angular-momentum
projections onto the three principal inertia axes.

Each J gives a multiplet of 2J+1 levels.  States are labeled (J, h, tau)
with h the 1-based ascending-energy rank inside the multiplet and tau the
parity of the Wang combination (0 -> "+", 1 -> "-").  Energies do not
depend on the lab projection M, so a multiplet is computed once and reused
for all M.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

import numpy as np

from .constants import ATOMIC_MASS_U, ghz_to_invcm

AXES = ("a", "b", "c")

# Right-handed cyclic body-frame assignments (x, y, z) for each choice of
# the quantization axis z.
_EMBEDDINGS = {
    "a": ("b", "c", "a"),
    "b": ("c", "a", "b"),
    "c": ("a", "b", "c"),
}


class ConfigError(ValueError):
    """Bad molecule or run configuration."""


@dataclass(frozen=True)
class MoleculeSpec:
    """Rotational constants, body-frame polarizability and rigid geometry.

    Rotational constants are in GHz with A >= B >= C; polarizability
    principal components in atomic units; geometry in Angstrom in the
    principal-inertia frame (columns a, b, c) with the center of mass at
    the origin.
    """

    name: str
    A: float
    B: float
    C: float
    alpha: tuple  # (alpha_aa, alpha_bb, alpha_cc) in a.u.
    geometry: tuple = ()  # ((label, (a, b, c)), ...)

    def __post_init__(self):
        if not (self.A >= self.B >= self.C > 0):
            raise ConfigError(
                f"rotational constants must satisfy A >= B >= C > 0, got "
                f"A={self.A}, B={self.B}, C={self.C}"
            )
        if len(self.alpha) != 3:
            raise ConfigError("alpha must have three principal components")
        if self.geometry:
            com = np.zeros(3)
            mtot = 0.0
            for label, pos in self.geometry:
                m = ATOMIC_MASS_U.get(label)
                if m is None:
                    raise ConfigError(f"unknown atom label {label!r}")
                com += m * np.asarray(pos, dtype=float)
                mtot += m
            com /= mtot
            if np.max(np.abs(com)) > 1e-9:
                raise ConfigError(
                    f"geometry center of mass off origin by {com} A"
                )

    @property
    def constants_ghz(self):
        return {"a": self.A, "b": self.B, "c": self.C}


@dataclass(frozen=True)
class WangKet:
    """Parity-adapted symmetric-top basis label |J, K, M, tau>."""

    J: int
    K: int
    M: int
    tau: int

    def __post_init__(self):
        if not (0 <= self.K <= self.J and abs(self.M) <= self.J):
            raise ConfigError(f"bad Wang indices {self}")
        if self.tau not in (0, 1):
            raise ConfigError(f"tau must be 0 or 1, got {self.tau}")
        if self.K == 0 and self.tau == 1:
            raise ConfigError("K = 0 exists only for tau = 0")


@dataclass(frozen=True)
class RotorState:
    """One asymmetric-top eigenstate at fixed J (all M share it)."""

    J: int
    h: int
    tau: int
    energy_cm1: float
    coeffs: tuple  # ((K, a_K), ...) for K >= 0; sum a_K^2 = 1
    proj: tuple  # (<Ja^2>, <Jb^2>, <Jc^2>) in hbar^2
    embedding: str
    weak: bool = False

    def signed_amplitudes(self):
        """Signed-k expansion A_k of the state, k = -J..J.

        A_{+K} = a_K/sqrt(2), A_{-K} = (-1)^tau a_K/sqrt(2) for K > 0 and
        A_0 = a_0 (tau = 0 only).
        """
        ks = np.arange(-self.J, self.J + 1)
        amps = np.zeros(2 * self.J + 1)
        for K, a in self.coeffs:
            if K == 0:
                amps[self.J] = a
            else:
                amps[self.J + K] = a / np.sqrt(2.0)
                amps[self.J - K] = ((-1.0) ** self.tau) * a / np.sqrt(2.0)
        return ks, amps

    @property
    def parity_label(self):
        return "+" if self.tau == 0 else "-"


def embedding_axes(embedding):
    """Body-frame (x, y, z) -> principal-axis assignment for an embedding."""
    if embedding not in _EMBEDDINGS:
        raise ConfigError(f"embedding must be one of a/b/c, got {embedding!r}")
    return _EMBEDDINGS[embedding]


def _constants_xyz_cm1(spec, embedding):
    by_axis = {ax: ghz_to_invcm(spec.constants_ghz[ax]) for ax in AXES}
    x, y, z = embedding_axes(embedding)
    return by_axis[x], by_axis[y], by_axis[z]


def _ladder(J):
    """Standard raising/lowering matrices in the |J,k> basis, k=-J..J."""
    k = np.arange(-J, J + 1)
    lp = np.zeros((2 * J + 1, 2 * J + 1))
    for i, kk in enumerate(k[:-1]):
        lp[i + 1, i] = np.sqrt(J * (J + 1) - kk * (kk + 1))
    return lp, lp.T


@lru_cache(maxsize=512)
def _k_matrices(J):
    """Jx^2, Jy^2, Jz^2 in the signed-k basis."""
    lp, lm = _ladder(J)
    jx = 0.5 * (lp + lm)
    jy = 0.5 * (lp - lm)  # times -i; jy^2 = -(this)^2
    k = np.arange(-J, J + 1)
    return jx @ jx, -(jy @ jy), np.diag(k.astype(float) ** 2)


def _wang_columns(J):
    """Wang transformation columns grouped by (K parity, tau).

    Returns a list of (K_list, tau, W) where W maps Wang coefficients to
    signed-k coefficients.
    """
    dim = 2 * J + 1
    blocks = []
    for parity in (0, 1):
        for tau in (0, 1):
            klist = [K for K in range(J + 1) if K % 2 == parity and not (K == 0 and tau == 1)]
            if not klist:
                continue
            W = np.zeros((dim, len(klist)))
            for j, K in enumerate(klist):
                if K == 0:
                    W[J, j] = 1.0
                else:
                    W[J + K, j] = 1.0 / np.sqrt(2.0)
                    W[J - K, j] = ((-1.0) ** tau) / np.sqrt(2.0)
            blocks.append((klist, tau, W))
    return blocks


def hamiltonian_k_basis(J, spec, embedding="b"):
    """Rigid-rotor Hamiltonian matrix over |J,k>, k=-J..J, in cm^-1."""
    bx, by, bz = _constants_xyz_cm1(spec, embedding)
    jx2, jy2, jz2 = _k_matrices(J)
    return bx * jx2 + by * jy2 + bz * jz2


def build_hamiltonian_block(J, tau, spec, embedding="b"):
    """Hamiltonian block over the Wang combinations of one parity tau.

    The block spans K = 0..J for tau = 0 and K = 1..J for tau = 1 (the
    K = 0 combination of odd parity vanishes identically).  Returned in
    cm^-1; K-parity sub-blocks are uncoupled inside.
    """
    if J < 0:
        raise ConfigError("J must be >= 0")
    if tau not in (0, 1):
        raise ConfigError("tau must be 0 or 1")
    h = hamiltonian_k_basis(J, spec, embedding)
    cols = []
    for klist, t, W in _wang_columns(J):
        if t == tau:
            cols.append((klist, W))
    if not cols:
        return np.zeros((0, 0)), []
    klist = [K for kl, _ in cols for K in kl]
    W = np.hstack([W for _, W in cols])
    return W.T @ h @ W, klist


@lru_cache(maxsize=4096)
def diagonalize_multiplet(J, spec, embedding="b"):
    """All 2J+1 eigenstates of the J multiplet, ascending in energy.

    h is assigned 1..2J+1 in ascending-energy order with both parities
    merged; ties (symmetric-top degeneracies) break toward tau = 0.
    """
    h_full = hamiltonian_k_basis(J, spec, embedding)
    jx2, jy2, jz2 = _k_matrices(J)
    x_ax, y_ax, z_ax = embedding_axes(embedding)

    found = []
    for klist, tau, W in _wang_columns(J):
        block = W.T @ h_full @ W
        try:
            evals, evecs = np.linalg.eigh(block)
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise ArithmeticError(
                f"diagonalization failed for J={J}, tau={tau}, "
                f"embedding={embedding}: {exc}"
            ) from exc
        for i in range(len(klist)):
            vec = evecs[:, i]
            # Fix the sign convention: largest-|a_K| coefficient positive.
            imax = int(np.argmax(np.abs(vec)))
            if vec[imax] < 0:
                vec = -vec
            full = W @ vec
            projs = {
                x_ax: float(full @ jx2 @ full),
                y_ax: float(full @ jy2 @ full),
                z_ax: float(full @ jz2 @ full),
            }
            coeffs = tuple((K, float(vec[j])) for j, K in enumerate(klist))
            found.append((float(evals[i]), tau, coeffs, projs))

    found.sort(key=lambda t: (t[0], t[1]))
    states = []
    for h_rank, (e, tau, coeffs, projs) in enumerate(found, start=1):
        states.append(
            RotorState(
                J=J,
                h=h_rank,
                tau=tau,
                energy_cm1=e,
                coeffs=coeffs,
                proj=(projs["a"], projs["b"], projs["c"]),
                embedding=embedding,
            )
        )
    return tuple(states)


def get_state(J, h, tau, spec, embedding="b"):
    """Look up one eigenstate by its (J, h, tau) label."""
    for st in diagonalize_multiplet(J, spec, embedding):
        if st.h == h:
            if st.tau != tau:
                raise KeyError(f"state (J={J}, h={h}) has tau={st.tau}, not {tau}")
            return st
    raise KeyError(f"no state (J={J}, h={h})")


def classify_state(state, threshold=0.7):
    """Label a state by its dominant rotation axis.

    Returns (label, coords) with coords the barycentric projections
    (<Ja^2>, <Jb^2>, <Jc^2>) / (J(J+1)) and label in {"a","b","c","mixed"}.
    """
    if state.J == 0:
        return "mixed", (0.0, 0.0, 0.0)
    norm = state.J * (state.J + 1)
    coords = tuple(p / norm for p in state.proj)
    imax = int(np.argmax(coords))
    if coords[imax] > threshold:
        return AXES[imax], coords
    return "mixed", coords


def find_principal_state(J, axis, spec, tau=None, embedding=None, threshold=0.7):
    """The J-multiplet state maximizing <J_axis^2>.

    For axis "b" this lies mid-multiplet and requires J >= 2.  When no
    state clears the classification threshold the best candidate is
    returned with its `weak` flag set.  Restricting `tau` picks the best
    state of that parity (the near-degenerate partner differs only in the
    parity combination).
    """
    if axis not in AXES:
        raise ConfigError(f"axis must be one of a/b/c, got {axis!r}")
    if axis == "b" and J < 2:
        raise ConfigError("b-principal states require J >= 2")
    emb = embedding or axis
    states = diagonalize_multiplet(J, spec, emb)
    pool = [s for s in states if tau is None or s.tau == tau]
    iax = AXES.index(axis)
    # exact projection ties (e.g. the two K=1 members at J=1) break toward
    # the higher-energy state
    best = max(pool, key=lambda s: (s.proj[iax], s.energy_cm1))
    label, _ = classify_state(best, threshold)
    if label != axis:
        best = replace(best, weak=True)
    return best


def multiplet_table(spec, j_max, embedding="b", threshold=0.7):
    """Rows (J, h, tau, energy_cm1, proj_a, proj_b, proj_c, label)."""
    rows = []
    for J in range(j_max + 1):
        for st in diagonalize_multiplet(J, spec, embedding):
            label, coords = classify_state(st, threshold)
            rows.append(
                {
                    "J": st.J,
                    "h": st.h,
                    "tau": st.parity_label,
                    "energy_cm1": st.energy_cm1,
                    "proj_a": st.proj[0],
                    "proj_b": st.proj[1],
                    "proj_c": st.proj[2],
                    "label": label,
                }
            )
    return rows


def write_levels_csv(rows, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["J", "h", "tau", "energy_cm1", "proj_a", "proj_b", "proj_c", "label"]
        )
        for r in rows:
            writer.writerow(
                [
                    r["J"],
                    r["h"],
                    r["tau"],
                    f"{r['energy_cm1']:.10f}",
                    f"{r['proj_a']:.8f}",
                    f"{r['proj_b']:.8f}",
                    f"{r['proj_c']:.8f}",
                    r["label"],
                ]
            )


def molecule_from_dict(doc):
    """Build a MoleculeSpec from the molecule JSON document schema.

    Schema: {name, A_GHz, B_GHz, C_GHz, alpha_au: {aa, bb, cc},
    geometry: [{atom, a_A, b_A, c_A}, ...]}.
    """
    try:
        geometry = tuple(
            (g["atom"], (float(g["a_A"]), float(g["b_A"]), float(g["c_A"])))
            for g in doc.get("geometry", [])
        )
        return MoleculeSpec(
            name=doc["name"],
            A=float(doc["A_GHz"]),
            B=float(doc["B_GHz"]),
            C=float(doc["C_GHz"]),
            alpha=(
                float(doc["alpha_au"]["aa"]),
                float(doc["alpha_au"]["bb"]),
                float(doc["alpha_au"]["cc"]),
            ),
            geometry=geometry,
        )
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed molecule document: {exc}") from exc


def load_molecule(path_or_name):
    """Load a molecule JSON file; bare names resolve to bundled data."""
    name = str(path_or_name)
    if name.endswith(".json"):
        try:
            with open(name) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read molecule file {name!r}: {exc}") from exc
    else:
        ref = resources.files("rotifuge").joinpath(f"data/{name.lower()}.json")
        try:
            doc = json.loads(ref.read_text())
        except (FileNotFoundError, OSError) as exc:
            raise ConfigError(f"unknown bundled molecule {name!r}") from exc
    return molecule_from_dict(doc)

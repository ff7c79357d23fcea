"""Lab-frame polarizability matrix elements and excitation-path search.

The anisotropic part of the electronic polarizability couples rotor
eigenstates with |dJ| <= 2 and dM = p for the lab spherical component p.
Elements factorize into an M-dependent orientation factor and an
M-independent reduced moment contracted over the body-frame ladder
structure; both pieces live here, together with the weighted transition
graph (edge weight -log|moment|) and a deterministic Dijkstra search that
maximizes the product of transition moments along a dJ = +2, dM = +2
ladder.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import rotor
from .wigner import three_j


class StateKey(NamedTuple):
    """Eigenstate label (J, h, tau, M)."""

    J: int
    h: int
    tau: int
    M: int


class PathNotFound(LookupError):
    """Raised when no coupled ladder reaches the target."""

    def __init__(self, target, blocked_shell):
        self.target = target
        self.blocked_shell = blocked_shell
        super().__init__(
            f"no excitation path to {target}: no reachable state in the "
            f"J = {blocked_shell} shell"
        )


@dataclass(frozen=True)
class TransitionEdge:
    frm: StateKey
    to: StateKey
    moment: float  # |matrix element| in a.u. of polarizability, >= 0
    deltaM: int


@dataclass
class PathSpec:
    """An ordered excitation ladder with hop resonance frequencies."""

    states: list  # list[StateKey]
    omegas_cm1: list  # length len(states)-1, E_{k+1} - E_k
    moments: list  # coupling magnitude per hop, a.u.

    def __len__(self):
        return len(self.states)

    def to_records(self, spec, embedding="b"):
        recs = []
        for i, key in enumerate(self.states):
            st = rotor.get_state(key.J, key.h, key.tau, spec, embedding)
            recs.append(
                {
                    "J": key.J,
                    "M": key.M,
                    "h": key.h,
                    "tau": "+" if key.tau == 0 else "-",
                    "energy_cm1": st.energy_cm1,
                    "omega_to_next_cm1": (
                        self.omegas_cm1[i] if i < len(self.omegas_cm1) else None
                    ),
                }
            )
        return recs

    def to_json(self, spec, embedding="b"):
        return json.dumps(
            {"embedding": embedding, "states": self.to_records(spec, embedding)},
            indent=2,
        )

    @staticmethod
    def from_json(text, spec, embedding=None):
        doc = json.loads(text)
        emb = embedding or doc.get("embedding", "b")
        states, omegas = [], []
        for rec in doc["states"]:
            tau = 0 if rec["tau"] == "+" else 1
            states.append(StateKey(rec["J"], rec["h"], tau, rec["M"]))
            if rec.get("omega_to_next_cm1") is not None:
                omegas.append(rec["omega_to_next_cm1"])
        moments = doc.get("moments", [0.0] * len(omegas))
        path = PathSpec(states, omegas, moments)
        path.embedding = emb
        return path


def body_spherical_alpha(spec, embedding="b"):
    """Irreducible body-frame components of the polarizability tensor.

    Returns (mean, {q: alpha2_q}) with alpha2_0 = (2 a_zz - a_xx - a_yy)/sqrt(6)
    and alpha2_{+/-2} = (a_xx - a_yy)/2 for the diagonal principal tensor
    mapped onto the embedding's body axes.
    """
    by_axis = dict(zip(rotor.AXES, spec.alpha))
    x, y, z = rotor.embedding_axes(embedding)
    axx, ayy, azz = by_axis[x], by_axis[y], by_axis[z]
    mean = (axx + ayy + azz) / 3.0
    q0 = (2.0 * azz - axx - ayy) / math.sqrt(6.0)
    q2 = (axx - ayy) / 2.0
    return mean, {-2: q2, 0: q0, 2: q2}


@lru_cache(maxsize=None)
def _body_k_matrix(J2, J1, spec, embedding):
    """Ladder-frame contraction  W[i',i] = sum_q alpha_q (-1)^(q+k) 3j(J2 2 J1; k', -q, -k)
    over signed k = -J1..J1, k' = -J2..J2 (k' = k + q)."""
    _, a2 = body_spherical_alpha(spec, embedding)
    w = np.zeros((2 * J2 + 1, 2 * J1 + 1))
    for ik, k in enumerate(range(-J1, J1 + 1)):
        for q, aq in a2.items():
            if aq == 0.0:
                continue
            kp = k + q
            if abs(kp) > J2:
                continue
            sign = -1.0 if (q + k) % 2 else 1.0
            w[kp + J2, ik] += aq * sign * three_j(J2, 2, J1, kp, -q, -k)
    return w


def reduced_moment(bra_state, ket_state, spec, embedding="b"):
    """M-independent part of the anisotropic polarizability element."""
    _, ab = bra_state.signed_amplitudes()
    _, ak = ket_state.signed_amplitudes()
    w = _body_k_matrix(bra_state.J, ket_state.J, spec, embedding)
    return float(ab @ w @ ak)


def orientation_factor(J2, M2, J1, M1, p):
    """sqrt((2J1+1)(2J2+1)) (-1)^(p+M1) 3j(J2 2 J1; M2, -p, -M1), dM = p."""
    if M2 - M1 != p:
        return 0.0
    sign = -1.0 if (p + M1) % 2 else 1.0
    return (
        math.sqrt((2 * J1 + 1) * (2 * J2 + 1))
        * sign
        * three_j(J2, 2, J1, M2, -p, -M1)
    )


def polarizability_element(bra, ket, spec, p, embedding="b"):
    """<bra| alpha^(2)_lab,p |ket> in atomic units of polarizability.

    bra and ket are StateKey labels resolved against the rigid-rotor
    eigenbasis; the element vanishes unless |dJ| <= 2 and dM = p.
    """
    if abs(bra.J - ket.J) > 2 or bra.M - ket.M != p:
        return 0.0
    bst = rotor.get_state(bra.J, bra.h, bra.tau, spec, embedding)
    kst = rotor.get_state(ket.J, ket.h, ket.tau, spec, embedding)
    return orientation_factor(bra.J, bra.M, ket.J, ket.M, p) * reduced_moment(
        bst, kst, spec, embedding
    )


def isotropic_element(bra, ket):
    """Scalar-part overlap: the mean polarizability couples diagonally."""
    return 1.0 if bra == ket else 0.0


def build_transition_graph(spec, j_max, delta_m=2, floor=1e-8, embedding="b"):
    """Weighted digraph of dJ = +2, dM = +delta_m couplings.

    Nodes are all (J, h, tau, M) with M on the 0, 2, 4, ... ladder up to J;
    edges carry the |element| as `moment` and weight -log(moment).  Edges
    below `floor` (a.u.) are pruned.
    """
    if delta_m != 2:
        raise rotor.ConfigError("only the co-rotating dM = +2 ladder is built")
    adj = {}
    for J in range(j_max + 1):
        for st in rotor.diagonalize_multiplet(J, spec, embedding):
            for M in range(0, J + 1, 2):
                adj[StateKey(J, st.h, st.tau, M)] = []
    for J in range(0, j_max - 1):
        Jp = J + 2
        upper = rotor.diagonalize_multiplet(Jp, spec, embedding)
        lower = rotor.diagonalize_multiplet(J, spec, embedding)
        for lo in lower:
            for up in upper:
                red = reduced_moment(up, lo, spec, embedding)
                if red == 0.0:
                    continue
                for M in range(0, J + 1, 2):
                    mom = abs(orientation_factor(Jp, M + 2, J, M, 2) * red)
                    if mom > floor:
                        frm = StateKey(J, lo.h, lo.tau, M)
                        to = StateKey(Jp, up.h, up.tau, M + 2)
                        adj[frm].append(TransitionEdge(frm, to, mom, 2))
    for edges in adj.values():
        edges.sort(key=lambda e: (e.to.J, e.to.h, e.to.tau))
    return adj


def shortest_path(graph, source, target, spec=None, embedding="b"):
    """Maximum-product ladder from source to target.

    Runs Dijkstra on edge weights -log(moment); ties break lexicographically
    on the (J, h, tau) labels along the path.  Raises PathNotFound naming
    the first J shell with no reachable state when the target is not
    connected.
    """
    if source not in graph or target not in graph:
        raise KeyError("source/target not in graph")
    if source == target:
        return PathSpec([source], [], [])

    dist = {source: 0.0}
    prev = {}
    seen = set()
    heap = [(0.0, source)]
    while heap:
        d, node = heapq.heappop(heap)
        if node in seen:
            continue
        seen.add(node)
        if node == target:
            break
        for edge in graph[node]:
            nd = d - math.log(edge.moment)
            old = dist.get(edge.to)
            if old is None or nd < old - 1e-15 or (
                abs(nd - old) <= 1e-15 and node < prev[edge.to][0]
            ):
                dist[edge.to] = nd
                prev[edge.to] = (node, edge.moment)
                heapq.heappush(heap, (nd, edge.to))

    if target not in seen:
        reached_j = {k.J for k in seen}
        blocked = min(
            (j for j in range(source.J, target.J + 1, 2) if j not in reached_j),
            default=target.J,
        )
        raise PathNotFound(target, blocked)

    states, moments = [target], []
    while states[-1] != source:
        node, mom = prev[states[-1]]
        moments.append(mom)
        states.append(node)
    states.reverse()
    moments.reverse()

    omegas = []
    if spec is not None:
        energies = [
            rotor.get_state(k.J, k.h, k.tau, spec, embedding).energy_cm1
            for k in states
        ]
        omegas = [e2 - e1 for e1, e2 in zip(energies, energies[1:])]
    path = PathSpec(states, omegas, moments)
    path.embedding = embedding
    return path

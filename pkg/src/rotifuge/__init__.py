"""rotifuge: coherent rotational control of asymmetric-top molecules.

Rigid-rotor eigenstates in a parity-adapted basis, polarizability-coupled
excitation ladders, accelerated polarization-rotation (optical centrifuge)
pulse design, split-operator/Krylov wavepacket propagation, and alignment
observables evaluated both by Monte-Carlo sampling and in closed form.
"""

__version__ = "0.1.0"

from .coupling import PathNotFound, PathSpec, StateKey, TransitionEdge
from .dynamics import KrylovError, NumericError, PropagatorConfig, Wavepacket
from .rotor import ConfigError, MoleculeSpec, RotorState, WangKet, load_molecule

__all__ = [
    "__version__",
    "ConfigError",
    "KrylovError",
    "MoleculeSpec",
    "NumericError",
    "PathNotFound",
    "PathSpec",
    "PropagatorConfig",
    "RotorState",
    "StateKey",
    "TransitionEdge",
    "WangKet",
    "Wavepacket",
    "load_molecule",
]

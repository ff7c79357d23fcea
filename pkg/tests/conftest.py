import pytest

from rotifuge import rotor


@pytest.fixture(scope="session")
def d2s():
    return rotor.load_molecule("d2s")


@pytest.fixture(scope="session")
def rigid_top():
    """A generic asymmetric top without geometry, for structural tests."""
    return rotor.MoleculeSpec("generic", 12.0, 7.0, 4.0, (12.0, 10.5, 9.0))

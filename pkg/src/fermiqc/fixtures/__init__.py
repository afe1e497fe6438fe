"""Bundled FCIDUMP fixtures with reference FCI energies in their comments."""

from importlib import resources
from pathlib import Path

FIXTURE_NAMES = ("h2_sto3g", "h2_631g", "lih_sto3g")


def fixture_path(name: str) -> Path:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURE_NAMES}")
    return Path(resources.files(__package__) / f"{name}.fcidump")


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text()


def reference_energy(name: str) -> float:
    """FCI energy recorded in the fixture's comment header."""
    for line in fixture_text(name).splitlines():
        if line.startswith("#") and "fci_energy" in line:
            return float(line.split("=")[1])
    raise ValueError(f"fixture {name} has no recorded reference energy")

"""Shared oracles for the test suite.

Everything here is built from first principles (explicit Kronecker
products, dense linear algebra) so the package code under test is never
used to check itself.
"""

import numpy as np
import pytest

from fermiqc.fermion import FermionOperator
from fermiqc.pauli import PauliString

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI_MATS = (I2, SX, SY, SZ)


def pauli_matrix(s: PauliString) -> np.ndarray:
    """Dense matrix of a Pauli string with qubit 0 as the least significant bit."""
    out = np.eye(1, dtype=complex)
    for q in range(s.n):
        out = np.kron(PAULI_MATS[s.axis(q)], out)
    return out


def operator_dense(op) -> np.ndarray:
    """Dense matrix of a QubitOperator via the Kronecker oracle."""
    dim = 1 << op.n
    total = complex(op.constant) * np.eye(dim, dtype=complex)
    for s, c in op.items():
        total += c * pauli_matrix(s)
    return total


def random_pauli_string(rng: np.random.Generator, n: int,
                        min_weight: int = 1) -> PauliString:
    while True:
        s = PauliString.from_axes(rng.integers(0, 4, size=n))
        if s.weight >= min_weight:
            return s


def random_fermion_operator(rng: np.random.Generator, n_modes: int,
                            n_products: int = 6) -> FermionOperator:
    """Random sum of ladder products with complex coefficients."""
    op = FermionOperator(n_modes, constant=float(rng.normal()))
    for _ in range(n_products):
        length = int(rng.integers(1, 5))
        factors = tuple((int(rng.integers(0, n_modes)), bool(rng.integers(0, 2)))
                        for _ in range(length))
        coeff = complex(rng.normal(), rng.normal())
        op.add(coeff, factors)
    return op


def strip_global_phase(u: np.ndarray) -> np.ndarray:
    """Normalize the phase of the largest entry to be real positive."""
    flat = np.argmax(np.abs(u))
    pivot = u.flat[flat]
    if abs(pivot) < 1e-14:
        return u
    return u * (abs(pivot) / pivot)


def assert_same_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10):
    np.testing.assert_allclose(strip_global_phase(a), strip_global_phase(b),
                               atol=tol, rtol=0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)

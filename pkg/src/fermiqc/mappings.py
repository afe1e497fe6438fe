"""Fermion-to-qubit mappings: Jordan-Wigner and Bravyi-Kitaev.

The Bravyi-Kitaev encoding is the binary-tree (Fenwick) scheme: qubit i
stores the mod-2 sum of a contiguous block of orbital occupations ending
at orbital i, with block length lowbit(i+1).  Update/parity/flip sets are
computed in closed form from that tree; the dense transformation matrix
is kept for state translation and as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from .fermion import FermionOperator
from .pauli import DEFAULT_TOL, PauliString, QubitOperator


class MappingScheme(str, Enum):
    JORDAN_WIGNER = "jw"
    BRAVYI_KITAEV = "bk"


@dataclass(frozen=True)
class TransformMatrix:
    """Binary occupation->qubit matrix, lower triangular with unit diagonal."""

    bits: np.ndarray

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def apply(self, occupations: Sequence[int]) -> np.ndarray:
        occ = np.asarray(occupations, dtype=np.int8)
        if occ.shape != (self.n,):
            raise ValueError(f"expected occupation vector of length {self.n}")
        return (self.bits @ occ) % 2


@dataclass(frozen=True)
class BKIndexSets:
    """Update/parity/flip/remainder qubit sets for one orbital index."""

    update: frozenset[int]
    parity: frozenset[int]
    flip: frozenset[int]

    @property
    def remainder(self) -> frozenset[int]:
        return self.parity - self.flip


def bk_matrix(n: int) -> TransformMatrix:
    """Occupation-to-qubit-state matrix, built by block doubling.

    Non-power-of-two sizes take the top-left n x n block of the
    next-power-of-two matrix.
    """
    if n < 1:
        raise ValueError("need at least one qubit")
    size = 1
    m = np.ones((1, 1), dtype=np.int8)
    while size < n:
        big = np.zeros((2 * size, 2 * size), dtype=np.int8)
        big[:size, :size] = m
        big[size:, size:] = m
        big[-1, :size] = 1
        m = big
        size *= 2
    return TransformMatrix(m[:n, :n].copy())


def _lowbit(m: int) -> int:
    return m & -m


def bk_index_sets(i: int, n: int) -> BKIndexSets:
    """Update, parity and flip sets of orbital/qubit index i on n qubits."""
    if not 0 <= i < n:
        raise IndexError(f"orbital index {i} outside [0, {n})")
    # Update set: ancestors of tree node i+1 that fit in the register.
    update = set()
    m = i + 1
    while True:
        m = m + _lowbit(m)
        if m > n:
            break
        update.add(m - 1)
    # Parity set: prefix decomposition of orbitals [0, i).
    parity = set()
    m = i
    while m > 0:
        parity.add(m - 1)
        m -= _lowbit(m)
    # Flip set: children of node i+1 (empty for even i).
    flip = set()
    lb = _lowbit(i + 1)
    t = 1
    while t < lb:
        flip.add(i - t)
        t <<= 1
    return BKIndexSets(frozenset(update), frozenset(parity), frozenset(flip))


def _mask(indices) -> int:
    m = 0
    for q in indices:
        m |= 1 << q
    return m


@lru_cache(maxsize=None)
def _ladder_images(n: int, scheme: MappingScheme):
    """Per-mode ladder-operator images in X^x Z^z normal form.

    Returns imgs[mode] = (x, z_sym, z_anti): the symmetric entry is
    (1/2) X^x Z^z_sym; the antisymmetric entry is +/-(1/2) X^x Z^z_anti
    with + for creation, - for annihilation.
    """
    imgs = []
    for i in range(n):
        bit = 1 << i
        if scheme is MappingScheme.JORDAN_WIGNER:
            low = bit - 1
            imgs.append((bit, low, low | bit))
        else:
            sets = bk_index_sets(i, n)
            x = _mask(sets.update) | bit
            rho = sets.parity if i % 2 == 0 else sets.remainder
            imgs.append((x, _mask(sets.parity), _mask(rho) | bit))
    return tuple(imgs)


def map_operator(op: FermionOperator, scheme: MappingScheme,
                 tol: float = DEFAULT_TOL) -> QubitOperator:
    """Transform a FermionOperator into a simplified QubitOperator."""
    scheme = MappingScheme(scheme)
    n = op.n_modes
    imgs = _ladder_images(n, scheme)
    acc: dict[tuple[int, int], complex] = {}
    for coeff, factors in op.products:
        # Expand the ladder product left to right; each factor doubles the
        # entry list.  Entries are (c, x, z) meaning c * X^x Z^z.
        entries = [(complex(coeff), 0, 0)]
        for mode, dagger in factors:
            if mode >= n:
                raise ValueError(f"mode {mode} outside register of size {n}")
            fx, z_sym, z_anti = imgs[mode]
            half = 0.5 if dagger else -0.5
            new = []
            for c, x, z in entries:
                sign = -1.0 if (z & fx).bit_count() & 1 else 1.0
                new.append((0.5 * sign * c, x ^ fx, z ^ z_sym))
                new.append((half * sign * c, x ^ fx, z ^ z_anti))
            entries = new
        for c, x, z in entries:
            key = (x, z)
            acc[key] = acc.get(key, 0.0) + c
    out = QubitOperator(n, constant=op.constant)
    for (x, z), c in acc.items():
        # X^x Z^z = (-i)^{#Y} * canonical Pauli string
        ny = (x & z).bit_count() % 4
        coeff = c * (1.0, -1.0j, -1.0, 1.0j)[ny]
        if x == 0 and z == 0:
            out.constant += coeff
        elif abs(coeff) > tol:
            out.add_term(coeff, PauliString(n, x, z))
    return out


def occupation_to_qubits(occ: Sequence[int], scheme: MappingScheme) -> np.ndarray:
    """Encode an occupation vector as qubit states under the given scheme."""
    scheme = MappingScheme(scheme)
    occ = np.asarray(occ, dtype=np.int8)
    if scheme is MappingScheme.JORDAN_WIGNER:
        return occ.copy()
    return bk_matrix(len(occ)).apply(occ)


def basis_permutation(n: int, scheme: MappingScheme) -> np.ndarray:
    """perm[s] = basis index of the image of occupation-basis state s.

    Bit j of an index is mode/qubit j.  For Jordan-Wigner this is the
    identity; for Bravyi-Kitaev it is the GF(2)-linear relabeling induced
    by the transformation matrix.
    """
    scheme = MappingScheme(scheme)
    dim = 1 << n
    if scheme is MappingScheme.JORDAN_WIGNER:
        return np.arange(dim, dtype=np.int64)
    mat = bk_matrix(n).bits
    # Image of each single-orbital basis vector, combined by XOR linearity.
    col_images = []
    for j in range(n):
        img = 0
        for i in range(n):
            if mat[i, j]:
                img |= 1 << i
        col_images.append(img)
    perm = np.zeros(dim, dtype=np.int64)
    for j in range(n):
        half = 1 << j
        perm[half:2 * half] = perm[:half] ^ col_images[j]
    return perm

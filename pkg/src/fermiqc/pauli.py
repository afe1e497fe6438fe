"""Symbolic algebra over Pauli strings.

Strings are stored symplectically as a pair of bitmasks (x, z):
I=(0,0), X=(1,0), Y=(1,1), Z=(0,1) on each qubit.  The equivalent
base-4 digit encoding used for lexicographic ordering is
I=0, X=1, Y=2, Z=3, with qubit 0 the most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

AXIS_CHARS = "IXYZ"

# (x bit, z bit) per base-4 digit
_DIGIT_TO_XZ = {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}
_XZ_TO_DIGIT = {v: k for k, v in _DIGIT_TO_XZ.items()}

DEFAULT_TOL = 1e-12


class DimensionError(ValueError):
    """Raised when operands act on registers of different sizes."""


@dataclass(frozen=True)
class PauliString:
    """An n-qubit tensor product of I/X/Y/Z, without coefficient."""

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("register size must be non-negative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("axis bits outside the register")

    @classmethod
    def from_axes(cls, digits: Iterable[int]) -> "PauliString":
        """Build from base-4 digits, qubit 0 first."""
        x = z = 0
        n = 0
        for q, d in enumerate(digits):
            xb, zb = _DIGIT_TO_XZ[d]
            x |= xb << q
            z |= zb << q
            n = q + 1
        return cls(n, x, z)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Build from a character string like 'XIZY' (qubit 0 first)."""
        return cls.from_axes(AXIS_CHARS.index(c) for c in label)

    @classmethod
    def from_ops(cls, n: int, ops: Mapping[int, str] | Iterable[tuple[int, str]]) -> "PauliString":
        """Build from (qubit, axis-letter) pairs on an n-qubit register."""
        items = ops.items() if isinstance(ops, Mapping) else ops
        x = z = 0
        for q, c in items:
            if not 0 <= q < n:
                raise DimensionError(f"qubit {q} outside register of size {n}")
            xb, zb = _DIGIT_TO_XZ[AXIS_CHARS.index(c)]
            x |= xb << q
            z |= zb << q
        return cls(n, x, z)

    def axis(self, q: int) -> int:
        """Base-4 digit on qubit q."""
        return _XZ_TO_DIGIT[((self.x >> q) & 1, (self.z >> q) & 1)]

    @property
    def axes(self) -> tuple[int, ...]:
        return tuple(self.axis(q) for q in range(self.n))

    @property
    def label(self) -> str:
        return "".join(AXIS_CHARS[d] for d in self.axes)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        """Indices of non-identity qubits, ascending."""
        m = self.x | self.z
        return tuple(q for q in range(self.n) if (m >> q) & 1)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def __repr__(self):
        return f"PauliString({self.label!r})"


def lex_key(s: PauliString) -> tuple[int, ...]:
    """Base-4 digit sequence, qubit 0 most significant."""
    return s.axes


def multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Qubit-wise product a*b; returns (phase, string) with phase in {1,-1,i,-i}."""
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    x = a.x ^ b.x
    z = a.z ^ b.z
    # Work in X^x Z^z normal form: each Y contributes a factor i, and
    # commuting Z^za past X^xb gives (-1)^|za & xb|.
    ipow = (a.x & a.z).bit_count() + (b.x & b.z).bit_count() - (x & z).bit_count()
    ipow += 2 * (a.z & b.x).bit_count()
    phase = (1, 1j, -1, -1j)[ipow % 4]
    return phase, PauliString(a.n, x, z)


def commutes(a: PauliString, b: PauliString) -> bool:
    """True iff the strings commute (even number of anticommuting positions)."""
    if a.n != b.n:
        raise DimensionError(f"length mismatch: {a.n} vs {b.n}")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


class QubitOperator:
    """Weighted sum of Pauli strings on a fixed register.

    The identity component is held apart as ``constant`` and never enters
    the term dictionary; duplicate strings are merged on insertion.
    """

    def __init__(self, n: int, terms: Mapping[PauliString, complex] | None = None,
                 constant: complex = 0.0):
        self.n = n
        self.constant = complex(constant)
        self._terms: dict[PauliString, complex] = {}
        if terms:
            for s, c in terms.items():
                self.add_term(c, s)

    def add_term(self, coeff: complex, string: PauliString) -> None:
        if string.n != self.n:
            raise DimensionError(f"string on {string.n} qubits, register is {self.n}")
        if string.is_identity():
            self.constant += coeff
            return
        new = self._terms.get(string, 0.0) + coeff
        if new == 0:
            self._terms.pop(string, None)
        else:
            self._terms[string] = new

    @property
    def terms(self) -> dict[PauliString, complex]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[PauliString, complex]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QubitOperator):
            return NotImplemented
        return (self.n == other.n and self.constant == other.constant
                and self._terms == other._terms)

    def coefficient_norm(self) -> float:
        """Sum of |c_j| over non-identity terms (spectral-width bound)."""
        return sum(abs(c) for c in self._terms.values())

    def copy(self) -> "QubitOperator":
        out = QubitOperator(self.n, constant=self.constant)
        out._terms = dict(self._terms)
        return out

    def __repr__(self):
        return f"QubitOperator(n={self.n}, terms={len(self._terms)}, constant={self.constant})"


def simplify(op: QubitOperator, tol: float = DEFAULT_TOL) -> QubitOperator:
    """Merge duplicates (already maintained on insertion) and drop |c| <= tol."""
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    out = QubitOperator(op.n, constant=op.constant)
    for s, c in op.items():
        if abs(c) > tol:
            out._terms[s] = c
    return out


def format_terms(op: QubitOperator) -> str:
    """Serialize one term per line: ``(re,im) X0 Z1 ...``; identity has no ops."""
    lines = []
    if op.constant != 0:
        lines.append(_format_term(op.constant, PauliString(op.n)))
    for s in sorted(op._terms, key=lex_key):
        lines.append(_format_term(op._terms[s], s))
    return "\n".join(lines) + ("\n" if lines else "")


def _format_term(coeff: complex, s: PauliString) -> str:
    ops = " ".join(f"{AXIS_CHARS[s.axis(q)]}{q}" for q in s.support)
    head = f"({coeff.real!r},{coeff.imag!r})"
    return f"{head} {ops}".rstrip()


def parse_terms(text: str, n_qubits: int | None = None) -> QubitOperator:
    """Inverse of :func:`format_terms`.

    Register size is inferred from the largest qubit index unless given.
    """
    entries: list[tuple[complex, list[tuple[int, str]]]] = []
    max_q = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        head = fields[0]
        if not (head.startswith("(") and head.endswith(")")):
            raise ValueError(f"line {lineno}: malformed coefficient {head!r}")
        re_s, im_s = head[1:-1].split(",")
        coeff = complex(float(re_s), float(im_s))
        ops = []
        for f in fields[1:]:
            axis, q = f[0], int(f[1:])
            if axis not in "XYZ":
                raise ValueError(f"line {lineno}: bad axis {f!r}")
            ops.append((q, axis))
            max_q = max(max_q, q)
        entries.append((coeff, ops))
    n = n_qubits if n_qubits is not None else max_q + 1
    op = QubitOperator(max(n, 0))
    for coeff, ops in entries:
        op.add_term(coeff, PauliString.from_ops(op.n, ops))
    return op

"""Single-qubit Pauli algebra and the elementary gate truth tables.

Pauli elements are encoded symplectically as ``code = x | (z << 1)``::

    I = 0  (x=0, z=0)
    X = 1  (x=1, z=0)
    Z = 2  (x=0, z=1)
    Y = 3  (x=1, z=1)

so the element part of a product is the XOR of the codes.  Phases are
powers of ``i`` kept modulo 4.

The three tables below are stored literally, as data, and every
function in this module reads from them.  The vectorised tableau code in
:mod:`stabkit.array` uses closed-form symplectic rules instead; the
test-suite checks the two against each other exhaustively.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping


class PauliElement(enum.IntEnum):
    I = 0
    X = 1
    Z = 2
    Y = 3

    @property
    def x(self) -> int:
        return self.value & 1

    @property
    def z(self) -> int:
        return self.value >> 1

    @classmethod
    def from_bits(cls, x: int, z: int) -> "PauliElement":
        return cls((x & 1) | ((z & 1) << 1))

    @classmethod
    def from_letter(cls, letter: str) -> "PauliElement":
        try:
            return cls[letter]
        except KeyError:
            raise ValueError(f"not a Pauli letter: {letter!r}") from None

    @property
    def letter(self) -> str:
        return self.name


I, X, Y, Z = PauliElement.I, PauliElement.X, PauliElement.Y, PauliElement.Z
LETTERS = "IXZY"  # indexed by code


@dataclass(frozen=True)
class Phase:
    """A power of i, ``value = i**ipow``."""

    ipow: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ipow", self.ipow % 4)

    def __mul__(self, other: "Phase") -> "Phase":
        return Phase(self.ipow + other.ipow)

    @property
    def is_real(self) -> bool:
        return self.ipow in (0, 2)

    @property
    def value(self) -> complex:
        return (1, 1j, -1, -1j)[self.ipow]

    def __str__(self) -> str:
        return PHASE_SYMBOLS[self.ipow]

    @classmethod
    def parse(cls, text: str) -> "Phase":
        try:
            return cls(PHASE_SYMBOLS.index(text))
        except ValueError:
            raise ValueError(f"not a phase symbol: {text!r}") from None


PHASE_SYMBOLS = ("+", "+i", "-", "-i")
ONE, PLUS_I, MINUS_ONE, MINUS_I = Phase(0), Phase(1), Phase(2), Phase(3)


# Pauli multiplication, row . column.
_P, _M, _Pi, _Mi = ONE, MINUS_ONE, PLUS_I, MINUS_I
MULTIPLICATION_TABLE: dict[tuple[PauliElement, PauliElement], tuple[Phase, PauliElement]] = {
    (I, I): (_P, I), (I, X): (_P, X), (I, Y): (_P, Y), (I, Z): (_P, Z),
    (X, I): (_P, X), (X, X): (_P, I), (X, Y): (_Pi, Z), (X, Z): (_Mi, Y),
    (Y, I): (_P, Y), (Y, X): (_Mi, Z), (Y, Y): (_P, I), (Y, Z): (_Pi, X),
    (Z, I): (_P, Z), (Z, X): (_Pi, Y), (Z, Y): (_Mi, X), (Z, Z): (_P, I),
}


@dataclass(frozen=True)
class SingleQubitOp:
    """A column operation permuting X, Y, Z up to sign.

    ``images`` holds the images of X, Y and Z in that order; ``word`` is
    the gate sequence realising it as a unitary, read as a matrix product
    (``("P", "H")`` means ``P @ H``), with ``"Pdg"`` for the adjoint of P.
    """

    name: str
    images: tuple[tuple[Phase, PauliElement], tuple[Phase, PauliElement], tuple[Phase, PauliElement]]
    word: tuple[str, ...]

    def image(self, a: PauliElement) -> tuple[Phase, PauliElement]:
        if a == I:
            return ONE, I
        return self.images[(X, Y, Z).index(a)]

    @property
    def is_identity(self) -> bool:
        return self.name == "I"

    @property
    def moved(self) -> int:
        """How many of X, Y, Z change letter under this op."""
        return sum(img[1] != a for a, img in zip((X, Y, Z), self.images))


SINGLE_QUBIT_OPS: tuple[SingleQubitOp, ...] = (
    SingleQubitOp("I", ((_P, X), (_P, Y), (_P, Z)), ()),
    SingleQubitOp("PH", ((_P, Z), (_P, X), (_P, Y)), ("P", "H")),
    SingleQubitOp("HPdg", ((_P, Y), (_P, Z), (_P, X)), ("H", "Pdg")),
    SingleQubitOp("PHPdg", ((_M, X), (_P, Z), (_P, Y)), ("P", "H", "Pdg")),
    SingleQubitOp("HPPHPdg", ((_P, Y), (_P, X), (_M, Z)), ("H", "P", "P", "H", "Pdg")),
    SingleQubitOp("H", ((_P, Z), (_M, Y), (_P, X)), ("H",)),
)
OPS_BY_NAME: dict[str, SingleQubitOp] = {op.name: op for op in SINGLE_QUBIT_OPS}
IDENTITY_OP, PH, HPDG, PHPDG, HPPHPDG, H = SINGLE_QUBIT_OPS


# CNOT: (control, target) -> (phase, control', target').
CNOT_TABLE: dict[tuple[PauliElement, PauliElement], tuple[Phase, PauliElement, PauliElement]] = {
    (I, I): (_P, I, I), (I, X): (_P, I, X), (I, Y): (_P, Z, Y), (I, Z): (_P, Z, Z),
    (X, I): (_P, X, X), (X, X): (_P, X, I), (X, Y): (_P, Y, Z), (X, Z): (_M, Y, Y),
    (Y, I): (_P, Y, X), (Y, X): (_P, Y, I), (Y, Y): (_M, X, Z), (Y, Z): (_P, X, Y),
    (Z, I): (_P, Z, I), (Z, X): (_P, Z, X), (Z, Y): (_P, I, Y), (Z, Z): (_P, I, Z),
}


def pauli_mul(a: PauliElement, b: PauliElement) -> tuple[Phase, PauliElement]:
    """Return ``(phase, c)`` with ``a . b = phase * c``."""
    return MULTIPLICATION_TABLE[PauliElement(a), PauliElement(b)]


def commutes(a: PauliElement, b: PauliElement) -> bool:
    a, b = PauliElement(a), PauliElement(b)
    return (a.x * b.z + a.z * b.x) % 2 == 0


def apply_single_qubit(op: SingleQubitOp, a: PauliElement) -> tuple[Phase, PauliElement]:
    return op.image(PauliElement(a))


def apply_cnot(c: PauliElement, t: PauliElement) -> tuple[Phase, PauliElement, PauliElement]:
    return CNOT_TABLE[PauliElement(c), PauliElement(t)]


def find_op(requirements: Mapping[PauliElement, PauliElement]) -> SingleQubitOp:
    """Pick the op sending each key to its value, up to sign.

    Among the ops that qualify, the one moving the fewest letters wins;
    ties go to the earlier row of the table.  So no-op requirements give
    the identity and ``{Z: X}`` gives H rather than HPdg.
    """
    key = tuple(sorted((int(a), int(b)) for a, b in requirements.items()))
    return _find_op(key)


@lru_cache(maxsize=None)
def _find_op(key: tuple[tuple[int, int], ...]) -> SingleQubitOp:
    best = None
    for op in SINGLE_QUBIT_OPS:
        if all(op.image(PauliElement(a))[1] == b for a, b in key):
            if best is None or op.moved < best.moved:
                best = op
    if best is None:
        raise ValueError(f"no single-qubit op realises {dict(key)}")
    return best


def parse_pauli_string(text: str) -> tuple[Phase, tuple[PauliElement, ...]]:
    """Parse ``"+XIZ"``, ``"-i YY"`` or a bare ``"XIZ"`` into phase and letters."""
    s = text.replace(" ", "")
    for sym in ("+i", "-i", "+", "-"):
        if s.startswith(sym):
            phase, body = Phase.parse(sym), s[len(sym):]
            break
    else:
        phase, body = ONE, s
    return phase, tuple(PauliElement.from_letter(ch) for ch in body)


def format_pauli_string(phase: Phase, letters) -> str:
    return str(phase) + "".join(PauliElement(a).letter for a in letters)

"""Exception hierarchy.

Every error a caller can provoke with bad input derives from
:class:`StabiliserError`; the CLI maps those to exit status 1.
Row and column indices carried by the exceptions are 0-based; the
messages print them 1-based, the way the text format counts.
"""

from __future__ import annotations


class StabiliserError(Exception):
    """Base class for domain errors."""


class FormatError(StabiliserError):
    """Malformed stab v1 text."""


class ValidationError(StabiliserError):
    """The generator set does not describe a stabiliser state."""


class NonCommuting(ValidationError):
    def __init__(self, row_i: int, row_j: int):
        self.row_i, self.row_j = row_i, row_j
        super().__init__(f"rows {row_i + 1} and {row_j + 1} do not commute")


class ImaginaryPhase(ValidationError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row + 1} has an imaginary phase")


class ContradictoryIdentityRow(ValidationError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row + 1} is -I, which stabilises nothing")


class DependentWithMinusPhase(ValidationError):
    """Some product of the generators equals -I (the projector is zero)."""

    def __init__(self, row: int | None = None):
        self.row = row
        where = "" if row is None else f" (reduced row {row + 1})"
        super().__init__(f"generators are inconsistent: a product equals -I{where}")


class CrossPartySwap(StabiliserError):
    def __init__(self, p: int, q: int):
        self.p, self.q = p, q
        super().__init__(f"columns {p + 1} and {q + 1} belong to different parties")


class TracedAllQubits(StabiliserError):
    def __init__(self):
        super().__init__("cannot trace out every qubit")


class DimensionMismatch(StabiliserError):
    def __init__(self, n1: int, n2: int):
        self.n1, self.n2 = n1, n2
        super().__init__(f"dimension mismatch ({n1} vs {n2} qubits)")


class UnknownMeasure(StabiliserError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown entanglement measure {name!r}")


class QubitLimitExceeded(StabiliserError):
    def __init__(self, n: int, cap: int):
        self.n, self.cap = n, cap
        super().__init__(f"{n} qubits exceeds the dense-oracle cap of {cap}")

"""Overlap, Uhlmann fidelity and Bures distance between stabiliser states.

Both quantities are exact powers of two (the fidelity possibly a
half-integer power), so they come back as :class:`DyadicScalar` values;
only the Bures distance is a float.

The Bures distance uses the convention ``D = 2 sqrt(1 - F_u)``.  Note
that the more common normalisation is ``sqrt(2 (1 - F_u))``; divide by
``sqrt(2)`` to convert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .array import Gate, StabiliserArray, Tableau, validate
from .cnf import cnf_inplace
from .errors import DimensionMismatch
from .pauli import X
from .reduce import drop_dependent, rref_inplace


@dataclass(frozen=True, order=False)
class DyadicScalar:
    """Zero, or ``2 ** (twice_log2 / 2)``."""

    zero: bool = False
    twice_log2: int = 0

    @classmethod
    def power(cls, log2: int | Fraction) -> "DyadicScalar":
        twice = Fraction(log2) * 2
        if twice.denominator != 1:
            raise ValueError("exponent must be a multiple of 1/2")
        return cls(False, int(twice))

    @classmethod
    def zero_value(cls) -> "DyadicScalar":
        return cls(True, 0)

    @property
    def log2_value(self) -> Fraction | None:
        return None if self.zero else Fraction(self.twice_log2, 2)

    @property
    def is_rational(self) -> bool:
        return self.zero or self.twice_log2 % 2 == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return Fraction(0) if self.zero else Fraction(2) ** (self.twice_log2 // 2)

    def __float__(self) -> float:
        return 0.0 if self.zero else 2.0 ** (self.twice_log2 / 2)

    def __eq__(self, other):
        if isinstance(other, DyadicScalar):
            return (self.zero, 0 if self.zero else self.twice_log2) == \
                   (other.zero, 0 if other.zero else other.twice_log2)
        return NotImplemented

    def __hash__(self):
        return hash((self.zero, 0 if self.zero else self.twice_log2))

    def __str__(self) -> str:
        if self.zero:
            return "0"
        e = self.log2_value
        if e == 0:
            return "1"
        return f"2^{e}" if e.denominator == 1 else f"2^{e.numerator}/2"


class Overlap(NamedTuple):
    F: DyadicScalar
    F_u: DyadicScalar
    D_bures: float


@dataclass(frozen=True)
class CompositeArray:
    """Two arrays on the same qubits stacked as one; not a stabiliser array."""

    top: StabiliserArray
    bottom: StabiliserArray
    circuit: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.top.n_qubits != self.bottom.n_qubits:
            raise DimensionMismatch(self.top.n_qubits, self.bottom.n_qubits)

    @property
    def n_qubits(self) -> int:
        return self.top.n_qubits

    def tableau(self, record=None) -> Tableau:
        return Tableau(np.vstack([self.top.x, self.bottom.x]),
                       np.vstack([self.top.z, self.bottom.z]),
                       np.concatenate([self.top.phases, self.bottom.phases]), record)


def _split(tab: Tableau, k1: int, circuit=()) -> CompositeArray:
    full = tab.freeze()
    return CompositeArray(full.select_rows(range(k1)),
                          full.select_rows(range(k1, tab.n_rows)), tuple(circuit))


def joint_cnf(c: CompositeArray) -> CompositeArray:
    """Bring the top block to CNF, replaying every column op on the bottom."""
    circuit: list[Gate] = list(c.circuit)
    tab = c.tableau(record=circuit)
    cnf_inplace(tab, range(c.n_qubits), 0, c.top.n_rows)
    return _split(tab, c.top.n_rows, circuit)


def overlap(a1: StabiliserArray, a2: StabiliserArray) -> Overlap:
    """Overlap ``Tr[rho1 rho2]``, Uhlmann fidelity and Bures distance.

    >>> plus_z = StabiliserArray.from_strings(["+Z"])
    >>> plus_x = StabiliserArray.from_strings(["+X"])
    >>> F, F_u, _ = overlap(plus_z, plus_x)
    >>> str(F), str(F_u)
    ('2^-1', '2^-1/2')
    """
    n = a1.n_qubits
    if a2.n_qubits != n:
        raise DimensionMismatch(n, a2.n_qubits)
    a1 = drop_dependent(validate(a1))
    a2 = drop_dependent(validate(a2))
    k1, k2 = a1.n_rows, a2.n_rows

    tab = CompositeArray(a1, a2).tableau()
    r1 = len(cnf_inplace(tab, range(n), 0, k1).x_leaders)
    assert r1 == k1

    # Walk the X-leader columns of the top block; T = 2**-halvings.
    halvings = 0
    k_u, k_l = k1, k1 + k2 - 1
    for n_l in range(r1):
        if k_u > k_l:
            break
        codes = tab.codes(n_l, k_u, k_l + 1)
        nz = np.flatnonzero(codes)
        if nz.size == 0:
            continue
        s1 = codes[nz[0]]
        other = nz[codes[nz] != s1]
        if other.size == 0:
            tab.rowswap(k_u + int(nz[0]), k_u)
            tab.rowmul(k_u, k_u + 1 + np.flatnonzero(tab.codes(n_l, k_u + 1, k_l + 1)))
            if tab.codes(n_l, k_u, k_u + 1)[0] != int(X):
                halvings += 1
                k_u += 1
            else:
                tab.rowmul(n_l, k_u)
            continue
        s2 = codes[other[0]]
        tab.rowswap(k_u + int(nz[0]), k_u)
        tab.rowswap(k_u + int(other[0]), k_u + 1)
        codes = tab.codes(n_l, k_u + 2, k_l + 1)
        rows = k_u + 2 + np.arange(codes.size)
        tab.rowmul(k_u, rows[(codes != 0) & (codes != s2)])
        codes = tab.codes(n_l, k_u + 2, k_l + 1)
        tab.rowmul(k_u + 1, rows[codes != 0])
        p1, p2 = tab.codes(n_l, k_u, k_u + 2)
        if p1 == int(X):
            tab.rowswap(k_u, k_u + 1)
        elif p2 != int(X):
            tab.rowmul(k_u, k_u + 1)
        tab.rowmul(n_l, k_u + 1)
        halvings += 1
        k_u += 1

    # End game: whatever is left of the bottom block lives on the columns
    # where the top block acts as identity.  Its rank fixes the size of the
    # remaining projector; a product equal to -I there makes the states
    # orthogonal.
    zero = False
    r2 = 0
    if k_u <= k_l:
        rest = tab.slice_rows(k_u, k_l + 1)
        assert not rest.code[:, :r1].any()
        r2, _ = rref_inplace(rest, range(r1, n))
        zero = bool(np.any(rest.ph[r2:] != 0))
    if zero:
        return Overlap(DyadicScalar.zero_value(), DyadicScalar.zero_value(), 2.0)
    c_log2 = n - r1 - r2
    norm_log2 = 2 * n - k1 - k2
    F = DyadicScalar.power(c_log2 - halvings - norm_log2)
    F_u = DyadicScalar(False, 2 * c_log2 - halvings - norm_log2)
    return Overlap(F, F_u, 2.0 * math.sqrt(max(0.0, 1.0 - float(F_u))))

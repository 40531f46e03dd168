"""Row-reduced echelon form, rank, and partial trace.

Only row operations are used here, so the represented state never
changes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .array import StabiliserArray, Tableau
from .errors import DependentWithMinusPhase, TracedAllQubits


@dataclass(frozen=True)
class ColumnLeaders:
    column: int
    rows: tuple[int, ...]  # one or two rows, 0-based


@dataclass(frozen=True)
class RrefResult:
    array: StabiliserArray
    rank: int
    column_leaders: tuple[ColumnLeaders, ...]


def rref_inplace(tab: Tableau, cols: Sequence[int], row_lo: int = 0,
                 row_hi: int | None = None) -> tuple[int, list[ColumnLeaders]]:
    """Bring rows ``[row_lo, row_hi)`` of ``tab`` to RREF over ``cols``.

    ``cols`` fixes the column order scanned (physical indices), which is
    how PTRACE puts the traced columns first without moving anything.
    Returns the first row below the leaders and the leader records.
    """
    k_u = row_lo
    k_end = tab.n_rows if row_hi is None else row_hi
    leaders: list[ColumnLeaders] = []
    for c in cols:
        if k_u >= k_end:
            break
        codes = tab.codes(c, k_u, k_end)
        nz = np.flatnonzero(codes)
        if nz.size == 0:
            continue
        s1 = codes[nz[0]]
        k1 = k_u + int(nz[0])
        other = nz[codes[nz] != s1]
        if other.size == 0:
            tab.rowswap(k1, k_u)
            codes = tab.codes(c, k_u + 1, k_end)
            tab.rowmul(k_u, k_u + 1 + np.flatnonzero(codes))
            leaders.append(ColumnLeaders(int(c), (k_u,)))
            k_u += 1
            continue
        k2 = k_u + int(other[0])
        s2 = codes[other[0]]
        tab.rowswap(k1, k_u)
        tab.rowswap(k2, k_u + 1)
        codes = tab.codes(c, k_u + 2, k_end)
        rows = k_u + 2 + np.arange(codes.size)
        # sigma_1 and sigma_3 rows take the top leader, sigma_2 and sigma_3
        # (now sigma_2 after the first product) take the second.
        tab.rowmul(k_u, rows[(codes != 0) & (codes != s2)])
        codes = tab.codes(c, k_u + 2, k_end)
        tab.rowmul(k_u + 1, rows[codes != 0])
        leaders.append(ColumnLeaders(int(c), (k_u, k_u + 1)))
        k_u += 2
    return k_u, leaders


def rref(a: StabiliserArray) -> RrefResult:
    """Row-reduced echelon form of ``a`` (same group, same state).

    >>> rref(StabiliserArray.from_strings(["+ZZ", "+ZZ"])).array.rows
    ('+ZZ', '+II')
    """
    tab = Tableau.from_array(a)
    k_u, leaders = rref_inplace(tab, range(a.n_qubits))
    return RrefResult(tab.freeze(), k_u, tuple(leaders))


def _check_identity_rows(tab: Tableau, lo: int):
    for r in range(lo, tab.n_rows):
        if tab.ph[r] != 0:
            raise DependentWithMinusPhase(r)


def rank(a: StabiliserArray) -> int:
    """Number of independent generators.

    Raises:
        DependentWithMinusPhase: some product of rows is ``-I``.
    """
    tab = Tableau.from_array(a)
    k_u, _ = rref_inplace(tab, range(a.n_qubits))
    _check_identity_rows(tab, k_u)
    return k_u


def drop_dependent(a: StabiliserArray) -> StabiliserArray:
    """RREF of ``a`` with the all-identity rows removed."""
    tab = Tableau.from_array(a)
    k_u, _ = rref_inplace(tab, range(a.n_qubits))
    _check_identity_rows(tab, k_u)
    return tab.freeze().select_rows(range(k_u))


def ptrace(a: StabiliserArray, traced: Iterable[int]) -> StabiliserArray:
    """Stabiliser array of the state with qubits ``traced`` (0-based) traced out.

    The kept qubits stay in their original relative order.  Redundant
    all-identity rows are dropped from the result.
    """
    traced = sorted(set(int(q) for q in traced))
    n = a.n_qubits
    if any(not 0 <= q < n for q in traced):
        raise IndexError(f"traced qubits {traced} out of range for {n} qubits")
    if not traced:
        raise ValueError("nothing to trace out")
    if len(traced) == n:
        raise TracedAllQubits()
    keep = [q for q in range(n) if q not in set(traced)]
    tab = Tableau.from_array(a)
    k_u, _ = rref_inplace(tab, traced)
    rest = tab.freeze().select_rows(range(k_u, a.n_rows)).select_columns(keep)
    ident = ~rest.codes.any(axis=1)
    if np.any(rest.phases[ident] != 0):
        raise DependentWithMinusPhase()
    return rest.select_rows(np.flatnonzero(~ident))

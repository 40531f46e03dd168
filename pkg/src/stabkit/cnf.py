"""Single-party Clifford normal form.

Row and column operations bring a stabiliser array to::

    X I ... I | I ... I
    I X ... I | I ... I
    ...       |
    I I ... X | I ... I
    ----------+--------
    I I ... I | I ... I

The engine :func:`cnf_inplace` also drives the joint reduction used for
overlaps (active rows restricted to the first block) and the
single-party pass of the bipartite reduction (active columns restricted
to one party, ``party=True``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .array import Gate, StabiliserArray, Tableau
from .pauli import PHPDG, PauliElement, X, Y, Z, find_op


@dataclass(frozen=True)
class CnfResult:
    array: StabiliserArray
    r: int
    circuit: tuple[Gate, ...]
    column_permutation: tuple[int, ...]  # column position -> original qubit

    @property
    def column_ops(self) -> tuple[Gate, ...]:
        return tuple(g for g in self.circuit if not g.is_row_op)


@dataclass
class CnfPass:
    """What one run of the engine produced (row/column indices absolute)."""

    k_u: int
    x_leaders: list[tuple[int, int]] = field(default_factory=list)  # (row, col)
    xz_pairs: list[tuple[int, int]] = field(default_factory=list)  # (first row, col)


def _op_to(code, target):
    return find_op({PauliElement(int(code)): target})


_TO_X = {int(p): find_op({p: X}) for p in (X, Y, Z)}
_TO_XZ = {(int(p), int(q)): find_op({p: X, q: Z}) for p in (X, Y, Z) for q in (X, Y, Z) if p != q}
_TO_XY = {(int(p), int(q)): find_op({p: X, q: Y}) for p in (X, Y, Z) for q in (X, Y, Z) if p != q}


def _swap_perm(perm, p, q):
    if perm is not None:
        perm[p], perm[q] = perm[q], perm[p]


def _row_to_x(tab: Tableau, row: int, cols: np.ndarray):
    """Turn every non-identity element of ``row`` on ``cols`` into an X."""
    codes = tab.row_codes(row, cols)
    mask = codes > int(X)
    tab.apply_ops(cols[mask], [_TO_X[int(t)] for t in codes[mask]])


def clear_pair_columns(tab: Tableau, c: int, cols: Sequence[int], top: int):
    """Empty rows ``top`` and ``top+1`` on ``cols`` (none may anticommute there).

    Column ``c`` must hold X over Z on those rows.  Each column pattern
    is brought to a standard one with a single-qubit op and removed with
    CNOTs; note the CNOTs that use ``c`` as target.
    """
    for l in cols:
        a = int(tab.code[top, l])
        b = int(tab.code[top + 1, l])
        if a == 0 and b == 0:
            continue
        if a == 0:
            tab.apply_op(l, _op_to(b, Z))
            tab.cnot(l, c)
        elif b == 0:
            tab.apply_op(l, _op_to(a, X))
            tab.cnot(c, l)
        elif a == b:
            tab.apply_op(l, _op_to(a, Z))
            tab.cnot(l, c)
            tab.apply_op(l, find_op({Z: X}))
            tab.cnot(c, l)
        else:
            raise AssertionError(f"column {l} holds an anticommuting pair")


def isolate_pair(tab: Tableau, c: int, cols: Sequence[int], top: int):
    """Reduce rows ``top``, ``top+1`` to X over Z on column ``c`` alone.

    The two rows must anticommute when restricted to ``[c, *cols]`` and
    column ``c`` must hold an anticommuting pair.  The top row is cleaned
    the way a case-(b) pass cleans its leader row; the second row is then
    left with single Paulis that the (I, sigma) pattern above removes.
    """
    cols = [l for l in cols if l != c]
    a = int(tab.code[top, c])
    b = int(tab.code[top + 1, c])
    tab.apply_op(c, find_op({PauliElement(a): X, PauliElement(b): Z}))
    cols = np.asarray(cols, dtype=np.intp)
    _row_to_x(tab, top, cols)
    tab.cnot(c, cols[tab.row_codes(top, cols) != 0])
    lead = int(tab.code[top + 1, c])
    if lead == int(Y):
        tab.apply_op(c, find_op({X: X, Y: Z}))
    elif lead != int(Z):
        raise AssertionError("pair rows commute on these columns")
    clear_pair_columns(tab, c, cols, top)


def clear_pair_rows(tab: Tableau, c: int, top: int, hi: int):
    """Empty column ``c`` on rows ``top+2 .. hi-1`` using the X/Z pair above."""
    codes = tab.codes(c, top + 2, hi)
    rows = top + 2 + np.arange(codes.size)
    tab.rowmul(top, rows[(codes == int(X)) | (codes == int(Y))])
    codes = tab.codes(c, top + 2, hi)
    tab.rowmul(top + 1, rows[codes != 0])


def cnf_inplace(tab: Tableau, cols: Sequence[int], row_lo: int = 0,
                row_hi: int | None = None, *, party: bool = False,
                perm: list | None = None) -> CnfPass:
    """Run the reduction on rows ``[row_lo, row_hi)`` and columns ``cols``.

    Column operations act on every row of ``tab``; row operations stay
    within the active rows.  With ``party=True`` the two single-party
    modifications apply: a case-(b) pass that leaves Z's under the
    leader does not shrink the region, and a case-(c) pass with no
    anticommuting column splits off an X/Z pair instead.
    """
    cols = np.asarray(list(cols), dtype=np.intp)
    k_u = row_lo
    k_l = (tab.n_rows if row_hi is None else row_hi) - 1
    n_l, n_r = 0, len(cols) - 1
    out = CnfPass(k_u)
    while n_l <= n_r and k_u <= k_l:
        c = int(cols[n_l])
        codes = tab.codes(c, k_u, k_l + 1)
        nz = codes.nonzero()[0]

        if nz.size == 0:  # case (a)
            if n_l != n_r:
                tab.colswap(c, int(cols[n_r]))
                _swap_perm(perm, c, int(cols[n_r]))
            n_r -= 1
            continue

        s1 = int(codes[nz[0]])
        other = nz[codes[nz] != s1]
        rest = cols[n_l + 1:n_r + 1]

        if other.size == 0:  # case (b)
            tab.rowswap(k_u + int(nz[0]), k_u)
            tab.apply_op(c, _op_to(s1, X))
            below = tab.codes(c, k_u + 1, k_l + 1)
            tab.rowmul(k_u, k_u + 1 + np.flatnonzero(below))
            _row_to_x(tab, k_u, rest)
            tab.cnot(c, rest[tab.row_codes(k_u, rest) != 0])
            if tab.codes(c, k_u + 1, k_l + 1).any():
                if not party:
                    raise AssertionError("leader column not clean after CNOTs: rows do not commute")
                continue
            out.x_leaders.append((k_u, c))
            k_u += 1
            n_l += 1
            continue

        # case (c)
        k1, k2 = k_u + int(nz[0]), k_u + int(other[0])
        s2 = int(codes[other[0]])
        tab.rowswap(k1, k_u)
        tab.rowswap(k2, k_u + 1)
        tab.apply_op(c, _TO_XZ[s1, s2])
        a = tab.row_codes(k_u, rest)
        b = tab.row_codes(k_u + 1, rest)
        anti = ((a != 0) & (b != 0) & (a != b)).nonzero()[0]
        if anti.size:
            j = int(anti[0])
            l = int(rest[j])
            tab.apply_op(l, _TO_XY[int(a[j]), int(b[j])])
            tab.cnot(c, l)
        elif party:
            clear_pair_columns(tab, c, rest, k_u)
            clear_pair_rows(tab, c, k_u, k_l + 1)
            out.xz_pairs.append((k_u, c))
            k_u += 2
            n_l += 1
        else:
            raise AssertionError("no anticommuting column for the leading pair: rows do not commute")
    out.k_u = k_u
    return out


def cnf1(a: StabiliserArray) -> CnfResult:
    """Clifford normal form of ``a``, with the circuit that produces it.

    The circuit lists every elementary operation in order; its column
    operations (single-qubit ops, CNOTs, SWAPs) compose to a unitary U
    with ``rho_out = U rho_in U^dagger``.

    >>> res = cnf1(StabiliserArray.from_strings(["+Z"]))
    >>> res.array.rows, [str(g) for g in res.circuit]
    (('+X',), ['H 1'])
    """
    circuit: list[Gate] = []
    perm = list(range(a.n_qubits))
    tab = Tableau.from_array(a, record=circuit)
    run = cnf_inplace(tab, range(a.n_qubits), perm=perm)
    return CnfResult(tab.freeze(), len(run.x_leaders), tuple(circuit), tuple(perm))


def negative_phase_normalize(res: CnfResult) -> CnfResult:
    """Flip every ``-X`` leader to ``+X`` with the op sending X to -X."""
    circuit = list(res.circuit)
    tab = Tableau.from_array(res.array, record=circuit)
    for k in range(res.r):
        if tab.ph[k] == 2:
            tab.apply_op(k, PHPDG)
    return CnfResult(tab.freeze(), res.r, tuple(circuit), res.column_permutation)


def is_cnf(a: StabiliserArray, r: int) -> bool:
    """Whether ``a`` has the final block form with ``r`` X leaders."""
    expect = np.zeros((a.n_rows, a.n_qubits), dtype=np.uint8)
    expect[np.arange(r), np.arange(r)] = int(X)
    if r > min(a.n_rows, a.n_qubits) or not np.array_equal(a.codes, expect):
        return False
    return bool(np.all(a.phases[:r] % 2 == 0) and np.all(a.phases[r:] == 0))

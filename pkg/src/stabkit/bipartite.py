"""Bipartite normal form and EPR-pair counting.

Under local row/column operations every bipartite stabiliser state
becomes ``p`` EPR pairs (rows ``XX``/``ZZ`` across the cut) times a
separable state whose rows carry only I and X.  :func:`cnfp` counts
``p`` by reducing party A alone; :func:`full_normal_form` finishes the
job on party B as well and returns the normal-form array.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array import Gate, QubitPartition, StabiliserArray, Tableau, validate
from .cnf import cnf_inplace, isolate_pair
from .errors import DimensionMismatch, UnknownMeasure
from .pauli import X, Z
from .reduce import drop_dependent

MEASURES = ("logneg", "entropy", "distillable")


@dataclass(frozen=True)
class BipartiteReport:
    p: int
    n_A: int
    n_B: int
    k: int
    normal_form: StabiliserArray | None = None
    circuit_A: tuple[Gate, ...] = ()
    circuit_B: tuple[Gate, ...] = ()
    row_ops: tuple[Gate, ...] = ()
    # column position -> original qubit, within each party's sorted qubit list
    permutation_A: tuple[int, ...] = ()
    permutation_B: tuple[int, ...] = ()

    @property
    def bound(self) -> int:
        return min(self.k // 2, self.n_A, self.n_B)


class _Run:
    """Tableau plus per-party gate logs for one reduction."""

    def __init__(self, a: StabiliserArray, partition: QubitPartition):
        if partition.n_qubits != a.n_qubits:
            raise DimensionMismatch(a.n_qubits, partition.n_qubits)
        self.partition = partition
        self.log: list[Gate] = []
        self.perm = list(range(a.n_qubits))
        self.tab = Tableau.from_array(drop_dependent(validate(a)), record=self.log)
        self.A = sorted(partition.party_A)
        self.B = sorted(partition.party_B)

    def split_log(self):
        a, b, rows = [], [], []
        for g in self.log:
            if g.is_row_op:
                rows.append(g)
            elif all(q in self.partition.party_A for q in g.args):
                a.append(g)
            elif all(q in self.partition.party_B for q in g.args):
                b.append(g)
            else:
                raise AssertionError(f"non-local gate {g}")
        return tuple(a), tuple(b), tuple(rows)

    def report(self, p: int, normal_form=None) -> BipartiteReport:
        circ_a, circ_b, rows = self.split_log()
        return BipartiteReport(
            p=p, n_A=len(self.A), n_B=len(self.B), k=self.tab.n_rows,
            normal_form=normal_form, circuit_A=circ_a, circuit_B=circ_b, row_ops=rows,
            permutation_A=tuple(self.perm[q] for q in self.A),
            permutation_B=tuple(self.perm[q] for q in self.B),
        )


def cnfp(a: StabiliserArray, partition: QubitPartition) -> BipartiteReport:
    """Count EPR pairs across ``partition`` by reducing party A only."""
    run = _Run(a, partition)
    res = cnf_inplace(run.tab, run.A, party=True, perm=run.perm)
    return run.report(len(res.xz_pairs))


def full_normal_form(a: StabiliserArray, partition: QubitPartition) -> BipartiteReport:
    """Reduce both parties to the EPR-pairs-plus-separable form.

    In the result, with ``A`` and ``B`` the sorted qubit lists of each
    party, rows ``2i`` and ``2i+1`` (``i < p``) are X and Z on qubits
    ``A[i]`` and ``B[i]`` and identity elsewhere; the remaining rows hold
    only I and X, and identity on the pair qubits.
    """
    run = _Run(a, partition)
    tab, A, B = run.tab, run.A, run.B
    res = cnf_inplace(tab, A, party=True, perm=run.perm)
    p = len(res.xz_pairs)

    # Pairs first: rows 2i, 2i+1 and party-A position i.  A pair's column
    # holds X over Z on its rows and identity elsewhere, so it can be found
    # again after earlier swaps.
    pair_cols = [col for _, col in res.xz_pairs]
    for i in range(p):
        col = pair_cols[i]
        top = _find_pair_rows(tab, col)
        tab.rowswap(top, 2 * i)
        tab.rowswap(top + 1, 2 * i + 1)
        if col != A[i]:
            tab.colswap(col, A[i])
            run.perm[col], run.perm[A[i]] = run.perm[A[i]], run.perm[col]
            pair_cols = [col if c == A[i] else c for c in pair_cols]

    # Partner columns on party B.
    for i in range(p):
        r = 2 * i
        free = B[i:]
        a_codes = tab.row_codes(r, free)
        b_codes = tab.row_codes(r + 1, free)
        anti = np.flatnonzero((a_codes != 0) & (b_codes != 0) & (a_codes != b_codes))
        if anti.size == 0:
            raise AssertionError(f"no anticommuting partner on party B for pair {i}")
        l = free[int(anti[0])]
        if l != B[i]:
            tab.colswap(l, B[i])
            run.perm[l], run.perm[B[i]] = run.perm[B[i]], run.perm[l]
        b = B[i]
        isolate_pair(tab, b, B[i + 1:], r)
        if tab.codes(b, r + 2).any() or tab.codes(b, 0, r).any():
            raise AssertionError("partner column not clean: rows do not commute")

    # Separable remainder: CNF on party B's free columns.
    if tab.n_rows > 2 * p and len(B) > p:
        cnf_inplace(tab, B[p:], 2 * p, perm=run.perm)
    return run.report(p, tab.freeze())


def _find_pair_rows(tab: Tableau, col: int) -> int:
    codes = tab.codes(col)
    rows = np.flatnonzero(codes == int(X))
    for r in rows:
        if r + 1 < tab.n_rows and codes[r + 1] == int(Z):
            return int(r)
    raise AssertionError("lost track of an X/Z pair")


def is_bipartite_normal_form(a: StabiliserArray, partition: QubitPartition, p: int) -> bool:
    """Structural check of the two-party normal form (signs are ignored)."""
    A, B = sorted(partition.party_A), sorted(partition.party_B)
    codes = a.codes
    for i in range(p):
        expect_x = np.zeros(a.n_qubits, dtype=np.uint8)
        expect_z = np.zeros(a.n_qubits, dtype=np.uint8)
        expect_x[[A[i], B[i]]] = int(X)
        expect_z[[A[i], B[i]]] = int(Z)
        if not (np.array_equal(codes[2 * i], expect_x) and np.array_equal(codes[2 * i + 1], expect_z)):
            return False
    rest = codes[2 * p:]
    if rest.size and (np.any(rest[:, A[:p]]) or np.any(rest[:, B[:p]])):
        return False
    return bool(np.all(rest <= int(X)))


def entanglement(report: BipartiteReport, measure: str = "logneg") -> float:
    """Entanglement in ebits; every supported measure gives 1 per EPR pair.

    ``"entropy"`` (entropy of entanglement) is only meaningful for pure
    states; for those it agrees with the other two.
    """
    if measure not in MEASURES:
        raise UnknownMeasure(measure)
    return float(report.p)

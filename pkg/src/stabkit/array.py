"""Stabiliser arrays.

A :class:`StabiliserArray` is an immutable ``K x N`` grid of Pauli
elements plus a length-``K`` phase vector.  Row ``k`` stands for the
generator ``i**phase[k] * (P_k1 (x) ... (x) P_kN)`` where each ``P`` is
the actual Pauli matrix named by its letter (so ``Y`` is Hermitian, not
``XZ``).

The reduction algorithms do thousands of elementary operations, so they
work on a mutable :class:`Tableau` and freeze the result at the end.
The tableau holds one code per element (``x | z << 1``: I=0, X=1, Z=2,
Y=3) and applies the multiplication, single-qubit and CNOT tables as
vectorised lookups.  Multi-target CNOTs use the closed form instead::

    letter(x, z) = i**(x*z) X**x Z**z

CNOT acts on ``X**x Z**z`` without any sign, so the phase changes by the
number of Y letters before minus the number after.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ContradictoryIdentityRow,
    CrossPartySwap,
    FormatError,
    ImaginaryPhase,
    NonCommuting,
)
from .pauli import (
    CNOT_TABLE,
    LETTERS,
    MULTIPLICATION_TABLE,
    SINGLE_QUBIT_OPS,
    Phase,
    PauliElement,
    SingleQubitOp,
    parse_pauli_string,
)

# Pauli products and CNOT images flattened to lookups indexed by ``a << 2 | b``.
_MUL_CODE = np.zeros(16, dtype=np.uint8)
_MUL_PHASE = np.zeros(16, dtype=np.int64)
_CNOT_CONTROL = np.zeros(16, dtype=np.uint8)
_CNOT_TARGET = np.zeros(16, dtype=np.uint8)
_CNOT_PHASE = np.zeros(16, dtype=np.int64)
for (_a, _b), (_ph, _c) in MULTIPLICATION_TABLE.items():
    _MUL_CODE[_a << 2 | _b], _MUL_PHASE[_a << 2 | _b] = _c, _ph.ipow
for (_a, _b), (_ph, _c, _t) in CNOT_TABLE.items():
    _CNOT_CONTROL[_a << 2 | _b], _CNOT_TARGET[_a << 2 | _b] = _c, _t
    _CNOT_PHASE[_a << 2 | _b] = _ph.ipow

# Lookup tables for single-qubit ops indexed by [op index, code].
_OP_INDEX = {op.name: i for i, op in enumerate(SINGLE_QUBIT_OPS)}
_OP_CODE = np.zeros((len(SINGLE_QUBIT_OPS), 4), dtype=np.uint8)
_OP_PHASE = np.zeros((len(SINGLE_QUBIT_OPS), 4), dtype=np.int64)
for _i, _op in enumerate(SINGLE_QUBIT_OPS):
    for _code in range(4):
        _ph, _img = _op.image(PauliElement(_code))
        _OP_CODE[_i, _code] = int(_img)
        _OP_PHASE[_i, _code] = _ph.ipow


@dataclass(frozen=True)
class Gate:
    """One recorded elementary operation; qubit/row indices are 0-based.

    ``name`` is a single-qubit op name (``"H"``, ``"PH"``, ...), or one of
    ``"CNOT"`` (control, target), ``"SWAP"``, ``"ROWMUL"`` (src, dst) and
    ``"ROWSWAP"``.
    """

    name: str
    args: tuple[int, ...]

    @property
    def is_row_op(self) -> bool:
        return self.name in ("ROWMUL", "ROWSWAP")

    def __str__(self) -> str:
        return " ".join([self.name, *(str(a + 1) for a in self.args)])


class Tableau:
    """Mutable working copy of a stabiliser array.

    ``code`` is a ``(K, N)`` uint8 array of Pauli codes (``x | z << 1``),
    ``ph`` the ``(K,)`` vector of i-powers.  If ``record`` is a list every
    operation appends a :class:`Gate` to it.
    """

    def __init__(self, x, z, ph, record: list | None = None):
        # Column-major: column ops far outnumber row ops.
        self.code = np.asfortranarray(np.asarray(x, dtype=np.uint8) | (np.asarray(z, dtype=np.uint8) << 1))
        self.ph = np.array(ph, dtype=np.int64, copy=True) % 4
        self.record = record

    @classmethod
    def from_array(cls, a: "StabiliserArray", record: list | None = None) -> "Tableau":
        tab = cls.__new__(cls)
        tab.code = np.array(a.codes, dtype=np.uint8, order="F")
        tab.ph = a.phases.astype(np.int64)
        tab.record = record
        return tab

    def freeze(self) -> "StabiliserArray":
        return StabiliserArray(self.x, self.z, self.ph, n_qubits=self.n_qubits)

    def slice_rows(self, lo: int, hi: int | None = None) -> "Tableau":
        """Unrecorded copy of rows ``[lo, hi)``."""
        return Tableau(self.x[lo:hi], self.z[lo:hi], self.ph[lo:hi])

    @property
    def x(self) -> np.ndarray:
        return self.code & 1

    @property
    def z(self) -> np.ndarray:
        return self.code >> 1

    @property
    def n_rows(self) -> int:
        return self.code.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.code.shape[1]

    def codes(self, col: int, lo: int = 0, hi: int | None = None) -> np.ndarray:
        return self.code[lo:hi, col]

    def row_codes(self, row: int, cols=None) -> np.ndarray:
        if cols is None:
            return self.code[row].copy()
        return self.code[row, cols]

    def _log(self, name, *args):
        if self.record is not None:
            self.record.append(Gate(name, tuple([int(a) for a in args])))

    # row operations -------------------------------------------------

    def rowswap(self, i: int, j: int):
        if i == j:
            return
        code, ph = self.code, self.ph
        code[i], code[j] = code[j].copy(), code[i].copy()
        ph[i], ph[j] = ph[j], ph[i]
        self._log("ROWSWAP", i, j)

    def rowmul(self, src: int, dst):
        """Set each row in ``dst`` to ``row[src] . row[dst]``."""
        dst = np.atleast_1d(np.asarray(dst, dtype=np.intp))
        if dst.size == 0:
            return
        idx = (self.code[src] << 2) | self.code[dst]
        self.ph[dst] = (self.ph[src] + self.ph[dst] + _MUL_PHASE[idx].sum(axis=1)) % 4
        self.code[dst] = _MUL_CODE[idx]
        for d in dst:
            self._log("ROWMUL", src, d)

    # column operations ----------------------------------------------

    def apply_ops(self, cols, ops: Sequence[SingleQubitOp]):
        """Apply ``ops[j]`` to column ``cols[j]``; identity ops are skipped."""
        pairs = [(c, op) for c, op in zip(np.atleast_1d(cols), ops) if not op.is_identity]
        if not pairs:
            return
        cols = np.array([c for c, _ in pairs], dtype=np.intp)
        idx = np.array([_OP_INDEX[op.name] for _, op in pairs], dtype=np.intp)
        code = self.code[:, cols]
        self.ph = (self.ph + _OP_PHASE[idx[None, :], code].sum(axis=1)) % 4
        self.code[:, cols] = _OP_CODE[idx[None, :], code]
        for c, op in pairs:
            self._log(op.name, c)

    def apply_op(self, col: int, op: SingleQubitOp):
        if op.is_identity:
            return
        i = _OP_INDEX[op.name]
        code = self.code[:, col]
        self.ph += _OP_PHASE[i, code]
        self.ph &= 3
        self.code[:, col] = _OP_CODE[i, code]
        self._log(op.name, col)

    def cnot(self, control: int, targets):
        """CNOTs from one control onto several targets (they commute)."""
        if isinstance(targets, (int, np.integer)):
            self._cnot1(control, int(targets))
            return
        targets = np.atleast_1d(np.asarray(targets, dtype=np.intp))
        if targets.size == 0:
            return
        if np.any(targets == control):
            raise ValueError("control and target must differ")
        code = self.code
        if targets.size == 1:
            self._cnot1(control, int(targets[0]))
            return
        else:
            # X**x Z**z form: CNOT moves bits without signs, so the phase
            # change is the drop in the number of Y letters.
            cols = np.concatenate(([control], targets))
            block = code[:, cols]
            before = (block == 3).sum(axis=1)
            xc = code[:, control] & 1
            zt = np.bitwise_xor.reduce(code[:, targets] >> 1, axis=1)
            code[:, targets] ^= xc[:, None]
            code[:, control] ^= (zt << 1).astype(np.uint8)
            after = (code[:, cols] == 3).sum(axis=1)
            self.ph = (self.ph + before - after) % 4
        for t in targets:
            self._log("CNOT", control, t)

    def _cnot1(self, control: int, target: int):
        if control == target:
            raise ValueError("control and target must differ")
        code = self.code
        idx = (code[:, control] << 2) | code[:, target]
        self.ph += _CNOT_PHASE[idx]
        self.ph &= 3
        code[:, control] = _CNOT_CONTROL[idx]
        code[:, target] = _CNOT_TARGET[idx]
        self._log("CNOT", control, target)

    def colswap(self, p: int, q: int):
        if p == q:
            return
        self.code[:, [p, q]] = self.code[:, [q, p]]
        self._log("SWAP", p, q)

    def identity_rows(self, lo: int = 0, hi: int | None = None) -> np.ndarray:
        """Indices (absolute) of all-identity rows in ``[lo, hi)``."""
        return lo + np.flatnonzero(~self.code[lo:hi].any(axis=1))


class StabiliserArray:
    """Immutable stabiliser array.

    Build one with :meth:`from_strings` (``["+XX", "-ZZ"]``) or from bit
    arrays.  Construction only checks shapes; call :func:`validate` to
    check that the rows describe a state.
    """

    __slots__ = ("_x", "_z", "_ph", "_n")

    def __init__(self, x, z, phases, n_qubits: int | None = None):
        x = np.array(x, dtype=np.uint8, copy=True)
        z = np.array(z, dtype=np.uint8, copy=True)
        if x.ndim == 1 and x.size == 0:
            x = x.reshape(0, n_qubits or 0)
            z = z.reshape(0, n_qubits or 0)
        if x.ndim != 2 or x.shape != z.shape:
            raise ValueError("x and z must be 2-d arrays of equal shape")
        n = x.shape[1] if n_qubits is None else n_qubits
        if n < 1 or x.shape[1] != n:
            raise ValueError(f"bad qubit count {n} for rows of length {x.shape[1]}")
        if np.any(x > 1) or np.any(z > 1):
            raise ValueError("x and z must be bit arrays")
        ph = np.array(phases, dtype=np.int64).reshape(-1) % 4
        if ph.shape != (x.shape[0],):
            raise ValueError("need one phase per row")
        for arr in (x, z, ph):
            arr.flags.writeable = False
        self._x, self._z, self._ph, self._n = x, z, ph, n

    @classmethod
    def from_strings(cls, rows: Iterable[str], n_qubits: int | None = None) -> "StabiliserArray":
        parsed = [parse_pauli_string(r) for r in rows]
        if n_qubits is None:
            if not parsed:
                raise ValueError("n_qubits is required for an empty array")
            n_qubits = len(parsed[0][1])
        if any(len(letters) != n_qubits for _, letters in parsed):
            raise ValueError("all rows must have n_qubits letters")
        codes = np.array([[int(p) for p in letters] for _, letters in parsed],
                         dtype=np.uint8).reshape(len(parsed), n_qubits)
        phases = [ph.ipow for ph, _ in parsed]
        return cls(codes & 1, codes >> 1, phases, n_qubits=n_qubits)

    @classmethod
    def empty(cls, n_qubits: int) -> "StabiliserArray":
        return cls(np.zeros((0, n_qubits)), np.zeros((0, n_qubits)), [], n_qubits=n_qubits)

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def z(self) -> np.ndarray:
        return self._z

    @property
    def phases(self) -> np.ndarray:
        return self._ph

    @property
    def n_qubits(self) -> int:
        return self._n

    @property
    def n_rows(self) -> int:
        return self._x.shape[0]

    @property
    def codes(self) -> np.ndarray:
        return self._x | (self._z << 1)

    def element(self, row: int, col: int) -> PauliElement:
        return PauliElement.from_bits(int(self._x[row, col]), int(self._z[row, col]))

    def phase(self, row: int) -> Phase:
        return Phase(int(self._ph[row]))

    def row_string(self, row: int) -> str:
        letters = "".join(LETTERS[c] for c in self.codes[row])
        return str(self.phase(row)) + letters

    @property
    def rows(self) -> tuple[str, ...]:
        return tuple(self.row_string(k) for k in range(self.n_rows))

    def select_rows(self, rows) -> "StabiliserArray":
        rows = np.asarray(rows, dtype=np.intp)
        return StabiliserArray(self._x[rows], self._z[rows], self._ph[rows], n_qubits=self._n)

    def select_columns(self, cols) -> "StabiliserArray":
        cols = np.asarray(cols, dtype=np.intp)
        return StabiliserArray(self._x[:, cols], self._z[:, cols], self._ph, n_qubits=len(cols))

    def __len__(self) -> int:
        return self.n_rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, StabiliserArray):
            return NotImplemented
        return (self._n == other._n and np.array_equal(self._x, other._x)
                and np.array_equal(self._z, other._z)
                and np.array_equal(self._ph, other._ph))

    def __hash__(self) -> int:
        return hash((self._n, self._x.tobytes(), self._z.tobytes(), self._ph.tobytes()))

    def __repr__(self) -> str:
        return f"StabiliserArray({list(self.rows)!r}, n_qubits={self._n})"

    def __str__(self) -> str:
        return "\n".join(self.rows) if self.n_rows else f"<empty array on {self._n} qubits>"


@dataclass(frozen=True)
class QubitPartition:
    """A two-party cut of the qubits ``0..n-1``."""

    party_A: frozenset[int]
    party_B: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "party_A", frozenset(int(q) for q in self.party_A))
        object.__setattr__(self, "party_B", frozenset(int(q) for q in self.party_B))
        if not self.party_A or not self.party_B:
            raise ValueError("both parties must be nonempty")
        if self.party_A & self.party_B:
            raise ValueError("parties overlap")
        n = len(self.party_A) + len(self.party_B)
        if self.party_A | self.party_B != frozenset(range(n)):
            raise ValueError("parties must cover qubits 0..n-1")

    @classmethod
    def from_party_A(cls, party_A: Iterable[int], n_qubits: int) -> "QubitPartition":
        party_A = frozenset(party_A)
        if not party_A <= frozenset(range(n_qubits)):
            raise ValueError(f"party A {sorted(party_A)} not within 0..{n_qubits - 1}")
        return cls(party_A, frozenset(range(n_qubits)) - party_A)

    @property
    def n_qubits(self) -> int:
        return len(self.party_A) + len(self.party_B)

    def same_party(self, p: int, q: int) -> bool:
        return (p in self.party_A) == (q in self.party_A)


def validate(raw: StabiliserArray) -> StabiliserArray:
    """Return ``raw`` unchanged if it describes a stabiliser state.

    Checks, in order: real phases, no ``-I`` row, pairwise commutation,
    and that no product of generators equals ``-I`` (the only way a
    commuting set with real phases can have a zero projector).

    Raises:
        ImaginaryPhase, ContradictoryIdentityRow, NonCommuting,
        DependentWithMinusPhase
    """
    ph = raw.phases
    bad = np.flatnonzero(ph % 2)
    if bad.size:
        raise ImaginaryPhase(int(bad[0]))
    ident = ~(raw.x | raw.z).any(axis=1)
    bad = np.flatnonzero(ident & (ph == 2))
    if bad.size:
        raise ContradictoryIdentityRow(int(bad[0]))
    x, z = raw.x.astype(np.int64), raw.z.astype(np.int64)
    sym = (x @ z.T + z @ x.T) % 2
    i, j = np.nonzero(np.triu(sym, 1))
    if i.size:
        raise NonCommuting(int(i[0]), int(j[0]))
    from .reduce import rank  # raises DependentWithMinusPhase
    rank(raw)
    return raw


def is_commuting(a: StabiliserArray) -> bool:
    x, z = a.x.astype(np.int64), a.z.astype(np.int64)
    return not np.any((x @ z.T + z @ x.T) % 2)


def _edit(a: StabiliserArray, fn) -> StabiliserArray:
    tab = Tableau.from_array(a)
    fn(tab)
    return tab.freeze()


def _check_row(a: StabiliserArray, i: int):
    if not 0 <= i < a.n_rows:
        raise IndexError(f"row {i} out of range for {a.n_rows} rows")


def _check_col(a: StabiliserArray, c: int):
    if not 0 <= c < a.n_qubits:
        raise IndexError(f"column {c} out of range for {a.n_qubits} qubits")


def row_transpose(a: StabiliserArray, i: int, j: int) -> StabiliserArray:
    _check_row(a, i)
    _check_row(a, j)
    return _edit(a, lambda t: t.rowswap(i, j))


def row_multiply(a: StabiliserArray, src: int, dst: int) -> StabiliserArray:
    """Replace row ``dst`` by the product ``row[src] . row[dst]``.

    The rows must commute, otherwise the product has an imaginary phase
    and an AssertionError is raised.
    """
    _check_row(a, src)
    _check_row(a, dst)
    if src == dst:
        raise ValueError("cannot multiply a row into itself")
    out = _edit(a, lambda t: t.rowmul(src, dst))
    assert out.phases[dst] % 2 == 0, "row product has imaginary phase: rows anticommute"
    return out


def column_transpose(a: StabiliserArray, p: int, q: int,
                     partition: QubitPartition | None = None) -> StabiliserArray:
    _check_col(a, p)
    _check_col(a, q)
    if partition is not None and not partition.same_party(p, q):
        raise CrossPartySwap(p, q)
    return _edit(a, lambda t: t.colswap(p, q))


def apply_column_op(a: StabiliserArray, col: int, op: SingleQubitOp) -> StabiliserArray:
    _check_col(a, col)
    return _edit(a, lambda t: t.apply_op(col, op))


def apply_cnot_columns(a: StabiliserArray, control: int, target: int) -> StabiliserArray:
    _check_col(a, control)
    _check_col(a, target)
    if control == target:
        raise ValueError("control and target must differ")
    return _edit(a, lambda t: t.cnot(control, target))


def entropy(a: StabiliserArray) -> int:
    """Von Neumann entropy in bits: ``N - rank``."""
    from .reduce import rank
    return a.n_qubits - rank(a)


# stab v1 text format ------------------------------------------------------

_HEADER = re.compile(r"#\s*stab\s+v1\s+N=(\d+)\s+K=(\d+)\s*$")
_ROW = re.compile(r"([+-]) ([IXYZ]+)$")


def format_array(a: StabiliserArray) -> str:
    """Canonical stab v1 text (ends with a newline)."""
    if np.any(a.phases % 2):
        raise ValueError("stab v1 only carries real phases")
    lines = [f"# stab v1  N={a.n_qubits} K={a.n_rows}"]
    lines += [f"{r[0]} {r[1:]}" for r in a.rows]
    return "\n".join(lines) + "\n"


def parse_array(text: str) -> StabiliserArray:
    """Parse stab v1 text.  Case-sensitive; blank and ``#`` lines are skipped."""
    lines = text.splitlines()
    header = None
    body = []
    for lineno, line in enumerate(lines, 1):
        s = line.strip()
        if not s:
            continue
        if header is None:
            m = _HEADER.match(s)
            if not m:
                raise FormatError(f"line {lineno}: expected '# stab v1  N=<n> K=<k>' header")
            header = int(m.group(1)), int(m.group(2))
            continue
        if s.startswith("#"):
            continue
        m = _ROW.match(s)
        if not m:
            raise FormatError(f"line {lineno}: expected '<sign> <letters>', got {s!r}")
        body.append((lineno, m.group(1), m.group(2)))
    if header is None:
        raise FormatError("missing header")
    n, k = header
    if n < 1:
        raise FormatError("N must be at least 1")
    if len(body) != k:
        raise FormatError(f"header says K={k} but found {len(body)} rows")
    for lineno, _, letters in body:
        if len(letters) != n:
            raise FormatError(f"line {lineno}: expected {n} letters, got {len(letters)}")
    if not body:
        return StabiliserArray.empty(n)
    return StabiliserArray.from_strings([sign + letters for _, sign, letters in body], n_qubits=n)

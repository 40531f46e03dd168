"""Dense-matrix reference computations.

Everything here is plain linear algebra on ``2**N x 2**N`` matrices and
shares no code with the tableau algorithms beyond reading the letters
and phases of an array.  Qubit 0 is the leftmost tensor factor (most
significant bit of the basis index).

The qubit cap defaults to 10 and can be overridden with the
``STABKIT_ORACLE_CAP`` environment variable or the ``cap`` argument.
"""

from __future__ import annotations

import itertools
import os
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .array import Gate, StabiliserArray
from .errors import DependentWithMinusPhase, QubitLimitExceeded
from .pauli import OPS_BY_NAME, LETTERS

DEFAULT_CAP = 10
EIGEN_CUTOFF = 1e-12

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
GATE_MATRICES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "P": np.diag([1, 1j]),
    "Pdg": np.diag([1, -1j]),
}
CNOT_MATRIX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
SWAP_MATRIX = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def oracle_cap() -> int:
    return int(os.environ.get("STABKIT_ORACLE_CAP", DEFAULT_CAP))


def _check_cap(n: int, cap: int | None):
    cap = oracle_cap() if cap is None else cap
    if n > cap:
        raise QubitLimitExceeded(n, cap)


def single_qubit_unitary(name: str) -> np.ndarray:
    """2x2 unitary for a single-qubit op name, from its gate word."""
    word = OPS_BY_NAME[name].word
    return reduce(np.matmul, (GATE_MATRICES[g] for g in word), np.eye(2, dtype=complex))


def pauli_matrix(letters: str, phase: complex = 1) -> np.ndarray:
    return phase * reduce(np.kron, (PAULI_MATRICES[ch] for ch in letters), np.eye(1, dtype=complex))


def generator_matrices(a: StabiliserArray) -> list[np.ndarray]:
    codes = a.codes
    return [pauli_matrix("".join(LETTERS[c] for c in codes[k]), 1j ** int(a.phases[k]))
            for k in range(a.n_rows)]


def dense_projector(a: StabiliserArray, cap: int | None = None) -> np.ndarray:
    """Product of ``(1 + g_k) / 2`` over the rows of ``a``."""
    _check_cap(a.n_qubits, cap)
    dim = 2 ** a.n_qubits
    eye = np.eye(dim, dtype=complex)
    proj = eye
    for g in generator_matrices(a):
        proj = proj @ ((eye + g) / 2)
    return proj


def dense_state(a: StabiliserArray, cap: int | None = None) -> np.ndarray:
    """The stabiliser state, the projector scaled to unit trace.

    For independent generators the trace is ``2**(N-K)``; dividing by the
    actual trace keeps redundant rows harmless.
    """
    proj = dense_projector(a, cap)
    tr = np.trace(proj).real
    if tr < 0.5:
        raise DependentWithMinusPhase()
    return proj / tr


def dense_group_sum(a: StabiliserArray, cap: int | None = None) -> np.ndarray:
    """The state as the average of all ``2**K`` generator products."""
    _check_cap(a.n_qubits, cap)
    gens = generator_matrices(a)
    dim = 2 ** a.n_qubits
    total = np.zeros((dim, dim), dtype=complex)
    for bits in itertools.product((0, 1), repeat=len(gens)):
        term = np.eye(dim, dtype=complex)
        for b, g in zip(bits, gens):
            if b:
                term = term @ g
        total += term
    tr = np.trace(total).real
    if tr < 0.5:
        raise DependentWithMinusPhase()
    return total / tr


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((rho + rho.conj().T) / 2)
    # Round-off turns zero eigenvalues into +-1e-17, whose square roots
    # would dominate the error budget; clip them to exactly zero.
    w = np.where(w > EIGEN_CUTOFF * max(w.max(), 1.0), w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def dense_overlap(rho1: np.ndarray, rho2: np.ndarray) -> float:
    return float(np.trace(rho1 @ rho2).real)


def dense_uhlmann(rho1: np.ndarray, rho2: np.ndarray) -> float:
    """``Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))``, evaluated as ``||sqrt(rho1) sqrt(rho2)||_1``."""
    return float(np.linalg.svd(_sqrt_psd(rho1) @ _sqrt_psd(rho2), compute_uv=False).sum())


def dense_ptrace(rho: np.ndarray, qubits: Iterable[int]) -> np.ndarray:
    """Trace out ``qubits`` (0-based)."""
    n = int(round(np.log2(rho.shape[0])))
    traced = sorted(set(qubits))
    t = rho.reshape((2,) * (2 * n))
    for q in reversed(traced):
        m = t.ndim // 2
        t = np.trace(t, axis1=q, axis2=q + m)
    d = 2 ** (n - len(traced))
    return t.reshape(d, d)


def dense_entropy(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits."""
    w = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    w = w[w > 1e-12]
    return float(-(w * np.log2(w)).sum())


def partial_transpose(rho: np.ndarray, qubits: Iterable[int]) -> np.ndarray:
    n = int(round(np.log2(rho.shape[0])))
    t = rho.reshape((2,) * (2 * n))
    axes = list(range(2 * n))
    for q in qubits:
        axes[q], axes[q + n] = axes[q + n], axes[q]
    return t.transpose(axes).reshape(rho.shape)


def dense_logneg(rho: np.ndarray, party_B: Iterable[int]) -> float:
    """``log2 || rho^{T_B} ||_1``."""
    w = np.linalg.eigvalsh(partial_transpose(rho, party_B))
    return float(np.log2(np.abs(w).sum()))


def apply_gate(rho: np.ndarray, u: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    """``U rho U^dagger`` for a ``k``-qubit gate on ``qubits``."""
    n = int(round(np.log2(rho.shape[0])))
    k = len(qubits)
    ut = u.reshape((2,) * (2 * k))
    t = rho.reshape((2,) * (2 * n))
    kets = list(qubits)
    bras = [q + n for q in qubits]
    t = np.tensordot(ut, t, axes=(list(range(k, 2 * k)), kets))
    t = np.moveaxis(t, list(range(k)), kets)
    t = np.tensordot(ut.conj(), t, axes=(list(range(k, 2 * k)), bras))
    t = np.moveaxis(t, list(range(k)), bras)
    return t.reshape(rho.shape)


def gate_unitary(g: Gate) -> np.ndarray:
    if g.name == "CNOT":
        return CNOT_MATRIX
    if g.name == "SWAP":
        return SWAP_MATRIX
    return single_qubit_unitary(g.name)


def apply_circuit(rho: np.ndarray, circuit: Iterable[Gate]) -> np.ndarray:
    """Conjugate ``rho`` by every column op of ``circuit`` in order."""
    for g in circuit:
        if g.is_row_op:
            continue
        rho = apply_gate(rho, gate_unitary(g), g.args)
    return rho


def circuit_unitary(circuit: Iterable[Gate], n: int) -> np.ndarray:
    """Full ``2**n`` unitary of the column ops of ``circuit``."""
    dim = 2 ** n
    u = np.eye(dim, dtype=complex)
    for g in circuit:
        if g.is_row_op:
            continue
        # Apply the gate to the columns of u: U <- G U.
        t = u.reshape((2,) * n + (dim,))
        k = len(g.args)
        gt = gate_unitary(g).reshape((2,) * (2 * k))
        t = np.tensordot(gt, t, axes=(list(range(k, 2 * k)), list(g.args)))
        t = np.moveaxis(t, list(range(k)), list(g.args))
        u = t.reshape(dim, dim)
    return u

"""Seeded random stabiliser arrays for tests, fuzzing and benchmarks."""

from __future__ import annotations

import math

import numpy as np

from .array import QubitPartition, StabiliserArray, Tableau
from .pauli import SINGLE_QUBIT_OPS


def _scramble_columns(tab: Tableau, rng: np.random.Generator, cols, rounds: int):
    cols = np.asarray(cols)
    for _ in range(rounds):
        ops = rng.integers(len(SINGLE_QUBIT_OPS), size=cols.size)
        tab.apply_ops(cols, [SINGLE_QUBIT_OPS[i] for i in ops])
        if cols.size < 2:
            continue
        order = rng.permutation(cols)
        for c, t in zip(order[0::2], order[1::2]):
            tab.cnot(int(c), int(t))


def _scramble_rows(tab: Tableau, rng: np.random.Generator, count: int):
    k = tab.n_rows
    if k < 2:
        return
    for _ in range(count):
        i, j = rng.choice(k, size=2, replace=False)
        if rng.random() < 0.5:
            tab.rowmul(int(i), int(j))
        else:
            tab.rowswap(int(i), int(j))


def random_array(n: int, k: int, seed=None) -> StabiliserArray:
    """A valid ``k``-generator array on ``n`` qubits with rank exactly ``k``.

    Starts from ``k`` single-X rows with random signs and scrambles them
    with random Clifford layers and row operations, all drawn from
    ``numpy.random.default_rng(seed)``.
    """
    if n < 1 or not 0 <= k <= n:
        raise ValueError(f"need n >= 1 and 0 <= k <= n, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    x = np.zeros((k, n), dtype=np.uint8)
    x[np.arange(k), np.arange(k)] = 1
    tab = Tableau(x, np.zeros_like(x), 2 * rng.integers(2, size=k))
    rounds = 2 + 2 * math.ceil(math.log2(n + 1))
    _scramble_columns(tab, rng, np.arange(n), rounds)
    _scramble_rows(tab, rng, 2 * k)
    return tab.freeze()


def random_local_scramble(a: StabiliserArray, partition: QubitPartition, seed=None,
                          rounds: int = 2) -> StabiliserArray:
    """Apply random single-qubit ops and within-party CNOTs."""
    rng = np.random.default_rng(seed)
    tab = Tableau.from_array(a)
    for party in (partition.party_A, partition.party_B):
        _scramble_columns(tab, rng, sorted(party), rounds)
    return tab.freeze()


def with_redundant_rows(a: StabiliserArray, extra: int, seed=None) -> StabiliserArray:
    """Append ``extra`` products of existing rows and shuffle; the state is unchanged."""
    rng = np.random.default_rng(seed)
    k, n = a.n_rows, a.n_qubits
    # Row 0 of the work tableau accumulates each product.
    work = Tableau(np.vstack([np.zeros((1, n)), a.x]), np.vstack([np.zeros((1, n)), a.z]),
                   np.concatenate([[0], a.phases]))
    x, z, ph = [a.x], [a.z], [a.phases]
    for _ in range(extra):
        work.code[0], work.ph[0] = 0, 0
        for r in np.flatnonzero(rng.random(k) < 0.5):
            work.rowmul(int(r) + 1, 0)
        x.append(work.x[:1])
        z.append(work.z[:1])
        ph.append(work.ph[:1].copy())
    order = rng.permutation(k + extra)
    return StabiliserArray(np.vstack(x)[order], np.vstack(z)[order],
                           np.concatenate(ph)[order], n_qubits=n)


def random_partition(n: int, seed=None) -> QubitPartition:
    """Random two-party cut of ``n >= 2`` qubits."""
    rng = np.random.default_rng(seed)
    size = int(rng.integers(1, n))
    return QubitPartition.from_party_A(rng.choice(n, size=size, replace=False).tolist(), n)

import itertools

import numpy as np
import pytest

from stabkit import StabiliserArray, drop_dependent, ptrace, rank, rref
from stabkit.array import Tableau
from stabkit.errors import DependentWithMinusPhase, TracedAllQubits
from stabkit.generate import random_array, with_redundant_rows
from stabkit.oracle import dense_projector, dense_ptrace, dense_state
from stabkit.pauli import commutes, PauliElement
from stabkit.reduce import rref_inplace

from conftest import BELL, arr, random_cases


def is_rref_shape(a: StabiliserArray, r: int) -> bool:
    """Leading columns non-decreasing, at most two rows per leader, pairs anticommute."""
    codes = a.codes
    leads = []
    for k in range(r):
        nz = np.flatnonzero(codes[k])
        if nz.size == 0:
            return False
        leads.append(int(nz[0]))
    if leads != sorted(leads):
        return False
    for col, grp in itertools.groupby(range(r), key=lambda k: leads[k]):
        rows = list(grp)
        if len(rows) > 2:
            return False
        if len(rows) == 2:
            s1, s2 = (PauliElement(int(codes[k, col])) for k in rows)
            if commutes(s1, s2):
                return False
        # Column leaders are the only non-identity entries below them.
        below = codes[rows[-1] + 1:, col]
        if below.any():
            return False
    rest = codes[r:]
    return not rest.any() and np.all(a.phases[r:] == 0)


def subset_products(a: StabiliserArray):
    """Every product of a subset of rows, as (codes, phase) pairs."""
    k = a.n_rows
    for bits in itertools.product((0, 1), repeat=k):
        zero = np.zeros((1, a.n_qubits), dtype=np.uint8)
        stack = Tableau(np.vstack([a.x, zero]), np.vstack([a.z, zero]),
                        np.concatenate([a.phases, [0]]))
        for r, b in enumerate(bits):
            if b:
                stack.rowmul(r, k)
        yield bits, stack.code[k].copy(), int(stack.ph[k])


class TestRref:
    def test_already_reduced(self, bell):
        res = rref(bell)
        assert res.array == bell and res.rank == 2

    def test_single_kind_column(self):
        res = rref(arr("+ZI", "+ZZ"))
        assert res.array.rows == ("+ZI", "+IZ") and res.rank == 2
        assert np.array_equal(dense_state(res.array), dense_state(arr("+ZI", "+ZZ")))

    def test_duplicate_row(self):
        res = rref(arr("+ZZ", "+ZZ"))
        assert res.array.rows == ("+ZZ", "+II") and res.rank == 1
        assert np.trace(dense_projector(res.array)).real == 2.0

    def test_empty(self):
        res = rref(StabiliserArray.empty(2))
        assert res.rank == 0 and res.array.n_rows == 0

    def test_column_leaders(self, ghz3):
        res = rref(ghz3)
        assert [(cl.column, cl.rows) for cl in res.column_leaders] == [(0, (0, 1)), (1, (2,))]

    def test_third_kind_cleanup(self):
        # Column 1 holds X, Z and Y: the Y row needs both leader rows.
        a = arr("+XXI", "+ZZI", "-YYZ")
        res = rref(a)
        assert res.rank == 3
        assert res.array.rows[2] == "+IIZ"
        assert np.array_equal(dense_state(res.array), dense_state(a))

    @pytest.mark.parametrize("i,a", list(random_cases(60, 6, seed=21)))
    def test_shape_and_state(self, i, a):
        res = rref(a)
        assert is_rref_shape(res.array, res.rank)
        assert np.array_equal(dense_state(res.array), dense_state(a))

    @pytest.mark.parametrize("seed", range(15))
    def test_redundant_rows_reduce_to_identity(self, seed):
        a = random_array(5, 3, seed)
        b = with_redundant_rows(a, 3, seed)
        res = rref(b)
        assert res.rank == 3
        assert is_rref_shape(res.array, res.rank)
        assert np.array_equal(dense_state(b), dense_state(a))

    @pytest.mark.parametrize("seed", range(10))
    def test_rows_are_independent(self, seed):
        """No RREF row equals a product of the others (brute force, K <= 6)."""
        a = random_array(6, 1 + seed % 6, seed)
        red = rref(a).array
        seen = {}
        for bits, code, ph in subset_products(red):
            key = code.tobytes()
            assert key not in seen, (bits, seen.get(key))
            seen[key] = bits


class TestRank:
    @pytest.mark.parametrize("rows,n,expect", [
        (("+XX", "+ZZ", "-YY"), 2, 2),
        ((), 3, 0),
        (("+ZII", "+IZI", "+IIZ"), 3, 3),
    ])
    def test_examples(self, rows, n, expect):
        a = arr(*rows, n=n) if rows else StabiliserArray.empty(n)
        assert rank(a) == expect

    def test_minus_identity_product(self):
        with pytest.raises(DependentWithMinusPhase):
            rank(arr("+XX", "+ZZ", "+YY"))

    def test_drop_dependent(self):
        b = drop_dependent(arr("+XX", "+ZZ", "-YY", "+II"))
        assert b.n_rows == 2
        assert np.array_equal(dense_state(b), dense_state(arr(*BELL)))

    @pytest.mark.parametrize("i,a", list(random_cases(50, 7, seed=22)))
    def test_projector_trace(self, i, a):
        assert np.trace(dense_projector(a)).real == 2.0 ** (a.n_qubits - rank(a))


class TestPtrace:
    def test_bell(self, bell):
        out = ptrace(bell, [0])
        assert out.n_qubits == 1 and out.n_rows == 0
        np.testing.assert_allclose(dense_ptrace(dense_state(bell), [0]), np.eye(2) / 2, atol=1e-12)

    def test_product(self, product):
        assert ptrace(product, [0]).rows == ("+Z",)

    def test_ghz(self, ghz3):
        out = ptrace(ghz3, [2])
        assert out.rows == ("+ZZ",)
        want = np.zeros((4, 4))
        want[0, 0] = want[3, 3] = 0.5
        np.testing.assert_allclose(dense_ptrace(dense_state(ghz3), [2]), want, atol=1e-12)

    def test_keeps_qubit_order(self):
        # Tracing the middle qubit: the survivors stay in order 1, 3.
        assert ptrace(arr("+ZIX"), [1]).rows == ("+ZX",)
        assert ptrace(arr("+XIZ", "+ZYX"), [1]).rows == ("+XZ",)

    def test_all_qubits(self, bell):
        with pytest.raises(TracedAllQubits):
            ptrace(bell, [0, 1])

    def test_nothing(self, bell):
        with pytest.raises(ValueError):
            ptrace(bell, [])

    def test_out_of_range(self, bell):
        with pytest.raises(IndexError):
            ptrace(bell, [2])

    @pytest.mark.parametrize("i,a", list(random_cases(60, 6, seed=23, n_min=2)))
    def test_matches_oracle(self, i, a):
        rng = np.random.default_rng(i)
        size = int(rng.integers(1, a.n_qubits))
        traced = sorted(rng.choice(a.n_qubits, size=size, replace=False).tolist())
        got = dense_state(ptrace(a, traced))
        want = dense_ptrace(dense_state(a), traced)
        np.testing.assert_allclose(got, want, atol=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_composes(self, seed):
        a = random_array(6, 4 + seed % 3, seed)
        first = ptrace(a, [1, 4])
        # Qubits 0,2,3,5 remain; tracing original qubit 3 is now index 2.
        assert np.array_equal(dense_state(ptrace(first, [2])), dense_state(ptrace(a, [1, 3, 4])))

    def test_leader_cases(self):
        """Tracing one qubit meets zero, one or two column leaders."""
        cases = {}
        for rows, expect in [(("+IZ",), 0), (("+ZZ",), 1), (BELL, 2)]:
            tab = Tableau.from_array(arr(*rows))
            k_u, leaders = rref_inplace(tab, [0])
            cases[expect] = k_u
        assert cases == {0: 0, 1: 1, 2: 2}

import math
from fractions import Fraction

import numpy as np
import pytest

from stabkit import CompositeArray, DyadicScalar, StabiliserArray, joint_cnf, overlap
from stabkit.cnf import is_cnf
from stabkit.errors import DimensionMismatch
from stabkit.generate import random_array
from stabkit.oracle import apply_circuit, dense_overlap, dense_state, dense_uhlmann

from conftest import arr, random_cases


def random_pairs(count: int, n_max: int, seed: int):
    """Pairs on equal ``n``; about a third share the first array's state."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(1, n_max + 1))
        a1 = random_array(n, int(rng.integers(0, n + 1)), int(rng.integers(2**31)))
        if i % 3 == 0:
            a2 = a1.select_rows(rng.permutation(a1.n_rows))
        else:
            a2 = random_array(n, int(rng.integers(0, n + 1)), int(rng.integers(2**31)))
        yield i, a1, a2


class TestDyadicScalar:
    def test_power_and_str(self):
        assert str(DyadicScalar.power(-1)) == "2^-1"
        assert str(DyadicScalar.power(Fraction(-1, 2))) == "2^-1/2"
        assert str(DyadicScalar.power(0)) == "1"
        assert str(DyadicScalar.zero_value()) == "0"

    def test_float(self):
        assert float(DyadicScalar.power(Fraction(-3, 2))) == pytest.approx(2 ** -1.5, rel=1e-15)
        assert float(DyadicScalar.zero_value()) == 0.0

    def test_fraction(self):
        assert DyadicScalar.power(-2).as_fraction() == Fraction(1, 4)
        with pytest.raises(ValueError):
            DyadicScalar.power(Fraction(1, 2)).as_fraction()

    def test_zero_equality_ignores_exponent(self):
        assert DyadicScalar(True, 5) == DyadicScalar.zero_value()
        assert hash(DyadicScalar(True, 5)) == hash(DyadicScalar.zero_value())

    def test_quarter_powers_rejected(self):
        with pytest.raises(ValueError):
            DyadicScalar.power(Fraction(1, 4))


class TestExamples:
    @pytest.mark.parametrize("rows1,rows2,f,fu,d", [
        (("+XX", "+ZZ"), ("+XX", "+ZZ"), 1.0, 1.0, 0.0),
        (("+Z",), ("-Z",), 0.0, 0.0, 2.0),
        (("+Z",), ("+X",), 0.5, 2 ** -0.5, 2 * math.sqrt(1 - 2 ** -0.5)),
        ((), ("+Z",), 0.5, 2 ** -0.5, 2 * math.sqrt(1 - 2 ** -0.5)),
    ])
    def test_values(self, rows1, rows2, f, fu, d):
        a1 = arr(*rows1) if rows1 else StabiliserArray.empty(1)
        res = overlap(a1, arr(*rows2))
        assert float(res.F) == pytest.approx(f, abs=1e-15)
        assert float(res.F_u) == pytest.approx(fu, abs=1e-15)
        assert res.D_bures == pytest.approx(d, abs=1e-12)

    def test_exact_forms(self):
        res = overlap(arr("+Z"), arr("+X"))
        assert res.F == DyadicScalar.power(-1)
        assert res.F_u == DyadicScalar.power(Fraction(-1, 2))

    def test_mixed_state_self(self):
        a = arr("+ZI")
        res = overlap(a, a)
        assert res.F == DyadicScalar.power(-1)
        assert res.F_u == DyadicScalar.power(0)

    def test_dimension_mismatch(self, bell):
        with pytest.raises(DimensionMismatch):
            overlap(bell, arr("+XXX"))


class TestJointCnf:
    def test_top_in_cnf_and_bottom_follows(self, bell):
        c = joint_cnf(CompositeArray(bell, arr("+ZI", "+IZ")))
        assert is_cnf(c.top, 2)
        want = apply_circuit(dense_state(arr("+ZI", "+IZ")), c.circuit)
        np.testing.assert_allclose(dense_state(c.bottom), want, atol=1e-12)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatch):
            CompositeArray(arr("+X"), arr("+XX"))


class TestAgainstOracle:
    @pytest.mark.parametrize("i,a1,a2", list(random_pairs(80, 6, seed=41)))
    def test_values(self, i, a1, a2):
        res = overlap(a1, a2)
        r1, r2 = dense_state(a1), dense_state(a2)
        assert float(res.F) == pytest.approx(dense_overlap(r1, r2), abs=1e-10)
        assert float(res.F_u) == pytest.approx(dense_uhlmann(r1, r2), abs=1e-9)

    @pytest.mark.parametrize("i,a1,a2", list(random_pairs(40, 6, seed=42)))
    def test_symmetric(self, i, a1, a2):
        assert overlap(a1, a2) == overlap(a2, a1)

    @pytest.mark.parametrize("i,a1,a2", list(random_pairs(60, 5, seed=43)))
    def test_unit_fidelity_iff_same_state(self, i, a1, a2):
        same = np.allclose(dense_state(a1), dense_state(a2), atol=1e-12)
        res = overlap(a1, a2)
        assert (res.F_u == DyadicScalar.power(0)) == same
        if a1.n_rows == a1.n_qubits:
            assert (res.F == DyadicScalar.power(0)) == same

    @pytest.mark.parametrize("i,a", list(random_cases(20, 6, seed=44)))
    def test_purity(self, i, a):
        # Tr rho^2 = 2^(K - N) for a rank-K state.
        assert overlap(a, a).F == DyadicScalar.power(a.n_rows - a.n_qubits)

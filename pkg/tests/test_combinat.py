import itertools
from unittest import TestCase
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

import nilzeta.combinat as cb
from nilzeta.exactalg import LaurentPoly, P
from nilzeta.oracle import types_of_weight

class TestGaussBinom(TestCase):

    def test_small_values(self):
        self.assertEqual(cb.gauss_binom(4, 2), 1 + P + 2 * P ** 2 + P ** 3 +
                         P ** 4)
        self.assertEqual(cb.gauss_binom(4, 2).value_at(2), 35)
        self.assertEqual(cb.gauss_binom(6, 3).value_at(3), 33880)

    def test_out_of_range(self):
        self.assertTrue(cb.gauss_binom(3, 4).is_zero())
        self.assertTrue(cb.gauss_binom(3, -1).is_zero())
        self.assertRaises(ValueError, cb.gauss_binom, -1, 0)
        self.assertRaises(TypeError, cb.gauss_binom, 2.0, 1)

    @settings(deadline=None)
    @given(st.integers(0, 9), st.integers(0, 9))
    def test_duality(self, n, k):
        self.assertEqual(cb.gauss_binom(n, k), cb.gauss_binom(n, n - k))

    @settings(deadline=None)
    @given(st.integers(0, 8), st.integers(0, 8))
    def test_palindromic(self, n, k):
        b = cb.gauss_binom(n, k)
        if not b.is_zero():
            self.assertEqual(b.substitute_inverse().shift(k * (n - k)), b)

class TestFlags(TestCase):

    def test_flag_count(self):
        ft = cb.FlagType(2, (1, 2))
        self.assertEqual(cb.flag_count(ft).value_at(2), 21)
        self.assertEqual(cb.flag_dim(ft), 3)
        self.assertEqual(cb.flag_count(cb.FlagType(5)), LaurentPoly.one())

    def test_flag_poly_sorts(self):
        self.assertEqual(cb.flag_poly((3, 1), 5), cb.flag_poly((1, 3), 5))

    def test_flag_count_duality(self):
        for m in range(6):
            for size in range(m + 1):
                for I in itertools.combinations(range(1, m + 1), size):
                    ft = cb.FlagType(m, I)
                    b = cb.flag_count(ft)
                    self.assertEqual(b.substitute_inverse(),
                                     b.shift(-cb.flag_dim(ft)), I)

    def test_bad_flag_types(self):
        self.assertRaises(ValueError, cb.FlagType, 2, (3,))
        self.assertRaises(ValueError, cb.FlagType, 2, (2, 1))
        self.assertRaises(ValueError, cb.FlagType, 2, (0,))
        self.assertRaises(TypeError, cb.flag_count, (2, (1,)))

class TestMu(TestCase):

    def test_mu(self):
        self.assertEqual(cb.mu(3, 1), P ** 2 - P)
        self.assertEqual(cb.mu(2, 2), 1)
        self.assertTrue(cb.mu(1, 2).is_zero())
        self.assertRaises(ValueError, cb.mu, 0, 1)

    def test_mu_sums_to_residue_count(self):
        # the classes v = 1..a partition pZ/p^a, which has p^(a-1) elements
        for a in range(1, 6):
            total = sum((cb.mu(a, b) for b in range(1, a + 1)),
                        LaurentPoly.zero())
            self.assertEqual(total, P ** (a - 1))

    def test_mu_min(self):
        a, c = 3, 2
        for k in range(1, 5):
            direct = LaurentPoly.zero()
            for bs in itertools.product(range(1, a + 1), repeat=c):
                if min(bs) == k:
                    direct = direct + cb.mu(a, bs[0]) * cb.mu(a, bs[1])
            self.assertEqual(cb.mu_min(a, k, c), direct)

class TestLatticeCounts(TestCase):

    def test_sublattice_count(self):
        self.assertEqual(cb.sublattice_count(2, 1), 1 + P)
        self.assertEqual(cb.sublattice_count(3, 2).value_at(2), 35)
        self.assertEqual(cb.sublattice_count(1, 7), 1)

    def test_types_add_up_to_all_sublattices(self):
        for k in range(0, 5):
            total = LaurentPoly.zero()
            for e in range(k // 6 + 1):
                for I, r in types_of_weight(k - 6 * e):
                    total = total + cb.lattice_type_count(I, r)
            self.assertEqual(total, cb.sublattice_count(6, k))

    def test_lattice_type_count(self):
        self.assertEqual(cb.lattice_type_count((1,), (2,)),
                         cb.gauss_binom(6, 1).shift(5))
        self.assertEqual(cb.lattice_type_count((), ()), 1)
        self.assertRaises(ValueError, cb.lattice_type_count, (1, 2), (1,))
        self.assertRaises(ValueError, cb.lattice_type_count, (1,), (0,))

if __name__ == '__main__':
    unittest.main()

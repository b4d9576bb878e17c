import itertools
from unittest import TestCase
import unittest

import numpy as np
import sympy

import nilzeta.geometry as geo
from nilzeta.combinat import FlagType, flag_count
from nilzeta.utils.misc import EnumerationBudgetError
from nilzeta.zetacore import fano_poly

class TestPfaffian(TestCase):

    def test_pfaffian(self):
        self.assertEqual(geo.pfaffian((1, 0, 0, 0, 0, 1)), 1)
        self.assertEqual(geo.pfaffian((0, 1, 0, 0, 1, 0)), -1)
        Y = np.array([[1, 0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]])
        np.testing.assert_array_equal(geo.pfaffian(Y), [1, 1])
        self.assertRaises(ValueError, geo.pfaffian, (1, 2, 3))

    def test_relation_matrix(self):
        R = geo.RelationMatrix()
        M, ys = R.symbolic()
        self.assertEqual(sympy.expand(M.det() - R.pfaffian(ys) ** 2), 0)
        self.assertEqual(M.T, -M)
        self.assertEqual(R.evaluate([1, 2, 3, 4, 5, 6], modulus=3)[1][0], 2)

class TestLinearAlgebra(TestCase):

    def test_rref(self):
        basis, pivots = geo.rref_mod([[2, 4, 1], [1, 2, 0]], 3)
        self.assertEqual(basis, ((1, 2, 0), (0, 0, 1)))
        self.assertEqual(pivots, (0, 2))
        self.assertEqual(geo.rank_mod([[1, 1], [1, 1]], 2), 1)
        self.assertEqual(geo.rank_mod([], 2), 0)

    def test_iter_rref_counts(self):
        self.assertEqual(len(list(geo.iter_rref(2, 4, 2))), 35)
        self.assertEqual(len(list(geo.iter_rref(1, 3, 3))), 13)

    def test_subspace(self):
        S = geo.ProjSubspace.span([[1, 0, 0], [1, 1, 0]], 2)
        self.assertEqual(S.dim, 1)
        self.assertEqual(len(S.points()), 3)
        T = geo.ProjSubspace.span([[0, 1, 0], [0, 0, 1]], 2)
        self.assertEqual(S.intersection_dim(T), 1)
        self.assertRaises(ValueError, geo.ProjSubspace.span, [[0, 0, 0]], 2)

class TestQuadric(TestCase):

    def test_counts_at_two(self):
        counts = [len(geo.enumerate_quadric(2, dim)) for dim in (0, 1, 2)]
        self.assertEqual(counts, [35, 105, 30])

    def test_counts_match_fano_polynomials(self):
        for q in (2, 3):
            self.assertEqual(len(geo.enumerate_quadric(q, 0)),
                             fano_poly(1).value_at(q))
            self.assertEqual(len(geo.enumerate_quadric(q, 1)),
                             fano_poly(2).value_at(q))
        self.assertEqual(fano_poly(1).value_at(3), 130)
        self.assertEqual(fano_poly(2).value_at(3), 520)
        self.assertEqual(len(geo.enumerate_quadric(3, 2)), 80)

    def test_rulings(self):
        ruling_a, ruling_b = geo.classify_rulings(geo.enumerate_quadric(2, 2))
        self.assertEqual((len(ruling_a), len(ruling_b)), (15, 15))
        anchor_a, anchor_b = geo.anchor_planes(2)
        self.assertIn(anchor_a, ruling_a)
        self.assertIn(anchor_b, ruling_b)
        self.assertEqual({geo.stacked_rank(P.basis, 2) for P in ruling_a},
                         {4})
        self.assertEqual({geo.stacked_rank(P.basis, 2) for P in ruling_b},
                         {3})

    def test_rulings_need_planes(self):
        self.assertRaises(ValueError, geo.classify_rulings, [])

    def test_lines_lie_on_quadric(self):
        for q in (2, 3):
            lines = geo.enumerate_quadric(q, 1)
            for line in lines:
                u, v = (np.array(row, dtype=np.int64) for row in line.basis)
                for a, b in itertools.product(range(q), repeat=2):
                    self.assertEqual(geo.pfaffian((a * u + b * v) % q) % q, 0)

    def test_point_ranks(self):
        on, off = 0, 0
        for (v,) in geo.iter_rref(1, 6, 2):
            rank = geo.stacked_rank([v], 2)
            if geo.pfaffian(v) % 2 == 0:
                self.assertEqual(rank, 2, v)
                on += 1
            else:
                self.assertEqual(rank, 4, v)
                off += 1
        self.assertEqual((on, off), (35, 28))

    def test_budget(self):
        self.assertRaises(EnumerationBudgetError, geo.enumerate_quadric, 3,
                          2, 100)
        self.assertRaises(ValueError, geo.enumerate_quadric, 2, 3)

class TestFlags(TestCase):

    def test_flag_counts(self):
        for q in (2, 3):
            for m in range(4):
                for size in range(m + 1):
                    for I in itertools.combinations(range(1, m + 1), size):
                        ft = FlagType(m, I)
                        self.assertEqual(geo.count_flags_brute(q, ft),
                                         flag_count(ft).value_at(q), ft)

    def test_bad_inputs(self):
        self.assertRaises(TypeError, geo.count_flags_brute, 2, (2, (1,)))
        self.assertRaises(ValueError, geo.count_flags_brute, 4,
                          FlagType(2, (1,)))

if __name__ == '__main__':
    unittest.main()

import itertools
import math
from unittest import TestCase
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import nilzeta.intlinalg as il
from nilzeta.combinat import sublattice_count
from nilzeta.utils.misc import EnumerationBudgetError

def valuation(x, q, cap):
    if x == 0:
        return cap
    v = 0
    while x % q == 0 and v < cap:
        x //= q
        v += 1
    return v

class TestNormalForms(TestCase):

    def test_hnf(self):
        L = il.hnf([[2, 1], [0, 3]])
        self.assertEqual(L.basis.to_list(), [[2, 1], [0, 3]])
        self.assertEqual(L.index, 6)
        self.assertTrue(L.contains((3, 3)))
        self.assertFalse(L.contains((1, 0)))

    def test_hnf_is_canonical(self):
        L1 = il.hnf([[2, 1], [0, 3]])
        L2 = il.hnf([[3, 1], [3, 3]])
        L3 = il.hnf(np.array([[1, 2, 0], [3, 0, 6]]))
        self.assertEqual(L1, L2)
        self.assertEqual(L1, L3)

    def test_hnf_rank_deficient(self):
        self.assertRaises(ValueError, il.hnf, [[1, 2], [2, 4]])

    def test_sublattice_hnf_checks(self):
        self.assertRaises(ValueError, il.SublatticeHNF,
                          il.IntMatrix.from_rows([[2, 2], [0, 3]]))
        self.assertRaises(ValueError, il.SublatticeHNF,
                          il.IntMatrix.from_rows([[2, 0], [1, 3]]))

    def test_adjugate(self):
        L = il.hnf([[4, 1, 3], [0, 2, 1], [0, 0, 5]])
        adj = np.array(L.adjugate.to_list())
        H = np.array(L.basis.to_list())
        np.testing.assert_array_equal(np.dot(H, adj), L.index * np.eye(3))

    def test_snf(self):
        S = il.snf([[2, 4], [6, 8]])
        self.assertEqual(S.diagonal(), (2, 4))
        S = il.snf([[1, 2], [2, 4]])
        self.assertEqual(S.diagonal(), (1, 0))

    def test_exact_inverse(self):
        inv = il.exact_inverse([[1, 1], [0, 1]])
        self.assertEqual(inv.to_list(), [[1, -1], [0, 1]])
        self.assertRaises(ValueError, il.exact_inverse, [[2, 0], [0, 1]])

    def test_int_matrix(self):
        M = il.IntMatrix.from_columns([(1, 2), (3, 4)])
        self.assertEqual(M.to_list(), [[1, 3], [2, 4]])
        self.assertEqual(M.transpose().to_list(), [[1, 2], [3, 4]])
        self.assertRaises(ValueError, il.IntMatrix, ((1, 2), (3,)))

class TestEnumeration(TestCase):

    def test_diagonal_partitions(self):
        self.assertEqual(il.diagonal_partitions(2, 2), [(0, 2), (1, 1), (2, 0)])
        self.assertEqual(len(il.diagonal_partitions(6, 3)), 56)

    def test_enumerate_matches_count(self):
        checked = 0
        for d, q, k in itertools.product(range(1, 7), (2, 3), range(5)):
            try:
                stream = il.enumerate_sublattices(d, q, k, budget=20000)
            except EnumerationBudgetError:
                continue
            lattices = list(stream)
            self.assertEqual(len(lattices), sublattice_count(d, k).value_at(q))
            self.assertEqual(len(set(lattices)), len(lattices))
            self.assertTrue(all(L.index == q ** k for L in lattices))
            checked += 1
        self.assertGreater(checked, 30)

    def test_partitions_split_the_stream(self):
        parts = il.diagonal_partitions(3, 2)
        total = sum(len(list(il.enumerate_sublattices(3, 2, 2,
                                                      partitions=[e])))
                    for e in parts)
        self.assertEqual(total, 35)

    def test_budget(self):
        self.assertRaises(EnumerationBudgetError, il.enumerate_sublattices,
                          3, 2, 2, 10)
        try:
            il.enumerate_sublattices(3, 2, 2, budget=10)
        except EnumerationBudgetError as err:
            self.assertEqual(err.bound, 10)
            self.assertEqual(err.required, 35)

class TestLocalDivisors(TestCase):

    def test_local_elementary_divisors(self):
        self.assertEqual(il.local_elementary_divisors([[2, 4], [6, 8]], 2, 5),
                         [1, 2])
        self.assertEqual(il.local_elementary_divisors([[3, 0], [0, 0]], 3, 4),
                         [1, 4])
        self.assertEqual(il.local_elementary_divisors([[5]], 2, 0), [0])

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-40, 40), min_size=3, max_size=3),
                    min_size=3, max_size=3),
           st.sampled_from([2, 3, 5]))
    def test_agrees_with_snf(self, rows, q):
        cap = 6
        expected = sorted(valuation(x, q, cap) for x in
                          il.snf(rows).diagonal())
        self.assertEqual(il.local_elementary_divisors(rows, q, cap), expected)

    def test_divisor_type(self):
        L = il.hnf(np.diag([1, 1, 1, 1, 1, 4]))
        lt, scalar = il.divisor_type(L, 2)
        self.assertEqual((lt.I, lt.r, scalar), ((1,), (2,), 0))
        lt, scalar = il.divisor_type(il.hnf(2 * np.eye(6, dtype=int)), 2)
        self.assertEqual((lt.I, lt.r, scalar), ((), (), 1))
        L = il.hnf(np.diag([1, 1, 1, 1, 2, 4]))
        lt, scalar = il.divisor_type(L, 2)
        self.assertEqual((lt.I, lt.r, lt.weight()), ((1, 2), (1, 1), 3))
        self.assertRaises(ValueError, il.divisor_type, L, 3)
        self.assertRaises(ValueError, il.divisor_type,
                          il.hnf(np.diag([1, 1, 1, 1, 2, 6])), 2)

    def test_lattice_type(self):
        self.assertRaises(ValueError, il.LatticeType, (1, 2), (1,))
        self.assertRaises(ValueError, il.LatticeType, (2, 1), (1, 1))
        self.assertRaises(ValueError, il.LatticeType, (1,), (0,))

    def test_kernel_index(self):
        # F_{2,2}: [g, x_1] = -g_2 y and [g, x_2] = g_1 y
        A = [[0, -1], [1, 0]]
        for q in (2, 3):
            L = il.hnf([[q]])
            self.assertEqual(il.kernel_index(A, L, 2, q), 2)
        self.assertEqual(il.kernel_index(A, il.hnf([[1]]), 2), 0)
        self.assertEqual(il.kernel_index(A, il.hnf([[9]]), 2), 4)
        self.assertEqual(il.kernel_index(A, il.hnf([[7 ** 3]]), 2), 6)
        self.assertRaises(ValueError, il.kernel_index, A, il.hnf([[12]]), 2)
        self.assertRaises(ValueError, il.kernel_index, A, il.hnf([[6]]), 2)
        self.assertRaises(ValueError, il.kernel_index, A, il.hnf([[2]]), 3)

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from([2, 3]),
           st.sampled_from([(1,), (2,), (0, 1), (1, 1), (0, 2), (2, 0)]),
           st.integers(0, 2), st.integers(1, 2), st.integers(1, 2),
           st.data())
    def test_kernel_index_by_enumeration(self, q, exps, shift, blocks, d_src,
                                         data):
        d = len(exps)
        rows = [[q ** e if i == j else 0 for j, e in enumerate(exps)]
                for i in range(d)]
        if d == 2:
            rows[0][1] = shift % rows[0][0]
        L = il.hnf(rows)
        A = data.draw(st.lists(st.lists(st.integers(-6, 6), min_size=d_src,
                                        max_size=d_src),
                               min_size=blocks * d, max_size=blocks * d))
        m = sum(exps)
        # q^m Z^d lies in L, so the kernel is read off modulo q^m
        inside = 0
        for g in itertools.product(range(q ** m), repeat=d_src):
            image = [sum(a * x for a, x in zip(row, g)) for row in A]
            if all(L.contains(image[b * d:(b + 1) * d])
                   for b in range(blocks)):
                inside += 1
        total = q ** (m * d_src)
        self.assertEqual(total % inside, 0)
        expected = round(math.log(total // inside, q))
        self.assertEqual(q ** expected, total // inside)
        self.assertEqual(il.kernel_index(A, L, d_src, q), expected)

if __name__ == '__main__':
    unittest.main()

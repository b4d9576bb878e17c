from fractions import Fraction
from unittest import TestCase
import unittest

import nilzeta.zetacore as zc
from nilzeta.exactalg import LaurentPoly, P, RatFun, rf_series
from nilzeta.utils.misc import UnknownCaseError

class TestNumericalData(TestCase):

    def test_data(self):
        self.assertTrue(zc.check_numerical_data())
        self.assertEqual(zc.X(1), zc.NumericalDatum(9, 5))
        self.assertEqual(zc.X(5), zc.NumericalDatum(25, 9))
        self.assertEqual(zc.X(2, 'F23'), zc.NumericalDatum(8, 5))
        self.assertEqual(zc.Y(3), zc.NumericalDatum(15, 6))

    def test_fano(self):
        self.assertEqual(zc.fano_poly(1).value_at(2), 35)
        self.assertEqual(zc.fano_poly(3).value_at(2), 15)
        self.assertTrue(zc.fano_poly(4).is_zero())
        self.assertEqual(zc.fano_data(2).n_i, 8)
        self.assertRaises(ValueError, zc.fano_data, 4)
        self.assertRaises(ValueError, zc.fano_poly, 6)

    def test_groups(self):
        self.assertEqual(zc.group_spec('F24').hirsch_length, 10)
        self.assertRaises(UnknownCaseError, zc.group_spec, 'F25')
        self.assertRaises(ValueError, zc.GroupSpec, 'F25', 5, 10)
        self.assertRaises(ValueError, zc.X, 6)

class TestFactors(TestCase):

    def test_igusa_one(self):
        U = zc.NumericalDatum(2, 1)
        expected = RatFun(1 + LaurentPoly.monomial(1, 1), [(2, 1)])
        self.assertEqual(zc.igusa(1, [U]), expected)
        self.assertEqual(zc.igusa(0, []), RatFun(1))
        self.assertRaises(ValueError, zc.igusa, 2, [U])

    def test_igusa_accepts_monomials(self):
        U = zc.NumericalDatum(2, 1)
        self.assertEqual(zc.igusa(1, [(2, 1)]), zc.igusa(1, [U]))
        self.assertEqual(zc.igusa(1, [U.ratfun()]), zc.igusa(1, [U]))
        self.assertRaises(ValueError, zc.igusa, 1, [RatFun(1 + P)])

    def test_inversions(self):
        for k in range(4):
            I = zc.igusa(k, [zc.X(j) for j in range(1, k + 1)])
            self.assertEqual(zc.monomial_symmetry(I),
                             ((-1) ** k, k * (k + 1) // 2, 0))
        self.assertEqual(zc.monomial_symmetry(zc.exceptional(1)), (-1, 9, 0))
        self.assertEqual(zc.monomial_symmetry(zc.w_factor(0)), (-1, 15, 0))
        self.assertEqual(zc.monomial_symmetry(zc.w_factor(2)), (-1, 20, 0))

    def test_factors_multiply_to_zeta(self):
        for name in zc.GROUPS:
            f = zc.zeta_factors(name)
            self.assertEqual(f['zeta_Zd'] * f['scalar'] * f['centre'],
                             zc.zeta_local(name))

    def test_f23_centre_variables(self):
        # U_1 = p^8 T^5, U_2 = p^5 T^3
        centre = zc.zeta_factors('F23')['centre']
        self.assertEqual(centre, zc.igusa(2, [(8, 5), (5, 3)]))
        self.assertEqual([(f.a, f.b) for f in centre.den], [(5, 3), (8, 5)])

    def test_w_factor_range(self):
        self.assertRaises(ValueError, zc.w_factor, 4)

class TestZeta(TestCase):

    def test_closed_forms(self):
        self.assertEqual(zc.zeta_local('F22'), zc.closed_form('F22'))
        self.assertEqual(zc.zeta_local('F23'), zc.closed_form('F23'))
        self.assertRaises(ValueError, zc.closed_form, 'F24')

    def test_functional_equations(self):
        expected = {'F22': (-1, 3, 5), 'F23': (1, 15, 9), 'F24': (1, 45, 14)}
        for name, fe in expected.items():
            found = zc.check_functional_equation(name)
            self.assertTrue(found.verified)
            self.assertEqual(found.as_tuple(), fe)
            self.assertEqual(zc.conjectured_functional_equation(name), fe)

    def test_series(self):
        sc = zc.series_coeffs('F22', 3)
        self.assertEqual(sc.values(2), [1, 3, 7, 19])
        sc = zc.series_coeffs('F24', 2)
        self.assertEqual(sc.coeffs[1], 1 + P + P ** 2 + P ** 3)
        self.assertRaises(ValueError, zc.series_coeffs, 'F22', 25)
        self.assertEqual(zc.series_coeffs('F23', 3).values(3)[0], 1)

    def test_abscissa(self):
        for name, value in (('F22', 2), ('F23', 3), ('F24', 4)):
            self.assertEqual(zc.abscissa_estimate(name, 12), value)
            self.assertEqual(zc.abscissa_from_poles(name), value)
        self.assertIsInstance(zc.abscissa_estimate('F22', 4), Fraction)

class TestLatticeCases(TestCase):

    def test_parse(self):
        case = zc.LatticeCase.parse('{1*, 2*, 4}')
        self.assertEqual((case.plain, case.starred), ((4,), (1, 2)))
        self.assertEqual(str(case), '{1*,2*,4}')
        self.assertEqual(case.top_star, 2)
        self.assertEqual(zc.LatticeCase.parse(''), zc.LatticeCase())

    def test_bad_cases(self):
        self.assertRaises(UnknownCaseError, zc.LatticeCase, (1,), (2,))
        self.assertRaises(UnknownCaseError, zc.LatticeCase, (), (4,))
        self.assertRaises(UnknownCaseError, zc.LatticeCase.parse, 'x')
        self.assertRaises(UnknownCaseError, zc.LatticeCase.coerce, 3)

    def test_family(self):
        family = zc.decomposition_family()
        self.assertEqual(len(family), 80)
        self.assertEqual(len(set(family)), 80)

    def test_coefficients(self):
        self.assertEqual(zc.coeff_c('1'), P ** 5 - P ** 2)
        self.assertEqual(zc.coeff_c('1*'), zc.fano_poly(1))
        self.assertEqual(zc.coeff_c(''), 1)
        self.assertEqual(zc.coeff_c('4'), zc.coeff_c_printed('4'))

    def test_truncated_plain(self):
        self.assertEqual(zc.truncated_A('', 3), [1, 0, 0, 0])
        expected = [LaurentPoly.zero()] * 11
        expected[5], expected[10] = P ** 4, P ** 13
        self.assertEqual(zc.truncated_A('1', 10), expected)

    def test_truncated_matches_generic_factor(self):
        # A_I for plain I is p^(-dim F_I) prod X_i/(1 - X_i)
        N = 16
        for I in ((2,), (1, 3), (4, 5)):
            f = RatFun(1)
            for i in I:
                f = f * zc.X(i).geometric()
            dim = zc.flag_dim(zc.FlagType(5, I))
            expected = [c.shift(-dim) for c in rf_series(f, N)]
            self.assertEqual(zc.truncated_A(zc.LatticeCase(I), N), expected)

    def test_truncated_raises_small_bound(self):
        self.assertEqual(zc.truncated_A('2*', 12, R=1),
                         zc.truncated_A('2*', 12))

class TestLemmas(TestCase):

    def test_min_table(self):
        self.assertEqual(zc.min_table(2, 1), {1: P - 1, 2: LaurentPoly.one()})

    def test_elementary_lemmas(self):
        self.assertTrue(zc.check_shifting(3, 1, 2).passed)
        self.assertTrue(zc.check_binomial(4, 2).passed)
        self.assertTrue(zc.check_translation(6, 2, 3).passed)

    def test_crucial_and_exceptional(self):
        for i in (1, 2, 3):
            self.assertTrue(zc.check_crucial(i, 20).passed)
            self.assertTrue(zc.check_exceptional(i, 20).passed)

    def test_extractions(self):
        self.assertTrue(zc.check_upper_extraction(1, (), (2,), 12).passed)
        self.assertTrue(zc.check_upper_extraction(2, (1,), (4,), 12).passed)
        self.assertTrue(zc.check_lower_extraction(2, (1,), 12).passed)
        self.assertTrue(zc.check_lower_extraction(3, (1, 2), 14).passed)

    def test_decomposition(self):
        self.assertTrue(zc.check_decomposition(8).passed)

    def test_inversions(self):
        checks = zc.check_inversions()
        self.assertTrue(all(c.passed for c in checks),
                        [c for c in checks if not c.passed])

    def test_printed_coefficients_are_informational(self):
        check = zc.check_printed_coefficients()
        self.assertTrue(check.informational)
        self.assertEqual(check.params['cases'], 80)

    def test_suite(self):
        self.assertEqual(len(zc.lemma_tasks()), 109)
        report = zc.lemma_suite(order=10, extraction_order=8,
                                decomposition_order=6)
        self.assertTrue(report.passed, report.failures())
        doc = report.to_json()
        self.assertEqual(len(doc['checks']), len(report.checks))

if __name__ == '__main__':
    unittest.main()

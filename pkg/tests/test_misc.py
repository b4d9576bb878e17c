import json
from unittest import TestCase
import unittest

import numpy as np

import nilzeta.utils.misc as ut

class TestUtils(TestCase):

    def test_budget_error(self):
        ut.check_budget(10, 10)
        ut.check_budget(10 ** 9, None)
        with self.assertRaises(ut.EnumerationBudgetError) as ctx:
            ut.check_budget(11, 10, 'planes')
        err = ctx.exception
        self.assertEqual((err.bound, err.required, err.what), (10, 11,
                                                               'planes'))
        self.assertIsInstance(err, ut.NilzetaError)

    def test_unknown_case_is_a_value_error(self):
        self.assertTrue(issubclass(ut.UnknownCaseError, ValueError))
        self.assertFalse(issubclass(ut.IntegrityError, ValueError))

    def test_process_int(self):
        self.assertEqual(ut.process_int(np.int64(3), 'n'), 3)
        self.assertIsInstance(ut.process_int(np.int64(3), 'n'), int)
        self.assertRaises(TypeError, ut.process_int, 2.0, 'n')
        self.assertRaises(TypeError, ut.process_int, True, 'n')
        self.assertRaises(ValueError, ut.process_int, -1, 'n', minimum=0)

    def test_process_prime(self):
        for q in (2, 3, 5, 7):
            self.assertEqual(ut.process_prime(q), q)
        self.assertRaises(ValueError, ut.process_prime, 1)
        self.assertRaises(ValueError, ut.process_prime, 9)
        self.assertEqual(ut.process_prime(2 ** 61 - 1), 2 ** 61 - 1)
        self.assertRaises(ValueError, ut.process_prime, 7919 * 7927)
        self.assertRaises(TypeError, ut.process_prime, 3.0)

    def test_process_index_set(self):
        self.assertEqual(ut.process_index_set([1, 3], 5), (1, 3))
        self.assertEqual(ut.process_index_set([], 0), ())
        self.assertRaises(ValueError, ut.process_index_set, [3, 1], 5)
        self.assertRaises(ValueError, ut.process_index_set, [0, 1], 5)
        self.assertRaises(ValueError, ut.process_index_set, [6], 5)

    def test_canonical_json(self):
        a = ut.canonical_json({'b': [1, 2], 'a': {'y': 1, 'x': 2}})
        b = ut.canonical_json({'a': {'x': 2, 'y': 1}, 'b': [1, 2]})
        self.assertEqual(a, b)
        self.assertEqual(a, '{"a":{"x":2,"y":1},"b":[1,2]}')
        self.assertEqual(json.loads(a)['b'], [1, 2])

if __name__ == '__main__':
    unittest.main()

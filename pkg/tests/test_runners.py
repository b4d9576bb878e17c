from unittest import TestCase
import unittest

import nilzeta.utils.runners as runners

def square(x):
    return x * x

class TestPartitionRunner(TestCase):

    def test_sequential(self):
        pr = runners.PartitionRunner()
        self.assertEqual(pr.run(square, range(5)), [0, 1, 4, 9, 16])
        self.assertEqual(pr.run(square, []), [])

    def test_parallel_keeps_order(self):
        pr = runners.PartitionRunner(2)
        self.assertEqual(pr.run(square, range(8)),
                         [x * x for x in range(8)])

    def test_fold(self):
        pr = runners.PartitionRunner(2)
        total = pr.fold(square, range(4), lambda a, b: a + b, 0)
        self.assertEqual(total, 14)
        joined = runners.PartitionRunner().fold(str, range(3),
                                                lambda a, b: a + b, '')
        self.assertEqual(joined, '012')

    def test_bad_inputs(self):
        self.assertRaises(ValueError, runners.PartitionRunner, 0)
        self.assertRaises(TypeError, runners.PartitionRunner, 1.5)
        self.assertRaises(TypeError, runners.PartitionRunner().run, 3, [1])

if __name__ == '__main__':
    unittest.main()

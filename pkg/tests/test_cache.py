import os
import tempfile
from unittest import TestCase
import unittest

from nilzeta.utils.cache import ResultCache, cache_key

class TestResultCache(TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.cache = ResultCache(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_key_ignores_field_order(self):
        self.assertEqual(cache_key(q=2, n=3), cache_key(n=3, q=2))
        self.assertNotEqual(cache_key(q=2, n=3), cache_key(q=3, n=3))
        self.assertEqual(len(cache_key(q=2)), 64)

    def test_put_and_get(self):
        key = cache_key(operation='count', q=2)
        self.assertIsNone(self.cache.get(key))
        self.assertTrue(self.cache.put(key, {'value': 7}))
        self.assertEqual(self.cache.get(key), {'value': 7})
        self.assertFalse(self.cache.put(key, {'value': 8}))
        self.assertEqual(self.cache.get(key), {'value': 7})
        self.assertTrue(os.path.exists(self.cache.path(key)))

    def test_fetch_computes_once(self):
        calls = []

        def compute():
            calls.append(1)
            return [1, 3, 7]

        first = self.cache.fetch(compute, operation='count', q=2)
        second = self.cache.fetch(compute, operation='count', q=2)
        self.assertEqual(first, [1, 3, 7])
        self.assertEqual(second, first)
        self.assertEqual(len(calls), 1)

    def test_undecodable_entry(self):
        key = cache_key(q=5)
        os.makedirs(os.path.dirname(self.cache.path(key)))
        with open(self.cache.path(key), 'w') as f:
            f.write('{not json')
        self.assertIsNone(self.cache.get(key))

    def test_empty_root(self):
        self.assertRaises(ValueError, ResultCache, '')

if __name__ == '__main__':
    unittest.main()

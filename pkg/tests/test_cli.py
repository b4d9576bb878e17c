import io
import json
from unittest import TestCase
from unittest.mock import patch
import unittest

import jsonschema

import nilzeta.cli as cli

def run(*argv):
    """Run the CLI and return (exit code, stdout)."""
    with patch('sys.stdout', new_callable=io.StringIO) as out, \
            patch('sys.stderr', new_callable=io.StringIO):
        code = cli.main(list(argv))
    return code, out.getvalue()

def run_json(*argv):
    code, out = run(*(argv + ('--json', '--no-cache')))
    return code, json.loads(out)

class TestZetaCommand(TestCase):

    def test_series(self):
        code, doc = run_json('zeta', 'series', '--group', 'F22', '--prime',
                             '2', '--upto', '3')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['result'], [1, 3, 7, 19])
        self.assertTrue(doc['verified'])

    def test_series_as_polynomials(self):
        code, doc = run_json('zeta', 'series', '--group', 'F24', '--upto', '1')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['result'][0], '1')

    def test_check_fe(self):
        code, doc = run_json('zeta', 'check-fe', '--group', 'F24')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['result'], {'sign': 1, 'p_exp': 45, 't_exp': 14,
                                         'verified': True})
        self.assertTrue(doc['details']['agrees'])

    def test_abscissa(self):
        code, doc = run_json('zeta', 'abscissa', '--group', 'F23')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['result'], {'estimate': '3', 'poles': '3'})

    def test_upto_too_large(self):
        code, _ = run('zeta', 'series', '--upto', '30', '--no-cache')
        self.assertEqual(code, cli.EXIT_USAGE)

class TestOracleCommand(TestCase):

    def test_count(self):
        code, doc = run_json('oracle', 'count', '--group', 'F22', '--prime',
                             '2', '--upto', '3')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['counts'], [1, 3, 7, 19])
        self.assertEqual(doc['counts'], doc['formula_counts'])
        self.assertNotIn('runtime_ms', doc)

    def test_timings(self):
        code, doc = run_json('oracle', 'count', '--group', 'F22', '--prime',
                             '2', '--upto', '2', '--timings')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertGreaterEqual(doc['runtime_ms'], 0)

    def test_output_is_deterministic(self):
        argv = ('oracle', 'count', '--group', 'F23', '--prime', '2', '--upto',
                '2', '--json', '--no-cache')
        self.assertEqual(run(*argv), run(*argv))

    def test_weights(self):
        code, doc = run_json('oracle', 'weights', '--case', 'plane-B',
                             '--prime', '2', '--r', '1')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['counts'], [[6, 1]])
        self.assertEqual(doc['mode'], 'exhaustive')
        self.assertTrue(doc['match'])

    def test_weights_need_case(self):
        code, _ = run('oracle', 'weights', '--prime', '2', '--no-cache')
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_budget(self):
        code, _ = run('oracle', 'count', '--group', 'F24', '--prime', '2',
                      '--upto', '4', '--budget', '10', '--no-cache')
        self.assertEqual(code, cli.EXIT_BUDGET)

class TestOtherCommands(TestCase):

    def test_geometry(self):
        code, doc = run_json('geometry', '--count', 'planes', '--prime', '2')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual((doc['count'], doc['formula']), (30, 30))

    def test_rulings(self):
        code, doc = run_json('geometry', '--count', 'rulings')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['stacked_ranks'], {'A': [4], 'B': [3]})

    def test_combinat(self):
        code, doc = run_json('combinat', 'gauss', '--n', '4', '--k', '2',
                             '--prime', '2')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['value'], 35)
        self.assertEqual(doc['result'], '1 + p + 2*p^2 + p^3 + p^4')

    def test_combinat_missing_argument(self):
        code, _ = run('combinat', 'gauss', '--n', '4')
        self.assertEqual(code, cli.EXIT_USAGE)

    def test_text_output(self):
        code, out = run('combinat', 'mu', '--a', '3', '--b', '1', '--prime',
                        '2')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(out.splitlines(), ['-p + p^2', 'at p = 2: 2'])

class TestUsage(TestCase):

    def test_parser_errors(self):
        for argv in (['zeta', 'bogus'], ['zeta', 'show', '--prime', '7'],
                     ['oracle', 'count', '--workers', '0'], []):
            with patch('sys.stderr', new_callable=io.StringIO):
                with self.assertRaises(SystemExit) as ctx:
                    cli.main(argv)
            self.assertEqual(ctx.exception.code, 2)

    def test_schema_rejects_extra_keys(self):
        doc = {'operation': 'gauss', 'inputs': {}, 'result': '1', 'extra': 1}
        self.assertRaises(jsonschema.ValidationError, cli.validate_report, doc,
                          'combinat_report')

class TestVerifyAll(TestCase):

    def test_quick(self):
        code, doc = run_json('verify-all', '--quick')
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(doc['verdict'], 'pass')
        self.assertEqual(doc['hard_failures'], 0)
        names = {c['name'] for c in doc['checks']}
        for name in ('closed-form', 'functional-equation', 'oracle-count',
                     'geometry', 'multiplicity', 'weight-lemma'):
            self.assertIn(name, names)

if __name__ == '__main__':
    unittest.main()

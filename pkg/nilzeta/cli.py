"""Command-line entry point: ``nilzeta zeta|oracle|geometry|combinat|verify-all``.

Every subcommand builds one report document, validates it against the
schema shipped in ``nilzeta/schemas`` and prints it either as canonical
JSON (``--json``) or as a few lines of text. Exit codes: 0 success, 1 a
hard check failed, 2 usage error, 3 enumeration budget exceeded.
"""
import argparse
import json
import logging
import os
import sys
import time

import jsonschema

from . import __version__
from .combinat import (FlagType, flag_count, gauss_binom, lattice_type_count,
                       mu, sublattice_count)
from .exactalg import (format_poly, format_ratfun, rf_equal, rf_eval_p,
                       rf_series, rf_to_json)
from .geometry import (classify_rulings, count_flags_brute, enumerate_quadric,
                       stacked_rank)
from .oracle import (WEIGHT_CASES, LieRingSpec, count_normal_sublattices,
                     direct_ideal_count, formula_counts, verify_multiplicity,
                     verify_weight_lemma)
from .utils.cache import ResultCache
from .utils.config import RunConfig
from .utils.misc import (EnumerationBudgetError, IntegrityError, NilzetaError,
                         canonical_json)
from .zetacore import (GROUPS, abscissa_estimate, abscissa_from_poles,
                       check_functional_equation, check_numerical_data,
                       closed_form, conjectured_functional_equation,
                       fano_poly, group_spec, lemma_suite, series_coeffs,
                       zeta_factors, zeta_local)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SCHEMA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                          'schemas')

class UsageError(NilzetaError):
    """Arguments that parse but make no sense together."""
    pass

def _int_list(text):
    try:
        return tuple(int(x) for x in text.replace(' ', '').split(',') if x)
    except ValueError:
        raise argparse.ArgumentTypeError(
            'expected a comma-separated list of integers, got {!r}'.format(
                text))

def load_schema(name):
    with open(os.path.join(SCHEMA_DIR, name + '.json'), 'r') as f:
        return json.load(f)

def validate_report(doc, schema):
    """Raise jsonschema.ValidationError if `doc` violates the named schema."""
    jsonschema.validate(instance=doc, schema=load_schema(schema))

def emit(cfg, doc, schema, lines, stream=None):
    """Validate `doc` and print it as JSON or as the given text lines."""
    validate_report(doc, schema)
    stream = sys.stdout if stream is None else stream
    if cfg.output == 'json':
        stream.write(canonical_json(doc) + '\n')
    else:
        for line in lines:
            stream.write(line + '\n')

def _cache(cfg):
    return ResultCache(cfg.cache_dir) if cfg.use_cache else None

# -- zeta ---------------------------------------------------------------------

def _zeta_report(group, operation, inputs, result, verified, details):
    return {'group': group, 'operation': operation, 'inputs': inputs,
            'result': result, 'verified': bool(verified), 'details': details}

def _zeta_show(G, args):
    factors = zeta_factors(G)
    zeta = zeta_local(G)
    if args.prime is not None:
        factors = {k: rf_eval_p(v, args.prime) for k, v in factors.items()}
        zeta = rf_eval_p(zeta, args.prime)
    if G.name in ('F22', 'F23'):
        verified = rf_equal(zeta_local(G), closed_form(G))
        how = 'agrees with the closed form'
    else:
        verified = check_numerical_data()
        how = 'numerical data consistent with the Fano varieties'
    result = {'formula': format_ratfun(zeta), 'json': rf_to_json(zeta),
              'factors': {k: format_ratfun(v) for k, v in factors.items()}}
    lines = ['{}: {}'.format(G.name, result['formula'])]
    lines += ['  {:8s} {}'.format(k, v)
              for k, v in sorted(result['factors'].items())]
    return result, verified, {'check': how}, lines

def _zeta_series(G, args):
    N = 10 if args.upto is None else args.upto
    sc = series_coeffs(G, N)
    if G.name in ('F22', 'F23'):
        verified = list(sc.coeffs) == rf_series(closed_form(G), N)
        how = 'closed-form series'
    else:
        # normal subgroups of index p contain the derived subgroup
        verified = sc.coeffs[0] == 1 and (
            N < 1 or sc.coeffs[1] == sublattice_count(G.d, 1))
        how = 'a_1 = 1 and a_p counts index-p sublattices of Z^d'
    if args.prime is None:
        result = [format_poly(c) for c in sc.coeffs]
    else:
        result = [int(v) for v in sc.values(args.prime)]
    lines = ['{}'.format(', '.join(str(c) for c in result))]
    return result, verified, {'check': how, 'N': N}, lines

def _zeta_check_fe(G, args):
    fe = check_functional_equation(G)
    conjectured = conjectured_functional_equation(G)
    result = {'sign': fe.sign, 'p_exp': fe.p_exp, 't_exp': fe.t_exp,
              'verified': fe.verified}
    details = {'conjectured': list(conjectured),
               'agrees': fe.verified and fe.as_tuple() == conjectured}
    if fe.verified:
        lines = ['zeta(1/p, 1/T) = {}p^{} T^{} zeta(p, T)'.format(
            '' if fe.sign == 1 else '-', fe.p_exp, fe.t_exp)]
    else:
        lines = ['no functional equation found']
    return result, fe.verified, details, lines

def _zeta_abscissa(G, args):
    N = 12 if args.upto is None else args.upto
    estimate = abscissa_estimate(G, N)
    poles = abscissa_from_poles(G)
    result = {'estimate': str(estimate), 'poles': str(poles)}
    lines = ['abscissa {} (series to T^{}), {} (poles)'.format(estimate, N,
                                                               poles)]
    return result, estimate == poles, {'N': N}, lines

def _zeta_lemmas(G, args, cfg):
    report = lemma_suite(order=cfg.lemma_order, workers=cfg.workers)
    failures = report.failures()
    lines = ['{} checks, {} failed'.format(len(report.checks), len(failures))]
    lines += ['  FAIL {} {}: {}'.format(c.name, c.params, c.detail)
              for c in failures]
    return report.to_json(), report.passed, {'order': cfg.lemma_order}, lines

_ZETA_ACTIONS = {'show': _zeta_show, 'series': _zeta_series,
                 'check-fe': _zeta_check_fe, 'abscissa': _zeta_abscissa}

def cmd_zeta(args, cfg):
    """Run one zetacore operation and print its report."""
    G = group_spec(args.group)
    if args.upto is not None and args.upto > cfg.max_order:
        raise UsageError('--upto should be at most {}.'.format(cfg.max_order))
    if args.action == 'lemmas':
        result, verified, details, lines = _zeta_lemmas(G, args, cfg)
    else:
        result, verified, details, lines = _ZETA_ACTIONS[args.action](G, args)
    inputs = {'prime': args.prime, 'upto': args.upto}
    doc = _zeta_report(G.name, args.action, inputs, result, verified, details)
    emit(cfg, doc, 'zeta_report', lines)
    return EXIT_OK if verified else EXIT_FAIL

# -- oracle -------------------------------------------------------------------

def _histogram_rows(histogram):
    return [[int(k), v] for k, v in sorted(histogram.items(),
                                           key=lambda kv: int(kv[0]))]

def _oracle_count(args, cfg):
    spec = LieRingSpec.for_group(args.group)
    n = 3 if args.upto is None else args.upto
    cache = _cache(cfg)
    counts = [count_normal_sublattices(spec, args.prime, k, budget=cfg.budget,
                                       workers=cfg.workers, cache=cache)
              for k in range(n + 1)]
    expected = formula_counts(spec, args.prime, n)
    inputs = {'group': spec.name, 'prime': args.prime, 'upto': n}
    return inputs, counts, expected, counts == expected, {}

def _oracle_direct(args, cfg):
    spec = LieRingSpec.for_group(args.group)
    n = 2 if args.upto is None else args.upto
    if n > 2:
        raise UsageError('direct counting supports --upto 2 at most.')
    counts = [direct_ideal_count(spec, args.prime, k, budget=cfg.budget)
              for k in range(n + 1)]
    reference = [count_normal_sublattices(spec, args.prime, k,
                                          budget=cfg.budget,
                                          workers=cfg.workers,
                                          cache=_cache(cfg))
                 for k in range(n + 1)]
    expected = formula_counts(spec, args.prime, n)
    inputs = {'group': spec.name, 'prime': args.prime, 'upto': n}
    match = counts == reference == expected
    return inputs, counts, expected, match, {'reference_counts': reference}

def _oracle_weights(args, cfg):
    if args.case is None or args.r is None:
        raise UsageError('oracle weights needs --case and --r.')
    report = verify_weight_lemma(args.case, args.prime, args.r,
                                 weight_budget=cfg.weight_budget)
    inputs = {'case': args.case, 'prime': args.prime, 'r': list(args.r)}
    extra = {'mode': report.mode, 'tuples': report.tuples,
             'mismatches': [list(m) for m in report.mismatches]}
    return (inputs, _histogram_rows(report.histogram),
            _histogram_rows(report.expected_histogram), report.match, extra)

def _oracle_multiplicity(args, cfg):
    bound = 3 if args.bound is None else args.bound
    report = verify_multiplicity(args.prime, bound, budget=cfg.budget)
    doc = report.to_json()
    inputs = {'prime': args.prime, 'bound': bound}
    return inputs, doc['counts'], doc['formula_counts'], report.match, {}

_ORACLE_ACTIONS = {'count': _oracle_count, 'direct': _oracle_direct,
                   'weights': _oracle_weights,
                   'multiplicity': _oracle_multiplicity}

def cmd_oracle(args, cfg):
    """Run a brute-force enumeration and compare it with the formulas."""
    start = time.perf_counter()
    inputs, counts, expected, match, extra = \
        _ORACLE_ACTIONS[args.action](args, cfg)
    doc = {'operation': args.action, 'inputs': inputs, 'counts': counts,
           'formula_counts': expected, 'match': match}
    doc.update(extra)
    if args.timings:
        doc['runtime_ms'] = int(1000 * (time.perf_counter() - start))
    lines = ['{} {}'.format(args.action, canonical_json(inputs)),
             '  counts:         {}'.format(counts),
             '  formula counts: {}'.format(expected),
             '  match: {}'.format('yes' if match else 'NO')]
    emit(cfg, doc, 'oracle_report', lines)
    return EXIT_OK if match else EXIT_FAIL

# -- geometry -----------------------------------------------------------------

_DIMS = {'points': 0, 'lines': 1, 'planes': 2}

def geometry_report(q, kind, budget, m=None, flag_type=None):
    """Return the report document of one geometry count."""
    if kind in _DIMS:
        found = enumerate_quadric(q, _DIMS[kind], budget=budget)
        level = _DIMS[kind] + 1
        formula = fano_poly(level).value_at(q) * (2 if kind == 'planes' else 1)
        count = len(found)
        return {'prime': q, 'kind': kind, 'count': count,
                'formula': int(formula), 'match': count == formula}
    if kind == 'rulings':
        ruling_a, ruling_b = classify_rulings(
            enumerate_quadric(q, 2, budget=budget))
        n3 = int(fano_poly(3).value_at(q))
        ranks = {'A': sorted({stacked_rank(P.basis, q) for P in ruling_a}),
                 'B': sorted({stacked_rank(P.basis, q) for P in ruling_b})}
        count = [len(ruling_a), len(ruling_b)]
        match = count == [n3, n3] and ranks == {'A': [4], 'B': [3]}
        return {'prime': q, 'kind': kind, 'count': count, 'formula': [n3, n3],
                'stacked_ranks': ranks, 'match': match}
    if kind == 'flags':
        if m is None:
            raise UsageError('--count flags needs --m.')
        ft = FlagType(m, tuple(flag_type or ()))
        count = count_flags_brute(q, ft, budget=budget)
        formula = int(flag_count(ft).value_at(q))
        return {'prime': q, 'kind': kind, 'count': count, 'formula': formula,
                'm': m, 'flag_type': list(ft.I), 'match': count == formula}
    raise UsageError('unknown geometry count {!r}.'.format(kind))

def cmd_geometry(args, cfg):
    """Count points, lines, planes, rulings or flags over F_q."""
    doc = geometry_report(args.prime, args.count, cfg.budget, args.m,
                          args.flag_type)
    lines = ['{} over F_{}: {} (formula {})'.format(
        doc['kind'], doc['prime'], doc['count'], doc['formula'])]
    if 'stacked_ranks' in doc:
        lines.append('  stacked ranks: {}'.format(doc['stacked_ranks']))
    emit(cfg, doc, 'geometry_report', lines)
    return EXIT_OK if doc['match'] else EXIT_FAIL

# -- combinat -----------------------------------------------------------------

def _need(args, *names):
    missing = ['--' + n.replace('_', '-') for n in names
               if getattr(args, n) is None]
    if missing:
        raise UsageError('combinat {} needs {}.'.format(args.action,
                                                        ', '.join(missing)))

def cmd_combinat(args, cfg):
    """Evaluate one q-combinatorial quantity as a polynomial in p."""
    a = args.action
    if a == 'gauss':
        _need(args, 'n', 'k')
        inputs, poly = {'n': args.n, 'k': args.k}, gauss_binom(args.n, args.k)
    elif a == 'flag':
        _need(args, 'm')
        I = tuple(args.flag_type or ())
        inputs = {'m': args.m, 'I': list(I)}
        poly = flag_count(FlagType(args.m, I))
    elif a == 'mu':
        _need(args, 'a', 'b')
        inputs, poly = {'a': args.a, 'b': args.b}, mu(args.a, args.b)
    elif a == 'sublattices':
        _need(args, 'd', 'k')
        inputs = {'d': args.d, 'k': args.k}
        poly = sublattice_count(args.d, args.k)
    else:
        _need(args, 'flag_type', 'r')
        inputs = {'I': list(args.flag_type), 'r': list(args.r)}
        poly = lattice_type_count(args.flag_type, args.r)
    doc = {'operation': a, 'inputs': inputs, 'result': format_poly(poly)}
    lines = [doc['result']]
    if args.prime is not None:
        doc['value'] = int(poly.value_at(args.prime))
        lines.append('at p = {}: {}'.format(args.prime, doc['value']))
    emit(cfg, doc, 'combinat_report', lines)
    return EXIT_OK

# -- verify-all ---------------------------------------------------------------

class Verdict():
    """Collects hard and soft checks for `verify-all`.

    Attributes
    ----------
    checks : list
        dicts with name, severity, status, params and detail, in run order
    """
    checks = None

    def __init__(self):
        self.checks = []

    def record(self, name, severity, passed, params=None, detail=''):
        status = 'pass' if passed else 'fail'
        self._add(name, severity, status, params, detail)

    def skip(self, name, params, detail):
        self._add(name, 'soft', 'skipped', params, detail)

    def _add(self, name, severity, status, params, detail):
        entry = {'name': name, 'severity': severity, 'status': status,
                 'params': params or {}, 'detail': detail}
        self.checks.append(entry)
        if status == 'pass':
            logger.info('check %s %s passed', name, entry['params'])
        else:
            logger.warning('check %s %s: %s (%s)', name, entry['params'],
                           status, detail)

    def count(self, severity):
        return sum(1 for c in self.checks
                   if c['severity'] == severity and c['status'] != 'pass')

    def to_json(self):
        hard = self.count('hard')
        return {'verdict': 'pass' if hard == 0 else 'fail',
                'version': __version__, 'hard_failures': hard,
                'soft_failures': self.count('soft'), 'checks': self.checks}

def _verify_zeta(verdict):
    for name in ('F22', 'F23'):
        verdict.record('closed-form', 'hard',
                       rf_equal(zeta_local(name), closed_form(name)),
                       {'group': name})
    for name in GROUPS:
        fe = check_functional_equation(name)
        expected = conjectured_functional_equation(name)
        verdict.record('functional-equation', 'hard',
                       fe.verified and fe.as_tuple() == expected,
                       {'group': name},
                       'found {}, expected {}'.format(list(fe.as_tuple()),
                                                      list(expected)))
    for name, value in zip(GROUPS, (2, 3, 4)):
        estimate = abscissa_estimate(name, 12)
        verdict.record('abscissa', 'hard',
                       estimate == value == abscissa_from_poles(name),
                       {'group': name}, 'estimate {}'.format(estimate))
    verdict.record('numerical-data', 'hard', check_numerical_data())

def _verify_lemmas(verdict, cfg, quick):
    order = 16 if quick else cfg.lemma_order
    report = lemma_suite(order=order, workers=cfg.workers,
                         extraction_order=12 if quick else 24,
                         decomposition_order=9 if quick else 15)
    by_name = {}
    for c in report.checks:
        by_name.setdefault(c.name, []).append(c)
    for name, checks in by_name.items():
        bad = [c for c in checks if not c.passed]
        detail = '; '.join('{} {}'.format(c.params, c.detail) for c in bad[:3])
        severity = 'soft' if checks[0].informational else 'hard'
        verdict.record('lemma:' + name, severity, not bad,
                       {'cases': len(checks), 'order': order}, detail)

def _verify_oracle(verdict, cfg, quick):
    cache = _cache(cfg)
    runs = [('F22', q, 5 if quick else 8, 'hard') for q in (2, 3, 5)]
    runs += [('F23', q, 3 if quick else 5, 'hard') for q in (2, 3)]
    runs += [('F24', 3, 2 if quick else 3, 'hard'),
             ('F24', 2, 3 if quick else 4, 'soft')]
    for name, q, n, severity in runs:
        params = {'group': name, 'prime': q, 'upto': n}
        counts = [count_normal_sublattices(name, q, k, budget=cfg.budget,
                                           workers=cfg.workers, cache=cache)
                  for k in range(n + 1)]
        expected = formula_counts(name, q, n)
        verdict.record('oracle-count', severity, counts == expected, params,
                       'counts {}, formula {}'.format(counts, expected))
        if q in (2, 3):
            _verify_direct(verdict, cfg, name, q, counts[:3], quick)

def _verify_direct(verdict, cfg, name, q, reference, quick):
    top = 1 if quick and name == 'F24' and q == 3 else 2
    params = {'group': name, 'prime': q, 'upto': top}
    try:
        counts = [direct_ideal_count(name, q, k, budget=cfg.budget)
                  for k in range(top + 1)]
    except EnumerationBudgetError as err:
        verdict.skip('direct-count', params, str(err))
        return
    verdict.record('direct-count', 'hard', counts == reference[:top + 1],
                   params, 'direct {}, central {}'.format(counts, reference))

def _weight_r_vectors(levels, rmax):
    vectors = [()]
    for _ in levels:
        vectors = [v + (r,) for v in vectors for r in range(1, rmax + 1)]
    return vectors

def _verify_weights(verdict, cfg, quick):
    rmax = 1 if quick else 2
    for q, severity in ((3, 'hard'), (2, 'soft')):
        for case, (_, levels) in WEIGHT_CASES.items():
            for r in _weight_r_vectors(levels, rmax):
                params = {'case': case, 'prime': q, 'r': list(r)}
                try:
                    report = verify_weight_lemma(
                        case, q, r, weight_budget=cfg.weight_budget)
                except EnumerationBudgetError as err:
                    verdict.skip('weight-lemma', params, str(err))
                    continue
                verdict.record('weight-lemma', severity, report.match,
                               dict(params, mode=report.mode),
                               '{} mismatch(es)'.format(
                                   len(report.mismatches)))

def _verify_geometry(verdict, cfg, quick):
    for q in ((2,) if quick else (2, 3)):
        for kind in ('points', 'lines', 'planes', 'rulings'):
            doc = geometry_report(q, kind, cfg.budget)
            verdict.record('geometry', 'hard', doc['match'],
                           {'prime': q, 'kind': kind},
                           'count {}, formula {}'.format(doc['count'],
                                                         doc['formula']))

def _verify_multiplicity(verdict, cfg, quick):
    bound = 2 if quick else 3
    report = verify_multiplicity(2, bound, budget=cfg.budget)
    verdict.record('multiplicity', 'hard', report.match,
                   {'prime': 2, 'bound': bound},
                   '{} mismatch(es)'.format(len(report.mismatches)))

def cmd_verify_all(args, cfg):
    """Run the acceptance suite and print one verdict document.

    Soft checks (the F24 oracle and the weight lemmas at q = 2, and direct
    counts that exceed the budget) are reported but never fail the run.
    """
    verdict = Verdict()
    quick = args.quick
    _verify_zeta(verdict)
    _verify_geometry(verdict, cfg, quick)
    _verify_lemmas(verdict, cfg, quick)
    _verify_multiplicity(verdict, cfg, quick)
    _verify_oracle(verdict, cfg, quick)
    _verify_weights(verdict, cfg, quick)
    doc = verdict.to_json()
    lines = ['{:5s} {:5s} {} {}'.format(c['status'], c['severity'], c['name'],
                                        canonical_json(c['params']))
             for c in doc['checks']]
    lines.append('verdict: {} ({} hard, {} soft failures)'.format(
        doc['verdict'], doc['hard_failures'], doc['soft_failures']))
    emit(cfg, doc, 'verdict', lines)
    return EXIT_OK if doc['verdict'] == 'pass' else EXIT_FAIL

# -- parser -------------------------------------------------------------------

def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true',
                        help='print canonical JSON instead of text')
    common.add_argument('--workers', type=int, default=None,
                        help='worker processes for partitioned enumerations')
    common.add_argument('--budget', type=int, default=None,
                        help='enumeration budget in lattices')
    common.add_argument('--weight-budget', type=int, default=None,
                        help='largest weight-lemma parameter space')
    common.add_argument('--allow-large-budget', action='store_true',
                        help='permit a budget above 2e7')
    common.add_argument('--lemma-order', type=int, default=None,
                        help='series order of the lemma suite')
    common.add_argument('--cache-dir', default=None,
                        help='result cache directory (default '
                             '$NILZETA_CACHE_DIR or ~/.cache/nilzeta)')
    common.add_argument('--no-cache', action='store_true',
                        help='neither read nor write the result cache')
    common.add_argument('--timings', action='store_true',
                        help='add runtime_ms to oracle reports')
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='-v for progress, -vv for debug output')
    return common

def build_parser():
    """Return the argparse parser of the ``nilzeta`` command."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='nilzeta',
        description='Local normal zeta functions of F_{2,2}, F_{2,3} and '
                    'F_{2,4}, with brute-force oracles.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True
    groups = sorted(GROUPS)

    p = sub.add_parser('zeta', parents=[common],
                       help='closed forms, series and functional equations')
    p.add_argument('action', choices=['show', 'series', 'check-fe',
                                      'abscissa', 'lemmas'])
    p.add_argument('--group', choices=groups, default='F24')
    p.add_argument('--prime', type=int, choices=(2, 3, 5), default=None)
    p.add_argument('--upto', type=int, default=None,
                   help='series order (default 10, 12 for abscissa)')
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser('oracle', parents=[common],
                       help='brute-force counts checked against the formulas')
    p.add_argument('action', choices=sorted(_ORACLE_ACTIONS))
    p.add_argument('--group', choices=groups, default='F24')
    p.add_argument('--prime', type=int, choices=(2, 3, 5), default=3)
    p.add_argument('--upto', type=int, default=None)
    p.add_argument('--case', choices=sorted(WEIGHT_CASES), default=None)
    p.add_argument('--r', type=_int_list, default=None,
                   help='comma-separated exponents, e.g. 1,2')
    p.add_argument('--bound', type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser('geometry', parents=[common],
                       help='points, lines and planes of the Pfaffian quadric')
    p.add_argument('--prime', type=int, choices=(2, 3, 5), default=2)
    p.add_argument('--count', choices=['points', 'lines', 'planes',
                                       'rulings', 'flags'], default='points')
    p.add_argument('--m', type=int, default=None,
                   help='projective dimension for --count flags')
    p.add_argument('--flag-type', type=_int_list, default=None)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser('combinat', parents=[common],
                       help='Gaussian binomials, flag counts and mu')
    p.add_argument('action', choices=['gauss', 'flag', 'mu', 'sublattices',
                                      'lattice-type'])
    p.add_argument('--prime', type=int, default=None)
    for name in ('n', 'k', 'm', 'a', 'b', 'd'):
        p.add_argument('--' + name, type=int, default=None)
    p.add_argument('--flag-type', type=_int_list, default=None)
    p.add_argument('--r', type=_int_list, default=None)
    p.set_defaults(func=cmd_combinat)

    p = sub.add_parser('verify-all', parents=[common],
                       help='run the acceptance suite')
    p.add_argument('--quick', action='store_true',
                   help='reduced orders and primes')
    p.set_defaults(func=cmd_verify_all)
    return parser

def configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

def main(argv=None):
    """Parse `argv`, run the subcommand and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        cfg = RunConfig.from_args(args)
    except ValueError as err:
        parser.error(str(err))
    try:
        return args.func(args, cfg)
    except EnumerationBudgetError as err:
        sys.stderr.write('nilzeta: {}\n'.format(err))
        return EXIT_BUDGET
    except IntegrityError as err:
        logger.error('internal consistency check failed: %s', err)
        return EXIT_FAIL
    except (UsageError, ValueError, TypeError) as err:
        sys.stderr.write('nilzeta: error: {}\n'.format(err))
        return EXIT_USAGE

if __name__ == '__main__':
    sys.exit(main())

"""Brute-force counts of normal subgroups of F_{2,d}, independent of the formulas.

Normal subgroups of p-power index correspond to ideals of the Lie ring
L = Z^d + Z^d' with [x_i, x_j] = y_(i,j). An ideal meets the centre in a
lattice Lambda' and projects onto a sublattice of X(Lambda') = {g :
[g, L] in Lambda'}, so

    a_(q^n) = sum_(Lambda') q^(d w) h_(n - w')(Z^d)

over centre lattices of index q^w with w' = w + log_q |Z^d : X(Lambda')|.
`count_normal_sublattices` evaluates this sum by HNF enumeration,
`direct_ideal_count` checks bracket closure on whole ideals, and the two
`verify_*` functions test the weight and multiplicity lemmas lattice by
lattice.
"""
import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass

from .combinat import lattice_type_count, sublattice_count
from .exactalg import rf_eval_p, rf_series
from .intlinalg import (IntMatrix, LatticeType, diagonal_partitions,
                        divisor_type, enumerate_sublattices, exact_inverse, hnf,
                        kernel_index, lattices_with_diagonal)
from .utils.config import DEFAULT_BUDGET, DEFAULT_WEIGHT_BUDGET
from .utils.misc import (IntegrityError, UnknownCaseError, check_budget,
                         process_int, process_prime)
from .utils.runners import PartitionRunner
from .zetacore import group_spec, zeta_local

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class LieRingSpec:
    """The Lie ring of F_{2,d} with centre basis y_k indexed by pairs i < j.

    Attributes
    ----------
    name : str
        the group name
    d : int
        number of generators x_1..x_d
    d_prime : int
        rank of the centre
    """
    name: str
    d: int
    d_prime: int

    @classmethod
    def for_group(cls, group):
        G = group_spec(group)
        return cls(G.name, G.d, G.d_prime)

    @property
    def pairs(self):
        return tuple(itertools.combinations(range(self.d), 2))

    def bracket(self, i, j):
        """Return the centre coordinates of [x_i, x_j] (0-based indices)."""
        v = [0] * self.d_prime
        if i < j:
            v[self.pairs.index((i, j))] = 1
        elif i > j:
            v[self.pairs.index((j, i))] = -1
        return v

    def bracket_table(self):
        return {(i, j): self.bracket(i, j) for i in range(self.d)
                for j in range(self.d)}

    def bracket_of(self, g, j):
        """Return [g, x_j] for an integer vector g in Z^d."""
        out = [0] * self.d_prime
        for i, gi in enumerate(g):
            if gi:
                for k, v in enumerate(self.bracket(i, j)):
                    out[k] += gi * v
        return out

    def bracket_map(self):
        """Return the (d d')-by-d matrix g -> ([g, x_1], ..., [g, x_d])."""
        rows = []
        for j in range(self.d):
            for k in range(self.d_prime):
                rows.append([self.bracket(i, j)[k] for i in range(self.d)])
        return IntMatrix.from_rows(rows)

def x_index(spec, L, q=None):
    """Return log_q |Z^d : X(L)| for a centre lattice L of q-power index."""
    return kernel_index(spec.bracket_map(), L, spec.d, q)

@dataclass(frozen=True)
class CenterLattice:
    """A centre lattice with its weights w and w'."""
    lattice: object
    w: int
    w_prime: int

def center_lattice(spec, L, q):
    """Compute w and w' of L and check w <= w' <= (1+d) w."""
    rest, w = L.index, 0
    while rest % q == 0:
        rest //= q
        w += 1
    if rest != 1:
        raise ValueError('index {} is not a power of {}.'.format(L.index, q))
    wp = w + x_index(spec, L, q)
    if not w <= wp <= (1 + spec.d) * w:
        raise IntegrityError("w' = {} outside [{}, {}] for {}.".format(
            wp, w, (1 + spec.d) * w, L.basis.entries))
    return CenterLattice(L, w, wp)

# -- counting through the centre --------------------------------------------

def max_center_exponent(spec, n):
    """Return the largest w with w + 2 ceil(w/d') <= n.

    Some elementary divisor of a centre lattice of index q^w is at least
    q^ceil(w/d'), and the primitive alternating form it induces on Z^d has
    radical of index at least q^(2 ceil(w/d')). Larger w cannot contribute.
    """
    w = 0
    while w + 1 + 2 * -(-(w + 1) // spec.d_prime) <= n:
        w += 1
    return w

def _count_partition(item):
    spec, q, n, exps = item
    w = sum(exps)
    total = 0
    for L in lattices_with_diagonal(q, exps):
        c = center_lattice(spec, L, q)
        if c.w_prime <= n:
            total += sublattice_count(spec.d, n - c.w_prime).value_at(q)
    return q ** (spec.d * w) * total

def count_normal_sublattices(spec, q, n, budget=DEFAULT_BUDGET, workers=1,
                             cache=None):
    """Return a_(q^n), the number of normal subgroups of index q^n.

    Parameters
    ----------
    spec : LieRingSpec or str
        the Lie ring, or a group name
    q : int
        a prime
    n : int
        the index exponent
    budget : int, optional
        largest number of centre lattices visited (default 2e7)
    workers : int, optional
        worker processes; the work is split by HNF diagonal
    cache : ResultCache, optional
        content-addressed store for the result

    Returns
    -------
    count : int

    Raises
    ------
    EnumerationBudgetError
        if the centre lattices to visit exceed `budget`
    """
    if not isinstance(spec, LieRingSpec):
        spec = LieRingSpec.for_group(spec)
    q = process_prime(q)
    n = process_int(n, 'n', minimum=0)
    top = max_center_exponent(spec, n)
    visits = sum(sublattice_count(spec.d_prime, m).value_at(q)
                 for m in range(top + 1))
    check_budget(visits, budget, 'centre lattices of {} up to index {}^{}'
                 .format(spec.name, q, top))

    def compute():
        logger.info('counting normal subgroups of %s of index %d^%d '
                    '(%d centre lattices)', spec.name, q, n, visits)
        items = [(spec, q, n, exps) for m in range(top + 1)
                 for exps in diagonal_partitions(spec.d_prime, m)]
        return PartitionRunner(workers).fold(_count_partition, items,
                                             lambda a, b: a + b, 0)

    if cache is None:
        return compute()
    from . import __version__
    return cache.fetch(compute, operation='count', group=spec.name, q=q, n=n,
                       version=__version__)

def formula_counts(spec, q, n):
    """Return the series coefficients of the local zeta function at p = q."""
    name = spec.name if isinstance(spec, LieRingSpec) else spec
    return [int(c.value_at(q)) for c in
            rf_series(rf_eval_p(zeta_local(name), q), n)]

# -- direct ideal enumeration -----------------------------------------------

def _is_ideal(spec, center, top):
    # [x_j, v] only sees the Z^d part of v, and lands in the centre
    for col in top.basis.columns():
        for j in range(spec.d):
            if not center.contains(spec.bracket_of(col, j)):
                return False
    return True

def _is_ideal_lattice(spec, M):
    # coordinates are (y_1..y_d', x_1..x_d); the centre brackets to zero
    dp = spec.d_prime
    for col in M.basis.columns():
        for j in range(spec.d):
            image = spec.bracket_of(col[dp:], j) + [0] * spec.d
            if not M.contains(image):
                return False
    return True

def direct_ideal_count(spec, q, n, budget=DEFAULT_BUDGET, exhaustive=False):
    """Count ideals of index q^n in the Lie ring by checking bracket closure.

    An ideal in column HNF with centre coordinates first is a centre block
    Lambda' (its intersection with the centre), a block P of Z^d (its
    projection) and entries in the centre rows of the P columns. Those
    entries never enter [L, M], so for each (Lambda', P) pair that passes
    the closure test they contribute the factor q^(d w) instead of being
    listed one by one. With `exhaustive` every sublattice of Z^(d'+d) of
    index q^n is tested instead, centre-row entries included.

    Raises
    ------
    EnumerationBudgetError
        if the (Lambda', P) pairs exceed `budget`, or the sublattices of
        Z^(d'+d) when `exhaustive`
    """
    if not isinstance(spec, LieRingSpec):
        spec = LieRingSpec.for_group(spec)
    q = process_prime(q)
    n = process_int(n, 'n', minimum=0)
    if n > 2:
        raise ValueError('direct ideal counting is limited to n <= 2.')
    if exhaustive:
        lattices = enumerate_sublattices(spec.d_prime + spec.d, q, n,
                                         budget=budget)
        total = sum(1 for M in lattices if _is_ideal_lattice(spec, M))
        logger.debug('%s: %d ideals of index %d^%d among all sublattices',
                     spec.name, total, q, n)
        return total
    pairs = sum(sublattice_count(spec.d_prime, m).value_at(q) *
                sublattice_count(spec.d, n - m).value_at(q)
                for m in range(n + 1))
    check_budget(pairs, budget, 'ideal candidates of {} of index {}^{}'
                 .format(spec.name, q, n))
    total = 0
    for m in range(n + 1):
        tops = list(enumerate_sublattices(spec.d, q, n - m, budget=None))
        for center in enumerate_sublattices(spec.d_prime, q, m, budget=None):
            hits = sum(1 for top in tops if _is_ideal(spec, center, top))
            total += hits * q ** (spec.d * m)
    logger.debug('%s: %d ideals of index %d^%d', spec.name, total, q, n)
    return total

# -- weight lemmas -----------------------------------------------------------

# Lifts of a flag of centre functionals phi_1, phi_2, phi_3. Special flags
# sit on <e4>, <e4,e5>, <e4,e5,e6> and move off the Fano variety along the
# listed directions, group g perturbing phi_g in g coordinates.
_SPECIAL_BASE = (3, 4, 5)
_SPECIAL_DIRECTIONS = ((2,), (1, 2), (0, 1, 2))
_PLANE_A_BASE = (0, 1, 2)
_PLANE_A_DIRECTIONS = ((5,), (4, 5), (3, 4, 5))

WEIGHT_CASES = {'generic': ('generic', (1,)),
                'point': ('special', (1,)),
                'line': ('special', (2,)),
                'point-line': ('special', (1, 2)),
                'plane-A': ('plane-A', (3,)),
                'plane-B': ('special', (3,)),
                'mixed-r3': ('special', (1, 2, 3))}

@dataclass(frozen=True)
class FlagLift:
    """A maximal centre lattice given by a unimodular alpha and moduli.

    The lattice is {y : alpha^j . y = 0 mod q^(m_j)}, i.e. the span of the
    columns of alpha^(-T) diag(q^m_j).
    """
    type: LatticeType
    alpha: IntMatrix
    moduli: tuple

    def lattice(self, q):
        inv_t = exact_inverse(self.alpha).transpose()
        cols = [[x * q ** m for x in col] for col, m in
                zip(inv_t.columns(), self.moduli)]
        return hnf(IntMatrix.from_columns(cols))

def _moduli(levels, r, count):
    return tuple(sum(ri for l, ri in zip(levels, r) if l >= j)
                 for j in range(1, count + 1))

def _unit(k):
    v = [0] * 6
    v[k] = 1
    return v

def _directions(kind, top):
    if kind == 'generic':
        return ((1, 2, 3, 4),)
    if kind == 'plane-A':
        return _PLANE_A_DIRECTIONS
    return _SPECIAL_DIRECTIONS[:top]

def _lift_alpha(kind, top, params):
    """Return alpha with the lifted functionals first, completed by units."""
    if kind == 'generic':
        # e1 + e6 is off the quadric
        col = [1, 0, 0, 0, 0, 1]
        for k, a in zip(_directions(kind, top)[0], params):
            col[k] += a
        return IntMatrix.from_columns([col] + [_unit(k) for k in range(1, 6)])
    base = _PLANE_A_BASE if kind == 'plane-A' else _SPECIAL_BASE[:top]
    cols, it = [], iter(params)
    for b, dirs in zip(base, _directions(kind, top)):
        v = _unit(b)
        for k in dirs:
            v[k] += next(it)
        cols.append(v)
    cols += [_unit(k) for k in range(6) if k not in base]
    return IntMatrix.from_columns(cols)

def _valuation(x, q, cap):
    if x % q ** cap == 0:
        return cap
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v

def _param_values(q, m, exhaustive):
    # residues in qZ/q^m, or one unit multiple of each valuation per sign
    if exhaustive:
        return list(range(0, q ** m, q))
    values = {0}
    for v in range(1, m):
        values.add(q ** v % q ** m)
        values.add(-q ** v % q ** m)
    return sorted(values)

def closed_form_weight(case, levels, r, ks=None):
    """Return the weight w' predicted by the lemmas.

    Parameters
    ----------
    case : str
        a key of WEIGHT_CASES
    levels, r : tuple
        the type of the lattice
    ks : tuple, optional
        per group, the minimal valuation of its parameters

    Returns
    -------
    w_prime : int
        sum (4+i) r_i less the drop sum min(s_1, k_1) + min(s_1+s_2+s_3,
        k_1, k_2 + s_1, k_3 + s_1 + s_2) for special flags
    """
    generic = sum((4 + i) * ri for i, ri in zip(levels, r))
    kind = WEIGHT_CASES[case][0]
    if kind != 'special':
        return generic
    s = tuple(dict(zip(levels, r)).get(j, 0) for j in (1, 2, 3))
    s1, s2, s3 = s
    options = [s1 + s2 + s3, ks[0]]
    if len(ks) > 1:
        options.append(ks[1] + s1)
    if len(ks) > 2:
        options.append(ks[2] + s1 + s2)
    return generic - min(s1, ks[0]) - min(options)

@dataclass(frozen=True)
class WeightReport:
    """Outcome of `verify_weight_lemma`."""
    case: str
    q: int
    r: tuple
    mode: str
    tuples: int
    histogram: dict
    expected_histogram: dict
    mismatches: tuple

    @property
    def match(self):
        return not self.mismatches

    def to_json(self):
        return {'case': self.case, 'q': self.q, 'r': list(self.r),
                'mode': self.mode, 'tuples': self.tuples,
                'histogram': {str(k): v for k, v in
                              sorted(self.histogram.items())},
                'expected_histogram': {str(k): v for k, v in
                                       sorted(self.expected_histogram.items())},
                'mismatches': [list(m) for m in self.mismatches],
                'match': self.match}

def verify_weight_lemma(case, q, r, weight_budget=DEFAULT_WEIGHT_BUDGET,
                        max_mismatches=20):
    """Compare w' from x_index with the weight lemmas on every lift.

    Parameters
    ----------
    case : str
        one of 'generic', 'point', 'line', 'point-line', 'plane-A',
        'plane-B', 'mixed-r3'
    q : int
        a prime
    r : sequence of int
        the exponents r_i on the levels of the case
    weight_budget : int, optional
        largest number of parameter tuples; beyond it each parameter runs
        over 0 and +-q^v only
    max_mismatches : int, optional
        mismatching tuples kept in the report

    Returns
    -------
    report : WeightReport

    Raises
    ------
    UnknownCaseError
        for an unknown case name
    EnumerationBudgetError
        if even the reduced parameter space exceeds `weight_budget`
    """
    if case not in WEIGHT_CASES:
        raise UnknownCaseError('unknown weight case {!r}; expected one of {}.'
                               .format(case, ', '.join(WEIGHT_CASES)))
    q = process_prime(q)
    kind, levels = WEIGHT_CASES[case]
    r = tuple(process_int(ri, 'r_i', minimum=1) for ri in r)
    if len(r) != len(levels):
        raise ValueError('case {} needs {} exponent(s).'.format(case,
                                                                len(levels)))
    top = levels[-1]
    moduli = _moduli(levels, r, top)
    lt = LatticeType(levels, r)
    directions = _directions(kind, top)
    spec = LieRingSpec.for_group('F24')

    def space(exhaustive):
        return [_param_values(q, m, exhaustive) for m, dirs in
                zip(moduli, directions) for _ in dirs]

    def size(ranges):
        return math.prod(len(x) for x in ranges)

    ranges, mode = space(True), 'exhaustive'
    if size(ranges) > weight_budget:
        ranges, mode = space(False), 'representative'
        logger.info('%s at q=%d, r=%s: %d tuples exceed the budget; using '
                    'valuation representatives', case, q, r,
                    size(space(True)))
        check_budget(size(ranges), weight_budget,
                     'lift parameters of {} at q={}'.format(case, q))
    owners = [(g, m) for g, (m, dirs) in enumerate(zip(moduli, directions))
              for _ in dirs]
    histogram, predicted = Counter(), Counter()
    mismatches, tuples = [], 0
    for params in itertools.product(*ranges):
        tuples += 1
        lift = FlagLift(lt, _lift_alpha(kind, top, params),
                        moduli + (0,) * (6 - len(moduli)))
        found = center_lattice(spec, lift.lattice(q), q).w_prime
        ks = list(moduli)
        for (g, m), a in zip(owners, params):
            ks[g] = min(ks[g], _valuation(a, q, m))
        expected = closed_form_weight(case, levels, r, tuple(ks))
        histogram[found] += 1
        predicted[expected] += 1
        if found != expected and len(mismatches) < max_mismatches:
            mismatches.append((list(params), expected, found))
    if mismatches:
        logger.warning('%s at q=%d, r=%s: %d mismatch(es)', case, q, r,
                       len(mismatches))
    return WeightReport(case, q, r, mode, tuples, dict(histogram),
                        dict(predicted),
                        tuple(tuple(m) for m in mismatches))

# -- multiplicities ----------------------------------------------------------

def types_of_weight(w, d_prime=6):
    """Yield the maximal types (I, r) with sum i r_i = w, I in 1..d'-1."""
    def rec(i, rest):
        if rest == 0:
            yield (), ()
            return
        if i >= d_prime:
            return
        for tail in rec(i + 1, rest):
            yield tail
        for ri in range(1, rest // i + 1):
            for I, r in rec(i + 1, rest - i * ri):
                yield (i,) + I, (ri,) + r
    return sorted(rec(1, w))

@dataclass(frozen=True)
class MultiplicityReport:
    """Observed and predicted numbers of lattices per (k, scalar, type)."""
    q: int
    bound: int
    observed: dict
    expected: dict

    @property
    def mismatches(self):
        keys = sorted(set(self.observed) | set(self.expected))
        return [(k, self.expected.get(k, 0), self.observed.get(k, 0))
                for k in keys
                if self.expected.get(k, 0) != self.observed.get(k, 0)]

    @property
    def match(self):
        return not self.mismatches

    def to_json(self):
        def rows(counts):
            return [{'k': k, 'scalar': e, 'I': list(I), 'r': list(r),
                     'count': counts[(k, e, I, r)]}
                    for (k, e, I, r) in sorted(counts)]
        return {'q': self.q, 'bound': self.bound,
                'counts': rows(self.observed),
                'formula_counts': rows(self.expected), 'match': self.match}

def verify_multiplicity(q, bound, budget=DEFAULT_BUDGET):
    """Histogram elementary-divisor types of sublattices of Z^6.

    Every sublattice of index q^k, k <= bound, is classified with
    `divisor_type`; each (scalar, type) class is compared with
    lattice_type_count at p = q.

    Raises
    ------
    EnumerationBudgetError
        if the lattices to visit exceed `budget`
    """
    q = process_prime(q)
    bound = process_int(bound, 'bound', minimum=0)
    total = sum(sublattice_count(6, k).value_at(q) for k in range(bound + 1))
    check_budget(total, budget, 'sublattices of Z^6 up to index {}^{}'.format(
        q, bound))
    observed, expected = Counter(), {}
    for k in range(bound + 1):
        for L in enumerate_sublattices(6, q, k, budget=None):
            lt, e = divisor_type(L, q)
            observed[(k, e, lt.I, lt.r)] += 1
        for e in range(k // 6 + 1):
            for I, r in types_of_weight(k - 6 * e):
                expected[(k, e, I, r)] = int(
                    lattice_type_count(I, r).value_at(q))
    return MultiplicityReport(q, bound, dict(observed), expected)

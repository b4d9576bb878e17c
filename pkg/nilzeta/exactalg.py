"""Exact Laurent polynomials and rational functions in the variables p and T.

A `LaurentPoly` is a finite map from exponent pairs (e_p, e_T) to nonzero
integers. A `RatFun` is a Laurent polynomial over a multiset of geometric
factors 1 - p^a T^b with b >= 1. Rational functions are never gcd-reduced;
equality is decided by cross-multiplication over the shared factors.
"""
import numbers
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

def _as_int(c):
    if isinstance(c, bool):
        raise TypeError('coefficients should be integers, not bool.')
    if isinstance(c, numbers.Integral):
        return int(c)
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    raise ValueError('non-integral coefficient {!r}.'.format(c))

def _order(key):
    # canonical term order: ascending in T, then in p
    return (key[1], key[0])

class LaurentPoly():
    """An immutable Laurent polynomial in p and T with integer coefficients.

    Parameters
    ----------
    terms : dict or iterable, optional
        maps (e_p, e_T) to an integer coefficient, either as a dict or as an
        iterable of ((e_p, e_T), c) pairs. Repeated keys are summed and zero
        coefficients dropped.

    Notes
    -----
    Terms are stored in ascending (e_T, e_p) order, so two equal polynomials
    have identical term sequences and identical renderings.
    """
    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        acc = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for (ep, eT), c in items:
                key = (_as_int(ep), _as_int(eT))
                acc[key] = acc.get(key, 0) + _as_int(c)
        object.__setattr__(self, '_terms', _canonical(acc))

    def __setattr__(self, name, value):
        raise AttributeError('LaurentPoly is immutable.')

    def __reduce__(self):
        return (LaurentPoly, (dict(self._terms),))

    @classmethod
    def _wrap(cls, acc):
        obj = cls.__new__(cls)
        object.__setattr__(obj, '_terms', _canonical(acc))
        return obj

    @classmethod
    def zero(cls):
        return cls._wrap({})

    @classmethod
    def one(cls):
        return cls._wrap({(0, 0): 1})

    @classmethod
    def constant(cls, c):
        return cls._wrap({(0, 0): _as_int(c)})

    @classmethod
    def monomial(cls, ep, eT=0, c=1):
        """Return c * p^ep * T^eT."""
        return cls._wrap({(_as_int(ep), _as_int(eT)): _as_int(c)})

    @classmethod
    def from_p_coeffs(cls, coeffs):
        """Return sum_k coeffs[k] * p^k."""
        return cls._wrap({(k, 0): _as_int(c) for k, c in enumerate(coeffs)})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        """The terms as a tuple of (e_p, e_T, c) triples in canonical order."""
        return tuple((ep, eT, c) for (ep, eT), c in self._terms.items())

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_monomial(self):
        return len(self._terms) == 1

    def is_p_only(self):
        return all(eT == 0 for _, eT in self._terms)

    def is_T_only(self):
        return all(ep == 0 for ep, _ in self._terms)

    def _require_nonzero(self):
        if not self._terms:
            raise ValueError('the zero polynomial has no degree.')

    def degree_p(self):
        self._require_nonzero()
        return max(ep for ep, _ in self._terms)

    def min_degree_p(self):
        self._require_nonzero()
        return min(ep for ep, _ in self._terms)

    def degree_T(self):
        self._require_nonzero()
        return max(eT for _, eT in self._terms)

    def min_degree_T(self):
        self._require_nonzero()
        return min(eT for _, eT in self._terms)

    def leading_term(self):
        """Return the (e_p, e_T, c) term that is largest in (e_T, e_p) order."""
        self._require_nonzero()
        key = next(reversed(self._terms))
        return key + (self._terms[key],)

    def coefficient(self, eT):
        """Return the coefficient of T^eT as a Laurent polynomial in p."""
        return LaurentPoly._wrap({(ep, 0): c for (ep, e), c in
                                  self._terms.items() if e == eT})

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, 0) + c
        return LaurentPoly._wrap(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, numbers.Integral) and not isinstance(other, bool):
            return LaurentPoly._wrap({k: c * other for k, c in
                                      self._terms.items()})
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        acc = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return LaurentPoly._wrap(acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        k = _as_int(k)
        if k < 0:
            if not self.is_monomial():
                raise ValueError('only monomials have negative powers.')
            (ep, eT), c = next(iter(self._terms.items()))
            if c not in (1, -1):
                raise ValueError('monomial coefficient should be a unit.')
            return LaurentPoly.monomial(ep * k, eT * k, c ** (-k))
        result, base = LaurentPoly.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, dp, dT=0, c=1):
        """Return c * p^dp * T^dT * self."""
        return LaurentPoly._wrap({(ep + dp, eT + dT): v * c for (ep, eT), v
                                  in self._terms.items()})

    def substitute_inverse(self):
        """Return the polynomial with p -> 1/p and T -> 1/T."""
        return LaurentPoly._wrap({(-ep, -eT): c for (ep, eT), c in
                                  self._terms.items()})

    def evaluate_p(self, q):
        """Substitute p = q, returning a Laurent polynomial in T alone.

        Raises
        ------
        ValueError
            if a resulting coefficient is not an integer
        """
        acc = {}
        for (ep, eT), c in self._terms.items():
            acc[eT] = acc.get(eT, 0) + c * Fraction(q) ** ep
        return LaurentPoly._wrap({(0, eT): _as_int(v) for eT, v in
                                  acc.items()})

    def value_at(self, q, t=1):
        """Return the exact value at p = q, T = t as an int or a Fraction."""
        total = Fraction(0)
        for (ep, eT), c in self._terms.items():
            total += c * Fraction(q) ** ep * Fraction(t) ** eT
        return total.numerator if total.denominator == 1 else total

    # -- comparison and rendering -----------------------------------------

    def __eq__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        return 'LaurentPoly({!r})'.format(format_poly(self))

    def __str__(self):
        return format_poly(self)

    def to_json(self):
        return [[ep, eT, c] for ep, eT, c in self.terms]

    @classmethod
    def from_json(cls, triples):
        return cls(((ep, eT), c) for ep, eT, c in triples)

def _canonical(acc):
    return dict(sorted(((k, c) for k, c in acc.items() if c), key=lambda kc:
                       _order(kc[0])))

def _coerce_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, numbers.Integral) and not isinstance(x, bool):
        return LaurentPoly.constant(x)
    return NotImplemented

P = LaurentPoly.monomial(1, 0)
T = LaurentPoly.monomial(0, 1)

# -- text rendering ---------------------------------------------------------

def _format_monomial(ep, eT):
    parts = []
    if ep:
        parts.append('p' if ep == 1 else 'p^{}'.format(ep))
    if eT:
        parts.append('T' if eT == 1 else 'T^{}'.format(eT))
    return '*'.join(parts)

def format_poly(f):
    """Render a LaurentPoly as text, e.g. ``1 - p^24*T^10``."""
    if f.is_zero():
        return '0'
    out = []
    for i, (ep, eT, c) in enumerate(f.terms):
        mono = _format_monomial(ep, eT)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = '{}*{}'.format(mag, mono)
        if i == 0:
            out.append(('-' if c < 0 else '') + body)
        else:
            out.append((' - ' if c < 0 else ' + ') + body)
    return ''.join(out)

_TERM = re.compile(r'([+-]?)(\d*)(\*?p(?:\^(-?\d+))?)?(\*?T(?:\^(-?\d+))?)?')

def parse_poly(text):
    """Parse the text produced by `format_poly` back into a LaurentPoly.

    Raises
    ------
    ValueError
        if `text` is not a sum of terms of the form ``c*p^a*T^b``
    """
    s = re.sub(r'\s+', '', text)
    if not s:
        raise ValueError('empty polynomial text.')
    acc, pos = {}, 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, digits, pp, ep, tt, eT = m.groups()
        body = m.group(0)[len(sign):]
        if (not body or body.startswith('*') or (pos > 0 and not sign) or
                (not digits and (pp or '').startswith('*')) or
                (not digits and not pp and (tt or '').startswith('*'))):
            raise ValueError('cannot parse polynomial {!r} at offset {}.'
                             .format(text, pos))
        if pp and tt and not tt.startswith('*'):
            raise ValueError('missing * between p and T in {!r}.'.format(text))
        if digits and (pp or tt) and not (pp or tt).startswith('*'):
            raise ValueError('missing * after coefficient in {!r}.'.format(
                text))
        c = int(digits) if digits else 1
        key = (int(ep) if ep else (1 if pp else 0),
               int(eT) if eT else (1 if tt else 0))
        acc[key] = acc.get(key, 0) + (-c if sign == '-' else c)
        pos = m.end()
    return LaurentPoly(acc)

# -- rational functions -----------------------------------------------------

@dataclass(frozen=True)
class GeomFactor:
    """The polynomial 1 - p^a T^b with a >= 0 and b >= 1."""
    a: int
    b: int

    def __post_init__(self):
        a, b = _as_int(self.a), _as_int(self.b)
        if a < 0:
            raise ValueError('factor p-exponent should be nonnegative.')
        if b < 1:
            raise ValueError('factor T-exponent should be positive; 1 - p^a '
                             'cannot be expanded in T.')

    def key(self):
        return (self.b, self.a)

    def poly(self, prime=None):
        """Return 1 - p^a T^b, or 1 - q^a T^b when `prime` is given."""
        if prime is None:
            return LaurentPoly._wrap({(0, 0): 1, (self.a, self.b): -1})
        return LaurentPoly._wrap({(0, 0): 1, (0, self.b): -prime ** self.a})

def _as_factor(f):
    if isinstance(f, GeomFactor):
        return f
    a, b = f
    return GeomFactor(a, b)

def _den_counter(den):
    if isinstance(den, (Counter, dict)):
        c = Counter()
        for f, mult in den.items():
            if mult < 0:
                raise ValueError('factor multiplicities should be positive.')
            if mult:
                c[_as_factor(f)] += mult
        return c
    return Counter(_as_factor(f) for f in den)

class RatFun():
    """An immutable quotient of a LaurentPoly by a product of GeomFactors.

    Parameters
    ----------
    num : LaurentPoly or int
        the numerator
    den : iterable or Counter, optional
        GeomFactors (or (a, b) pairs), either listed with repetition or as a
        Counter of multiplicities
    prime : int, optional
        set when p has been specialised to an integer; the numerator is then
        a polynomial in T alone and each factor reads 1 - prime^a T^b

    See Also
    --------
    exactalg.rf_equal
    """
    __slots__ = ('num', 'den', 'prime')

    def __init__(self, num, den=(), prime=None):
        num = _coerce_poly(num)
        if num is NotImplemented:
            raise TypeError('num should be a LaurentPoly or an integer.')
        counter = _den_counter(den)
        if prime is not None:
            prime = _as_int(prime)
            if prime < 2:
                raise ValueError('prime should be at least 2.')
            if not num.is_T_only():
                raise ValueError('a specialised numerator must not involve p.')
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', tuple(sorted(counter.elements(),
                                                     key=GeomFactor.key)))
        object.__setattr__(self, 'prime', prime)

    def __setattr__(self, name, value):
        raise AttributeError('RatFun is immutable.')

    def __reduce__(self):
        return (RatFun, (self.num, self.den, self.prime))

    @property
    def den_counter(self):
        return Counter(self.den)

    def is_p_free(self):
        return self.num.is_T_only() and all(f.a == 0 for f in self.den)

    def den_poly(self):
        return _product(self.den_counter, self.prime)

    def __add__(self, other):
        other = _coerce_ratfun(other)
        return other if other is NotImplemented else rf_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfun(other)
        return other if other is NotImplemented else rf_add(self, rf_neg(
            other))

    def __rsub__(self, other):
        other = _coerce_ratfun(other)
        return other if other is NotImplemented else rf_add(other, rf_neg(
            self))

    def __mul__(self, other):
        other = _coerce_ratfun(other)
        return other if other is NotImplemented else rf_mul(self, other)

    __rmul__ = __mul__

    def __neg__(self):
        return rf_neg(self)

    def __eq__(self, other):
        other = _coerce_ratfun(other)
        return other if other is NotImplemented else rf_equal(self, other)

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def __repr__(self):
        return 'RatFun({!r})'.format(format_ratfun(self))

    def __str__(self):
        return format_ratfun(self)

def _coerce_ratfun(x):
    if isinstance(x, RatFun):
        return x
    poly = _coerce_poly(x)
    if poly is NotImplemented:
        return poly
    return RatFun(poly)

def _product(counter, prime=None):
    result = LaurentPoly.one()
    for f in sorted(counter, key=GeomFactor.key):
        fp = f.poly(prime)
        for _ in range(counter[f]):
            result = result * fp
    return result

def _specialise(x, prime):
    # A p-free function may be combined with a specialised one.
    if x.prime == prime:
        return x
    if x.prime is None and x.is_p_free():
        return RatFun(x.num, x.den, prime=prime)
    raise ValueError('cannot combine functions specialised at different '
                     'values of p ({} and {}).'.format(x.prime, prime))

def _common_prime(x, y):
    if x.prime == y.prime:
        return x, y, x.prime
    prime = x.prime if x.prime is not None else y.prime
    return _specialise(x, prime), _specialise(y, prime), prime

def rf_add(x, y):
    """Return x + y over the union-with-maximum-multiplicity denominator.

    Parameters
    ----------
    x, y : RatFun

    Returns
    -------
    s : RatFun
        the exact sum; a zero numerator is returned with an empty denominator
    """
    x, y, prime = _common_prime(x, y)
    cx, cy = x.den_counter, y.den_counter
    common = cx | cy
    num = (x.num * _product(common - cx, prime) +
           y.num * _product(common - cy, prime))
    if num.is_zero():
        return RatFun(num, prime=prime)
    return RatFun(num, common, prime=prime)

def rf_mul(x, y):
    """Return the exact product x * y; denominators add as multisets."""
    x, y, prime = _common_prime(x, y)
    num = x.num * y.num
    if num.is_zero():
        return RatFun(num, prime=prime)
    return RatFun(num, x.den_counter + y.den_counter, prime=prime)

def rf_neg(x):
    return RatFun(-x.num, x.den_counter, prime=x.prime)

def rf_scale(x, poly):
    """Return poly * x for a LaurentPoly or integer `poly`."""
    return rf_mul(x, RatFun(poly))

def _cross(x, y):
    x, y, prime = _common_prime(x, y)
    cx, cy = x.den_counter, y.den_counter
    common = cx & cy
    lhs = x.num * _product(cy - common, prime)
    rhs = y.num * _product(cx - common, prime)
    return lhs, rhs

def rf_equal(x, y):
    """Decide x == y by cross-multiplying over the non-shared factors.

    Returns
    -------
    equal : bool
    """
    lhs, rhs = _cross(x, y)
    return lhs == rhs

def rf_invert(x):
    """Substitute p -> 1/p and T -> 1/T simultaneously.

    Each factor obeys 1 - p^-a T^-b = (-p^-a T^-b)(1 - p^a T^b), so the
    denominator is unchanged and the numerator picks up -p^a T^b per factor.

    Raises
    ------
    ValueError
        if p has been specialised in `x`
    """
    if x.prime is not None:
        raise ValueError('cannot invert p in a specialised function.')
    num = x.num.substitute_inverse()
    ep = sum(f.a for f in x.den)
    eT = sum(f.b for f in x.den)
    sign = -1 if len(x.den) % 2 else 1
    return RatFun(num.shift(ep, eT, sign), x.den_counter)

def rf_monomial_ratio(y, x):
    """Find (c, a, b) with y = c * p^a * T^b * x, or return None.

    Both sides are brought over their shared factors first; the candidate
    monomial is read off the leading terms and then verified exactly.
    """
    lhs, rhs = _cross(y, x)
    if lhs.is_zero() or rhs.is_zero():
        return None
    ly, lx = lhs.leading_term(), rhs.leading_term()
    if ly[2] % lx[2]:
        return None
    c, a, b = ly[2] // lx[2], ly[0] - lx[0], ly[1] - lx[1]
    if rhs.shift(a, b, c) != lhs:
        return None
    return c, a, b

def rf_series(x, N):
    """Expand x in powers of T and return the coefficients of T^0..T^N.

    Parameters
    ----------
    x : RatFun
        the function; every factor has b >= 1 by construction
    N : int
        the truncation order

    Returns
    -------
    coeffs : list
        N+1 Laurent polynomials in p alone (constants if p is specialised)
    """
    N = _as_int(N)
    if N < 0:
        raise ValueError('N should be nonnegative.')
    if x.num.is_zero():
        return [LaurentPoly.zero() for _ in range(N + 1)]
    depth = N - min(x.num.min_degree_T(), 0)
    series = [dict() for _ in range(depth + 1)]
    series[0][(0, 0)] = 1
    for f in x.den:
        if x.prime is None:
            for k in range(f.b, depth + 1):
                target = series[k]
                for (ep, _), v in list(series[k - f.b].items()):
                    key = (ep + f.a, 0)
                    target[key] = target.get(key, 0) + v
        else:
            scale = x.prime ** f.a
            for k in range(f.b, depth + 1):
                v = series[k - f.b].get((0, 0), 0)
                if v:
                    series[k][(0, 0)] = series[k].get((0, 0), 0) + v * scale
    out = []
    for n in range(N + 1):
        acc = {}
        for (ep, eT), c in x.num.items():
            k = n - eT
            if 0 <= k <= depth:
                for (fp, _), v in series[k].items():
                    key = (ep + fp, 0)
                    acc[key] = acc.get(key, 0) + c * v
        out.append(LaurentPoly._wrap(acc))
    return out

def series_mul(a, b, N):
    """Return the truncated convolution of two coefficient lists."""
    out = []
    for n in range(N + 1):
        acc = LaurentPoly.zero()
        for i in range(n + 1):
            if i < len(a) and n - i < len(b):
                acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out

def series_values(coeffs, q):
    """Evaluate each p-polynomial coefficient at p = q."""
    return [c.value_at(q) for c in coeffs]

def rf_eval_p(x, q):
    """Specialise p to the integer q >= 2.

    Raises
    ------
    ValueError
        if the numerator acquires a non-integral coefficient, or `x` is
        already specialised at another value
    """
    q = _as_int(q)
    if q < 2:
        raise ValueError('q should be at least 2.')
    if x.prime is not None:
        if x.prime != q:
            raise ValueError('function already specialised at p = {}.'.format(
                x.prime))
        return x
    return RatFun(x.num.evaluate_p(q), x.den_counter, prime=q)

def monomial(a, b, c=1):
    """Return the RatFun c * p^a * T^b."""
    return RatFun(LaurentPoly.monomial(a, b, c))

def geometric(a, b):
    """Return p^a T^b / (1 - p^a T^b)."""
    return RatFun(LaurentPoly.monomial(a, b), [GeomFactor(a, b)])

def inverse_factor(a, b):
    """Return 1 / (1 - p^a T^b)."""
    return RatFun(1, [GeomFactor(a, b)])

# -- rendering of rational functions ---------------------------------------

def _format_factor(f, prime=None):
    if prime is None:
        mono = _format_monomial(f.a, f.b)
    else:
        tpart = 'T' if f.b == 1 else 'T^{}'.format(f.b)
        mono = tpart if f.a == 0 else '{}^{}*{}'.format(prime, f.a, tpart)
    return '(1 - {})'.format(mono)

def format_ratfun(x):
    """Render a RatFun as ``(num)/((1 - a)*(1 - b)^2)``."""
    if not x.den:
        return format_poly(x.num)
    counter = x.den_counter
    parts = []
    for f in sorted(counter, key=GeomFactor.key):
        s = _format_factor(f, x.prime)
        parts.append(s if counter[f] == 1 else '{}^{}'.format(s, counter[f]))
    return '({})/({})'.format(format_poly(x.num), '*'.join(parts))

_FACTOR = re.compile(r'\(1-(?:p(?:\^(\d+))?\*)?T(?:\^(\d+))?\)(?:\^(\d+))?')

def parse_ratfun(text):
    """Parse the output of `format_ratfun` for a non-specialised function."""
    s = re.sub(r'\s+', '', text)
    if '/' not in s:
        return RatFun(parse_poly(s))
    split = s.find(')/(')
    if not s.startswith('(') or split < 0 or not s.endswith(')'):
        raise ValueError('cannot parse rational function {!r}.'.format(text))
    num = parse_poly(s[1:split])
    den_text = s[split + 3:-1]
    counter, pos = Counter(), 0
    while pos < len(den_text):
        if pos and den_text[pos] == '*':
            pos += 1
        m = _FACTOR.match(den_text, pos)
        if m is None:
            raise ValueError('cannot parse factor of {!r} at offset {}.'
                             .format(text, pos))
        ep, eT, mult = m.groups()
        a = int(ep) if ep else (1 if 'p' in m.group(0) else 0)
        counter[GeomFactor(a, int(eT) if eT else 1)] += int(mult or 1)
        pos = m.end()
    return RatFun(num, counter)

def rf_to_json(x):
    """Return {"num": [[e_p, e_T, c]], "den": [[a, b, mult]]} (+ "prime")."""
    counter = x.den_counter
    doc = {'num': x.num.to_json(),
           'den': [[f.a, f.b, counter[f]] for f in
                   sorted(counter, key=GeomFactor.key)]}
    if x.prime is not None:
        doc['prime'] = x.prime
    return doc

def rf_from_json(doc):
    counter = Counter()
    for a, b, mult in doc.get('den', []):
        counter[GeomFactor(a, b)] += mult
    return RatFun(LaurentPoly.from_json(doc['num']), counter,
                  prime=doc.get('prime'))

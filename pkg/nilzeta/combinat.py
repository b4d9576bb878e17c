"""q-combinatorics: Gaussian binomials, flag counts, mu and sublattice counts."""
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import LaurentPoly
from .utils.misc import process_int, process_index_set

@lru_cache(maxsize=None)
def gauss_binom(n, k):
    """Return the Gaussian binomial coefficient [n choose k]_p.

    Parameters
    ----------
    n : int
        a nonnegative integer
    k : int
        any integer

    Returns
    -------
    b : LaurentPoly
        a polynomial in p; zero if k < 0 or k > n

    Notes
    -----
    Uses the recurrence [n, k] = [n-1, k-1] + p^k [n-1, k]. The value counts
    the k-dimensional subspaces of F_p^n.
    """
    n = process_int(n, 'n', minimum=0)
    k = process_int(k, 'k')
    if k < 0 or k > n:
        return LaurentPoly.zero()
    if k == 0 or k == n:
        return LaurentPoly.one()
    return gauss_binom(n - 1, k - 1) + gauss_binom(n - 1, k).shift(k)

@dataclass(frozen=True)
class FlagType:
    """A flag type I inside the ambient projective space P^m.

    Attributes
    ----------
    m : int
        the Igusa-factor arity; the ambient vector space is F_p^(m+1)
    I : tuple
        strictly increasing elements of {1,...,m}
    """
    m: int
    I: tuple = ()

    def __post_init__(self):
        m = process_int(self.m, 'm', minimum=0)
        I = process_index_set(self.I, m)
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'I', I)

@lru_cache(maxsize=None)
def _flag_count(m, I):
    if not I:
        return LaurentPoly.one()
    result = gauss_binom(m + 1, I[-1])
    for hi, lo in zip(reversed(I), reversed(I[:-1])):
        result = result * gauss_binom(hi, lo)
    return result

def flag_count(ft):
    """Return b_I(p), the number of F_p-points of the flag variety of type I.

    Parameters
    ----------
    ft : FlagType

    Returns
    -------
    b : LaurentPoly
        binom(m+1, i_l)_p * binom(i_l, i_(l-1))_p * ... * binom(i_2, i_1)_p,
        and 1 for the empty type

    See Also
    --------
    geometry.count_flags_brute
    """
    if not isinstance(ft, FlagType):
        raise TypeError('ft should be a FlagType.')
    return _flag_count(ft.m, ft.I)

def flag_poly(I, m):
    """Shorthand for flag_count(FlagType(m, I)) with I given in any order."""
    return flag_count(FlagType(m, tuple(sorted(I))))

def flag_dim(ft):
    """Return dim F_I, the p-degree of flag_count(ft)."""
    return flag_count(ft).degree_p()

def mu(a, b):
    """Return mu(a, b) = |{x in pZ_p/(p^a) : v_p(x) = b}|.

    Returns
    -------
    m : LaurentPoly
        1 if a = b, p^(a-b) - p^(a-b-1) if a > b, and 0 otherwise
    """
    a = process_int(a, 'a', minimum=1)
    b = process_int(b, 'b', minimum=1)
    if a == b:
        return LaurentPoly.one()
    if a > b:
        return LaurentPoly({(a - b, 0): 1, (a - b - 1, 0): -1})
    return LaurentPoly.zero()

def mu_min(a, k, c):
    """Return the number of c-tuples in (pZ_p/(p^a))^c with minimal valuation k.

    Equals the sum of mu(a, b_1)...mu(a, b_c) over tuples with min b_j = k:
    p^(c(a-k)) - p^(c(a-k-1)) for k < a, 1 for k = a, and 0 otherwise.
    """
    a = process_int(a, 'a', minimum=1)
    k = process_int(k, 'k', minimum=1)
    c = process_int(c, 'c', minimum=1)
    if k > a:
        return LaurentPoly.zero()
    if k == a:
        return LaurentPoly.one()
    return LaurentPoly({(c * (a - k), 0): 1, (c * (a - k - 1), 0): -1})

@lru_cache(maxsize=None)
def sublattice_count(d, k):
    """Return the number of sublattices of Z^d of index p^k.

    This is the coefficient of T^k in prod_{j<d} 1/(1 - p^j T), computed with
    the recurrence h_k(d) = h_k(d-1) + p^(d-1) h_(k-1)(d).
    """
    d = process_int(d, 'd', minimum=1)
    k = process_int(k, 'k', minimum=0)
    if k == 0:
        return LaurentPoly.one()
    if d == 1:
        return LaurentPoly.one()
    return sublattice_count(d - 1, k) + sublattice_count(d, k - 1).shift(d - 1)

def lattice_type_count(I, r, d_prime=6):
    """Return the number of maximal lattices in Z^d' of type (I, r_I).

    Parameters
    ----------
    I : iterable of int
        the type, a subset of {1,...,d'-1}
    r : iterable of int
        the positive exponents r_i, aligned with the sorted `I`
    d_prime : int, optional
        rank of the ambient lattice (default 6)

    Returns
    -------
    n : LaurentPoly
        b_I(p) * p^(-dim F_I) * p^(sum (d'-i) i r_i) with flags in P^(d'-1)

    Notes
    -----
    The lattices of a fixed type are equidistributed over the points of the
    flag variety, each point carrying p^(-dim F_I) p^(sum (d'-i) i r_i) of
    them.
    """
    d_prime = process_int(d_prime, 'd_prime', minimum=1)
    I = tuple(I)
    r = tuple(process_int(ri, 'r_i', minimum=1) for ri in r)
    if len(I) != len(r):
        raise ValueError('I and r should have the same length.')
    order = sorted(range(len(I)), key=lambda j: I[j])
    I = tuple(I[j] for j in order)
    r = tuple(r[j] for j in order)
    ft = FlagType(d_prime - 1, I)
    if not I:
        return LaurentPoly.one()
    exponent = sum((d_prime - i) * i * ri for i, ri in zip(I, r))
    return flag_count(ft).shift(exponent - flag_dim(ft))

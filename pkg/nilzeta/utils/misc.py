"""Miscellaneous utilities: errors, argument checks and canonical JSON."""
import json
import numbers

from sympy import isprime

class NilzetaError(Exception):
    """Base class for the domain errors raised by nilzeta."""
    pass

class EnumerationBudgetError(NilzetaError):
    """An enumeration would visit more objects than its configured budget.

    Attributes
    ----------
    bound : int
        the configured budget
    required : int
        the number of objects the enumeration would visit
    what : str
        a short description of the enumeration
    """
    bound, required, what = None, None, None

    def __init__(self, bound, required, what='enumeration'):
        self.bound = int(bound)
        self.required = int(required)
        self.what = what
        msg = '{} needs {} items, exceeding the budget of {}.'.format(
            what, self.required, self.bound)
        super(EnumerationBudgetError, self).__init__(msg)

class IntegrityError(NilzetaError):
    """An internal consistency check failed; signals a bug, not bad input."""
    pass

class UnknownCaseError(NilzetaError, ValueError):
    """A lattice-case or weight-lemma descriptor is not recognised."""
    pass

def check_budget(required, bound, what='enumeration'):
    """Raise EnumerationBudgetError when `required` exceeds `bound`.

    A `bound` of None disables the check.
    """
    if bound is not None and required > bound:
        raise EnumerationBudgetError(bound, required, what)

def process_int(x, name, minimum=None):
    """Check that `x` is an integer, optionally bounded below.

    Parameters
    ----------
    x : int
        the value to check
    name : str
        argument name used in error messages
    minimum : int, optional
        smallest admissible value (default None)

    Returns
    -------
    x : int
        `x` converted to a Python int
    """
    if isinstance(x, bool) or not isinstance(x, numbers.Integral):
        raise TypeError('{} should be an integer.'.format(name))
    x = int(x)
    if minimum is not None and x < minimum:
        raise ValueError('{} should be at least {}, got {}.'.format(
            name, minimum, x))
    return x

def process_prime(q, name='q'):
    """Check that `q` is a prime integer and return it as an int."""
    q = process_int(q, name, minimum=2)
    if not isprime(q):
        raise ValueError('{} should be prime, got {}.'.format(name, q))
    return q

def process_index_set(I, m, name='I'):
    """Check that `I` is a strictly increasing subset of {1,...,m}.

    Returns
    -------
    I : tuple
        the sorted elements of `I`
    """
    I = tuple(process_int(i, name) for i in I)
    if any(a >= b for a, b in zip(I, I[1:])):
        raise ValueError('{} should be strictly increasing.'.format(name))
    if I and (I[0] < 1 or I[-1] > m):
        raise ValueError('{} should lie in {{1,...,{}}}.'.format(name, m))
    return I

def canonical_json(obj):
    """Render `obj` as compact JSON with sorted keys.

    Identical inputs give byte-identical output; used for cache keys and for
    deterministic CLI output.
    """
    return json.dumps(obj, sort_keys=True, separators=(',', ':'))

"""Integer normal forms, sublattice enumeration and congruence-kernel indices.

Lattices are stored in column Hermite normal form: L = H Z^d with H upper
triangular, H_ii > 0 and 0 <= H_ij < H_ii for j > i. The columns of H are
the basis vectors.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import ZZ, factorint
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .combinat import sublattice_count
from .utils.misc import (check_budget, process_int, IntegrityError)
from .utils.config import DEFAULT_BUDGET

logger = logging.getLogger(__name__)

# checking to see if system has numba
try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

@dataclass(frozen=True)
class IntMatrix:
    """A rectangular matrix of arbitrary-precision integers.

    Attributes
    ----------
    entries : tuple
        tuple of rows, each a tuple of ints
    """
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError('an IntMatrix needs at least one entry.')
        if any(len(row) != len(rows[0]) for row in rows):
            raise ValueError('all rows should have the same length.')
        object.__setattr__(self, 'entries', rows)

    @classmethod
    def _trusted(cls, rows):
        obj = object.__new__(cls)
        object.__setattr__(obj, 'entries', rows)
        return obj

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def from_columns(cls, columns):
        columns = [list(c) for c in columns]
        return cls(tuple(zip(*columns)))

    @classmethod
    def identity(cls, n):
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values, shape=None):
        values = list(values)
        rows, cols = shape if shape is not None else (len(values),
                                                      len(values))
        return cls(tuple(tuple(values[i] if i == j and i < len(values) else 0
                               for j in range(cols)) for i in range(rows)))

    @property
    def rows(self):
        return len(self.entries)

    @property
    def cols(self):
        return len(self.entries[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(tuple(zip(*self.entries)))

    def diagonal(self):
        return tuple(self.entries[i][i] for i in range(min(self.rows,
                                                           self.cols)))

    def to_list(self):
        return [list(row) for row in self.entries]

def as_int_matrix(M):
    """Accept an IntMatrix, a nested list or a 2-d integer ndarray."""
    if isinstance(M, IntMatrix):
        return M
    if hasattr(M, 'tolist'):
        M = M.tolist()
    return IntMatrix.from_rows(M)

@dataclass(frozen=True)
class SublatticeHNF:
    """A full-rank sublattice of Z^d in column Hermite normal form.

    Attributes
    ----------
    basis : IntMatrix
        upper-triangular d-by-d matrix whose columns span the lattice

    Notes
    -----
    Construct through `hnf` or `enumerate_sublattices`; the constructor
    checks the normal-form conventions and rejects anything else.
    """
    basis: IntMatrix

    @classmethod
    def _trusted(cls, basis):
        obj = object.__new__(cls)
        object.__setattr__(obj, 'basis', basis)
        return obj

    def __post_init__(self):
        H = self.basis
        if H.rows != H.cols:
            raise ValueError('an HNF basis should be square.')
        for i in range(H.rows):
            if H[i, i] <= 0:
                raise ValueError('HNF diagonal entries should be positive.')
            for j in range(H.cols):
                if j < i and H[i, j] != 0:
                    raise ValueError('HNF basis should be upper triangular.')
                if j > i and not 0 <= H[i, j] < H[i, i]:
                    raise ValueError('HNF off-diagonal entries should be '
                                     'reduced modulo the row pivot.')

    @property
    def dim(self):
        return self.basis.rows

    @property
    def diagonal(self):
        return self.basis.diagonal()

    @property
    def index(self):
        return math.prod(self.diagonal)

    def contains(self, v):
        """Return True if the integer vector `v` lies in the lattice."""
        v = [int(x) for x in v]
        if len(v) != self.dim:
            raise ValueError('vector has the wrong length.')
        H = self.basis
        for j in reversed(range(self.dim)):
            c, r = divmod(v[j], H[j, j])
            if r:
                return False
            if c:
                for i in range(j + 1):
                    v[i] -= c * H[i, j]
        return True

    @cached_property
    def adjugate(self):
        """Return det(H) * H^-1 as an integer upper-triangular matrix.

        Computed by exact back-substitution; each column solves H x = det e_k.
        """
        H, d, det = self.basis, self.dim, self.index
        cols = []
        for k in range(d):
            x = [0] * d
            for i in reversed(range(d)):
                rhs = (det if i == k else 0) - sum(H[i, j] * x[j] for j in
                                                   range(i + 1, d))
                x[i], r = divmod(rhs, H[i, i])
                if r:
                    raise IntegrityError('adjugate is not integral.')
            cols.append(x)
        return IntMatrix.from_columns(cols)

def _hnf_columns(columns, d):
    active = [list(c) for c in columns]
    pivots = [None] * d
    for i in reversed(range(d)):
        while True:
            nz = [k for k, c in enumerate(active) if c[i] != 0]
            if len(nz) <= 1:
                break
            k0 = min(nz, key=lambda k: abs(active[k][i]))
            piv = active[k0]
            for k in nz:
                if k != k0:
                    f = active[k][i] // piv[i]
                    active[k] = [a - f * b for a, b in zip(active[k], piv)]
        if not nz:
            raise ValueError('input matrix is rank-deficient; hnf needs a '
                             'full-rank lattice.')
        piv = active.pop(nz[0])
        if piv[i] < 0:
            piv = [-a for a in piv]
        pivots[i] = piv
    for j in range(d):
        col = pivots[j]
        for i in reversed(range(j)):
            f = col[i] // pivots[i][i]
            if f:
                col = [a - f * b for a, b in zip(col, pivots[i])]
        pivots[j] = col
    return pivots

def hnf(M):
    """Return the column Hermite normal form of the lattice spanned by M.

    Parameters
    ----------
    M : IntMatrix or array_like
        a d-by-k integer matrix whose columns generate a full-rank sublattice
        of Z^d

    Returns
    -------
    L : SublatticeHNF

    Raises
    ------
    ValueError
        if the columns of M do not span a rank-d lattice
    """
    M = as_int_matrix(M)
    pivots = _hnf_columns(M.columns(), M.rows)
    return SublatticeHNF(IntMatrix.from_columns(pivots))

def _divisibility_chain(values):
    values = [abs(int(v)) for v in values]
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            a, b = values[i], values[j]
            if a == 0 and b == 0:
                continue
            g = math.gcd(a, b)
            values[i], values[j] = g, (a * b // g if g else 0)
    nonzero = [v for v in values if v]
    return nonzero + [0] * (len(values) - len(nonzero))

def snf(M):
    """Return the Smith normal form of M as a diagonal IntMatrix.

    The diagonal entries are nonnegative and form a divisibility chain
    d_1 | d_2 | ..., with zeros last.
    """
    M = as_int_matrix(M)
    dM = DomainMatrix([[ZZ(x) for x in row] for row in M.entries],
                      (M.rows, M.cols), ZZ)
    invs = [int(v) for v in invariant_factors(dM)]
    invs += [0] * (min(M.rows, M.cols) - len(invs))
    return IntMatrix.diag(_divisibility_chain(invs), shape=(M.rows, M.cols))

def exact_inverse(M):
    """Return the inverse of a unimodular integer matrix as an IntMatrix.

    Raises
    ------
    ValueError
        if M is not square with determinant +1 or -1
    """
    M = as_int_matrix(M)
    if M.rows != M.cols:
        raise ValueError('only square matrices have inverses.')
    dM = DomainMatrix([[ZZ(x) for x in row] for row in M.entries],
                      (M.rows, M.cols), ZZ)
    adj, det = dM.adj_det()
    if det not in (1, -1):
        raise ValueError('matrix is not unimodular (det = {}).'.format(det))
    return IntMatrix.from_rows([[int(x) * int(det) for x in row]
                                for row in adj.to_list()])

# -- enumeration ------------------------------------------------------------

def diagonal_partitions(d, k):
    """Return all exponent tuples (a_1..a_d) >= 0 with sum k, in lex order.

    Each tuple selects the HNF diagonal (q^a_1, ..., q^a_d); the tuples
    partition the lattices of index q^k.
    """
    d = process_int(d, 'd', minimum=1)
    k = process_int(k, 'k', minimum=0)
    out = []
    for cut in itertools.combinations(range(k + d - 1), d - 1):
        bounds = (-1,) + cut + (k + d - 1,)
        out.append(tuple(bounds[i + 1] - bounds[i] - 1 for i in range(d)))
    return sorted(out)

def lattices_with_diagonal(q, exps):
    """Yield every SublatticeHNF whose diagonal is (q^e for e in exps)."""
    d = len(exps)
    diag = [q ** e for e in exps]
    # row i carries free entries in columns j > i, each in [0, q^exps[i])
    slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
    ranges = [range(diag[i]) for i, _ in slots]
    for values in itertools.product(*ranges):
        rows = [[0] * d for _ in range(d)]
        for i in range(d):
            rows[i][i] = diag[i]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
        yield SublatticeHNF._trusted(IntMatrix._trusted(
            tuple(tuple(row) for row in rows)))

def count_with_diagonal(q, exps):
    d = len(exps)
    return q ** sum(exps[i] * (d - 1 - i) for i in range(d))

def enumerate_sublattices(d, q, k, budget=DEFAULT_BUDGET, partitions=None):
    """Yield every sublattice of Z^d of index q^k exactly once.

    Parameters
    ----------
    d : int
        rank of the ambient lattice
    q : int
        a prime
    k : int
        the index exponent
    budget : int, optional
        maximal number of lattices; None disables the check (default 2e7)
    partitions : list, optional
        restrict to these diagonal exponent tuples (default all of them)

    Returns
    -------
    stream : generator of SublatticeHNF
        in lexicographic order of diagonal, then of free entries

    Raises
    ------
    EnumerationBudgetError
        if the stream would exceed `budget`
    """
    d = process_int(d, 'd', minimum=1)
    q = process_int(q, 'q', minimum=2)
    k = process_int(k, 'k', minimum=0)
    if partitions is None:
        total = sublattice_count(d, k).value_at(q)
        partitions = diagonal_partitions(d, k)
    else:
        total = sum(count_with_diagonal(q, e) for e in partitions)
    check_budget(total, budget, 'sublattices of Z^{} of index {}^{}'.format(
        d, q, k))
    logger.debug('enumerating %d sublattices of Z^%d of index %d^%d', total,
                 d, q, k)
    return _stream(q, partitions)

def _stream(q, partitions):
    for exps in partitions:
        for L in lattices_with_diagonal(q, exps):
            yield L

# -- local elementary divisors ----------------------------------------------

def _valuation(x, q, cap):
    if x == 0:
        return cap
    v = 0
    while x % q == 0 and v < cap:
        x //= q
        v += 1
    return v

def _local_exponents_py(rows, q, cap):
    Q = q ** cap
    mat = [[x % Q for x in row] for row in rows]
    exps = []
    while mat and mat[0]:
        best, bi, bj = cap, -1, -1
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                if x:
                    v = _valuation(x, q, cap)
                    if v < best:
                        best, bi, bj = v, i, j
                        if v == 0:
                            break
            if best == 0:
                break
        if bi < 0:
            break
        exps.append(best)
        piv = mat[bi][bj]
        unit = pow(piv // q ** best, -1, Q)
        prow = mat[bi]
        new = []
        for i, row in enumerate(mat):
            if i == bi:
                continue
            f = (row[bj] // q ** best) * unit % Q
            if f:
                row = [(x - f * y) % Q for x, y in zip(row, prow)]
            new.append(row[:bj] + row[bj + 1:])
        mat = new
    return exps

def _local_exponents_kernel(mat, q, cap):
    # int64 variant of _local_exponents_py; valid while q**cap < 2**31
    Q = 1
    for _ in range(cap):
        Q *= q
    rows, cols = mat.shape
    a = mat.copy() % Q
    alive_r = [True] * rows
    alive_c = [True] * cols
    out = []
    for _ in range(min(rows, cols)):
        best, bi, bj = cap, -1, -1
        for i in range(rows):
            if not alive_r[i]:
                continue
            for j in range(cols):
                if alive_c[j] and a[i, j] != 0:
                    x, v = a[i, j], 0
                    while x % q == 0 and v < cap:
                        x //= q
                        v += 1
                    if v < best:
                        best, bi, bj = v, i, j
        if bi < 0:
            break
        out.append(best)
        qb = 1
        for _ in range(best):
            qb *= q
        u = a[bi, bj] // qb
        r0, r1, s0, s1 = u % Q, Q, 1, 0
        while r1 != 0:
            f = r0 // r1
            r0, r1 = r1, r0 - f * r1
            s0, s1 = s1, s0 - f * s1
        unit = s0 % Q
        for i in range(rows):
            if i != bi and alive_r[i] and a[i, bj] != 0:
                f = (a[i, bj] // qb) * unit % Q
                for j in range(cols):
                    if alive_c[j]:
                        a[i, j] = (a[i, j] - f * a[bi, j]) % Q
        alive_r[bi] = False
        alive_c[bj] = False
    return out

if HAS_NUMBA:
    _local_exponents_kernel = njit(cache=False)(_local_exponents_kernel)

def local_elementary_divisors(M, q, cap):
    """Return the q-adic elementary-divisor exponents of M, capped at `cap`.

    Parameters
    ----------
    M : IntMatrix or array_like
        the integer matrix
    q : int
        a prime
    cap : int
        exponents are computed modulo q^cap; a divisor divisible by q^cap
        (including zero) is reported as `cap`

    Returns
    -------
    exps : list of int
        min(rows, cols) exponents in ascending order

    Notes
    -----
    Pivots on an entry of minimal valuation and eliminates with a unit
    inverse modulo q^cap. When numba is available and q^cap < 2^31, a
    compiled int64 kernel is used.
    """
    M = as_int_matrix(M)
    q = process_int(q, 'q', minimum=2)
    cap = process_int(cap, 'cap', minimum=0)
    n = min(M.rows, M.cols)
    if cap == 0:
        return [0] * n
    if HAS_NUMBA and q ** cap < 2 ** 31:
        Q = q ** cap
        arr = np.array([[x % Q for x in row] for row in M.entries],
                       dtype=np.int64)
        exps = list(_local_exponents_kernel(arr, q, cap))
    else:
        exps = _local_exponents_py(M.entries, q, cap)
    exps = sorted(int(e) for e in exps)
    return exps + [cap] * (n - len(exps))

def _prime_power(n):
    # (None, 0) for 1, (None, -1) unless n is a prime power
    factors = factorint(n)
    if not factors:
        return None, 0
    if len(factors) != 1:
        return None, -1
    (f, e), = factors.items()
    return int(f), int(e)

@dataclass(frozen=True)
class LatticeType:
    """The elementary-divisor type (I, r_I) of a maximal lattice.

    Attributes
    ----------
    I : tuple
        increasing subset of {1,...,d'-1}
    r : tuple
        the positive exponents r_i aligned with `I`
    """
    I: tuple = ()
    r: tuple = ()

    def __post_init__(self):
        if len(self.I) != len(self.r):
            raise ValueError('I and r should have the same length.')
        if any(ri < 1 for ri in self.r):
            raise ValueError('r_i should be positive.')
        if list(self.I) != sorted(set(self.I)):
            raise ValueError('I should be strictly increasing.')

    def key(self):
        return tuple(zip(self.I, self.r))

    def weight(self):
        """Return sum i * r_i, the index exponent of the maximal lattice."""
        return sum(i * ri for i, ri in zip(self.I, self.r))

def divisor_type(L, q):
    """Return the maximal type of L and its scalar exponent.

    Parameters
    ----------
    L : SublatticeHNF
        a lattice of q-power index
    q : int
        a prime

    Returns
    -------
    lt : LatticeType
        with r_i = e_(d-i+1) - e_(d-i) for the ascending exponents e
    scalar : int
        e_1, so that L = q^scalar * L_max

    Raises
    ------
    ValueError
        if the index of L is not a power of q
    """
    q = process_int(q, 'q', minimum=2)
    base, k = _prime_power(L.index)
    if k < 0 or (base is not None and base != q):
        raise ValueError('index {} is not a power of {}.'.format(L.index, q))
    e = local_elementary_divisors(L.basis, q, k + 1)
    d = L.dim
    I, r = [], []
    for i in range(1, d):
        ri = e[d - i] - e[d - i - 1]
        if ri:
            I.append(i)
            r.append(ri)
    return LatticeType(tuple(I), tuple(r)), e[0]

def kernel_index(A, L, d_src, q=None):
    """Return log_q |Z^d_src : X| for X = {g : A g in L + ... + L}.

    Parameters
    ----------
    A : IntMatrix or array_like
        a (blocks*dim L)-by-d_src integer matrix; row block b holds the map
        into the b-th copy of the ambient space of L
    L : SublatticeHNF
        the target lattice, of prime-power index
    d_src : int
        rank of the source lattice
    q : int, optional
        the prime; inferred from the index of L when omitted

    Returns
    -------
    e : int
        the exponent of the index of the kernel

    Notes
    -----
    With m = log_q index(L), q^m Z^d lies in L and the adjugate of the HNF
    basis gives adj(H) v in det(H) Z^d exactly when v lies in L. Hence X is
    the kernel of g -> (I (x) adj H) A g modulo q^m, whose index is read off
    the local Smith form.
    """
    A = as_int_matrix(A)
    d_src = process_int(d_src, 'd_src', minimum=1)
    if A.cols != d_src:
        raise ValueError('A should have d_src = {} columns.'.format(d_src))
    d = L.dim
    if A.rows % d:
        raise ValueError('rows of A should be a multiple of dim L.')
    base, m = _prime_power(L.index)
    if m < 0:
        raise ValueError('index of L should be a prime power.')
    if q is not None and base is not None and base != q:
        raise ValueError('index of L is not a power of {}.'.format(q))
    if m == 0:
        return 0
    q = base
    Q = q ** m
    adj = L.adjugate
    B = []
    for blk in range(A.rows // d):
        rows = A.entries[blk * d:(blk + 1) * d]
        for i in range(d):
            B.append([sum(adj[i, k] * rows[k][c] for k in range(i, d)) % Q
                      for c in range(d_src)])
    exps = local_elementary_divisors(B, q, m)
    # the index of the kernel of a map Z^n -> (Z/q^m)^r with local divisors
    # q^e_i is prod q^(m - e_i)
    return sum(m - min(e, m) for e in exps)

"""The Pfaffian quadric y1*y6 - y2*y5 + y3*y4 = 0 in P^5 over F_q.

Points, lines and planes on the quadric are found by enumerating reduced
row-echelon bases over F_q and testing every point of each candidate
subspace. Planes fall into two rulings, told apart by the parity of the
dimension of their intersections.
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np
import sympy

from .combinat import FlagType, gauss_binom
from .utils.misc import check_budget, process_int, process_prime, \
    IntegrityError

logger = logging.getLogger(__name__)

GEOMETRY_BUDGET = 10**6

def pfaffian(y):
    """Return y1*y6 - y2*y5 + y3*y4 in the coefficient ring of y.

    Works for integers, residues, sympy symbols and numpy arrays whose last
    axis has length 6.
    """
    if isinstance(y, np.ndarray):
        return y[..., 0] * y[..., 5] - y[..., 1] * y[..., 4] + \
            y[..., 2] * y[..., 3]
    if len(y) != 6:
        raise ValueError('y should have six coordinates.')
    return y[0] * y[5] - y[1] * y[4] + y[2] * y[3]

class RelationMatrix():
    """The antisymmetric 4-by-4 matrix M(y) of the brackets of F_{2,4}.

    Notes
    -----
    Entry (i, j) with i < j is the coordinate y_k attached to the pair
    (i, j) in lexicographic order, so [x_i, x_j] = M(y)_ij.
    """
    # position of y_k in the upper triangle
    slots = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

    def evaluate(self, y, modulus=None):
        """Return M(y) as a nested list, entries reduced modulo `modulus`."""
        if len(y) != 6:
            raise ValueError('y should have six coordinates.')
        M = [[0] * 4 for _ in range(4)]
        for (i, j), v in zip(self.slots, y):
            M[i][j] = v
            M[j][i] = -v
        if modulus is not None:
            M = [[x % modulus for x in row] for row in M]
        return M

    def symbolic(self):
        """Return M(y) over sympy symbols y1..y6, with the symbols."""
        ys = sympy.symbols('y1:7')
        return sympy.Matrix(self.evaluate(ys)), ys

    def pfaffian(self, y):
        return pfaffian(y)

# -- F_q linear algebra -----------------------------------------------------

def rref_mod(rows, q):
    """Return (basis, pivots) of the reduced row-echelon form of rows mod q."""
    mat = [[x % q for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots, r = [], 0
    for c in range(ncols):
        k = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if k is None:
            continue
        mat[r], mat[k] = mat[k], mat[r]
        inv = pow(mat[r][c], -1, q)
        mat[r] = [x * inv % q for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [(x - f * y) % q for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)

def rank_mod(rows, q):
    if len(rows) == 0:
        return 0
    return len(rref_mod(rows, q)[1])

def iter_rref(k, n, q):
    """Yield every k-by-n reduced row-echelon matrix of rank k over F_q."""
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n)
                if c not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, c in enumerate(pivots):
                rows[r][c] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield tuple(tuple(row) for row in rows)

@dataclass(frozen=True)
class ProjSubspace:
    """A projective subspace of P^(n-1)(F_q) given by its RREF basis.

    Attributes
    ----------
    q : int
        the field size
    basis : tuple
        rows of the reduced row-echelon basis
    """
    q: int
    basis: tuple

    @classmethod
    def span(cls, vectors, q):
        basis, _ = rref_mod(vectors, q)
        if not basis:
            raise ValueError('the zero space has no projectivisation.')
        return cls(q, basis)

    @property
    def dim(self):
        """Projective dimension."""
        return len(self.basis) - 1

    def points(self):
        """Return the normalised points as an array of shape (N, n)."""
        k, q = len(self.basis), self.q
        B = np.array(self.basis, dtype=np.int64)
        coeffs = []
        for lead in range(k):
            for tail in itertools.product(range(q), repeat=k - lead - 1):
                coeffs.append((0,) * lead + (1,) + tail)
        return np.dot(np.array(coeffs, dtype=np.int64), B) % q

    def intersection_dim(self, other):
        """Vector-space dimension of the intersection with `other`."""
        stacked = list(self.basis) + list(other.basis)
        return len(self.basis) + len(other.basis) - rank_mod(stacked, self.q)

def on_quadric(subspace):
    """Return True if every point of `subspace` satisfies pf = 0."""
    return bool(np.all(pfaffian(subspace.points()) % subspace.q == 0))

def enumerate_quadric(q, dim, budget=GEOMETRY_BUDGET):
    """Return the projective subspaces of dimension `dim` on the quadric.

    Parameters
    ----------
    q : int
        a prime
    dim : int
        0 for points, 1 for lines, 2 for planes
    budget : int, optional
        largest Grassmannian scanned (default 1e6)

    Returns
    -------
    found : frozenset of ProjSubspace

    Raises
    ------
    EnumerationBudgetError
        if the Grassmannian of candidates exceeds `budget`
    """
    q = process_prime(q)
    if dim not in (0, 1, 2):
        raise ValueError('dim should be 0, 1 or 2.')
    size = gauss_binom(6, dim + 1).value_at(q)
    check_budget(size, budget, 'Grassmannian of {}-spaces in F_{}^6'.format(
        dim + 1, q))
    logger.debug('scanning %d candidate %d-spaces over F_%d', size, dim + 1,
                 q)
    found = []
    for basis in iter_rref(dim + 1, 6, q):
        S = ProjSubspace(q, basis)
        if on_quadric(S):
            found.append(S)
    return frozenset(found)

def anchor_planes(q):
    """Return the representative planes <e1,e2,e3> and <e4,e5,e6>."""
    e = np.eye(6, dtype=np.int64).tolist()
    return (ProjSubspace.span(e[:3], q), ProjSubspace.span(e[3:], q))

def classify_rulings(planes):
    """Split the planes of the quadric into its two rulings.

    Two planes lie in the same ruling iff their intersection has odd vector
    dimension (even projective dimension). The class of <e1,e2,e3> is
    ruling A, the class of <e4,e5,e6> ruling B.

    Parameters
    ----------
    planes : iterable of ProjSubspace
        the full plane set from `enumerate_quadric`

    Returns
    -------
    ruling_a, ruling_b : frozenset

    Raises
    ------
    IntegrityError
        if the relation is not an equivalence with two classes
    """
    planes = sorted(planes, key=lambda S: S.basis)
    if not planes:
        raise ValueError('no planes given.')
    q = planes[0].q
    anchor_a, anchor_b = anchor_planes(q)
    if anchor_a not in planes or anchor_b not in planes:
        raise IntegrityError('anchor planes missing from the plane set.')
    side = [anchor_a.intersection_dim(P) % 2 == 1 for P in planes]
    for i, j in itertools.combinations(range(len(planes)), 2):
        same = planes[i].intersection_dim(planes[j]) % 2 == 1
        if same != (side[i] == side[j]):
            raise IntegrityError('plane ruling relation is not two-colourable.')
    ruling_a = frozenset(P for P, s in zip(planes, side) if s)
    ruling_b = frozenset(P for P, s in zip(planes, side) if not s)
    if anchor_b in ruling_a:
        raise IntegrityError('anchor planes fell into the same ruling.')
    return ruling_a, ruling_b

def stacked_rank(vectors, q):
    """Return the F_q-rank of g -> (g M(v_1), g M(v_2), ...) on F_q^4."""
    q = process_int(q, 'q', minimum=2)
    R = RelationMatrix()
    blocks = [np.array(R.evaluate(list(v), modulus=q), dtype=np.int64)
              for v in vectors]
    if not blocks:
        return 0
    return rank_mod(np.hstack(blocks).tolist(), q)

def count_flags_brute(q, ft, budget=GEOMETRY_BUDGET):
    """Count flags V_(i_1) < ... < V_(i_l) of type ft in F_q^(m+1).

    Subspaces of each dimension are enumerated as RREF bases and chained by
    an incidence count.

    Raises
    ------
    EnumerationBudgetError
        if the subspaces to enumerate exceed `budget`
    """
    q = process_prime(q)
    if not isinstance(ft, FlagType):
        raise TypeError('ft should be a FlagType.')
    n = ft.m + 1
    if not ft.I:
        return 1
    size = sum(gauss_binom(n, i).value_at(q) for i in ft.I)
    check_budget(size, budget, 'flag subspaces in F_{}^{}'.format(q, n))
    levels = [list(iter_rref(i, n, q)) for i in ft.I]
    counts = {U: 1 for U in levels[0]}
    for dim, level in zip(ft.I[1:], levels[1:]):
        nxt = {}
        for V in level:
            total = 0
            for U, c in counts.items():
                if rank_mod(list(U) + list(V), q) == dim:
                    total += c
            if total:
                nxt[V] = total
        counts = nxt
    return sum(counts.values())

"""Good chambers and the per-vertex expansions they select.

A chamber assigns ``alpha_v = +-1`` to every non-distinguished vertex whose
degree is not 2.  At a leaf the factor ``(y-z)/((1-y)(1-z))`` is expanded in
``|y|^alpha < 1, |z|^alpha > 1``; at a vertex of degree ``2+K`` the factor
``((1-y)(1-z)/(y-z))^K`` is expanded in ``|y/z|^alpha < 1``.

Every expansion term can be written as ``y^(alpha*a) z^(-alpha*b)`` with
``a, b >= 0``; the enumeration core works in these ``(a, b)`` coordinates.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .plumbing import SingularMatrix, build_matrix, det, inverse, solve_linear


@dataclass(frozen=True)
class VertexTerm:
    yexp: int
    zexp: int
    coeff: int


@dataclass(frozen=True)
class ChamberAssignment:
    """Signs per vertex id.

    ``sign`` is +1 for the chamber conventionally called alpha_plus, -1 for its
    negation and 0 when no such label applies.  It also fixes the expansion of
    the prefactor of an isolated distinguished vertex (framed unknot).
    ``conjectural`` marks chambers whose goodness is not proved.
    """

    alpha: tuple
    sign: int = 0
    conjectural: bool = False
    simplex_min: object = None

    def __post_init__(self):
        items = self.alpha.items() if isinstance(self.alpha, dict) else self.alpha
        object.__setattr__(self, "alpha", tuple(sorted((int(k), int(v)) for k, v in items)))

    def as_dict(self):
        return dict(self.alpha)

    def negate(self):
        return ChamberAssignment({k: -v for k, v in self.alpha}, -self.sign, self.conjectural,
                                 self.simplex_min)

    def vector(self, ids):
        d = self.as_dict()
        return [d[v] for v in ids if v in d]


# -----------------------------------------------------------------------------
# copositivity
# -----------------------------------------------------------------------------

def simplex_minimum(X):
    """Exact ``min v^T X v`` over the standard simplex.

    Every minimizer can be moved, without changing the value, to one whose
    support S has a nonsingular KKT system
    ``X_SS v_S = lam * 1,  sum(v_S) = 1``.  Enumerating all supports and
    keeping the feasible (v_S >= 0) solutions therefore finds the minimum.
    """
    n = len(X)
    if n == 0:
        return None
    X = [[Fraction(x) for x in r] for r in X]
    best = None
    for k in range(1, n + 1):
        for S in itertools.combinations(range(n), k):
            A = [[X[i][j] for j in S] + [Fraction(-1)] for i in S]
            A.append([Fraction(1)] * k + [Fraction(0)])
            rhs = [Fraction(0)] * k + [Fraction(1)]
            sol = solve_linear(A, rhs)
            if sol is None:
                continue
            v = sol[:k]
            if any(x < 0 for x in v):
                continue
            lam = sol[k]
            if best is None or lam < best:
                best = lam
    return best


def is_copositive(X):
    """Strict copositivity: ``v^T X v > 0`` for nonzero ``v >= 0``."""
    m = simplex_minimum(X)
    return m is None or m > 0


# -----------------------------------------------------------------------------
# good chambers
# -----------------------------------------------------------------------------

def chamber_vertices(g):
    deg = g.degrees()
    return [v for v in g.ids if deg[v] != 2 and v != g.distinguished]


def pairing_matrix(g):
    """The matrix whose quadratic form governs the exponent, keyed by vertex
    ids: ``B^{-1}`` for closed graphs, ``B'^{-1}`` (distinguished row and
    column removed) for knot complements."""
    B = build_matrix(g)
    if g.distinguished is None:
        ids = list(g.ids)
        M = B.rows()
    else:
        ids = [v for v in g.ids if v != g.distinguished]
        keep = [g.index(v) for v in ids]
        M = [[B.rows()[i][j] for j in keep] for i in keep]
    if not ids:
        return {}
    if det(M) == 0:
        raise SingularMatrix("pairing matrix is singular")
    Minv = inverse(M)
    return {(u, v): Minv[i][j] for i, u in enumerate(ids) for j, v in enumerate(ids)}


def check_chamber(g, alpha, pair=None):
    """Test the chamber conditions for ``alpha``; returns ``(ok, minimum)``.

    ``minimum`` is the simplex minimum of the high-degree block of X (None
    when there are no vertices of degree > 2).
    """
    if pair is None:
        pair = pairing_matrix(g)
    deg = g.degrees()
    verts = chamber_vertices(g)
    leaves = [v for v in verts if deg[v] == 1]
    highs = [v for v in verts if deg[v] > 2]

    def val(i, j):
        return pair[(i, j)] * alpha[i] * alpha[j]

    # a leaf expansion has pure y or pure z terms, so the (i, i) entry never
    # reaches the exponent and is skipped
    for i in leaves:
        for j in verts:
            if j == i:
                continue
            if val(i, j) > 0 or (j in leaves and val(i, j) >= 0):
                return False, None
    X = [[-val(i, j) for j in highs] for i in highs]
    m = simplex_minimum(X)
    if m is not None and m <= 0:
        return False, None
    return True, m


def find_good_chambers(g):
    """All good sign vectors, ordered so that each is followed by its negation.

    The first chamber vertex (in graph order) carries +1 in the first member
    of each pair; that member gets ``sign=+1``.  Knot complements use
    ``B'^{-1}`` in place of ``B^{-1}``.
    """
    pair = pairing_matrix(g)
    verts = chamber_vertices(g)
    out = []
    for signs in itertools.product((1, -1), repeat=len(verts)):
        if verts and signs[0] != 1:
            continue
        alpha = dict(zip(verts, signs))
        ok, m = check_chamber(g, alpha, pair)
        if ok:
            plus = ChamberAssignment(alpha, 1, False, m)
            out.append(plus)
            out.append(plus.negate())
    return out


def chamber_is_good(g, chamber):
    alpha = chamber.as_dict()
    if set(alpha) != set(chamber_vertices(g)):
        return False
    return check_chamber(g, alpha)[0]


# -----------------------------------------------------------------------------
# expansion terms
# -----------------------------------------------------------------------------

def high_coeff(K, a, b):
    """Coefficient of the ``(a, b)`` term of ``((1-y)(1-z)/(y-z))^K`` in the
    alpha = +1 expansion; the alpha = -1 coefficient is ``(-1)^K`` times it.

    In the alpha = +1 chamber the factor is
    ``(1 - 1/z)^K (1 - y)^K sum_r C(r+K-1, K-1) (y/z)^r`` and the term
    ``y^(j+r) z^-(i+r)`` has ``a = j + r``, ``b = i + r``.
    """
    total = 0
    for r in range(max(0, a - K, b - K), min(a, b) + 1):
        j, i = a - r, b - r
        total += (-1) ** (i + j) * comb(K, i) * comb(K, j) * comb(r + K - 1, K - 1)
    return total


def leaf_coeff(a, b):
    return 1 if a == 0 or b == 0 else 0


def isolated_coeff(a, b):
    """Coefficient in the square of the leaf expansion (isolated vertex)."""
    if a and b:
        return 2
    return a + b + 1


def vertex_coeff(K, alpha, a, b):
    """Coefficient of ``y^(alpha a) z^(-alpha b)`` at a vertex of degree 2+K
    (K = -1 for a leaf, K = -2 for an isolated vertex)."""
    if K == -1:
        return alpha * leaf_coeff(a, b)
    if K == -2:
        return isolated_coeff(a, b)
    c = high_coeff(K, a, b)
    return c * alpha ** K


def _bound_of(bound):
    return bound.ydeg if hasattr(bound, "ydeg") else int(bound)


def degree1_terms(alpha, bound):
    """Leaf expansion terms with ``|exponent| <= bound`` in order of size."""
    D = _bound_of(bound)
    yield VertexTerm(0, 0, alpha)
    for r in range(1, D + 1):
        yield VertexTerm(alpha * r, 0, alpha)
        yield VertexTerm(0, -alpha * r, alpha)


def high_degree_terms(K, alpha, bound):
    """Merged expansion terms of ``((1-y)(1-z)/(y-z))^K`` within the bound,
    in nondecreasing ``|yexp| + |zexp|``."""
    if K < 1:
        raise ValueError("K must be >= 1")
    D = _bound_of(bound)
    for total in range(0, 2 * D + 1):
        for a in range(max(0, total - D), min(D, total) + 1):
            b = total - a
            if abs(a - b) > K:
                continue
            c = vertex_coeff(K, alpha, a, b)
            if c:
                yield VertexTerm(alpha * a, -alpha * b, c)

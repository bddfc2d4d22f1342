"""The closed-manifold series Zhat_{b,c}(q) and the shared lattice enumerator.

Every per-vertex expansion term is written as ``y^(alpha a) z^(-alpha b)`` with
``a, b >= 0`` (see :mod:`superzhat.chambers`), i.e. ``l1_v = -alpha_v a_v`` and
``l2_v = alpha_v b_v``.  The q-exponent of a tuple is then

    E = sum_{u,v} a_u X_uv b_v + const,   X = -D_alpha G D_alpha,

with ``G = B^{-1}`` for closed graphs.  In a good chamber every entry of X
touching a leaf is >= 0, so adding a leaf never lowers E; the high-degree
block is copositive, which bounds its radii.  Both facts are used to prune,
and only when verified for the problem at hand.
"""

import math
import os
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .chambers import (ChamberAssignment, chamber_is_good, isolated_coeff, simplex_minimum,
                       vertex_coeff)
from .plumbing import (LabelLattice, LabelPair, SingularMatrix, build_matrix, det,
                       enumerate_labels, inverse, signature_of)
from .qseries import TriSeries, Window

RADIUS_CAP_ENV = "SUPERZHAT_RADIUS_CAP"
DEFAULT_RADIUS_CAP = 2 ** 14
START_RADIUS = 8


class NotClosed(ValueError):
    pass


class BadChamber(ValueError):
    pass


class RadiusCapExceeded(RuntimeError):
    pass


def radius_cap():
    val = os.environ.get(RADIUS_CAP_ENV)
    return int(val) if val else DEFAULT_RADIUS_CAP


# -----------------------------------------------------------------------------
# lattice problem
# -----------------------------------------------------------------------------

class LatticeProblem:
    """Everything the enumerator needs, in integer form.

    Parameters
    ----------
    Ks : list of int
        ``deg - 2`` per active vertex (``-1`` for a leaf).
    alphas : list of int
    G : list of list of Fraction
        Pairing matrix restricted to the active vertices.
    filters1, filters2 : list of (coeffs, target, modulus)
        Congruences ``sum coeffs_u * l_u == target (mod modulus)`` for l1, l2.
    const : Fraction
        Added to every exponent.
    out1, out2 : (list of Fraction, Fraction) or None
        Output exponents ``sum w_u l_u + offset`` for knots.
    sign : int
    window : Window
    """

    def __init__(self, Ks, alphas, G, filters1, filters2, const, sign, window,
                 out1=None, out2=None):
        k = len(Ks)
        self.k = k
        self.Ks = list(Ks)
        self.alphas = list(alphas)
        self.sign = sign
        self.window = window
        self.const = Fraction(const)
        den = 1
        for row in G:
            for x in row:
                den = math.lcm(den, Fraction(x).denominator)
        for part in (out1, out2):
            if part is not None:
                for x in part[0]:
                    den = math.lcm(den, Fraction(x).denominator)
        self.den = den
        al = self.alphas
        # X = -D_alpha G D_alpha, scaled by den
        self.X = [[int(-Fraction(G[u][v]) * al[u] * al[v] * den) for v in range(k)]
                  for u in range(k)]
        # filters in (a, b) coordinates
        self.f1 = [([(-al[u] * c) % m for u, c in enumerate(cs)], t % m, m) for cs, t, m in filters1]
        self.f2 = [([(al[u] * c) % m for u, c in enumerate(cs)], t % m, m) for cs, t, m in filters2]
        self.knot = out1 is not None
        if self.knot:
            self.w1 = [int(-Fraction(out1[0][u]) * al[u] * den) for u in range(k)]
            self.w2 = [int(Fraction(out2[0][u]) * al[u] * den) for u in range(k)]
            self.y0 = Fraction(out1[1])
            self.z0 = Fraction(out2[1])
        self.order = sorted(range(k), key=lambda u: (self.Ks[u] == -1, u))
        self.nhigh = sum(1 for K in self.Ks if K != -1)
        self._certify()

    def _certify(self):
        k, X, Ks = self.k, self.X, self.Ks
        leaf = [K == -1 for K in Ks]
        self.monotone = all(X[u][v] >= 0 for u in range(k) for v in range(k)
                            if u != v and (leaf[u] or leaf[v]))
        highs = [u for u in range(k) if not leaf[u]]
        self.high_bound = None
        if self.monotone and highs and all(Ks[u] > 0 for u in highs):
            Xh = [[Fraction(X[u][v]) for v in highs] for u in highs]
            mu = simplex_minimum(Xh)
            if mu is not None and mu > 0:
                Kmax = max(Ks[u] for u in highs)
                rowsum = max(sum(abs(X[u][v]) for v in highs) for u in highs)
                L = 2 * Kmax * rowsum
                C0 = Kmax * Kmax * sum(abs(X[u][v]) for u in highs for v in highs)
                T = (self.window.qmax - self.const) * self.den
                S = max(0, math.ceil(Fraction(L) / (2 * mu)))
                while mu * S * S - L * S - C0 < T:
                    S += 1
                self.high_bound = S
        # outputs that grow monotonically bound the radii too
        self.mono1 = self.mono2 = False
        if self.knot:
            self.mono1 = all(w >= 0 for w in self.w1) or all(w <= 0 for w in self.w1)
            self.mono2 = all(w >= 0 for w in self.w2) or all(w <= 0 for w in self.w2)


def enumerate_problem(P, R):
    """Sum all tuples of total weight ``sum(a_v + b_v) <= R`` inside the window.

    Returns a dict ``{(yexp, zexp, qexp): coeff}``.
    """
    k = P.k
    den = P.den
    X = P.X
    Ks, alphas = P.Ks, P.alphas
    order = P.order
    T = (P.window.qmax - P.const) * den        # need E_int < T
    D = P.window.ydeg
    out = defaultdict(int)
    Xb = [0] * k                                # sum_v X[u][v] b_v over assigned v
    aX = [0] * k                                # sum_u a_u X[u][v] over assigned u
    n1 = len(P.f1)
    n2 = len(P.f2)
    res1 = [0] * n1
    res2 = [0] * n2
    if P.knot:
        ylim_hi = (D - P.y0) * den
        ylim_lo = (-D - P.y0) * den
        zlim_hi = (D - P.z0) * den
        zlim_lo = (-D - P.z0) * den
        w1, w2 = P.w1, P.w2
    high_bound = P.high_bound

    def emit(E, ys, zs, coeff):
        q = Fraction(E, den) + P.const
        if P.knot:
            y = Fraction(ys, den) + P.y0
            z = Fraction(zs, den) + P.z0
            if y.denominator != 1 or z.denominator != 1:
                return
            key = (int(y), int(z), q)
        else:
            key = (0, 0, q)
        out[key] += coeff

    def y_ok(ys):
        return ylim_lo <= ys <= ylim_hi

    def z_ok(zs):
        return zlim_lo <= zs <= zlim_hi

    def candidates(u, wt, E, ys, zs):
        """(a, b, coeff) choices at active vertex u, pruned."""
        K = Ks[u]
        al = alphas[u]
        room = R - wt
        if K == -1:
            yield 0, 0, al
            # y-branch: a = r
            kap = Xb[u]
            r = 1
            while r <= room:
                if P.monotone and E + r * kap >= T:
                    break
                if P.knot and P.mono1 and not y_ok(ys + r * w1[u]):
                    break
                yield r, 0, al
                r += 1
            kap = aX[u]
            r = 1
            while r <= room:
                if P.monotone and E + r * kap >= T:
                    break
                if P.knot and P.mono2 and not z_ok(zs + r * w2[u]):
                    break
                yield 0, r, al
                r += 1
            return
        if K == -2:
            for a in range(room + 1):
                for b in range(room - a + 1):
                    if P.monotone and X[u][u] >= 0 and E + a * X[u][u] * b >= T:
                        break
                    yield a, b, isolated_coeff(a, b)
            return
        amax = room
        if high_bound is not None:
            amax = min(amax, high_bound + K)
        for tot in range(0, room + 1):
            lo = max(0, tot - amax)
            hi = min(amax, tot)
            if lo > hi:
                if tot > 2 * amax:
                    break
                continue
            for a in range(lo, hi + 1):
                b = tot - a
                if abs(a - b) > K:
                    continue
                if P.knot:
                    if P.mono1 and not y_ok(ys + a * w1[u]):
                        continue
                    if P.mono2 and not z_ok(zs + b * w2[u]):
                        continue
                c = vertex_coeff(K, al, a, b)
                if c:
                    yield a, b, c

    def rec(pos, wt, E, ys, zs, coeff):
        if pos == P.nhigh and P.monotone and pos > 0 and E >= T:
            return
        if pos == k:
            for i in range(n1):
                if res1[i] != P.f1[i][1]:
                    return
            for i in range(n2):
                if res2[i] != P.f2[i][1]:
                    return
            if P.knot and not (y_ok(ys) and z_ok(zs)):
                return
            if E >= T:
                return
            emit(E, ys, zs, coeff)
            return
        u = order[pos]
        if pos == k - 1 and Ks[u] == -1 and not P.knot:
            last_leaf(u, wt, E, coeff)
            return
        Xu = X[u]
        for a, b, c in candidates(u, wt, E, ys, zs):
            dE = a * Xb[u] + b * aX[u] + a * Xu[u] * b
            if b:
                for v in range(k):
                    Xb[v] += X[v][u] * b
            if a:
                for v in range(k):
                    aX[v] += a * Xu[v]
            for i in range(n1):
                res1[i] = (res1[i] + P.f1[i][0][u] * a) % P.f1[i][2]
            for i in range(n2):
                res2[i] = (res2[i] + P.f2[i][0][u] * b) % P.f2[i][2]
            rec(pos + 1, wt + a + b, E + dE,
                ys + (a * w1[u] if P.knot else 0), zs + (b * w2[u] if P.knot else 0),
                coeff * c)
            for i in range(n1):
                res1[i] = (res1[i] - P.f1[i][0][u] * a) % P.f1[i][2]
            for i in range(n2):
                res2[i] = (res2[i] - P.f2[i][0][u] * b) % P.f2[i][2]
            if b:
                for v in range(k):
                    Xb[v] -= X[v][u] * b
            if a:
                for v in range(k):
                    aX[v] -= a * Xu[v]

    def residue_ok(filters, res, u, step):
        # r values (mod the lcm of moduli) for which the filters pass
        if not filters:
            return 1, (0,)
        M = 1
        for _, _, m in filters:
            M = math.lcm(M, m)
        good = tuple(r for r in range(M)
                     if all((res[i] + f[0][u] * r * step) % f[2] == f[1]
                            for i, f in enumerate(filters)))
        return M, good

    def count_in(M, good, rmax):
        # number of r in [1, rmax] with r mod M in good
        full, rest = divmod(rmax, M)
        return full * len(good) + sum(1 for g in good if 1 <= g <= rest)

    def last_leaf(u, wt, E, coeff):
        # the final vertex is a leaf of a closed problem: each branch adds r*kappa
        al = alphas[u]
        room = R - wt
        base_ok1 = all(res1[i] == f[1] for i, f in enumerate(P.f1))
        base_ok2 = all(res2[i] == f[1] for i, f in enumerate(P.f2))
        if base_ok1 and base_ok2 and E < T:
            emit(E, 0, 0, coeff * al)
        for kap, fil, res, other_ok in ((Xb[u], P.f1, res1, base_ok2), (aX[u], P.f2, res2, base_ok1)):
            if not other_ok or room < 1:
                continue
            M, good = residue_ok(fil, res, u, 1)
            if not good:
                continue
            if kap == 0:
                if E < T:
                    n = count_in(M, good, room)
                    if n:
                        emit(E, 0, 0, coeff * al * n)
                continue
            r = 1
            while r <= room:
                Er = E + r * kap
                if P.monotone and Er >= T:
                    break
                if r % M in good and Er < T:
                    emit(Er, 0, 0, coeff * al)
                r += 1

    rec(0, 0, 0, 0, 0, P.sign)
    return {key: c for key, c in out.items() if c}


def stable_enumeration(P, comparable, rounds=2, start=START_RADIUS, cap=None):
    """Double the radius until ``rounds`` consecutive doublings leave the
    comparable part unchanged.  Returns ``(terms, radius)``."""
    cap = radius_cap() if cap is None else cap
    R = min(start, cap)
    prev = enumerate_problem(P, R)
    same = 0
    while same < rounds:
        if 2 * R > cap:
            raise RadiusCapExceeded(f"no stable result below radius cap {cap}")
        R *= 2
        cur = enumerate_problem(P, R)
        if comparable(cur) == comparable(prev):
            same += 1
        else:
            same = 0
        prev = cur
    return prev, R


# -----------------------------------------------------------------------------
# closed manifolds
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ZhatResult:
    series: TriSeries
    label: LabelPair
    chamber: ChamberAssignment
    enumRadius: int
    stable: bool

    @property
    def constant(self):
        """Accumulated q^0 coefficient (not comparable across computations)."""
        return self.series.coeff(0, 0, 0)

    def q_part(self):
        """Coefficients at nonzero powers of q."""
        return {e: c for e, c in self.series.q_coefficients().items() if e != 0}


def congruence_filters(M, target_vec, active_idx):
    """Congruence rows for ``l - target in M Z^k`` restricted to active
    coordinates (the other coordinates of l vanish)."""
    L = LabelLattice(M)
    t = [sum(a * b for a, b in zip(row, target_vec)) for row in L.U]
    filters = []
    for i, d in enumerate(L.d):
        if d == 1:
            continue
        if d == 0:
            raise SingularMatrix("lattice has a free direction")
        filters.append(([L.U[i][j] for j in active_idx], t[i], d))
    return filters


def _closed_problem(g, label, chamber, window):
    B = build_matrix(g)
    if det(B) == 0:
        raise SingularMatrix("closed graph with singular B")
    Binv = inverse(B)
    deg = g.degrees()
    alpha = chamber.as_dict()
    active = [v for v in g.ids if deg[v] != 2]
    idx = [g.index(v) for v in active]
    Ks = [deg[v] - 2 for v in active]
    G = [[Binv[i][j] for j in idx] for i in idx]
    f1 = congruence_filters(B.rows(), label.bvec, idx)
    f2 = congruence_filters(B.rows(), label.cvec, idx)
    pi = signature_of(B).positives
    return LatticeProblem(Ks, [alpha[v] for v in active], G, f1, f2, 0, (-1) ** pi, window)


def _nonzero_q(terms):
    return {k: c for k, c in terms.items() if k[2] != 0}


def zhat_closed(g, label, chamber, window):
    """Zhat_{b,c} of the closed plumbed manifold of ``g``.

    The q^0 coefficient diverges with the radius; it is reported as
    accumulated at the final radius and excluded from the stability test.
    """
    if not g.is_closed():
        raise NotClosed("graph has a distinguished vertex")
    if not chamber_is_good(g, chamber):
        raise BadChamber(f"chamber {chamber.alpha} is not good")
    if not isinstance(window, Window):
        window = Window(window, 0)
    window = Window(window.qmax, 0)
    P = _closed_problem(g, label, chamber, window)
    terms, R = stable_enumeration(P, _nonzero_q)
    return ZhatResult(TriSeries(terms, window), label, chamber, R, True)


def zhat_all_labels(g, chamber, window, threads=1):
    labels = enumerate_labels(build_matrix(g))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(zhat_closed, [g] * len(labels), labels,
                                  [chamber] * len(labels), [window] * len(labels)))
    else:
        results = [zhat_closed(g, lab, chamber, window) for lab in labels]
    return dict(zip(labels, results))

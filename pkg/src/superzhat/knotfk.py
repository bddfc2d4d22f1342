"""Knot-complement series Zhat_{b,c}(y, z, n, m, q) and the invariant F_K.

The distinguished vertex s is not integrated.  Write ``B'`` for B with row and
column s removed, ``G = B'^{-1}``, ``beta`` for column s without its diagonal
entry and ``S = det B / det B'``.  With ``l1 = B N`` (``N = n_vec + g``,
``b = B g``) one finds

    y_out = beta.G.l1' + N_s S,      q-exponent = l1'.G.l2' + N_s M_s S,

and ``n_vec`` is integral exactly when ``l1' - b' - n beta`` lies in
``B' Z^{s-1}``.  When B is singular, S = 0 and the label must lie in the
image of B.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .chambers import ChamberAssignment, chamber_is_good, find_good_chambers, leaf_coeff
from .plumbing import (LabelPair, SingularMatrix, build_matrix, det, inverse,
                       negative_continued_fraction, signature_of, slope_chain, solve_integer,
                       zero_label)
from .qseries import TriSeries, Window, series_add
from .zhat import BadChamber, LatticeProblem, congruence_filters, stable_enumeration


class DegenerateLabelForm(ValueError):
    pass


class InvalidSlope(ValueError):
    pass


class NotAMonomialMultiple(ValueError):
    pass


@dataclass(frozen=True)
class KnotSeries:
    series: TriSeries
    label: LabelPair
    nm: tuple
    chamber: object
    stable: bool
    graph: object = field(default=None, compare=False)
    enumRadius: int = field(default=0, compare=False)


# -----------------------------------------------------------------------------
# framed unknot and solid tori (closed forms)
# -----------------------------------------------------------------------------

def _leaf_terms(alpha, shift_y, shift_z, D):
    """``(y^a z^b, coeff)`` of the leaf expansion times ``y^shift_y z^shift_z``
    with both exponents in ``[-D, D]``."""
    out = {}
    if abs(shift_y) <= D and abs(shift_z) <= D:
        out[(shift_y, shift_z)] = alpha * leaf_coeff(0, 0)
    r = 1
    while True:
        y = shift_y + alpha * r
        z = shift_z - alpha * r
        hit = False
        if abs(y) <= D and abs(shift_z) <= D:
            out[(y, shift_z)] = alpha
            hit = True
        if abs(z) <= D and abs(shift_y) <= D:
            out[(shift_y, z)] = alpha
            hit = True
        if not hit and r > 2 * D + abs(shift_y) + abs(shift_z):
            break
        r += 1
    return out


def framed_unknot_series(p, b, c, n, m, chamber_sign, window):
    """The p-framed unknot: ``(-1)^pi q^{(pn+b)(pm+c)/p} y^{pn+b} z^{pm+c}``
    times the leaf factor expanded in the chamber (``pi = 1`` iff ``p > 0``).

    For ``p = 0`` only ``b = c = 0`` is allowed and the result is the bare
    expansion.
    """
    if chamber_sign not in (1, -1):
        raise BadChamber("chamber sign must be +1 or -1")
    if p == 0:
        if b or c:
            raise DegenerateLabelForm("0-framed unknot needs b = c = 0")
        qexp, ys, zs, sign = Fraction(0), 0, 0, 1
    else:
        ys, zs = p * n + b, p * m + c
        qexp = Fraction(ys * zs, p)
        sign = -1 if p > 0 else 1
    terms = {}
    if qexp < window.qmax:
        for (y, z), co in _leaf_terms(chamber_sign, ys, zs, window.ydeg).items():
            terms[(y, z, qexp)] = sign * co
    return TriSeries(terms, window, True, True)


@dataclass(frozen=True)
class ChainData:
    """Linear chain realizing the slope ``p/r`` with its sign data."""

    p: int
    r: int
    chain: object
    pi: int
    epsilon: int


def chain_data(p, r):
    from math import gcd
    if p == 0 or r < 1 or gcd(p, r) != 1:
        raise InvalidSlope(f"invalid slope {p}/{r}")
    chain = slope_chain(p, r)
    B = build_matrix(chain)
    pi = signature_of(B).positives
    eps = (1 if p > 0 else -1) * (-1) ** (pi + 1)
    Binv = inverse(B)
    s = chain.size
    if Binv[0][0] != Fraction(r, p) or Binv[s - 1][0] != Fraction(eps, p):
        raise InvalidSlope(f"chain for {p}/{r} does not have the expected inverse entries")
    return ChainData(p, r, chain, pi, eps)


def solid_torus_series(p, r, b, c, n, m, chamber_sign, window):
    """Closed-form series of the solid torus ``S_{p/r}``.

    Parameters
    ----------
    p, r : int
        Slope ``p/r`` with ``r >= 1`` and ``gcd(p, r) = 1``.
    b, c : int
        Scalar labels; for a vector label ``b_vec`` on the chain the scalar
        is ``p (B^{-1} b_vec)_1``.
    n, m : int
    chamber_sign : +1 or -1
    window : Window

    Returns
    -------
    TriSeries
    """
    cd = chain_data(p, r)
    eps, pi = cd.epsilon, cd.pi
    P, Q = p * n + b, p * m + c
    qexp = Fraction(P * Q, p * r)
    D = window.ydeg
    terms = defaultdict(int)
    if qexp < window.qmax:
        if chamber_sign == 1:
            sign = (-1) ** pi
            yfam = [(P + eps * j, Q) for j in range(1, r * (D + 1) + abs(P) + 1)]
            zfam = [(P, Q - eps * j) for j in range(0, r * (D + 1) + abs(Q) + 1)]
        elif chamber_sign == -1:
            sign = (-1) ** (pi + 1)
            yfam = [(P - eps * j, Q) for j in range(0, r * (D + 1) + abs(P) + 1)]
            zfam = [(P, Q + eps * j) for j in range(1, r * (D + 1) + abs(Q) + 1)]
        else:
            raise BadChamber("chamber sign must be +1 or -1")
        for ynum, znum in yfam + zfam:
            if ynum % r or znum % r:
                continue
            y, z = ynum // r, znum // r
            if abs(y) <= D and abs(z) <= D:
                terms[(y, z, qexp)] += sign
    return TriSeries(dict(terms), window, True, True)


def chain_scalar_label(p, r, bvec):
    """Scalar label ``p (B^{-1} b_vec)_1`` of a vector label on the chain."""
    cd = chain_data(p, r)
    Binv = inverse(build_matrix(cd.chain))
    val = p * sum(Binv[0][j] * x for j, x in enumerate(bvec))
    if val.denominator != 1:
        raise DegenerateLabelForm("scalar label is not integral")
    return int(val)


# -----------------------------------------------------------------------------
# the general engine
# -----------------------------------------------------------------------------

def _knot_problem(g, label, n, m, chamber, window):
    B = build_matrix(g).rows()
    s = g.index(g.distinguished)
    others = [v for v in g.ids if v != g.distinguished]
    keep = [g.index(v) for v in others]
    Bp = [[B[i][j] for j in keep] for i in keep]
    detBp = det(Bp)
    if detBp == 0:
        raise SingularMatrix("B with the distinguished vertex removed is singular")
    G = inverse(Bp)
    beta = [B[i][s] for i in keep]
    bvec, cvec = list(label.bvec), list(label.cvec)
    detB = det(B)
    if detB != 0:
        Binv = inverse(B)
        S = Fraction(detB, detBp)
        Ns = n + sum(Binv[s][j] * bvec[j] for j in range(len(B)))
        Ms = m + sum(Binv[s][j] * cvec[j] for j in range(len(B)))
        y0, z0, const = Ns * S, Ms * S, Ns * Ms * S
    else:
        for vec in (bvec, cvec):
            if solve_integer(B, vec) is None:
                raise DegenerateLabelForm(f"label {vec} is not in the image of singular B")
        y0 = z0 = const = Fraction(0)
    deg = g.degrees()
    alpha = chamber.as_dict()
    active = [k for k, v in enumerate(others) if deg[v] != 2]
    Ks = [deg[others[k]] - 2 for k in active]
    Gact = [[G[i][j] for j in active] for i in active]
    bG = [sum(beta[i] * G[i][j] for i in range(len(others))) for j in range(len(others))]
    t1 = [bvec[k] + n * beta[i] for i, k in enumerate(keep)]
    t2 = [cvec[k] + m * beta[i] for i, k in enumerate(keep)]
    f1 = congruence_filters(Bp, t1, active)
    f2 = congruence_filters(Bp, t2, active)
    sign = (-1) ** signature_of(B).positives
    out1 = ([bG[j] for j in active], y0)
    out2 = ([bG[j] for j in active], z0)
    return LatticeProblem(Ks, [alpha[others[k]] for k in active], Gact, f1, f2, const, sign,
                          window, out1, out2)


def zhat_knot(g, label=None, n=0, m=0, chamber=None, window=None, rounds=2):
    """Zhat_{b,c}(Y_K; y, z, n, m, q) in one chamber.

    A single distinguished vertex (framed unknot) is evaluated in closed
    form; its chamber only fixes the sign of the expansion.
    """
    if g.distinguished is None:
        raise ValueError("graph has no distinguished vertex")
    if window is None:
        raise ValueError("a window is required")
    if label is None:
        label = zero_label(g.size)
    if g.size == 1:
        sign = chamber.sign if chamber is not None else 1
        ser = framed_unknot_series(g.vertices[0][1], label.bvec[0], label.cvec[0], n, m,
                                   sign, window)
        return KnotSeries(ser, label, (n, m), chamber, True, g, 0)
    if chamber is None or not chamber_is_good(g, chamber):
        raise BadChamber(f"chamber {getattr(chamber, 'alpha', None)} is not good")
    P = _knot_problem(g, label, n, m, chamber, window)
    terms, R = stable_enumeration(P, lambda t: t, rounds=rounds)
    return KnotSeries(TriSeries(terms, window), label, (n, m), chamber, True, g, R)


def knot_chambers(g):
    """The pair ``(alpha_plus, alpha_minus)`` used for F_K."""
    if g.size == 1:
        return ChamberAssignment({}, 1), ChamberAssignment({}, -1)
    found = find_good_chambers(g)
    if not found:
        raise BadChamber("no good chamber")
    return found[0], found[1]


# -----------------------------------------------------------------------------
# F_K and its decomposition
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class FkDecomposition:
    """``F = constant + sum f_{m,n}(q) (y^m/z^n - z^n/y^m)``.

    ``coeffs`` maps ``(m, n)`` to ``{qexp: coeff}``.
    """

    constant: object
    coeffs: dict

    @classmethod
    def from_series(cls, ser):
        const = Fraction(0)
        coeffs = defaultdict(dict)
        t = ser.terms
        for (y, z, q), c in ser.items():
            if y == 0 and z == 0:
                if q != 0:
                    raise ValueError(f"q-dependent constant term at q^{q}")
                const = c
                continue
            if y >= 0 and z <= 0:
                if t.get((-y, -z, q), 0) != -c:
                    raise ValueError(f"term y^{y} z^{z} q^{q} lacks its antisymmetric partner")
                coeffs[(y, -z)][q] = c
            elif not (y <= 0 and z >= 0):
                raise ValueError(f"term y^{y} z^{z} is not of the form y^m/z^n")
        return cls(const, {k: dict(sorted(v.items())) for k, v in sorted(coeffs.items())})

    def reconstruct(self, window):
        terms = {}
        if self.constant:
            terms[(0, 0, Fraction(0))] = self.constant
        for (a, b), qs in self.coeffs.items():
            for q, c in qs.items():
                terms[(a, -b, q)] = c
                terms[(-a, b, q)] = -c
        return TriSeries(terms, window)

    def q_independent(self):
        return {k: v[0] for k, v in self.coeffs.items() if 0 in v}


def fk(g, window, rounds=2, decompose=True):
    """F_K(y, z, q): both chamber halves at label (0, 0), n = m = 0.

    Returns ``(KnotSeries, FkDecomposition or None, (plus, minus))``.
    """
    plus, minus = knot_chambers(g)
    lab = zero_label(g.size)
    a = zhat_knot(g, lab, 0, 0, plus, window, rounds)
    b = zhat_knot(g, lab, 0, 0, minus, window, rounds)
    total = series_add(a.series, b.series)
    ks = KnotSeries(total, lab, (0, 0), None, a.stable and b.stable, g,
                    max(a.enumRadius, b.enumRadius))
    dec = FkDecomposition.from_series(total) if decompose else None
    return ks, dec, (a, b)


# -----------------------------------------------------------------------------
# boundary action
# -----------------------------------------------------------------------------

def boundary_action(ks, meridian_steps=(0, 0), longitude_steps=(0, 0)):
    """Act on the label by the boundary torus.

    Meridian steps add multiples of ``e_s`` to ``b`` and ``c``; longitude
    steps add multiples of ``B e_s`` and shift ``(n, m)`` back by the same
    amounts.  The series is recomputed from the graph.
    """
    g = ks.graph
    if g is None:
        raise ValueError("knot series carries no graph")
    s = g.index(g.distinguished)
    B = build_matrix(g).rows()
    gm, em = meridian_steps
    gl, el = longitude_steps
    b = [x + (gm if i == s else 0) + gl * B[i][s] for i, x in enumerate(ks.label.bvec)]
    c = [x + (em if i == s else 0) + el * B[i][s] for i, x in enumerate(ks.label.cvec)]
    n, m = ks.nm
    return zhat_knot(g, LabelPair(b, c), n - gl, m - el, ks.chamber, ks.series.window)


def _shift_matches(A, Bt, wa, wb, d):
    dy, dz, dq = d
    for (y, z, q), c in Bt.items():
        tgt = (y + dy, z + dz, q + dq)
        if wa.contains(*tgt) and A.get(tgt, 0) != c:
            return False
    for (y, z, q), c in A.items():
        src = (y - dy, z - dz, q - dq)
        if wb.contains(*src) and Bt.get(src, 0) != c:
            return False
    return True


def monomial_ratio(after, before):
    """``(dy, dz, dq)`` with ``after = y^dy z^dz q^dq before`` wherever both
    windows see the shifted term; raises if no such monomial exists.

    Window clipping can hide the partner of any single term, so every shift
    between lowest-q terms is tried and the smallest consistent one wins.
    """
    A, Bt = after.terms, before.terms
    if not A and not Bt:
        return (0, 0, Fraction(0))
    if not A or not Bt:
        raise NotAMonomialMultiple("one series is empty")
    qa, qb = min(k[2] for k in A), min(k[2] for k in Bt)
    cands = {(ka[0] - kb[0], ka[1] - kb[1], qa - qb)
             for ka in A if ka[2] == qa for kb in Bt if kb[2] == qb}
    for d in sorted(cands, key=lambda d: (abs(d[0]) + abs(d[1]), d)):
        if _shift_matches(A, Bt, after.window, before.window, d):
            return d
    raise NotAMonomialMultiple("no monomial shift matches")

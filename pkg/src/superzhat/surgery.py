"""Dehn surgery transforms and gluing of knot complements.

A surgery slope ``p/r`` is realized by the linear chain of the negative
continued fraction of ``p/r`` (first vertex distinguished).  Its sign data
``pi`` (positive eigenvalues) and ``epsilon = sign(p) (-1)^(pi+1)`` are read
off the constructed chain.
"""

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .knotfk import KnotSeries, chain_data, fk, knot_chambers, solid_torus_series, zhat_knot
from .plumbing import (LabelPair, PlumbingGraph, build_matrix, det, enumerate_labels, inverse,
                       signature_of, zero_label)
from .qseries import TriSeries, Window
from .zhat import ZhatResult


class DivergentTransform(ValueError):
    pass


class WindowTooNarrow(ValueError):
    pass


class GridMismatch(ValueError):
    pass


class ChamberDisagreement(RuntimeError):
    pass


@dataclass(frozen=True)
class SurgerySlope:
    p: int
    r: int
    chain: PlumbingGraph
    pi: int
    epsilon: int

    @classmethod
    def of(cls, p, r=1):
        cd = chain_data(p, r)
        return cls(cd.p, cd.r, cd.chain, cd.pi, cd.epsilon)


# -----------------------------------------------------------------------------
# gluing graphs and their sign data
# -----------------------------------------------------------------------------

def glue_graphs(g1, g2):
    """Identify the distinguished vertices of two knot graphs; the merged
    vertex keeps the id of ``g1``'s and carries the sum of the weights.
    ``g2``'s other vertices are renumbered after ``g1``'s."""
    if g1.distinguished is None or g2.distinguished is None:
        raise ValueError("both graphs need a distinguished vertex")
    d1, d2 = g1.distinguished, g2.distinguished
    w1, w2 = g1.weight(d1), g2.weight(d2)
    off = max(g1.ids) + 1
    remap = {}
    verts = [(v, (w1 + w2) if v == d1 else w) for v, w in g1.vertices]
    for v, w in g2.vertices:
        if v == d2:
            remap[v] = d1
        else:
            remap[v] = off
            verts.append((off, w))
            off += 1
    edges = list(g1.edges) + [(remap[a], remap[b]) for a, b in g2.edges]
    return PlumbingGraph(tuple(verts), tuple(edges), None)


def glue_labels(g1, g2, lab1, lab2):
    """Label of the glued graph: the two distinguished components add."""
    d1, d2 = g1.index(g1.distinguished), g2.index(g2.distinguished)

    def merge(v1, v2):
        out = list(v1)
        out[d1] += v2[d2]
        out += [x for i, x in enumerate(v2) if i != d2]
        return out

    return LabelPair(merge(lab1.bvec, lab2.bvec), merge(lab1.cvec, lab2.cvec))


def _pairing_value(B, b, c):
    if not any(b) or not any(c):
        return Fraction(0)
    if det(B) == 0:
        raise ValueError("pairing needs invertible B for a nonzero label")
    Binv = inverse(B)
    return sum(b[i] * Binv[i][j] * c[j] for i in range(len(b)) for j in range(len(c)))


@dataclass(frozen=True)
class GluingContext:
    tau: int
    chi: Fraction


def gluing_context(g1, g2, lab1=None, lab2=None):
    """``tau = Pi(Y) - Pi(Y1) - Pi(Y2)`` and
    ``chi = -(b, B^-1 c) + (b1, B1^-1 c1) + (b2, B2^-1 c2)``."""
    from .plumbing import zero_label
    lab1 = lab1 or zero_label(g1.size)
    lab2 = lab2 or zero_label(g2.size)
    g = glue_graphs(g1, g2)
    B, B1, B2 = build_matrix(g), build_matrix(g1), build_matrix(g2)
    tau = (signature_of(B).positives - signature_of(B1).positives
           - signature_of(B2).positives)
    lab = glue_labels(g1, g2, lab1, lab2)
    chi = (-_pairing_value(B, lab.bvec, lab.cvec) + _pairing_value(B1, lab1.bvec, lab1.cvec)
           + _pairing_value(B2, lab2.bvec, lab2.cvec))
    return GluingContext(tau, chi)


# -----------------------------------------------------------------------------
# Laplace transforms
# -----------------------------------------------------------------------------

def _progression(start, period, ok, expo, growth, qmax, out, coeff):
    """Add ``coeff * q^expo(i)`` over the arithmetic progression of ``i >= start``
    passing ``ok``.  Returns True when the sum is the divergent constant."""
    i0 = next((i for i in range(start, start + period) if ok(i)), None)
    if i0 is None:
        return False
    if growth == 0:
        if expo(i0) == 0:
            return True
        raise DivergentTransform(f"infinitely many terms at q^{expo(i0)}")
    if growth < 0:
        raise DivergentTransform("exponent unbounded below along the progression")
    i = i0
    while True:
        e = expo(i)
        if e >= qmax:
            break
        out[e] += coeff
        i += period
    return False


def _transform(term, slope, b, c, qmax, plus):
    (al, be, ga), co = term
    p, r, eps = slope.p, slope.r, slope.epsilon
    P = abs(p)
    out = defaultdict(Fraction)
    div = False
    if plus:
        if (r * be + c) % p == 0:
            div |= _progression(1, P, lambda i: (r * al + eps * i + b) % p == 0,
                                lambda i: ga + Fraction(be * (r * al + eps * i), p),
                                Fraction(be * eps, p), qmax, out, co)
        if (r * al + b) % p == 0:
            div |= _progression(0, P, lambda i: (r * be - eps * i + c) % p == 0,
                                lambda i: ga + Fraction(al * (r * be - eps * i), p),
                                Fraction(-al * eps, p), qmax, out, co)
    else:
        if (r * be + c) % p == 0:
            div |= _progression(0, P, lambda i: (r * al - eps * i + b) % p == 0,
                                lambda i: ga + Fraction(be * (r * al - eps * i), p),
                                Fraction(-be * eps, p), qmax, out, -co)
        if (r * al + b) % p == 0:
            div |= _progression(1, P, lambda i: (r * be + eps * i + c) % p == 0,
                                lambda i: ga + Fraction(al * (r * be + eps * i), p),
                                Fraction(al * eps, p), qmax, out, -co)
    return dict(out), div


def laplace_plus(term, slope, label, window):
    """Image of one monomial ``((alpha, beta, gamma), coeff)`` of an
    alpha_plus series.  Returns ``({qexp: coeff}, divergent_constant)``."""
    b, c = label
    return _transform(term, slope, b, c, window.qmax, True)


def laplace_minus(term, slope, label, window):
    """Image of one monomial of an alpha_minus series (note the overall sign)."""
    b, c = label
    return _transform(term, slope, b, c, window.qmax, False)


def _outer_ring_hits(ser, slope, label, window, plus):
    D = ser.window.ydeg
    for (y, z, q), co in ser.items():
        if max(abs(y), abs(z)) != D:
            continue
        try:
            img, _ = _transform(((y, z, q), co), slope, label[0], label[1], window.qmax, plus)
        except DivergentTransform:
            continue
        if any(0 < e < window.qmax for e in img):
            return (y, z, q)
    return None


def transform_series(ser, slope, label, window, plus):
    """Sum of the transforms of every term; raises WindowTooNarrow when a term
    on the outer ydeg ring still reaches ``(0, qmax)``."""
    hit = _outer_ring_hits(ser, slope, label, window, plus)
    if hit is not None:
        raise WindowTooNarrow(f"term y^{hit[0]} z^{hit[1]} q^{hit[2]} on the ydeg boundary "
                              f"contributes below qmax")
    total = defaultdict(Fraction)
    div = False
    for term in ser.items():
        img, d = _transform(term, slope, label[0], label[1], window.qmax, plus)
        div |= d
        for e, v in img.items():
            total[e] += v
    return {e: v for e, v in sorted(total.items()) if v}, div


def dehn_surgery(fk_parts, slope, label, window, knot_graph=None, check_chambers=True):
    """Zhat of the surgered manifold from the two chamber halves of F_K.

    Parameters
    ----------
    fk_parts : (KnotSeries, KnotSeries)
        alpha_plus and alpha_minus halves at label (0, 0).
    slope : SurgerySlope
    label : (int, int)
        Scalar labels ``b, c`` modulo ``p``.
    window : Window
        Only ``qmax`` is used for the output.
    knot_graph : PlumbingGraph, optional
        Used for the sign ``(-1)^tau``; taken from the halves when omitted.

    Returns
    -------
    ZhatResult
        The q^0 coefficient holds the finite part only; divergent constants
        are dropped.

    Notes
    -----
    The alpha_minus half at ``(c, b)`` is checked against the alpha_plus half
    at ``(b, c)`` on all nonzero powers of q.
    """
    plus, minus = fk_parts
    g = knot_graph or getattr(plus, "graph", None)
    if g is None:
        raise ValueError("knot graph needed for the sign")
    ctx = gluing_context(g, slope.chain)
    sign = (-1) ** (ctx.tau + slope.pi)
    b, c = label[0] % abs(slope.p), label[1] % abs(slope.p)
    out_w = Window(window.qmax, 0)
    res_p, _ = transform_series(plus.series, slope, (b, c), out_w, True)
    if check_chambers:
        # the alpha_minus transform carries the transposed label
        res_m, _ = transform_series(minus.series, slope, (c, b), out_w, False)
        nz_p = {e: v for e, v in res_p.items() if e != 0}
        nz_m = {e: v for e, v in res_m.items() if e != 0}
        if nz_p != nz_m:
            raise ChamberDisagreement("alpha_plus and alpha_minus transforms differ")
    terms = {(0, 0, e): sign * v for e, v in res_p.items()}
    return ZhatResult(TriSeries(terms, out_w), LabelPair((b,), (c,)), plus.chamber, 0, True)


def surgery_on_knot(g, slope, label, window, ydeg=None, fk_parts=None):
    """Compute F_K halves with a ydeg wide enough for the transform and apply
    :func:`dehn_surgery`; the ydeg doubles until the window check passes."""
    D = ydeg or max(8, int(2 * window.qmax) + 2)
    while True:
        if fk_parts is None or fk_parts[0].series.window.ydeg < D:
            _, _, parts = fk(g, Window(window.qmax, D), decompose=False)
        else:
            parts = fk_parts
        try:
            return dehn_surgery(parts, slope, label, window, g), parts
        except WindowTooNarrow:
            D *= 2
            fk_parts = None
            if D > 4096:
                raise


def surgery_labels(slope):
    """All scalar label pairs ``(b, c)`` modulo ``p``."""
    P = abs(slope.p)
    return [(b, c) for b in range(P) for c in range(P)]


# -----------------------------------------------------------------------------
# gluing of two knot series
# -----------------------------------------------------------------------------

def constant_term_pairing(s1, s2, qmax):
    """Constant term in y, z of ``s1 * s2`` as ``{qexp: coeff}``."""
    by_yz = defaultdict(list)
    for (y, z, q), c in s2.terms.items():
        by_yz[(y, z)].append((q, c))
    out = defaultdict(Fraction)
    for (y, z, q), c in s1.terms.items():
        for q2, c2 in by_yz.get((-y, -z), ()):
            e = q + q2
            if e < qmax:
                out[e] += c * c2
    return out


def glue(left, right, window, context=GluingContext(0, Fraction(0))):
    """``(-1)^tau q^chi sum_{n,m} CT[Z1(n,m) Z2(n,m)]``.

    ``left`` and ``right`` map ``(n, m)`` to a TriSeries or KnotSeries on the
    same grid.
    """
    if set(left) != set(right):
        raise GridMismatch("the (n, m) grids differ")
    total = defaultdict(Fraction)
    qcut = window.qmax - context.chi
    for nm in sorted(left):
        a, b = left[nm], right[nm]
        a = a.series if isinstance(a, KnotSeries) else a
        b = b.series if isinstance(b, KnotSeries) else b
        for e, v in constant_term_pairing(a, b, qcut).items():
            total[e] += v
    sign = (-1) ** context.tau
    w = Window(window.qmax, 0)
    terms = {(0, 0, e + context.chi): sign * v for e, v in total.items() if v}
    return TriSeries(terms, w)


def surgery_by_gluing(half, slope, label, window, chamber_sign, knot_graph=None, nm_bound=None):
    """Glue one F_K half to the solid torus of the slope over an explicit
    (n, m) grid; equals :func:`dehn_surgery` on the nonzero powers of q."""
    g = knot_graph or getattr(half, "graph", None)
    ctx = gluing_context(g, slope.chain)
    ser = half.series
    D = ser.window.ydeg
    qmin = min((k[2] for k in ser.terms), default=Fraction(0))
    qS = window.qmax - min(qmin, 0)
    N = nm_bound if nm_bound is not None else \
        int(abs(slope.p) * (qS + 1) + slope.r * (D + 1) + abs(label[0]) + abs(label[1])) + 1
    N = N // abs(slope.p) + 1
    sw = Window(qS, D)
    left, right = {}, {}
    for n in range(-N, N + 1):
        for m in range(-N, N + 1):
            S = solid_torus_series(slope.p, slope.r, label[0], label[1], n, m, chamber_sign, sw)
            if S.is_empty():
                continue
            left[(n, m)] = ser
            right[(n, m)] = S
    out = glue(left, right, window, GluingContext(ctx.tau, Fraction(0)))
    return out


def _knot_grid(g, chamber, N, window):
    lab = zero_label(g.size)
    return {(n, m): zhat_knot(g, lab, n, m, chamber, window).series
            for n in range(-N, N + 1) for m in range(-N, N + 1)}


def glue_knot_graphs(g1, g2, window, chamber_sign=1, ydeg=12, nm_bound=None):
    """Zhat_{0,0} of the closed manifold obtained by gluing two knot
    complements along their boundary tori.

    Both factors are expanded in the same chamber and summed over the
    square ``|n|, |m| <= nm_bound`` (default ``ydeg``).  A factor is computed
    up to ``qmax`` minus the lowest exponent of the other factor, so the
    result is exact for the chosen grid and ydeg.

    Returns ``(TriSeries, glued PlumbingGraph)``.
    """
    N = ydeg if nm_bound is None else nm_bound
    ch1 = knot_chambers(g1)[0 if chamber_sign == 1 else 1]
    ch2 = knot_chambers(g2)[0 if chamber_sign == 1 else 1]
    ctx = gluing_context(g1, g2)
    qcut = window.qmax - ctx.chi
    q1 = q2 = qcut
    while True:
        left = _knot_grid(g1, ch1, N, Window(q1, ydeg))
        right = _knot_grid(g2, ch2, N, Window(q2, ydeg))
        lo1 = min((k[2] for s in left.values() for k in s.terms), default=Fraction(0))
        lo2 = min((k[2] for s in right.values() for k in s.terms), default=Fraction(0))
        need1, need2 = max(qcut, qcut - lo2), max(qcut, qcut - lo1)
        if q1 >= need1 and q2 >= need2:
            break
        q1, q2 = max(q1, need1), max(q2, need2)
    return glue(left, right, window, ctx), glue_graphs(g1, g2)

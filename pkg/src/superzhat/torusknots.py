"""Torus knots: plumbing graphs, chambers, sign tables, mirrors and the
sl(2) sign oracle."""

import dataclasses
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .chambers import ChamberAssignment, chamber_vertices, check_chamber
from .knotfk import BadChamber, FkDecomposition, KnotSeries, zhat_knot
from .plumbing import PlumbingGraph, negative_continued_fraction, zero_label
from .qseries import TriSeries, Window, mirror_q, series_add


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class TorusKnot:
    s: int
    t: int

    def __post_init__(self):
        if self.s < 2 or self.t <= self.s:
            raise ValueError("need 2 <= s < t")
        if math.gcd(self.s, self.t) != 1:
            raise NotCoprime(f"gcd({self.s}, {self.t}) != 1")

    @property
    def proved(self):
        """Chamber goodness is proved for s = 2, 3."""
        return self.s in (2, 3)


def torus_knot_graph(k):
    """Plumbing graph of the complement of T(s, t).

    Center of weight -1 (id 0), the s-leg, the t-leg, and the distinguished
    leaf of weight -st attached to the center (last id).  The legs are the
    negative continued fractions of ``-s/s'`` and ``-t/t'`` with
    ``t s' = -1 (mod s)`` and ``s t' = -1 (mod t)``, first entry next to the
    center.
    """
    s, t = k.s, k.t
    sp = (-pow(t, -1, s)) % s
    tp = (-pow(s, -1, t)) % t
    if Fraction(tp, t) + Fraction(sp, s) != 1 - Fraction(1, s * t):
        raise NotCoprime("leg data does not close up")
    verts = [(0, -1)]
    edges = []
    nxt = 1
    for a, ap in ((s, sp), (t, tp)):
        prev = 0
        for w in negative_continued_fraction(Fraction(-a, ap)):
            verts.append((nxt, w))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    verts.append((nxt, -s * t))
    edges.append((0, nxt))
    return PlumbingGraph(tuple(verts), tuple(edges), nxt)


def torus_chambers(g, k=None):
    """``(alpha_plus, alpha_minus)``: all +1, respectively all -1, on the
    center and the two regular leaves.  Chambers outside the proved families
    are flagged conjectural."""
    conj = k is not None and not k.proved
    verts = chamber_vertices(g)
    plus = {v: 1 for v in verts}
    ok, mu = check_chamber(g, plus)
    if not ok:
        raise BadChamber("all-plus chamber is not good")
    ap = ChamberAssignment(plus, 1, conj, mu)
    return ap, ap.negate()


def torus_fk(k, window, decompose=True):
    """F_{T(s,t)}; three stable doublings for conjectural chambers."""
    g = torus_knot_graph(k)
    plus, minus = torus_chambers(g, k)
    rounds = 2 if k.proved else 3
    lab = zero_label(g.size)
    a = zhat_knot(g, lab, 0, 0, plus, window, rounds)
    b = zhat_knot(g, lab, 0, 0, minus, window, rounds)
    a = dataclasses.replace(a, series=_certify_qfinite(a.series, k))
    b = dataclasses.replace(b, series=_certify_qfinite(b.series, k))
    total = _certify_qfinite(series_add(a.series, b.series), k)
    ks = KnotSeries(total, lab, (0, 0), None, True, g, max(a.enumRadius, b.enumRadius))
    dec = FkDecomposition.from_series(total) if decompose else None
    return ks, dec, (a, b)


def _certify_qfinite(ser, k):
    """Flag each (y, z) fiber as finite when every term sits at the single
    exponent ``-y z / (st)`` and that exponent is inside the window for the
    whole ydeg box."""
    st = k.s * k.t
    D = ser.window.ydeg
    law = all(q * st == -y * z for (y, z, q) in ser.terms)
    box = Fraction(D * D, st) < ser.window.qmax
    return TriSeries(ser.terms, ser.window, ser.complete, law and box)


# -----------------------------------------------------------------------------
# sign tables for T(2, 2l+1)
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsTable:
    """Cases ``(sign, g, residues)`` modulo ``modulus = 2(2l+1)``.

    For sign -1 the residues are ``(r++_m, r++_n, r--_m, r--_n)``; for sign
    +1 they are ``(r+-_m, r+-_n, r-+_m, r-+_n)``.
    """

    l: int
    modulus: int
    cases: tuple

    def __post_init__(self):
        object.__setattr__(self, "cases", tuple(sorted(
            (int(e), int(gg), tuple(int(x) % self.modulus for x in r))
            for e, gg, r in self.cases)))

    @property
    def s(self):
        return 2

    @property
    def t(self):
        return 2 * self.l + 1

    def shifts(self, m):
        st, s, t = self.modulus, self.s, self.t
        return {"++": m - (st + s + t), "--": m - (st - s - t),
                "+-": m - (st + s - t), "-+": m - (st - s + t)}

    def lookup(self, m, n):
        """``(epsilon, g)`` for the pair, or ``(0, 0)``."""
        M = self.modulus
        rm, rn = self.shifts(m), self.shifts(n)
        hits = []
        for e, gg, r in self.cases:
            a, b = ("++", "--") if e == -1 else ("+-", "-+")
            got = (rm[a] % M, rn[a] % M, rm[b] % M, rn[b] % M)
            if got == r and n - m == gg:
                hits.append((e, gg))
        if len(hits) > 1:
            raise ValueError(f"({m}, {n}) matches several cases")
        return hits[0] if hits else (0, 0)


def t2_family_table(l):
    """Sign/shift table of T(2, 2l+1) from the two-group construction.

    With ``p = 2l - 1`` (resp. ``s = 4l``) the -1 (resp. +1) cases are
    ``r_m = p - g, r_n = p`` and ``r_m = p, r_n = p + g`` for every odd shift
    ``g <= 2l - 1``; the partner residues are 4 higher.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    M = 2 * (2 * l + 1)
    p = 2 * l - 1
    s = 4 * l
    cases = []
    for gg in range(1, 2 * l, 2):
        for base, sign in ((p, -1), (s, 1)):
            for rm, rn in ((base - gg, base), (base, base + gg)):
                cases.append((sign, gg, (rm, rn, rm + 4, rn + 4)))
    return EpsTable(l, M, cases)


def closed_form_series(l, window):
    """F_{T(2,2l+1)} rebuilt from the sign table plus the q-independent
    stratum (all i >= 2 except the odd i in 3..2l-1)."""
    tab = t2_family_table(l)
    M = tab.modulus
    D = window.ydeg
    terms = defaultdict(int)
    skip = set(range(3, 2 * l, 2))
    for i in range(2, D + 1):
        if i in skip:
            continue
        terms[(i, 0, Fraction(0))] += 1
        terms[(0, -i, Fraction(0))] += 1
        terms[(-i, 0, Fraction(0))] -= 1
        terms[(0, i, Fraction(0))] -= 1
    for m in range(1, D + 1):
        for gg in sorted({c[1] for c in tab.cases}):
            n = m + gg
            e, _ = tab.lookup(m, n)
            if n > D or not e:
                continue
            q = Fraction(m * n, M)
            if q >= window.qmax:
                continue
            for (y, z), sg in (((m, -n), 1), ((n, -m), 1), ((-m, n), -1), ((-n, m), -1)):
                terms[(y, z, q)] += e * sg
    return TriSeries(dict(terms), window)


# -----------------------------------------------------------------------------
# mirrors and the sl(2) oracle
# -----------------------------------------------------------------------------

def mirror_fk(f):
    """F (or one chamber half) of the mirror knot: q -> 1/q, chamber
    negated.  Needs every (y, z) fiber certified finite."""
    ser = mirror_q(f.series)
    ch = f.chamber.negate() if isinstance(f.chamber, ChamberAssignment) else f.chamber
    return dataclasses.replace(f, series=ser, chamber=ch)


def box_window(k, ydeg):
    """Window whose qmax exceeds every exponent ``-yz/(st)`` in the ydeg box,
    so the computed series can be mirrored."""
    return Window(Fraction(ydeg * ydeg, k.s * k.t) + 1, ydeg)


def gm_torus_epsilon(k, mmax):
    """``[(m, eps_m)]`` for odd ``m <= mmax`` with nonzero sign."""
    s, t = k.s, k.t
    M = 2 * s * t
    plus = {(s * t + s + t) % M, (s * t - s - t) % M}
    minus = {(s * t + s - t) % M, (s * t - s + t) % M}
    out = []
    for m in range(1, mmax + 1, 2):
        r = m % M
        if r in plus:
            out.append((m, 1))
        elif r in minus:
            out.append((m, -1))
    return out

"""Randomized property checks.

Every check takes a ``random.Random`` and returns ``None`` on success or a
short failure message.  They are shared by the test suite and the
``verify`` command.
"""

import functools
import math
from collections import Counter
from fractions import Fraction

from .chambers import find_good_chambers
from .knotfk import fk, knot_chambers, zhat_knot
from .oracles import closed_theta_oracle, knot_theta_oracle
from .plumbing import (LabelPair, PlumbingGraph, SeifertData, SingularMatrix, apply_move,
                       brieskorn_seifert, build_matrix, det, enumerate_labels, is_generic,
                       linear_graph, seifert_to_graph, zero_label)
from .qseries import Window, invert_vars
from .surgery import (SurgerySlope, dehn_surgery, surgery_by_gluing, surgery_labels)
from .torusknots import TorusKnot, torus_fk, torus_knot_graph
from .zhat import zhat_all_labels, zhat_closed

TORUS = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)]
ZHS = [(2, 3, 5), (2, 3, 7), (2, 3, 11), (2, 3, 13), (2, 5, 7), (2, 5, 11)]


def _nonzero(coeffs):
    return {e: c for e, c in coeffs.items() if e != 0 and c}


@functools.lru_cache(maxsize=None)
def _torus(s, t, qmax, ydeg):
    return torus_fk(TorusKnot(s, t), Window(qmax, ydeg))


@functools.lru_cache(maxsize=None)
def _zhat(g, label, qmax):
    chs = find_good_chambers(g)
    if not chs:
        return None
    return _nonzero(zhat_closed(g, label, chs[0], Window(qmax, 0)).q_part())


# -----------------------------------------------------------------------------
# random inputs
# -----------------------------------------------------------------------------

def random_seifert_graph(rng, legs=3, bmax=4):
    """Negative definite star-shaped graph from random Seifert data."""
    pairs = []
    for _ in range(legs):
        b = rng.randint(2, bmax)
        a = rng.choice([a for a in range(1, b) if math.gcd(a, b) == 1])
        pairs.append((a, b))
    e = -rng.randint(1, 3)
    if e + sum(Fraction(a, b) for a, b in pairs) >= 0:
        e = -math.ceil(sum(Fraction(a, b) for a, b in pairs)) - 1
    return seifert_to_graph(SeifertData(e, tuple(pairs)))


def random_tree(rng, nmax=8, wmin=-6, wmax=-1):
    n = rng.randint(2, nmax)
    verts = tuple((i, rng.randint(wmin, wmax)) for i in range(n))
    edges = tuple((rng.randrange(i), i) for i in range(1, n))
    return PlumbingGraph(verts, edges, None)


def random_move(rng, g):
    """A random move in one of the six directions; down directions are reached
    by first applying the matching up move.  Returns ``(before, after, name)``."""
    kind = rng.choice(["BlowUp", "BlowDown", "Desorb", "Absorb", "Fission", "Fuse"])
    sign = rng.choice([1, -1])
    ids = list(g.ids)
    if kind in ("BlowUp", "BlowDown"):
        v = rng.choice(ids)
        up = apply_move(g, "BlowUp", v, sign)
        if kind == "BlowUp":
            return g, up, f"BlowUp({v},{sign})"
        leaf = max(up.ids)
        return up, apply_move(up, "BlowDown", leaf, sign), f"BlowDown({leaf},{sign})"
    if kind in ("Desorb", "Absorb"):
        if not g.edges:
            return random_move(rng, g)
        u, w = rng.choice(list(g.edges))
        up = apply_move(g, "Desorb", (u, w), sign)
        if kind == "Desorb":
            return g, up, f"Desorb({u},{w},{sign})"
        mid = max(up.ids)
        return up, apply_move(up, "Absorb", mid, sign), f"Absorb({mid},{sign})"
    v = rng.choice(ids)
    nbrs = list(g.adjacency()[v])
    moved = tuple(x for x in nbrs if rng.random() < 0.5)
    k1 = rng.randint(-3, 0)
    up = apply_move(g, "Fission", (v, moved, k1))
    if kind == "Fission":
        return g, up, f"Fission({v},{moved},{k1})"
    zero_v = max(up.ids) - 1
    return up, apply_move(up, "Fuse", zero_v), f"Fuse({zero_v})"


# -----------------------------------------------------------------------------
# the nine suites
# -----------------------------------------------------------------------------

def weyl_antisymmetry(rng):
    s, t = rng.choice(TORUS)
    qmax, ydeg = rng.randint(1, 6), rng.randint(2, 10)
    F = _torus(s, t, qmax, ydeg)[0].series
    if invert_vars(F) != -F:
        return f"T({s},{t}) window ({qmax},{ydeg})"
    return None


def chamber_independence(rng):
    g = random_seifert_graph(rng)
    if det(build_matrix(g)) == 0 or not is_generic(g):
        return None
    chs = find_good_chambers(g)
    if not chs:
        return f"no good chamber on {g.vertices}"
    lab = rng.choice(enumerate_labels(build_matrix(g)))
    flipped = LabelPair(lab.cvec, lab.bvec)
    w = Window(rng.randint(2, 4), 0)
    plus = [c for c in chs if c.sign == 1][0]
    minus = [c for c in chs if c.sign == -1][0]
    # the two chambers agree once the label is transposed
    a = _nonzero(zhat_closed(g, lab, plus, w).q_part())
    b = _nonzero(zhat_closed(g, flipped, minus, w).q_part())
    if a != b:
        return f"{g.vertices} label {lab}"
    return None


def kirby_invariance(rng):
    g = seifert_to_graph(brieskorn_seifert(*rng.choice(ZHS)))
    before, after, name = random_move(rng, g)
    lab0, lab1 = zero_label(before.size), zero_label(after.size)
    z0, z1 = _zhat(before, lab0, 6), _zhat(after, lab1, 6)
    if z0 is None or z1 is None:
        return f"{name}: no good chamber"
    if z0 != z1:
        return f"{name} on {g.vertices}"
    return None


def move_preservation(rng):
    g = random_tree(rng)
    try:
        if det(build_matrix(g)) == 0 or not is_generic(g) or not find_good_chambers(g):
            return None
    except SingularMatrix:
        return None
    before, after, name = random_move(rng, g)
    if before is not g:
        # down directions start from the blown-up graph
        if det(build_matrix(before)) == 0 or not is_generic(before) or \
                not find_good_chambers(before):
            return None
    if det(build_matrix(after)) == 0:
        return f"{name}: singular after move"
    if not find_good_chambers(after):
        return f"{name}: chambers lost on {g.vertices} {g.edges}"
    if not is_generic(after):
        return f"{name}: genericity lost on {g.vertices} {g.edges}"
    return None


def nm_independence(rng):
    s, t = rng.choice(TORUS[:4])
    g = torus_knot_graph(TorusKnot(s, t))
    ch = rng.choice(knot_chambers(g))
    w = Window(rng.randint(1, 4), rng.randint(2, 8))
    n, m = rng.randint(-2, 2), rng.randint(-2, 2)
    lab = zero_label(g.size)
    a = zhat_knot(g, lab, 0, 0, ch, w).series
    b = zhat_knot(g, lab, n, m, ch, w).series
    if a != b:
        return f"T({s},{t}) (n,m)=({n},{m})"
    return None


def coefficient_symmetry(rng):
    s, t = rng.choice(TORUS)
    qmax, ydeg = rng.randint(1, 8), rng.randint(2, 12)
    dec = _torus(s, t, qmax, ydeg)[1]
    for (a, b), qs in dec.coeffs.items():
        if dec.coeffs.get((b, a)) != qs:
            return f"T({s},{t}) f_({a},{b}) != f_({b},{a})"
    return None


@functools.lru_cache(maxsize=None)
def _trefoil_oracle(sign, qmax, ydeg):
    g = torus_knot_graph(TorusKnot(2, 3))
    ch = [c for c in knot_chambers(g) if c.sign == sign][0]
    return knot_theta_oracle(g, ch.as_dict(), qmax, ydeg), \
        dict(zhat_knot(g, zero_label(g.size), 0, 0, ch, Window(qmax, ydeg)).series.terms)


def brute_force_oracle(rng):
    if rng.random() < 0.05:
        o, z = _trefoil_oracle(rng.choice([1, -1]), rng.randint(1, 3), rng.randint(2, 6))
        return None if o == z else "trefoil complement"
    if rng.random() < 0.5:
        g = linear_graph([rng.randint(-7, -2)])
    else:
        while True:
            k1, k2 = rng.randint(-5, -1), rng.randint(-5, -1)
            if k1 * k2 > 1:
                break
        g = linear_graph([k1, k2])
    ch = rng.choice(find_good_chambers(g))
    lab = rng.choice(enumerate_labels(build_matrix(g)))
    qmax = rng.randint(1, 5)
    o = _nonzero(closed_theta_oracle(g, lab.bvec, lab.cvec, ch.as_dict(), qmax, R=40))
    z = _nonzero(zhat_closed(g, lab, ch, Window(qmax, 0)).q_part())
    if o != z:
        return f"{g.vertices} label {lab} chamber {ch.alpha}"
    return None


@functools.lru_cache(maxsize=None)
def _knot_fixture(name, qmax):
    if name == "unknot":
        g = linear_graph([0], True)
        _, _, parts = fk(g, Window(qmax, 5 * qmax + 4), decompose=False)
    else:
        s, t = (2, 3) if name == "T23" else (2, 5)
        g = torus_knot_graph(TorusKnot(s, t))
        parts = _torus(s, t, qmax, 2 * qmax + 4)[2]
    return g, parts


def surgery_gluing_consistency(rng):
    name = rng.choice(["unknot", "T23", "T25"])
    qmax = rng.randint(2, 4)
    g, parts = _knot_fixture(name, qmax)
    p, r = rng.choice([(-1, 1), (-1, 2), (-2, 1), (-3, 1)] if name != "unknot"
                      else [(-1, 1), (-2, 1), (-3, 1), (-5, 1)])
    sl = SurgerySlope.of(p, r)
    lab = rng.choice(surgery_labels(sl))
    w = Window(qmax, 0)
    d = _nonzero(dehn_surgery(parts, sl, lab, w, g).q_part())
    i = rng.choice([0, 1])
    glab = lab if i == 0 else (lab[1], lab[0])
    gl = _nonzero(surgery_by_gluing(parts[i], sl, glab, w, 1 - 2 * i, g).q_coefficients())
    if d != gl:
        return f"{name} slope {p}/{r} label {lab} chamber {1 - 2 * i}"
    return None


def label_coverage(rng):
    p = rng.choice([-2, -3])
    qmax = rng.randint(2, 8)
    g, parts = _knot_fixture("unknot", 8)
    sl = SurgerySlope.of(p)
    sur = Counter(tuple(sorted(_nonzero(dehn_surgery(parts, sl, lab, Window(qmax, 0), g)
                                        .q_part()).items())) for lab in surgery_labels(sl))
    lens = linear_graph([p])
    closed = zhat_all_labels(lens, find_good_chambers(lens)[0], Window(qmax, 0))
    clo = Counter(tuple(sorted(_nonzero(r.q_part()).items())) for r in closed.values())
    if sur != clo:
        return f"L({-p},1) qmax {qmax}"
    return None


SUITES = [
    ("a", weyl_antisymmetry),
    ("b", chamber_independence),
    ("c", kirby_invariance),
    ("d", move_preservation),
    ("e", nm_independence),
    ("f", coefficient_symmetry),
    ("g", brute_force_oracle),
    ("h", surgery_gluing_consistency),
    ("i", label_coverage),
]

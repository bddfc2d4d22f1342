"""Brute-force oracles, independent of the enumeration engine.

Vertex factors are expanded by multiplying truncated geometric series, and the
theta sum is enumerated directly over a box of lattice points.  Only small
graphs and windows are practical.
"""

import itertools
from collections import defaultdict
from fractions import Fraction

from .plumbing import build_matrix, inverse, signature_of


def _mul(a, b, N):
    out = defaultdict(int)
    for (y1, z1), c1 in a.items():
        for (y2, z2), c2 in b.items():
            y, z = y1 + y2, z1 + z2
            if abs(y) <= N and abs(z) <= N:
                out[(y, z)] += c1 * c2
    return {k: v for k, v in out.items() if v}


def _geometric(var, sign, N):
    """``1/(1 - x)`` for ``|x| < 1`` (sign +1) or ``|x| > 1`` (sign -1), as a
    dict over ``(yexp, zexp)``; ``var`` is 0 for y and 1 for z."""
    out = {}
    if sign == 1:
        for i in range(N + 1):
            out[(i, 0) if var == 0 else (0, i)] = 1
    else:
        for i in range(1, N + 1):
            out[(-i, 0) if var == 0 else (0, -i)] = -1
    return out


def vertex_factor(power, alpha, N):
    """``((y - z)/((1-y)(1-z)))^power`` expanded in the chamber ``alpha``,
    exponents truncated to ``[-N, N]``."""
    if power == 0:
        return {(0, 0): 1}
    if power > 0:
        # |y|^alpha < 1, |z|^alpha > 1
        f = _mul({(1, 0): 1, (0, 1): -1},
                 _mul(_geometric(0, alpha, N), _geometric(1, -alpha, N), N), N)
        out = {(0, 0): 1}
        for _ in range(power):
            out = _mul(out, f, N)
        return out
    # (1-y)(1-z) / (y - z) with |y/z|^alpha < 1
    if alpha == 1:
        inv = {(i, -i - 1): -1 for i in range(N + 1)}
    else:
        inv = {(-i - 1, i): 1 for i in range(N + 1)}
    g = _mul(_mul({(0, 0): 1, (1, 0): -1}, {(0, 0): 1, (0, 1): -1}, N), inv, N)
    out = {(0, 0): 1}
    for _ in range(-power):
        out = _mul(out, g, N)
    return out


def _matvec(B, v):
    return [sum(B[i][j] * v[j] for j in range(len(v))) for i in range(len(B))]


def closed_theta_oracle(g, bvec, cvec, alpha, qmax, R=20):
    """``{qexp: coeff}`` of Zhat_{b,c} by direct summation over
    ``|n_i|, |m_i| <= R``."""
    B = build_matrix(g).rows()
    s = len(B)
    Binv = inverse(B)
    deg = g.degrees()
    ids = list(g.ids)
    N = R * (max(abs(B[i][j]) for i in range(s) for j in range(s)) * s + 1) + \
        max(map(abs, list(bvec) + list(cvec) + [0]))
    facs = [vertex_factor(2 - deg[v], alpha.get(v, 1), N) for v in ids]
    sign = (-1) ** signature_of(B).positives

    proj = [[{k[c] for k in f} for f in facs] for c in (0, 1)]

    def lattice(shift, comp):
        pts = []
        for n in itertools.product(range(-R, R + 1), repeat=s):
            l = [x + y for x, y in zip(_matvec(B, n), shift)]
            if all(-l[i] in proj[comp][i] for i in range(s)):
                pts.append(l)
        return pts

    L1, L2 = lattice(bvec, 0), lattice(cvec, 1)
    out = defaultdict(Fraction)
    for l1 in L1:
        for l2 in L2:
            c = 1
            for i in range(s):
                c *= facs[i].get((-l1[i], -l2[i]), 0)
                if not c:
                    break
            if not c:
                continue
            e = sum(l1[i] * Binv[i][j] * l2[j] for i in range(s) for j in range(s))
            if e < qmax:
                out[e] += sign * c
    return {e: v for e, v in sorted(out.items()) if v}


def knot_theta_oracle(g, alpha, qmax, ydeg, R=8, n=0, m=0):
    """``{(y, z, q): coeff}`` of one chamber half at label 0 for a knot graph
    with singular-or-not ``B``, summing ``l1 = B n``, ``l2 = B m`` over
    ``|n_i|, |m_i| <= R`` with the distinguished components fixed."""
    B = build_matrix(g).rows()
    s = len(B)
    ids = list(g.ids)
    d = g.index(g.distinguished)
    deg = g.degrees()
    N = R * (max(abs(x) for r in B for x in r) + 2) * s
    facs = {i: vertex_factor(2 - deg[v], alpha[v], N) for i, v in enumerate(ids) if i != d}
    dist_power = 1 - deg[g.distinguished]
    dist_fac = vertex_factor(dist_power, 1, N) if dist_power else {(0, 0): 1}
    sign = (-1) ** signature_of(B).positives
    free = [i for i in range(s) if i != d]

    proj = [{i: {k[c] for k in facs[i]} for i in free} for c in (0, 1)]

    def lattice(fixed, comp):
        pts = []
        for vals in itertools.product(range(-R, R + 1), repeat=len(free)):
            vec = [0] * s
            for i, x in zip(free, vals):
                vec[i] = x
            vec[d] = fixed
            l = _matvec(B, vec)
            if all(-l[i] in proj[comp][i] for i in free):
                pts.append((vec, l))
        return pts

    L1, L2 = lattice(n, 0), lattice(m, 1)
    out = defaultdict(Fraction)
    for nv, l1 in L1:
        for mv, l2 in L2:
            c = 1
            for i in free:
                c *= facs[i].get((-l1[i], -l2[i]), 0)
                if not c:
                    break
            if not c:
                continue
            e = Fraction(sum(nv[i] * l2[i] for i in range(s)))
            if e >= qmax:
                continue
            for (dy, dz), dc in dist_fac.items():
                y, z = l1[d] + dy, l2[d] + dz
                if abs(y) <= ydeg and abs(z) <= ydeg:
                    out[(y, z, e)] += sign * c * dc
    return {k: v for k, v in out.items() if v}

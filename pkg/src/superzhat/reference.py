"""Reference coefficient tables used by the verification suite.

Knot series are stored as ``(qexp, sign, a, b)`` for the monomial
``sign q^qexp y^a z^-b``; its Weyl partner ``-sign q^qexp y^-b z^a`` is
implied.  q-independent strata are stored as the excluded exponents.
"""

from fractions import Fraction


def _sym(groups):
    """Expand ``qexp -> [(sign, a, b)]`` groups where each pair (a, b) also
    stands for (b, a) with the same sign."""
    out = []
    for q, items in groups:
        for sign, a, b in items:
            out.append((q, sign, a, b))
            if a != b:
                out.append((q, sign, b, a))
    return out


# q-dependent parts: tabulated order, q-independent start, excluded i, terms
KNOT_SERIES = {
    (2, 3): dict(order=15, start=2, skip=(), terms=_sym([
        (1, [(1, 2, 3)]), (2, [(1, 3, 4)]), (5, [(-1, 5, 6)]), (7, [(-1, 6, 7)]),
        (12, [(1, 8, 9)]), (15, [(1, 9, 10)])])),
    (2, 5): dict(order=9, start=2, skip=(3,), terms=_sym([
        (1, [(1, 2, 5)]), (2, [(1, 4, 5)]), (3, [(1, 5, 6)]), (4, [(1, 5, 8)]),
        (7, [(-1, 7, 10)]), (9, [(-1, 9, 10)])])),
    (2, 7): dict(order=9, start=2, skip=(3, 5), terms=_sym([
        (1, [(1, 2, 7)]), (2, [(1, 4, 7)]), (3, [(1, 6, 7)]), (4, [(1, 7, 8)]),
        (5, [(1, 7, 10)]), (6, [(1, 7, 12)]), (9, [(-1, 9, 14)])])),
    (3, 4): dict(order=17, start=3, skip=(5,), terms=_sym([
        (1, [(1, 3, 4)]), (2, [(1, 3, 8), (1, 4, 6)]), (3, [(1, 4, 9)]), (4, [(1, 6, 8)]),
        (6, [(1, 8, 9)]), (7, [(-1, 7, 12)]), (10, [(-1, 10, 12)]), (11, [(-1, 11, 12)]),
        (13, [(-1, 12, 13)]), (14, [(-1, 12, 14)]), (17, [(-1, 12, 17)])])),
    (3, 5): dict(order=19, start=3, skip=(4, 7), terms=_sym([
        (1, [(1, 3, 5)]), (2, [(1, 3, 10), (1, 5, 6)]), (3, [(1, 5, 9)]),
        (4, [(1, 5, 12), (1, 6, 10)]), (6, [(1, 9, 10)]), (8, [(-1, 8, 15), (1, 10, 12)]),
        (11, [(-1, 11, 15)]), (13, [(-1, 13, 15)]), (14, [(-1, 14, 15)]),
        (16, [(-1, 15, 16)]), (17, [(-1, 15, 17)]), (19, [(-1, 15, 19)])])),
    (3, 7): dict(order=16, start=3, skip=(4, 5, 8, 11), terms=_sym([
        (1, [(1, 3, 7)]), (2, [(1, 3, 14), (1, 6, 7)]), (3, [(1, 7, 9)]),
        (4, [(1, 6, 14), (1, 7, 12)]), (5, [(1, 7, 15)]), (6, [(1, 7, 18), (1, 9, 14)]),
        (8, [(1, 12, 14)]), (10, [(-1, 10, 21), (1, 14, 15)]), (12, [(1, 14, 18)]),
        (13, [(-1, 13, 21)]), (16, [(-1, 16, 21)])])),
}

KNOT_CONSTANT = 1


def knot_reference_terms(s, t, ydeg):
    """Full ``{(y, z, q): coeff}`` of the tabulated series within ``|y|, |z| <= ydeg``
    and ``q <= order``, including the q-independent strata and the constant."""
    ref = KNOT_SERIES[(s, t)]
    out = {(0, 0, Fraction(0)): KNOT_CONSTANT}
    for i in range(ref["start"], ydeg + 1):
        if i in ref["skip"]:
            continue
        for key, c in (((i, 0), 1), ((0, -i), 1), ((-i, 0), -1), ((0, i), -1)):
            out[key + (Fraction(0),)] = c
    for q, sign, a, b in ref["terms"]:
        if a <= ydeg and b <= ydeg:
            out[(a, -b, Fraction(q))] = out.get((a, -b, Fraction(q)), 0) + sign
            out[(-b, a, Fraction(q))] = out.get((-b, a, Fraction(q)), 0) - sign
    return out


# sign/shift tables of T(2, 2l+1): (sign, g, residues) modulo 2(2l+1)
EPS_TABLES = {
    1: [(1, 1, (3, 4, 1, 2)), (1, 1, (4, 5, 2, 3)), (-1, 1, (0, 1, 4, 5)), (-1, 1, (1, 2, 5, 0))],
    2: [(1, 3, (5, 8, 9, 2)), (1, 1, (7, 8, 1, 2)), (1, 1, (8, 9, 2, 3)), (1, 3, (8, 1, 2, 5)),
        (-1, 3, (0, 3, 4, 7)), (-1, 1, (2, 3, 6, 7)), (-1, 1, (3, 4, 7, 8)),
        (-1, 3, (3, 6, 7, 0))],
    3: [(1, 5, (7, 12, 11, 2)), (1, 3, (9, 12, 13, 2)), (1, 1, (11, 12, 1, 2)),
        (1, 1, (12, 13, 2, 3)), (1, 3, (12, 1, 2, 5)), (1, 5, (12, 3, 2, 7)),
        (-1, 5, (0, 5, 4, 9)), (-1, 3, (2, 5, 6, 9)), (-1, 1, (4, 5, 8, 9)),
        (-1, 1, (5, 6, 9, 10)), (-1, 3, (5, 8, 9, 12)), (-1, 5, (5, 10, 9, 0))],
}


def _q(seq, start=1, step=1, shift=Fraction(0)):
    """``{shift + start + step*i: c}`` for the listed coefficients, zeros dropped."""
    return {Fraction(shift) + start + step * i: c for i, c in enumerate(seq) if c}


# closed homology spheres, coefficients of q^1, q^2, ...
BRIESKORN = {
    ("T23", 1): (2, 3, 7, _q([0, 2, 2, 4, 2, 6, 4, 6, 6, 8, 4, 10, 6, 8, 8, 10, 6, 12])),
    ("T23", 2): (2, 3, 13, _q([0, 2, 2, 4, 2, 6, 2, 6, 4, 6, 2, 10, 4, 6, 8, 10, 4, 10])),
    ("T23", 3): (2, 3, 19, _q([0, 2, 2, 4, 2, 6, 2, 6, 4, 6, 2, 10, 4, 6, 6, 8, 2, 10])),
    ("T25", 1): (2, 5, 11, _q([0, 2, 0, 4, 2, 4, 2, 6, 2, 6, 4, 8, 4, 6, 6, 10, 4, 8])),
    ("T25", 2): (2, 5, 21, _q([0, 2, 0, 4, 2, 4, 2, 6, 2, 6, 2, 8, 2, 6, 4, 8, 2, 8, 2, 10,
                               6, 6, 4, 12, 6])),
    ("T25", 3): (2, 5, 31, _q([0, 2, 0, 4, 2, 4, 2, 6, 2, 6, 2, 8, 2, 6, 4, 8, 2, 8, 2, 10,
                               4, 6, 2, 12, 4])),
    ("T23m", 1): (2, 3, 5, _q([0, 2, 2, 4, 4, 6, 4, 8, 6, 8, 6, 10, 6, 10, 8, 10, 6, 12])),
    ("T23m", 2): (2, 3, 11, _q([0, 2, 2, 4, 2, 6, 2, 6, 4, 6, 4, 10, 4, 8, 8, 8, 6, 10])),
    ("T23m", 3): (2, 3, 17, _q([0, 2, 2, 4, 2, 6, 2, 6, 4, 6, 2, 10, 2, 6, 6, 8, 4, 10])),
}

# lens spaces from the unknot: the distinct branches (q^k coefficient maps)
LENS = {
    -2: [
        _q([2, 4, 4, 6, 4, 8, 4, 8, 6, 8, 4, 12], start=2, step=2),
        _q([1, 2, 2, 2, 3, 2, 2, 4, 2, 2, 4, 2, 3, 4], start=0, shift=Fraction(1, 2)),
        _q([2, 2, 4, 2, 4, 4, 4, 2, 6, 4, 4, 4, 4, 4]),
        _q([2, 2, 4, 2, 4, 4, 4, 2, 6, 4, 4, 4, 4, 4]),
    ],
    -3: [
        _q([2, 4, 4, 6, 4, 8, 4, 8, 6, 8, 4, 12], start=3, step=3),
        _q([2, 4, 4, 4, 4, 6, 4, 4, 4, 8, 4, 4, 4, 8], start=0, shift=Fraction(1, 3)),
        _q([2, 0, 4, 0, 4, 0, 4, 2, 4, 0, 4, 0, 8, 0, 4, 0, 4, 4, 4], start=0,
           shift=Fraction(4, 3)),
        _q([2, 2, 2, 4, 2, 2, 4, 4, 2, 4, 2, 4, 4, 4]),
        _q([0, 2, 0, 2, 2, 2, 0, 4, 0, 4, 2, 2, 0, 4, 2, 4, 2, 2]),
        _q([2, 2, 4, 2, 4, 2, 6, 2, 4, 2, 6, 4, 4, 2], start=0, shift=Fraction(2, 3)),
    ],
}

# integer surgeries -p on the right-handed trefoil
TREFOIL_INTEGER = {
    -2: [
        _q([0, 2, 0, 4, 2, 4, 2, 6, 2, 6, 2]),
        _q([2, 2, 2, 4, 4, 2, 6, 4, 4, 6, 4, 6, 6], start=0, shift=Fraction(3, 2)),
        _q([1, 1, 3, 2, 3, 4, 4, 3, 5, 5, 4]),
    ],
    -3: [
        _q([0, 0, 2, 2, 0, 4, 2, 2, 4, 2, 2, 6, 2, 2]),
        _q([1, 1, 3, 2, 3, 2, 5, 2], start=0, shift=Fraction(2, 3)),
        _q([1, 1, 1, 3, 2, 2, 3, 4, 2, 3, 1, 3]),
        _q([0, 2, 1, 2, 3, 3, 2, 4, 2, 5, 3]),
        _q([2, 0, 4, 2, 4, 2, 4, 4, 4, 2], start=0, shift=Fraction(4, 3)),
        _q([2, 2, 2, 2, 4, 2, 4, 2], start=0, shift=Fraction(4, 3)),
    ],
}


def branch_order(branch):
    """Highest tabulated exponent of a branch (the comparison range)."""
    return max(branch)

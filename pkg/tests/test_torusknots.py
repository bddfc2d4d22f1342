from fractions import Fraction

import pytest

from superzhat.qseries import InfiniteQSupport, Window, series_add
from superzhat.torusknots import (NotCoprime, TorusKnot, box_window, closed_form_series,
                                  gm_torus_epsilon, mirror_fk, t2_family_table, torus_chambers,
                                  torus_fk, torus_knot_graph)


def weights(g):
    return [w for _, w in g.vertices]


def test_knot_validation():
    with pytest.raises(NotCoprime):
        TorusKnot(2, 4)
    with pytest.raises(ValueError):
        TorusKnot(3, 2)


def test_graphs():
    g = torus_knot_graph(TorusKnot(2, 3))
    assert weights(g) == [-1, -2, -3, -6] and g.distinguished == 3
    g = torus_knot_graph(TorusKnot(2, 5))
    assert weights(g) == [-1, -2, -3, -2, -10]
    assert g.edges == ((0, 1), (0, 2), (0, 4), (2, 3))
    g = torus_knot_graph(TorusKnot(3, 4))
    assert weights(g)[-1] == -12
    assert sorted(weights(g)[1:-1]) == [-4, -2, -2]


def test_chambers():
    g = torus_knot_graph(TorusKnot(2, 3))
    plus, minus = torus_chambers(g)
    assert plus.as_dict() == {0: 1, 1: 1, 2: 1}
    assert minus == plus.negate()
    plus, _ = torus_chambers(torus_knot_graph(TorusKnot(3, 4)), TorusKnot(3, 4))
    assert set(plus.as_dict().values()) == {1}
    assert not plus.conjectural
    plus, _ = torus_chambers(torus_knot_graph(TorusKnot(4, 5)), TorusKnot(4, 5))
    assert plus.conjectural


def test_t25_table():
    tab = t2_family_table(2)
    assert tab.modulus == 10
    assert len(tab.cases) == 8
    assert (1, 3, (5, 8, 9, 2)) in tab.cases
    assert {c[1] for c in tab.cases} == {1, 3}


def test_t27_table():
    tab = t2_family_table(3)
    assert tab.modulus == 14
    assert len(tab.cases) == 12
    assert {c[1] for c in tab.cases} == {1, 3, 5}
    assert any(c[0] == 1 and c[2][0] == 7 for c in tab.cases)


def test_table_lookup_is_unique():
    tab = t2_family_table(3)
    for m in range(1, 40):
        for n in range(m, m + 7):
            e, g = tab.lookup(m, n)
            assert e in (-1, 0, 1)
            assert (e == 0) == (g == 0)


@pytest.mark.parametrize("l,qmax,ydeg", [(1, 4, 8), (2, 4, 9), (3, 3, 10)])
def test_closed_form_matches_enumeration(l, qmax, ydeg):
    w = Window(qmax, ydeg)
    F = torus_fk(TorusKnot(2, 2 * l + 1), w, decompose=False)[0].series
    assert closed_form_series(l, w) == F


def test_q_part_support():
    _, dec, _ = torus_fk(TorusKnot(2, 7), Window(4, 10))
    for (m, n), qs in dec.coeffs.items():
        if any(q != 0 for q in qs) and m < n:
            assert (n - m) % 2 == 1


def test_mirror():
    k = TorusKnot(2, 3)
    w = box_window(k, 5)
    ks = torus_fk(k, w, decompose=False)[0]
    m = mirror_fk(ks)
    assert m.series.coeff(2, -3, -1) == ks.series.coeff(2, -3, 1) == 1
    back = mirror_fk(m)
    assert back.series.terms == ks.series.terms


def test_mirror_swaps_chambers():
    k = TorusKnot(2, 3)
    _, _, (plus, minus) = torus_fk(k, box_window(k, 4), decompose=False)
    mp = mirror_fk(plus)
    assert mp.chamber == plus.chamber.negate()
    total = series_add(mp.series, mirror_fk(minus).series)
    assert total.coeff(3, -2, -1) == 1


def test_mirror_needs_finite_fibers():
    ks = torus_fk(TorusKnot(2, 3), Window(2, 6), decompose=False)[0]
    with pytest.raises(InfiniteQSupport):
        mirror_fk(ks)


def test_gm_epsilon():
    eps = dict(gm_torus_epsilon(TorusKnot(2, 3), 30))
    assert min(eps) == 1 and eps[1] == 1
    assert eps[5] == -1
    assert eps[7] == -1 and eps[11] == 1
    assert all(m % 2 for m in eps)


def test_box_window():
    assert box_window(TorusKnot(2, 3), 6).qmax == Fraction(7)

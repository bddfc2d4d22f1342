from fractions import Fraction

import pytest

from superzhat.chambers import ChamberAssignment
from superzhat.knotfk import (DegenerateLabelForm, FkDecomposition, InvalidSlope,
                              NotAMonomialMultiple, boundary_action, fk, framed_unknot_series,
                              knot_chambers, monomial_ratio, solid_torus_series, zhat_knot)
from superzhat.oracles import knot_theta_oracle
from superzhat.plumbing import LabelPair, linear_graph, zero_label
from superzhat.qseries import Window, invert_vars, series_add
from superzhat.torusknots import TorusKnot, torus_fk, torus_knot_graph

W = Window(2, 5)


def q0(dec):
    return {k for k, v in dec.coeffs.items() if 0 in v}


def test_zero_framed_unknot_is_leaf_expansion():
    g = linear_graph([0], True)
    plus, minus = knot_chambers(g)
    a = zhat_knot(g, zero_label(1), 0, 0, plus, Window(1, 3)).series
    assert dict(a.terms) == {(y, z, 0): 1 for y, z in
                             [(0, 0), (1, 0), (2, 0), (3, 0), (0, -1), (0, -2), (0, -3)]}
    b = zhat_knot(g, zero_label(1), 0, 0, minus, Window(1, 3)).series
    assert b == -invert_vars(a)


def test_framed_unknot_closed_form():
    s = framed_unknot_series(-2, 1, 1, 0, 0, 1, Window(3, 2))
    # (pn + b)(pm + c)/p = -1/2, both exponents shifted by one
    assert s.coeff(1, 1, Fraction(-1, 2)) == 1
    assert s.coeff(2, 1, Fraction(-1, 2)) == 1
    assert s.coeff(1, 0, Fraction(-1, 2)) == 1
    assert framed_unknot_series(3, 0, 0, 0, 0, 1, Window(1, 2)).coeff(0, 0, 0) == -1
    with pytest.raises(DegenerateLabelForm):
        framed_unknot_series(0, 1, 0, 0, 0, 1, W)


def test_trefoil_fk():
    ks, dec, _ = torus_fk(TorusKnot(2, 3), Window(3, 6))
    assert q0(dec) == {(i, 0) for i in range(2, 7)} | {(0, i) for i in range(2, 7)}
    assert dec.coeffs[(2, 3)] == {1: 1} and dec.coeffs[(3, 2)] == {1: 1}
    assert dec.coeffs[(3, 4)] == {2: 1} and dec.coeffs[(4, 3)] == {2: 1}
    assert ks.series.coeff(-2, 3, 1) == -1
    assert dec.reconstruct(ks.series.window) == ks.series


def test_t25_skips_three():
    _, dec, _ = torus_fk(TorusKnot(2, 5), Window(2, 6))
    assert (3, 0) not in dec.coeffs and (0, 3) not in dec.coeffs
    assert {(2, 0), (4, 0), (5, 0)} <= q0(dec)
    assert dec.coeffs[(2, 5)] == {1: 1} and dec.coeffs[(5, 2)] == {1: 1}


def test_t34_q2_terms():
    _, dec, _ = torus_fk(TorusKnot(3, 4), Window(3, 9))
    at2 = {k for k, v in dec.coeffs.items() if 2 in v}
    assert {(3, 8), (4, 6), (6, 4), (8, 3)} <= at2


def test_fk_general_graph_matches_torus_path():
    g = torus_knot_graph(TorusKnot(2, 3))
    ks, _, _ = fk(g, Window(2, 5))
    assert ks.series == torus_fk(TorusKnot(2, 3), Window(2, 5))[0].series


def test_weyl_antisymmetry():
    F = torus_fk(TorusKnot(2, 5), Window(3, 7))[0].series
    assert invert_vars(F) == -F


@pytest.mark.parametrize("nm", [(1, 0), (0, 1), (-1, 2)])
def test_nm_independence(nm):
    g = torus_knot_graph(TorusKnot(2, 3))
    ch = knot_chambers(g)[0]
    a = zhat_knot(g, zero_label(g.size), 0, 0, ch, Window(3, 6)).series
    b = zhat_knot(g, zero_label(g.size), *nm, ch, Window(3, 6)).series
    assert a == b


@pytest.mark.parametrize("sign", [1, -1])
def test_trefoil_oracle(sign):
    g = torus_knot_graph(TorusKnot(2, 3))
    ch = [c for c in knot_chambers(g) if c.sign == sign][0]
    ours = zhat_knot(g, zero_label(g.size), 0, 0, ch, Window(3, 6)).series
    assert knot_theta_oracle(g, ch.as_dict(), 3, 6) == dict(ours.terms)


def test_decomposition_rejects_bad_shapes():
    w = Window(2, 3)
    from superzhat.qseries import TriSeries
    with pytest.raises(ValueError):
        FkDecomposition.from_series(TriSeries({(1, 1, 0): 1, (-1, -1, 0): -1}, w))
    with pytest.raises(ValueError):
        FkDecomposition.from_series(TriSeries({(1, 0, 0): 1}, w))


@pytest.mark.parametrize("p,r", [(-1, 1), (-3, 1), (-3, 2), (5, 3), (2, 1)])
@pytest.mark.parametrize("b,c", [(0, 0), (1, 2)])
def test_solid_torus_conjugation(p, r, b, c):
    w = Window(4, 4)
    plus = solid_torus_series(p, r, -b, -c, 0, 0, 1, w)
    minus = solid_torus_series(p, r, b, c, 0, 0, -1, w)
    assert plus == -invert_vars(minus)


@pytest.mark.parametrize("p", [-1, -2, 3])
def test_solid_torus_r1_is_framed_unknot(p):
    w = Window(3, 4)
    for sign in (1, -1):
        assert solid_torus_series(p, 1, 1, 0, 0, 0, sign, w) == \
            framed_unknot_series(p, 1, 0, 0, 0, sign, w)


def test_solid_torus_invalid_slope():
    with pytest.raises(InvalidSlope):
        solid_torus_series(2, 4, 0, 0, 0, 0, 1, W)


def test_boundary_action():
    g = torus_knot_graph(TorusKnot(2, 3))
    ch = knot_chambers(g)[0]
    ks = zhat_knot(g, zero_label(g.size), 0, 0, ch, Window(3, 8))
    assert boundary_action(ks).series == ks.series
    assert boundary_action(ks, longitude_steps=(1, 1)).series == ks.series
    assert boundary_action(ks, longitude_steps=(-1, 2)).series == ks.series


def test_meridian_step_on_framed_unknot():
    g = linear_graph([-2], True)
    ch = knot_chambers(g)[0]
    w = Window(4, 4)
    ks = zhat_knot(g, LabelPair((0,), (0,)), 0, 0, ch, w)
    moved = boundary_action(ks, meridian_steps=(1, 1))
    assert moved.series == framed_unknot_series(-2, 1, 1, 0, 0, 1, w)


def test_monomial_ratio():
    w = Window(5, 6)
    base = framed_unknot_series(-1, 0, 0, 0, 0, 1, w)
    shifted = framed_unknot_series(-1, 1, 1, 0, 0, 1, w)
    assert monomial_ratio(shifted, base) == (1, 1, Fraction(-1))
    assert monomial_ratio(base, base) == (0, 0, 0)
    with pytest.raises(NotAMonomialMultiple):
        monomial_ratio(base, series_add(base, framed_unknot_series(-1, 0, 0, 0, 0, -1, w)))


def test_single_vertex_chamber_sign():
    g = linear_graph([-1], True)
    a = zhat_knot(g, zero_label(1), 0, 0, ChamberAssignment({}, 1), Window(1, 2)).series
    b = zhat_knot(g, zero_label(1), 0, 0, ChamberAssignment({}, -1), Window(1, 2)).series
    assert a == -invert_vars(b)

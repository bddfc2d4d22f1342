from fractions import Fraction

import pytest

from superzhat.chambers import ChamberAssignment, find_good_chambers
from superzhat.oracles import closed_theta_oracle
from superzhat.plumbing import (SeifertData, brieskorn_seifert, linear_graph, seifert_to_graph,
                                zero_label)
from superzhat.qseries import Window, to_text
from superzhat.zhat import (BadChamber, NotClosed, RadiusCapExceeded, zhat_all_labels,
                            zhat_closed)

SIGMA237 = seifert_to_graph(SeifertData(-1, ((1, 2), (1, 3), (1, 7))))


def qpart(g, qmax, label=None, which=0):
    ch = find_good_chambers(g)[which]
    return zhat_closed(g, label or zero_label(g.size), ch, Window(qmax, 0)).q_part()


def test_sigma237():
    assert qpart(SIGMA237, 9) == {2: 2, 3: 2, 4: 4, 5: 2, 6: 6, 7: 4, 8: 6}


def test_sigma235():
    g = seifert_to_graph(brieskorn_seifert(2, 3, 5))
    assert qpart(g, 7) == {2: 2, 3: 2, 4: 4, 5: 4, 6: 6}


def test_lens_31_trivial_label():
    assert qpart(linear_graph([-3]), 7) == {3: 2, 6: 4}


def test_both_chambers_agree_on_homology_sphere():
    assert qpart(SIGMA237, 7, which=0) == qpart(SIGMA237, 7, which=1)


def test_label_counts():
    g = linear_graph([-2])
    assert len(zhat_all_labels(g, find_good_chambers(g)[0], Window(3, 0))) == 4
    g = linear_graph([-3])
    res = zhat_all_labels(g, find_good_chambers(g)[0], Window(5, 0))
    assert len(res) == 9
    assert len({tuple(r.q_part().items()) for r in res.values()}) == 6
    res = zhat_all_labels(SIGMA237, find_good_chambers(SIGMA237)[0], Window(3, 0))
    assert list(res) == [zero_label(4)]


def test_lens_21_half_integer_branch():
    g = linear_graph([-2])
    res = zhat_all_labels(g, find_good_chambers(g)[0], Window(5, 0))
    branch = [r for lab, r in res.items() if lab.bvec == (1,) and lab.cvec == (1,)][0]
    assert branch.q_part() == {Fraction(1, 2): 2, Fraction(3, 2): 4, Fraction(5, 2): 4,
                               Fraction(7, 2): 4, Fraction(9, 2): 6}


def test_threads_give_same_result():
    g = linear_graph([-3])
    ch = find_good_chambers(g)[0]
    a = zhat_all_labels(g, ch, Window(4, 0))
    b = zhat_all_labels(g, ch, Window(4, 0), threads=2)
    assert {k: v.series for k, v in a.items()} == {k: v.series for k, v in b.items()}


def test_deterministic_output():
    ch = find_good_chambers(SIGMA237)[0]
    a = to_text(zhat_closed(SIGMA237, zero_label(4), ch, Window(6, 0)).series)
    b = to_text(zhat_closed(SIGMA237, zero_label(4), ch, Window(6, 0)).series)
    assert a == b


@pytest.mark.parametrize("weights", [[-2], [-5], [-2, -3], [-3, -4]])
def test_matches_theta_oracle(weights):
    g = linear_graph(weights)
    ch = find_good_chambers(g)[0]
    z = zhat_closed(g, zero_label(g.size), ch, Window(4, 0)).q_part()
    o = closed_theta_oracle(g, (0,) * g.size, (0,) * g.size, ch.as_dict(), 4, R=12)
    assert z == {e: c for e, c in o.items() if e != 0}


def test_errors():
    with pytest.raises(NotClosed):
        zhat_closed(linear_graph([-2], True), zero_label(1), ChamberAssignment({}, 1), Window(2, 0))
    bad = ChamberAssignment({0: 1}, 1)
    with pytest.raises(BadChamber):
        zhat_closed(SIGMA237, zero_label(4), bad, Window(2, 0))


def test_radius_cap(monkeypatch):
    monkeypatch.setenv("SUPERZHAT_RADIUS_CAP", "1")
    with pytest.raises(RadiusCapExceeded):
        qpart(SIGMA237, 8)

from superzhat.oracles import closed_theta_oracle, knot_theta_oracle, vertex_factor
from superzhat.plumbing import linear_graph


def test_vertex_factor_trivial_power():
    assert vertex_factor(0, 1, 5) == {(0, 0): 1}


def test_leaf_factor_first_terms():
    f = vertex_factor(1, 1, 6)
    assert f[(0, 0)] == 1 and f[(1, 0)] == 1 and f[(0, -1)] == 1
    assert (1, -1) not in f


def test_leaf_times_inverse_is_one():
    N = 12
    leaf = vertex_factor(1, 1, 3 * N)
    inv = vertex_factor(-1, 1, 3 * N)
    prod = {}
    for (a, b), c in leaf.items():
        for (x, y), d in inv.items():
            k = (a + x, b + y)
            if abs(k[0]) <= N and abs(k[1]) <= N:
                prod[k] = prod.get(k, 0) + c * d
    assert {k: v for k, v in prod.items() if v} == {(0, 0): 1}


def test_closed_oracle_lens_space():
    g = linear_graph([-3])
    o = closed_theta_oracle(g, (0,), (0,), {0: 1}, 7, R=12)
    assert {e: c for e, c in o.items() if e} == {3: 2, 6: 4}


def test_knot_oracle_framed_unknot_chain():
    g = linear_graph([-1, -2], True)
    o = knot_theta_oracle(g, {1: 1}, 2, 3, R=6)
    assert all(abs(y) <= 3 and abs(z) <= 3 and q < 2 for (y, z, q) in o)

import random
from fractions import Fraction

import pytest

from superzhat.plumbing import (DistinguishedVertexMove, InvalidSeifertPair, LabelPair, NotATree,
                                PatternMismatch, PlumbingGraph, SeifertData, SingularMatrix,
                                apply_move, brieskorn_seifert, build_matrix, det,
                                enumerate_labels, euler_number, evaluate_continued_fraction,
                                homology, is_generic, is_weakly_negative_definite, linear_graph,
                                negative_continued_fraction, pi_shift, seifert_to_graph,
                                signature_of, slope_chain, solve_integer)
from superzhat.torusknots import TorusKnot, torus_knot_graph

SIGMA237 = seifert_to_graph(SeifertData(-1, ((1, 2), (1, 3), (1, 7))))


def weights(g):
    return [w for _, w in g.vertices]


def sig(B):
    s = signature_of(B)
    return (s.positives, s.zeros, s.negatives)


def test_graph_validation():
    with pytest.raises(NotATree):
        PlumbingGraph(((0, -1), (1, -2)), ())
    with pytest.raises(NotATree):
        PlumbingGraph(((0, -1), (1, -2), (2, -2)), ((0, 1), (0, 1)))
    with pytest.raises(NotATree):
        PlumbingGraph(((0, -1), (1, -2), (2, -2)), ((0, 1), (0, 2)), 0)


def test_single_vertex_matrix():
    assert build_matrix(linear_graph([-2])).rows() == [[-2]]


def test_trefoil_complement_matrix():
    B = build_matrix(torus_knot_graph(TorusKnot(2, 3)))
    assert B.rows() == [[-1, 1, 1, 1], [1, -2, 0, 0], [1, 0, -3, 0], [1, 0, 0, -6]]
    assert det(B) == 0


def test_signatures():
    assert sig(build_matrix(linear_graph([-2]))) == (0, 0, 1)
    assert sig([[1, 0], [0, -1]]) == (1, 0, 1)
    assert sig(build_matrix(SIGMA237)) == (0, 0, 4)


def test_signature_congruence_invariance():
    rng = random.Random(3)
    for _ in range(20):
        B = build_matrix(SIGMA237).rows()
        n = len(B)
        S = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(6):
            i, j = rng.sample(range(n), 2)
            k = rng.choice([-2, -1, 1, 2])
            S = [[S[r][c] + (k * S[j][c] if r == i else 0) for c in range(n)] for r in range(n)]
        C = [[sum(S[a][i] * B[a][b] * S[b][j] for a in range(n) for b in range(n))
              for j in range(n)] for i in range(n)]
        assert sig(C) == sig(B)


def test_solve_integer():
    assert solve_integer([[-2]], [-4]) == [2]
    assert solve_integer([[-2]], [-3]) is None


def test_solve_integer_with_fixed_component():
    B = build_matrix(torus_knot_graph(TorusKnot(2, 3))).rows()
    for n in [(1, 0, 0, 0), (2, -1, 1, 0), (-3, 2, 5, 0)]:
        rhs = [sum(B[i][j] * n[j] for j in range(4)) for i in range(4)]
        sol = solve_integer(B, rhs, {3})
        assert sol is not None and sol[3] == 0
        assert [sum(B[i][j] * sol[j] for j in range(4)) for i in range(4)] == rhs


def test_homology():
    assert homology(build_matrix(SIGMA237)) == []
    assert homology([[-2]]) == [2]
    assert homology([[-3]]) == [3]


def test_weak_negative_definiteness():
    assert is_weakly_negative_definite(SIGMA237)
    assert is_weakly_negative_definite(linear_graph([-2, 3, -5]))
    g = torus_knot_graph(TorusKnot(2, 3))
    assert not is_weakly_negative_definite(g)
    verts = tuple((v, -7 if v == g.distinguished else w) for v, w in g.vertices)
    assert is_weakly_negative_definite(PlumbingGraph(verts, g.edges, g.distinguished))


def test_genericity():
    assert is_generic(SIGMA237)
    assert not is_generic(linear_graph([-2, -3]))
    with pytest.raises(SingularMatrix):
        is_generic(linear_graph([0]))


def test_seifert_graphs():
    assert weights(SIGMA237) == [-1, -2, -3, -7]
    g = seifert_to_graph(SeifertData(-1, ((1, 2), (1, 3), (2, 13))))
    assert weights(g) == [-1, -2, -3, -7, -2]
    assert negative_continued_fraction(Fraction(-5, 2)) == [-3, -2]
    with pytest.raises(InvalidSeifertPair):
        seifert_to_graph(SeifertData(-1, ((2, 4),)))


def test_continued_fraction_round_trip():
    for x in [Fraction(-5, 2), Fraction(-13, 7), Fraction(3, 5), Fraction(-1)]:
        assert evaluate_continued_fraction(negative_continued_fraction(x)) == x


def test_euler_number():
    d = SeifertData(-1, ((1, 2), (1, 3), (1, 7)))
    assert euler_number(d) == Fraction(-1, 42)
    assert euler_number(SeifertData(-2)) == -2
    assert euler_number(d) * 42 == -1
    b = brieskorn_seifert(2, 3, 7)
    assert euler_number(b) * 42 in (1, -1)
    assert homology(build_matrix(seifert_to_graph(b))) == []


def test_blow_down():
    g = PlumbingGraph(((0, -3), (1, -1)), ((0, 1),))
    assert apply_move(g, "BlowDown", 1, -1).vertices == ((0, -2),)
    assert apply_move(apply_move(g, "BlowDown", 1, -1), "BlowUp", 0, -1) == g
    with pytest.raises(PatternMismatch):
        apply_move(g, "BlowDown", 1, 1)


def test_absorb():
    g = PlumbingGraph(((0, -3), (1, -1), (2, -4)), ((0, 1), (1, 2)))
    h = apply_move(g, "Absorb", 1, -1)
    assert h.vertices == ((0, -2), (2, -3)) and h.edges == ((0, 2),)
    assert apply_move(h, "Desorb", (0, 2), -1).vertices == ((0, -3), (2, -4), (3, -1))


def test_fuse_and_fission():
    g = PlumbingGraph(((0, -2), (1, 0), (2, -3), (3, -2), (4, -5)),
                      ((0, 1), (1, 2), (2, 3), (0, 4)))
    h = apply_move(g, "Fuse", 1)
    assert h.vertices == ((0, -5), (3, -2), (4, -5))
    assert set(h.edges) == {(0, 3), (0, 4)}
    back = apply_move(h, "Fission", (0, (3,), -2))
    assert sorted(weights(back)) == sorted(weights(g))
    assert det(build_matrix(back)) == det(build_matrix(g))


def test_distinguished_vertex_is_protected():
    g = linear_graph([-2, -3], True)
    with pytest.raises(DistinguishedVertexMove):
        apply_move(g, "BlowUp", 0, -1)


def test_pi_shift_matches_signature():
    g = SIGMA237
    for move, site, sign in [("BlowUp", 0, 1), ("BlowUp", 0, -1), ("Desorb", (0, 1), 1),
                             ("Desorb", (0, 1), -1), ("Fission", (0, (1,), -1), 1)]:
        h = apply_move(g, move, site, sign)
        assert sig(build_matrix(h))[0] - sig(build_matrix(g))[0] == pi_shift(move, sign)


def test_enumerate_labels():
    assert [lab.bvec for lab in enumerate_labels([[-2]])][::2] == [(0,), (1,)]
    labs = enumerate_labels([[-3]])
    assert len(labs) == 9
    assert {lab.bvec for lab in labs} == {(0,), (1,), (2,)}
    assert enumerate_labels(build_matrix(SIGMA237)) == [LabelPair((0,) * 4, (0,) * 4)]
    with pytest.raises(SingularMatrix):
        enumerate_labels([[0]])


@pytest.mark.parametrize("weights_", [[-2, -3], [-5], [-2, -2, -2], [-3, -1, -4]])
def test_label_count_is_det_squared(weights_):
    B = build_matrix(linear_graph(weights_))
    assert len(enumerate_labels(B)) == det(B) ** 2


def test_slope_chain():
    ch = slope_chain(-3, 2)
    assert ch.distinguished == 0
    assert evaluate_continued_fraction(weights(ch)) == Fraction(-3, 2)
    with pytest.raises(ValueError):
        slope_chain(4, 2)

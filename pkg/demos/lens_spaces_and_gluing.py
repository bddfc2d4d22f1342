"""L(3,1) three ways: closed plumbing, surgery on the unknot, and gluing.

All nine label pairs of the single -3 vertex are evaluated directly.  The
same branches come out of -3 surgery on the unknot.  Finally two framed
unknot complements are glued along their boundary tori and compared with
the closed graph they form.
"""

from superzhat import (SurgerySlope, Window, dehn_surgery, find_good_chambers, fk,
                       glue_knot_graphs, linear_graph, surgery_labels, zero_label,
                       zhat_all_labels, zhat_closed)

QMAX = 7


def fmt(coeffs):
    return " + ".join(f"{c}q^{e}" for e, c in sorted(coeffs.items())) or "0"


def main():
    lens = linear_graph([-3])
    closed = zhat_all_labels(lens, find_good_chambers(lens)[0], Window(QMAX, 0))
    print("closed plumbing, one line per label (b, c):")
    for lab, res in closed.items():
        print(f"  {lab.bvec[0]},{lab.cvec[0]}: {fmt(res.q_part())}")

    unknot = linear_graph([0], True)
    _, _, halves = fk(unknot, Window(QMAX, 4 * QMAX), decompose=False)
    slope = SurgerySlope.of(-3)
    surgered = {lab: dehn_surgery(halves, slope, lab, Window(QMAX, 0), unknot).q_part()
                for lab in surgery_labels(slope)}
    as_set = lambda rows: sorted(tuple(sorted(r.items())) for r in rows)
    print("surgery gives the same multiset of branches:",
          as_set(surgered.values()) == as_set(r.q_part() for r in closed.values()))

    g1, g2 = linear_graph([-1, -2], True), linear_graph([-1], True)
    glued, g = glue_knot_graphs(g1, g2, Window(QMAX, 0), ydeg=10)
    direct = zhat_closed(g, zero_label(g.size), find_good_chambers(g)[0], Window(QMAX, 0))
    print(f"gluing [-1,-2] with [-1] gives the chain {[w for _, w in g.vertices]}")
    print("  glued:  ", fmt({e: c for e, c in glued.q_coefficients().items() if e}))
    print("  direct: ", fmt(direct.q_part()))


if __name__ == "__main__":
    main()

"""Three routes to the same homology-sphere invariant.

Sigma(2,3,7) is computed from its star-shaped plumbing, then again as -1
surgery on the right-handed trefoil.  The left-handed trefoil, obtained by
mirroring F_K, gives Sigma(2,3,5) under the same surgery.
"""

from superzhat import (SurgerySlope, TorusKnot, Window, box_window, brieskorn_seifert,
                       dehn_surgery, find_good_chambers, mirror_fk, seifert_to_graph, torus_fk,
                       torus_knot_graph, zero_label, zhat_closed)

QMAX = 10


def show(title, coeffs):
    terms = " + ".join(f"{c}q^{e}" for e, c in sorted(coeffs.items()))
    print(f"{title:<38} {terms}")


def by_plumbing(*bs):
    g = seifert_to_graph(brieskorn_seifert(*bs))
    ch = find_good_chambers(g)[0]
    print(f"Sigma{bs}: plumbing weights {[w for _, w in g.vertices]}")
    return zhat_closed(g, zero_label(g.size), ch, Window(QMAX, 0)).q_part()


def main():
    trefoil = TorusKnot(2, 3)
    g = torus_knot_graph(trefoil)
    slope = SurgerySlope.of(-1)

    show("Sigma(2,3,7) from plumbing", by_plumbing(2, 3, 7))
    _, _, halves = torus_fk(trefoil, Window(QMAX, 2 * QMAX + 6), decompose=False)
    show("Sigma(2,3,7) as -1 surgery on T(2,3)",
         dehn_surgery(halves, slope, (0, 0), Window(QMAX, 0), g).q_part())

    print()
    show("Sigma(2,3,5) from plumbing", by_plumbing(2, 3, 5))
    # mirroring needs every (y, z) fiber complete, hence the box window
    _, _, (a, b) = torus_fk(trefoil, box_window(trefoil, 2 * QMAX + 6), decompose=False)
    left = (mirror_fk(a), mirror_fk(b))
    show("Sigma(2,3,5) as -1 surgery on T(2,3)*",
         dehn_surgery(left, slope, (0, 0), Window(QMAX, 0), g).q_part())


if __name__ == "__main__":
    main()

"""Tree decompositions of matroids: widths, reduction, exact search.

A decomposition is any tree plus an assignment of ground set elements
to its vertices.  A vertex sees the element sets its branches display;
its node width is the matroid rank minus the displayed rank defects.
Low width means the matroid tears apart along small separations.
"""

from matzero import (
    UniformMatroid,
    best_heuristic,
    exact_treewidth_small,
    heuristic_decomposition,
    reduce,
)
from matzero.instances import fano, k4_graphic, wide_uniform_decomposition


def describe(dec, title):
    report = dec.width_report()
    print(f"\n{title}")
    print(f"  tree vertices : {dec.tree.num_vertices}")
    print(f"  node widths   : {report.node_widths}")
    print(f"  width         : {report.width}")
    print(f"  spanning side : {report.full_rank_side}")
    return report


def main():
    # A branching tree can beat every path: the hub vertex of this
    # ten-vertex tree displays four branches at once, and one of them
    # carries a rank defect that a path cannot collect.
    m, dec = wide_uniform_decomposition()
    print(f"matroid: U_{{11,16}} (rank {m.full_rank} on {m.n} elements)")
    describe(dec, "hand-built ten-vertex decomposition")

    path = heuristic_decomposition(m, "path")
    describe(path, "singleton bags along a path")
    print("  the path reaches width 6; the bushy tree pays width 10 at its hub")

    # Reduction collapses any edge one of whose sides is spanned by the
    # other side's closure.  It never increases the width.
    reduced = reduce(path)
    describe(reduced, "the path after reduction")
    assert reduced.width() <= path.width()

    # Exact minimum width over all trees, for small ground sets.
    print("\nexact tree-width (with minimum-vertex witnesses):")
    for name, mat in [
        ("U_{2,5}", UniformMatroid(2, 5)),
        ("U_{4,4} (free)", UniformMatroid(4, 4)),
        ("Fano plane", fano()),
        ("M(K4)", k4_graphic()),
    ]:
        res = exact_treewidth_small(mat)
        print(
            f"  {name:15s} width {res.width}   "
            f"witness uses {res.num_vertices} vertex(es)"
        )

    # The free matroid is the interesting one: at width 1 every bag has
    # rank at most one, so its four coloops force four separate bags.
    res = exact_treewidth_small(UniformMatroid(4, 4))
    assert res.num_vertices == 4

    best = best_heuristic(fano())
    print(f"\nbest heuristic for the Fano plane: width {best.width()} "
          f"({best.tree.num_vertices} vertices); exact is "
          f"{exact_treewidth_small(fano()).width}")


if __name__ == "__main__":
    main()

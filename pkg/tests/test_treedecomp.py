"""Tree decompositions: width evaluation, reduction, the exact
tree-width search, heuristics, and the decomposition file format."""

import random
from itertools import product

import pytest

from matzero.errors import NotInTreeError, TooLargeError
from matzero.gfq import gf
from matzero.instances import fano, k4_graphic, uniform_line_path, wide_uniform_decomposition
from matzero.matroid import LinearMatroid, UniformMatroid
from matzero.treedecomp import (
    Tree,
    TreeDecomposition,
    best_heuristic,
    exact_treewidth_small,
    format_decomposition,
    heuristic_decomposition,
    load_decomposition,
    parse_decomposition_text,
    reduce,
    save_decomposition,
    single_vertex_decomposition,
)

# -- trees -------------------------------------------------------------------


def test_tree_validation():
    with pytest.raises(ValueError):
        Tree(0, ())
    with pytest.raises(ValueError):
        Tree(3, [(0, 1)])             # too few edges
    with pytest.raises(ValueError):
        Tree(2, [(0, 0)])             # self loop
    with pytest.raises(ValueError):
        Tree(2, [(0, 5)])             # out of range
    with pytest.raises(ValueError):
        Tree(4, [(0, 1), (1, 0), (2, 3)])  # right count, disconnected


def test_tree_queries():
    t = Tree(4, [(0, 1), (1, 2), (1, 3)])
    assert t.degree(1) == 3
    assert t.leaves() == [0, 2, 3]
    assert t.has_edge(2, 1) and not t.has_edge(0, 2)
    assert t.components_without_vertex(1) == [(0,), (2,), (3,)]
    assert t.components_without_vertex(0) == [(1, 2, 3)]
    assert t.edge_sides(1, 0) == ((1, 2, 3), (0,))
    assert t.edge_sides(0, 1) == ((0,), (1, 2, 3))
    with pytest.raises(NotInTreeError):
        t.edge_sides(0, 2)
    with pytest.raises(NotInTreeError):
        t.components_without_vertex(9)


# -- decomposition evaluation --------------------------------------------------


def test_assignment_validation():
    m = UniformMatroid(2, 3)
    t = Tree(2, [(0, 1)])
    with pytest.raises(ValueError):
        TreeDecomposition(m, t, (0, 1))        # wrong length
    with pytest.raises(NotInTreeError):
        TreeDecomposition(m, t, (0, 1, 2))     # vertex 2 absent
    dec = TreeDecomposition(m, t, (0, 1, 0))
    with pytest.raises(NotInTreeError):
        dec.bag(7)


def test_bags_partition_ground_set():
    m, dec = wide_uniform_decomposition()
    bags = dec.bags()
    assert len(bags) == dec.tree.num_vertices
    total = 0
    for b in bags:
        assert total & b == 0
        total |= b
    assert total == m.full_mask
    assert [dec.bag(v) for v in range(dec.tree.num_vertices)] == bags


def test_displayed_sets_cover_everything_but_own_bag():
    m, dec = wide_uniform_decomposition()
    for v in range(dec.tree.num_vertices):
        ds = dec.displayed_sets_vertex(v)
        union = 0
        for d in ds:
            assert union & d == 0
            union |= d
        assert union == m.full_mask & ~dec.bag(v)


def test_single_vertex_decomposition():
    m = fano()
    dec = single_vertex_decomposition(m)
    assert dec.tree.num_vertices == 1
    assert dec.displayed_sets_vertex(0) == []
    assert dec.width() == m.full_rank == 3


def test_rank_defect_extremes():
    m, dec = wide_uniform_decomposition()
    assert dec.rank_defect(0) == 0
    assert dec.rank_defect(m.full_mask) == m.full_rank


def test_wide_uniform_decomposition_numbers():
    """A ten-vertex tree for a rank-11 uniform matroid on 16 elements
    whose hub displays four branches, one of positive rank defect."""
    m, dec = wide_uniform_decomposition()
    assert (m.full_rank, m.n) == (11, 16)
    assert dec.tree.num_vertices == 10
    report = dec.width_report()
    assert report.node_widths == [2, 4, 6, 10, 5, 2, 3, 2, 1, 1]
    assert report.width == 10
    hub = 3
    assert dec.tree.degree(hub) == 4
    assert [bin(d).count("1") for d in report.displayed[hub]] == [6, 5, 3, 1]
    assert report.rank_defects[hub] == [1, 0, 0, 0]
    assert dec.node_width(hub) == 10
    assert dec.width() == 10


def test_singleton_path_width_of_wide_matroid():
    m, _ = wide_uniform_decomposition()
    path = heuristic_decomposition(m, "path")
    assert path.tree.num_vertices == 16
    assert path.width() == 6


def test_line_path_width():
    m, dec = uniform_line_path(16)
    assert (m.full_rank, m.n) == (2, 16)
    assert dec.width() == 2


def test_bag_rank_bounds_node_width():
    """r(B_v) <= nw(v) everywhere, with equality at leaves."""
    cases = [wide_uniform_decomposition(), uniform_line_path(9)]
    m = fano()
    cases.append((m, best_heuristic(m)))
    for m, dec in cases:
        for v in range(dec.tree.num_vertices):
            br = m.rank_mask(dec.bag(v))
            nw = dec.node_width(v)
            assert br <= nw
            if dec.tree.degree(v) <= 1:
                assert br == nw


# -- reduction -----------------------------------------------------------------


def test_reduce_removes_empty_leaf():
    m = UniformMatroid(2, 3)
    dec = TreeDecomposition(m, Tree(2, [(0, 1)]), (0, 0, 0))
    out = reduce(dec)
    assert out.tree.num_vertices == 1
    assert out.width() == 2


def test_reduce_wide_decomposition():
    m, dec = wide_uniform_decomposition()
    out = reduce(dec)
    assert out.tree.num_vertices < dec.tree.num_vertices
    assert out.width() <= dec.width()
    assert out.tree.num_vertices == 2
    assert out.width() == 10
    assert not out.width_report().full_rank_side


def test_reduce_singleton_path():
    """End edges of a singleton path display a spanning side, so the
    path contracts; the width never increases."""
    m, _ = wide_uniform_decomposition()
    path = heuristic_decomposition(m, "path")
    out = reduce(path)
    assert out.tree.num_vertices < 16
    assert out.width() <= 6
    assert not out.width_report().full_rank_side
    again = reduce(out)
    assert again.tree.num_vertices == out.tree.num_vertices
    assert again.assignment == out.assignment


def test_reduce_preserves_matroid_and_partition():
    m, dec = wide_uniform_decomposition()
    out = reduce(dec)
    assert out.matroid is m
    total = 0
    for b in out.bags():
        assert total & b == 0
        total |= b
    assert total == m.full_mask


# -- exact tree-width ------------------------------------------------------------


def test_exact_treewidth_known_values():
    cases = [
        (UniformMatroid(2, 5), 2),
        (UniformMatroid(3, 6), 3),
        (UniformMatroid(3, 7), 3),
        (UniformMatroid(4, 7), 4),
        (fano(), 3),
        (k4_graphic(), 3),
        (UniformMatroid(1, 1), 1),
        (UniformMatroid(2, 2), 1),
        (UniformMatroid(0, 2), 0),
        (UniformMatroid(0, 0), 0),
    ]
    for m, expected in cases:
        res = exact_treewidth_small(m)
        assert res.width == expected, repr(m)
        assert res.decomposition.width() == expected, repr(m)
        assert res.decomposition.tree.num_vertices == res.num_vertices


def test_exact_treewidth_witness_counts():
    # single full bag is optimal for these
    assert exact_treewidth_small(fano()).num_vertices == 1
    assert exact_treewidth_small(UniformMatroid(2, 5)).num_vertices == 1
    # four coloops at width 1 force one bag per coloop
    free = exact_treewidth_small(UniformMatroid(4, 4))
    assert (free.width, free.num_vertices) == (1, 4)
    pair = exact_treewidth_small(UniformMatroid(2, 2))
    assert (pair.width, pair.num_vertices) == (1, 2)


def test_exact_treewidth_size_cap():
    with pytest.raises(TooLargeError):
        exact_treewidth_small(UniformMatroid(2, 11))


def _prufer_tree(num, seq):
    degree = [1] * num
    for v in seq:
        degree[v] += 1
    edges = []
    import heapq
    leaves = [v for v in range(num) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = sorted(leaves)[:2]
    edges.append((u, w))
    return Tree(num, edges)


def _all_trees(num):
    if num == 1:
        yield Tree(1, ())
    elif num == 2:
        yield Tree(2, [(0, 1)])
    else:
        for seq in product(range(num), repeat=num - 2):
            yield _prufer_tree(num, seq)


def _brute_treewidth(m, extra=1):
    """Reference: minimum width over every tree with up to n + extra
    vertices and every assignment."""
    ranks = m.ranks_table()
    full = m.full_mask
    r = ranks[full]
    best = r  # single bag
    for num in range(1, m.n + extra + 1):
        for tree in _all_trees(num):
            comps = [tree.components_without_vertex(v) for v in range(num)]
            for assignment in product(range(num), repeat=m.n):
                bags = [0] * num
                for e, v in enumerate(assignment):
                    bags[v] |= 1 << e
                width = 0
                for v in range(num):
                    defect = 0
                    for comp in comps[v]:
                        d = 0
                        for x in comp:
                            d |= bags[x]
                        defect += r - ranks[full & ~d]
                    width = max(width, r - defect)
                    if width >= best:
                        break
                best = min(best, width)
    return best


def test_exact_treewidth_against_brute_force():
    rng = random.Random(17)
    battery = [
        UniformMatroid(2, 4),
        UniformMatroid(4, 4),
        UniformMatroid(1, 3),
        UniformMatroid(0, 2),
        k4_graphic().restrict([0, 1, 2, 3]),
    ]
    F = gf(2)
    battery.append(LinearMatroid(F, [tuple(rng.randrange(2) for _ in range(3)) for _ in range(4)]))
    for m in battery:
        assert exact_treewidth_small(m).width == _brute_treewidth(m), repr(m)


def test_exact_treewidth_witness_validity_random():
    rng = random.Random(41)
    for _ in range(12):
        q = rng.choice([2, 3])
        n = rng.randint(1, 6)
        cols = [tuple(rng.randrange(q) for _ in range(3)) for _ in range(n)]
        m = LinearMatroid(gf(q), cols)
        res = exact_treewidth_small(m)
        assert res.decomposition.width() == res.width
        assert res.decomposition.tree.num_vertices == res.num_vertices


# -- heuristics ------------------------------------------------------------------


def test_heuristics():
    m = fano()
    assert heuristic_decomposition(m, "single").width() == 3
    path = heuristic_decomposition(m, "path")
    assert path.tree.num_vertices == 7
    greedy = heuristic_decomposition(m, "greedy")
    assert greedy.width() <= 3
    best = best_heuristic(m)
    assert best.width() <= min(path.width(), greedy.width(), 3)
    with pytest.raises(ValueError):
        heuristic_decomposition(m, "mystery")


def test_heuristics_on_empty_matroid():
    m = UniformMatroid(0, 0)
    assert heuristic_decomposition(m, "path").tree.num_vertices == 1
    assert best_heuristic(m).width() == 0


# -- file format -------------------------------------------------------------------


def test_decomposition_round_trip(tmp_path):
    m, dec = wide_uniform_decomposition()
    text = format_decomposition(dec)
    back = parse_decomposition_text(text, m)
    assert back.assignment == dec.assignment
    assert back.tree.edges == dec.tree.edges
    assert format_decomposition(back) == text
    p = tmp_path / "wide.decomp"
    save_decomposition(dec, p)
    loaded = load_decomposition(p, m)
    assert loaded.assignment == dec.assignment


def test_decomposition_parse_single_vertex():
    m = UniformMatroid(1, 2)
    dec = parse_decomposition_text("tree 1\ntau\n0 0\n1 0\n", m)
    assert dec.tree.num_vertices == 1
    assert dec.width() == 1


def test_decomposition_parse_errors():
    m = UniformMatroid(1, 2)
    with pytest.raises(ValueError):
        parse_decomposition_text("", m)
    with pytest.raises(ValueError):
        parse_decomposition_text("tree 2\n0 1\n0 0\n1 1\n", m)  # no tau
    with pytest.raises(ValueError):
        parse_decomposition_text("tree 1\ntau\n0 0\n", m)  # element 1 missing


def test_decomposition_parse_ignores_comments():
    m = UniformMatroid(1, 2)
    text = "# witness\ntree 1\ntau\n0 0\n1 0\n"
    assert parse_decomposition_text(text, m).width() == 1

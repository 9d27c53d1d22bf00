"""Tree-decompositions of matroids and their width.

A decomposition is a tree T together with an arbitrary assignment of
ground-set elements to tree vertices (bags may be empty).  Removing a
vertex v splits T into components; each component's elements form a
displayed set B, whose rank defect is rd(B) = r(M) - r(E - B).  The
node width of v is r(M) minus the sum of the rank defects of its
displayed sets (just r(M) at a single-vertex tree), the width of the
decomposition is the largest node width, and the tree-width of M is the
minimum width over all decompositions.

``exact_treewidth_small`` settles the minimum exactly for small ground
sets; ``heuristic_decomposition`` builds quick path witnesses for
anything larger.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInTreeError, TooLargeError
from .matroid import Matroid, UniformMatroid, mask_bits, mask_of

EXACT_SEARCH_MAX = 10


class Tree:
    """An unrooted tree on vertices 0..num_vertices-1."""

    def __init__(self, num_vertices: int, edges):
        edges = tuple((min(u, v), max(u, v)) for u, v in edges)
        if num_vertices < 1:
            raise ValueError("a tree needs at least one vertex")
        if len(edges) != num_vertices - 1:
            raise ValueError("a tree on l vertices has exactly l - 1 edges")
        adj: list[list[int]] = [[] for _ in range(num_vertices)]
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
                raise ValueError(f"bad edge ({u}, {v})")
            adj[u].append(v)
            adj[v].append(u)
        # connectivity check; acyclicity follows from the edge count
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != num_vertices:
            raise ValueError("edge list does not form a connected tree")
        self.num_vertices = num_vertices
        self.edges = edges
        self.adj = tuple(tuple(sorted(a)) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.num_vertices) if len(self.adj[v]) == 1]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)

    def components_without_vertex(self, v: int) -> list[tuple[int, ...]]:
        """Vertex sets of the components of T - v, ordered by their
        smallest member."""
        if not 0 <= v < self.num_vertices:
            raise NotInTreeError(f"vertex {v} is not in the tree")
        comps = []
        for start in self.adj[v]:
            seen = {v, start}
            stack = [start]
            comp = [start]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        comps.sort()
        return comps

    def edge_sides(self, u: int, w: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Vertex sets of the two components of T minus the edge uw,
        the side containing u first."""
        if not self.has_edge(u, w):
            raise NotInTreeError(f"edge ({u}, {w}) is not in the tree")
        seen = {w, u}
        stack = [u]
        side_u = [u]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    side_u.append(y)
                    stack.append(y)
        side_u_set = set(side_u)
        side_w = [x for x in range(self.num_vertices) if x not in side_u_set]
        return tuple(sorted(side_u)), tuple(sorted(side_w))


@dataclass
class WidthReport:
    """Evaluation of one decomposition: per-vertex node widths, the
    displayed sets and their rank defects, and whether some edge
    displays a set of full rank on one of its sides (which a fully
    reduced decomposition never does)."""

    width: int
    node_widths: list[int]
    displayed: list[list[int]]          # per vertex: displayed set masks
    rank_defects: list[list[int]]       # aligned with displayed
    full_rank_side: bool                # some edge side has rank r(M)


class TreeDecomposition:
    """A tree plus an element-to-vertex assignment for a fixed matroid."""

    def __init__(self, matroid: Matroid, tree: Tree, assignment):
        assignment = tuple(int(v) for v in assignment)
        if len(assignment) != matroid.n:
            raise ValueError("assignment length must equal the ground set size")
        for v in assignment:
            if not 0 <= v < tree.num_vertices:
                raise NotInTreeError(f"assignment targets vertex {v} outside the tree")
        self.matroid = matroid
        self.tree = tree
        self.assignment = assignment

    def bags(self) -> list[int]:
        out = [0] * self.tree.num_vertices
        for e, v in enumerate(self.assignment):
            out[v] |= 1 << e
        return out

    def bag(self, v: int) -> int:
        if not 0 <= v < self.tree.num_vertices:
            raise NotInTreeError(f"vertex {v} is not in the tree")
        m = 0
        for e, w in enumerate(self.assignment):
            if w == v:
                m |= 1 << e
        return m

    def displayed_sets_vertex(self, v: int) -> list[int]:
        """Element masks displayed by v: one per component of T - v,
        in the component order of ``components_without_vertex``."""
        bags = self.bags()
        out = []
        for comp in self.tree.components_without_vertex(v):
            m = 0
            for x in comp:
                m |= bags[x]
            out.append(m)
        return out

    def displayed_sets_edge(self, edge) -> tuple[int, int]:
        """Element masks displayed by an edge (u, w): the side holding
        u's bag first."""
        u, w = edge
        side_u, side_w = self.tree.edge_sides(u, w)
        bags = self.bags()
        mu = 0
        for x in side_u:
            mu |= bags[x]
        mw = 0
        for x in side_w:
            mw |= bags[x]
        return mu, mw

    def rank_defect(self, displayed_mask: int) -> int:
        m = self.matroid
        return m.full_rank - m.rank_mask(m.full_mask & ~displayed_mask)

    def node_width(self, v: int) -> int:
        r = self.matroid.full_rank
        return r - sum(self.rank_defect(b) for b in self.displayed_sets_vertex(v))

    def width_report(self) -> WidthReport:
        r = self.matroid.full_rank
        displayed = []
        defects = []
        widths = []
        for v in range(self.tree.num_vertices):
            ds = self.displayed_sets_vertex(v)
            rds = [self.rank_defect(b) for b in ds]
            displayed.append(ds)
            defects.append(rds)
            widths.append(r - sum(rds))
        full_side = False
        for u, w in self.tree.edges:
            mu, mw = self.displayed_sets_edge((u, w))
            if self.matroid.rank_mask(mu) == r or self.matroid.rank_mask(mw) == r:
                full_side = True
                break
        return WidthReport(max(widths), widths, displayed, defects, full_side)

    def width(self) -> int:
        r = self.matroid.full_rank
        return max(self.node_width(v) for v in range(self.tree.num_vertices))

    def __repr__(self):
        return (
            f"TreeDecomposition(vertices={self.tree.num_vertices}, "
            f"n={self.matroid.n}, width={self.width()})"
        )


def single_vertex_decomposition(m: Matroid) -> TreeDecomposition:
    return TreeDecomposition(m, Tree(1, ()), (0,) * m.n)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def _reduction_candidates(dec: TreeDecomposition):
    """Oriented edges (u, w) whose u-side display lies in the closure of
    the w-side display, sorted so the behaviour is deterministic."""
    m = dec.matroid
    out = []
    for a, b in dec.tree.edges:
        for u, w in ((a, b), (b, a)):
            du, dw = dec.displayed_sets_edge((u, w))
            if du & ~m.closure_mask(dw) == 0:
                out.append((u, w))
    out.sort()
    return out


def reduce(dec: TreeDecomposition) -> TreeDecomposition:
    """Repeatedly collapse reducible edges.

    If the edge uw displays (U, W) with U inside cl(W), the whole
    subtree on u's side is removed and its elements are reassigned to w.
    The width never increases.  Candidates are processed smallest
    oriented vertex pair first, so the result is deterministic.
    """
    current = dec
    while True:
        cands = _reduction_candidates(current)
        if not cands:
            return current
        u, w = cands[0]
        side_u, _ = current.tree.edge_sides(u, w)
        gone = set(side_u)
        keep = [v for v in range(current.tree.num_vertices) if v not in gone]
        relabel = {old: i for i, old in enumerate(keep)}
        new_edges = [
            (relabel[a], relabel[b])
            for a, b in current.tree.edges
            if a not in gone and b not in gone
        ]
        new_assignment = [
            relabel[w] if v in gone else relabel[v] for v in current.assignment
        ]
        current = TreeDecomposition(
            current.matroid, Tree(len(keep), new_edges), new_assignment
        )


# ---------------------------------------------------------------------------
# exact tree-width by fragment dynamic programming
# ---------------------------------------------------------------------------
#
# Root the (unknown) tree anywhere.  For a vertex v whose subtree holds
# the elements S, the node width of v is determined by its child
# subtrees' element sets P_1..P_c and by S alone:
#
#     nw(v) = r - sum_i rd(P_i) - rd(E - S),
#
# and rd(E - S) = r - r(S), so nw(v) <= w iff sum_i rd(P_i) >= r(S) - w.
# Tree shape beyond the subtree element sets is irrelevant, which turns
# "is there a decomposition of width <= w" into a subset DP.  No bound
# on the number of tree vertices is assumed: vertices with empty bags
# (useful as branch points, since rank defects are superadditive) are
# covered by the empty-bag partition case.

_NEG = -(1 << 30)
_INF = 1 << 30


@dataclass
class TreewidthResult:
    width: int
    decomposition: TreeDecomposition
    num_vertices: int


def _fragment_tables(ranks, full, w):
    """Subset tables for a target width w.

    valid[S]: some rooted fragment covering exactly S keeps every one of
    its vertices at node width <= w (the fragment root sees E - S as one
    extra displayed component).
    g[S]: largest achievable sum of rank defects over partitions of S
    into valid fragments (_NEG when S has no such partition).
    gle[S]: max of g over all subsets of S.
    """
    r = ranks[full]
    size = full + 1
    g = [_NEG] * size
    gle = [0] * size
    valid = [False] * size
    g[0] = 0
    for S in sorted(range(1, size), key=lambda s: s.bit_count()):
        low = S & -S
        # partitions of all of S into two or more valid fragments
        # (the fragment root keeps an empty bag); the first part is
        # anchored at the lowest element to avoid double counting
        best_split = _NEG
        sub = (S - 1) & S
        while sub:
            if sub & low and valid[sub] and g[S ^ sub] > _NEG:
                cand = (r - ranks[full & ~sub]) + g[S ^ sub]
                if cand > best_split:
                    best_split = cand
            sub = (sub - 1) & S
        # or children drawn from a strict subset, the rest in the bag
        gsub = 0
        t = S
        while t:
            bit = t & -t
            t ^= bit
            if gle[S ^ bit] > gsub:
                gsub = gle[S ^ bit]
        best_children = best_split if best_split > gsub else gsub
        valid[S] = best_children >= ranks[S] - w
        g[S] = best_split
        if valid[S]:
            own = r - ranks[full & ~S]
            if own > g[S]:
                g[S] = own
        best = g[S] if g[S] > gsub else gsub
        gle[S] = best
    return valid, g, gle


def _min_vertex_witness(m, ranks, tw):
    """Witness decomposition of width tw with the fewest tree vertices."""
    full = m.full_mask
    r = ranks[full]
    valid, _g, _gle = _fragment_tables(ranks, full, tw)
    rdv = [r - ranks[full & ~s] for s in range(full + 1)]

    vcost: dict[int, int] = {}
    vplan: dict[int, tuple] = {}
    kmemo: dict[tuple[int, int], int] = {}
    kpick: dict[tuple[int, int], int] = {}

    def kbest(C: int, s: int) -> int:
        """Fewest vertices partitioning C into valid fragments whose
        rank defects sum to at least s."""
        if C == 0:
            return 0 if s == 0 else _INF
        key = (C, s)
        hit = kmemo.get(key)
        if hit is not None:
            return hit
        low = C & -C
        best, pick = _INF, 0
        sub = C
        while sub:
            if sub & low and valid[sub]:
                vs = vcost.get(sub, _INF)
                if vs < _INF:
                    rest = kbest(C ^ sub, s - rdv[sub] if s > rdv[sub] else 0)
                    if vs + rest < best:
                        best, pick = vs + rest, sub
            sub = (sub - 1) & C
        kmemo[key] = best
        kpick[key] = pick
        return best

    for S in sorted(range(1, full + 1), key=lambda s: s.bit_count()):
        if not valid[S]:
            continue
        t = ranks[S] - tw
        if t < 0:
            t = 0
        best, plan = _INF, None
        sub = (S - 1) & S
        while True:  # bag = S - sub, possibly all of S
            c = kbest(sub, t)
            if 1 + c < best:
                best, plan = 1 + c, ("bag", S ^ sub, sub, t)
            if sub == 0:
                break
            sub = (sub - 1) & S
        low = S & -S
        sub = (S - 1) & S
        while sub:  # empty bag, first child anchored at the low bit
            if sub & low and valid[sub]:
                vs = vcost.get(sub, _INF)
                if vs < _INF:
                    s2 = t - rdv[sub] if t > rdv[sub] else 0
                    c = kbest(S ^ sub, s2)
                    if 1 + vs + c < best:
                        best, plan = 1 + vs + c, ("split", sub, S ^ sub, s2)
            sub = (sub - 1) & S
        if best < _INF:
            vcost[S] = best
            vplan[S] = plan

    t_root = r - tw
    if t_root < 0:
        t_root = 0
    best, root_children = _INF, 0
    sub = full
    while True:
        c = kbest(sub, t_root)
        if 1 + c < best:
            best, root_children = 1 + c, sub
        if sub == 0:
            break
        sub = (sub - 1) & full

    bags: list[int] = []
    edges: list[tuple[int, int]] = []

    def unroll(C: int, s: int) -> list[int]:
        parts = []
        while C:
            p = kpick[(C, s)]
            parts.append(p)
            s = s - rdv[p] if s > rdv[p] else 0
            C ^= p
        return parts

    def build(S: int, parent: int | None) -> None:
        vid = len(bags)
        kind = vplan[S][0]
        if kind == "bag":
            _, bagmask, C, s = vplan[S]
            parts = unroll(C, s)
        else:
            _, first, C, s = vplan[S]
            bagmask = 0
            parts = [first] + unroll(C, s)
        bags.append(bagmask)
        if parent is not None:
            edges.append((parent, vid))
        for p in parts:
            build(p, vid)

    bags.append(full & ~root_children)
    for p in unroll(root_children, t_root):
        build(p, 0)

    assignment = [0] * m.n
    for vid, bagmask in enumerate(bags):
        for e in mask_bits(bagmask):
            assignment[e] = vid
    dec = TreeDecomposition(m, Tree(len(bags), edges), assignment)
    return dec, best


def exact_treewidth_small(m: Matroid) -> TreewidthResult:
    """Exact tree-width for small ground sets, with a witness.

    Widths are tried in increasing order; at the first feasible width
    a second pass finds a witness decomposition with the fewest tree
    vertices among all optimal-width decompositions.
    """
    n = m.n
    if n > EXACT_SEARCH_MAX:
        raise TooLargeError(f"exact search is capped at {EXACT_SEARCH_MAX} elements")
    if n == 0:
        return TreewidthResult(0, single_vertex_decomposition(m), 1)
    ranks = m.ranks_table()
    full = m.full_mask
    r = ranks[full]
    tw = r
    for w in range(0, r + 1):
        _valid, _g, gle = _fragment_tables(ranks, full, w)
        if gle[full] >= r - w:
            tw = w
            break
    dec, vertices = _min_vertex_witness(m, ranks, tw)
    return TreewidthResult(tw, dec, vertices)


# ---------------------------------------------------------------------------
# heuristics
# ---------------------------------------------------------------------------

def _greedy_order(m: Matroid) -> list[int]:
    """Element order that grows rank as slowly as possible."""
    order = []
    mask = 0
    remaining = set(range(m.n))
    while remaining:
        best = None
        for e in sorted(remaining):
            key = (m.rank_mask(mask | (1 << e)), e)
            if best is None or key < best:
                best = key
                pick = e
        order.append(pick)
        mask |= 1 << pick
        remaining.discard(pick)
    return order


def _path_decomposition(m: Matroid, order) -> TreeDecomposition:
    n = m.n
    if n == 0:
        return single_vertex_decomposition(m)
    edges = [(i, i + 1) for i in range(n - 1)]
    tree = Tree(n, edges) if n > 1 else Tree(1, ())
    assignment = [0] * n
    for pos, e in enumerate(order):
        assignment[e] = pos
    return TreeDecomposition(m, tree, assignment)


def heuristic_decomposition(m: Matroid, strategy: str = "greedy") -> TreeDecomposition:
    """Quick width witnesses.

    ``"path"``    - singleton bags along a path in ground-set order
    ``"greedy"``  - singleton bags along a path in greedy rank order
    ``"single"``  - everything in one bag (width is exactly r(M))
    """
    if strategy == "single":
        return single_vertex_decomposition(m)
    if strategy == "path":
        return _path_decomposition(m, list(range(m.n)))
    if strategy == "greedy":
        return _path_decomposition(m, _greedy_order(m))
    raise ValueError(f"unknown strategy {strategy!r}")


def best_heuristic(m: Matroid) -> TreeDecomposition:
    cands = [heuristic_decomposition(m, s) for s in ("greedy", "path", "single")]
    return min(cands, key=lambda d: (d.width(), d.tree.num_vertices))


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------
#
#   tree L
#   u v            (L - 1 edge lines; omitted when L == 1)
#   tau
#   e v            (one line per element)


def format_decomposition(dec: TreeDecomposition) -> str:
    lines = [f"tree {dec.tree.num_vertices}"]
    lines += [f"{u} {v}" for u, v in dec.tree.edges]
    lines.append("tau")
    lines += [f"{e} {v}" for e, v in enumerate(dec.assignment)]
    return "\n".join(lines) + "\n"


def parse_decomposition_text(text: str, matroid: Matroid) -> TreeDecomposition:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].split()[0] != "tree":
        raise ValueError("decomposition files start with a 'tree L' line")
    l = int(lines[0].split()[1])
    edges = []
    idx = 1
    for _ in range(l - 1):
        u, v = lines[idx].split()
        edges.append((int(u), int(v)))
        idx += 1
    if idx >= len(lines) or lines[idx] != "tau":
        raise ValueError("expected a 'tau' separator line")
    idx += 1
    assignment = [None] * matroid.n
    for ln in lines[idx:]:
        e, v = ln.split()
        assignment[int(e)] = int(v)
    if any(a is None for a in assignment):
        raise ValueError("every element needs an assignment line")
    return TreeDecomposition(matroid, Tree(l, edges), assignment)


def load_decomposition(path, matroid: Matroid) -> TreeDecomposition:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_decomposition_text(fh.read(), matroid)


def save_decomposition(dec: TreeDecomposition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_decomposition(dec))

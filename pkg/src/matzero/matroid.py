"""Matroids on ground sets of at most 24 elements.

Subsets of the ground set are machine-word bitmasks: bit ``i`` stands
for element ``i``.  Public methods also accept iterables of element
indices and convert them.  Matroids are immutable; every instance
carries an internal rank cache keyed by mask, which is shared with all
of its minors so repeated queries against a fixed root stay cheap.

Three backends are provided: explicit matrices over a small finite
field (:class:`LinearMatroid`), uniform matroids, and graphic matroids
of multigraphs.  Minors of any of them are rank-offset views onto the
root matroid, so deletion and contraction never copy matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    HasLoopError,
    NotLinearError,
    NotSimpleError,
    RankZeroError,
    TooLargeError,
)
from .gfq import GF, gf

MAX_GROUND = 24
MAX_FLATS = 2_000_000


def as_mask(n: int, subset) -> int:
    """Normalize a subset argument (bitmask or iterable of indices)."""
    if isinstance(subset, int):
        if subset < 0 or subset >= (1 << n):
            raise ValueError(f"mask {subset} out of range for a {n}-element ground set")
        return subset
    mask = 0
    for e in subset:
        if not 0 <= e < n:
            raise ValueError(f"element {e} out of range for a {n}-element ground set")
        mask |= 1 << e
    return mask


def mask_bits(mask: int):
    """Yield the element indices present in a bitmask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


@dataclass(frozen=True)
class FlatRecord:
    """One flat of a matroid: its element mask, rank, and Mobius value
    relative to the bottom of the lattice of flats."""

    mask: int
    rank: int
    mobius: int

    def elements(self) -> tuple[int, ...]:
        return tuple(mask_bits(self.mask))


class Matroid:
    """Abstract base.  Subclasses implement ``_rank_mask``."""

    n: int
    labels: tuple

    def _init_common(self, n: int, labels):
        if n > MAX_GROUND:
            raise TooLargeError(f"ground sets are capped at {MAX_GROUND} elements, got {n}")
        self.n = n
        self.full_mask = (1 << n) - 1
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        if len(self.labels) != n:
            raise ValueError("labels must match the ground set size")
        self._rank_cache: dict[int, int] = {}

    # -- identity of this matroid as a minor of some root --------------------
    # Base matroids are their own root; MinorMatroid overrides these.

    @property
    def root(self) -> "Matroid":
        return self

    def _root_triple(self):
        """(root, kept root indices, contracted root mask)."""
        return self, tuple(range(self.n)), 0

    # -- rank and closure -----------------------------------------------------

    def rank_mask(self, mask: int) -> int:
        cache = self._rank_cache
        r = cache.get(mask)
        if r is None:
            r = self._rank_mask(mask)
            cache[mask] = r
        return r

    def _rank_mask(self, mask: int) -> int:
        raise NotImplementedError

    def rank(self, subset) -> int:
        return self.rank_mask(as_mask(self.n, subset))

    @property
    def full_rank(self) -> int:
        return self.rank_mask(self.full_mask)

    def closure_mask(self, mask: int) -> int:
        rk = self.rank_mask(mask)
        closed = mask
        rest = self.full_mask & ~mask
        for e in mask_bits(rest):
            if self.rank_mask(mask | (1 << e)) == rk:
                closed |= 1 << e
        return closed

    def closure(self, subset) -> tuple[int, ...]:
        return tuple(mask_bits(self.closure_mask(as_mask(self.n, subset))))

    # -- loops, parallelism, simplification ------------------------------------

    def loops_mask(self) -> int:
        m = 0
        for e in range(self.n):
            if self.rank_mask(1 << e) == 0:
                m |= 1 << e
        return m

    def is_loopless(self) -> bool:
        return self.loops_mask() == 0

    def parallel_classes(self) -> list[tuple[int, ...]]:
        """Partition of a loopless ground set into parallel classes."""
        if self.loops_mask():
            raise HasLoopError("parallel classes are only defined for loopless matroids")
        classes: list[list[int]] = []
        for e in range(self.n):
            for cls in classes:
                if self.rank_mask((1 << cls[0]) | (1 << e)) == 1:
                    cls.append(e)
                    break
            else:
                classes.append([e])
        return [tuple(c) for c in classes]

    def is_simple(self) -> bool:
        if self.loops_mask():
            return False
        return all(len(c) == 1 for c in self.parallel_classes())

    def simplify(self) -> tuple["Matroid", list[tuple[int, ...]]]:
        """Restrict to the lowest-index representative of each parallel
        class.  Returns the simplification and the class partition."""
        classes = self.parallel_classes()
        reps = [c[0] for c in classes]
        return self.restrict(mask_of(reps)), classes

    # -- minors ----------------------------------------------------------------

    def minor(self, delete=(), contract=()) -> "Matroid":
        dmask = as_mask(self.n, delete)
        cmask = as_mask(self.n, contract)
        if dmask & cmask:
            raise ValueError("deleted and contracted sets must be disjoint")
        if dmask == 0 and cmask == 0:
            return self
        root, kept, root_cmask = self._root_triple()
        new_kept = []
        extra_contract = 0
        for i, k in enumerate(kept):
            bit = 1 << i
            if bit & cmask:
                extra_contract |= 1 << k
            elif not bit & dmask:
                new_kept.append(k)
        labels = tuple(self.labels[i] for i in range(self.n) if not (1 << i) & (dmask | cmask))
        return MinorMatroid(root, tuple(new_kept), root_cmask | extra_contract, labels)

    def delete(self, subset) -> "Matroid":
        return self.minor(delete=subset)

    def contract(self, subset) -> "Matroid":
        return self.minor(contract=subset)

    def restrict(self, subset) -> "Matroid":
        keep = as_mask(self.n, subset)
        return self.minor(delete=self.full_mask & ~keep)

    # -- flats and the Mobius function ------------------------------------------

    def _flat_lattice(self) -> list[list[int]]:
        """All flats grouped by rank, as masks.  Level 0 is cl(empty)."""
        bottom = self.closure_mask(0)
        levels = [[bottom]]
        count = 1
        current = {bottom}
        while True:
            nxt = set()
            for fmask in current:
                rest = self.full_mask & ~fmask
                for e in mask_bits(rest):
                    nxt.add(self.closure_mask(fmask | (1 << e)))
            if not nxt:
                break
            count += len(nxt)
            if count > MAX_FLATS:
                raise TooLargeError(f"flat count exceeds the cap of {MAX_FLATS}")
            levels.append(sorted(nxt))
            current = nxt
        return levels

    def all_flats_with_mobius(self) -> list[FlatRecord]:
        """Every flat with its Mobius value mu(cl(empty), F), ordered by
        rank then mask.  Requires a loopless matroid."""
        if self.loops_mask():
            raise HasLoopError("the Mobius expansion requires a loopless matroid")
        levels = self._flat_lattice()
        mobius: dict[int, int] = {}
        out: list[FlatRecord] = []
        for rk, level in enumerate(levels):
            for fmask in level:
                if rk == 0:
                    mu = 1
                else:
                    mu = 0
                    for lower in levels[:rk]:
                        for gmask in lower:
                            if gmask & ~fmask == 0:
                                mu -= mobius[gmask]
                mobius[fmask] = mu
                out.append(FlatRecord(fmask, rk, mu))
        return out

    # -- cocircuits ---------------------------------------------------------------

    def hyperplanes(self) -> list[int]:
        """Masks of all rank (r-1) flats, found as closures of
        independent sets of that rank."""
        r = self.full_rank
        if r == 0:
            raise RankZeroError("a rank-0 matroid has no hyperplanes")
        seen: set[int] = set()
        target = r - 1

        def grow(start: int, mask: int, size: int):
            if size == target:
                seen.add(self.closure_mask(mask))
                return
            for e in range(start, self.n):
                bit = 1 << e
                if self.rank_mask(mask | bit) == size + 1:
                    grow(e + 1, mask | bit, size + 1)

        grow(0, 0, 0)
        return sorted(seen)

    def cocircuits(self) -> list[int]:
        """Masks of all cocircuits (complements of hyperplanes)."""
        return sorted(self.full_mask & ~h for h in self.hyperplanes())

    def find_small_cocircuit(self) -> int:
        """A cocircuit of minimum size; ties broken by smallest mask."""
        best = None
        for c in self.cocircuits():
            key = (bin(c).count("1"), c)
            if best is None or key < best[0]:
                best = (key, c)
        return best[1]

    # -- long-line minors ----------------------------------------------------------

    def has_line_minor(self, length: int) -> bool:
        """Whether some minor is a rank-2 uniform matroid on ``length``
        elements.  Scans rank-two intervals of the lattice of flats: the
        interval [F, F'] with r(F') = r(F) + 2 contains one intermediate
        flat per point of the corresponding line."""
        if length < 2:
            raise ValueError("line length must be at least 2")
        if self.full_rank < 2:
            return False
        levels = self._flat_lattice()
        for low in range(len(levels) - 2):
            mids = levels[low + 1]
            for top in levels[low + 2]:
                inside = [z for z in mids if z & ~top == 0]
                if len(inside) < length:
                    continue
                for fmask in levels[low]:
                    if fmask & ~top:
                        continue
                    points = 0
                    for z in inside:
                        if fmask & ~z == 0:
                            points += 1
                            if points >= length:
                                return True
        return False

    # -- misc -------------------------------------------------------------------------

    def ranks_table(self) -> list[int]:
        """Rank of every subset, indexed by mask.  Only for small n."""
        if self.n > 20:
            raise TooLargeError("full rank tables are limited to 20 elements")
        return [self.rank_mask(m) for m in range(1 << self.n)]

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, r={self.full_rank})"


class LinearMatroid(Matroid):
    """Column matroid of a matrix over a small finite field."""

    def __init__(self, field: GF, columns: Sequence[Sequence[int]], labels=None, nrows=None):
        self.field = field
        cols = tuple(tuple(int(x) for x in c) for c in columns)
        if cols:
            nrows = len(cols[0])
            if any(len(c) != nrows for c in cols):
                raise ValueError("all columns must have the same height")
        elif nrows is None:
            nrows = 0
        for c in cols:
            for x in c:
                if not 0 <= x < field.q:
                    raise ValueError(f"entry {x} is not an element of {field!r}")
        self.columns = cols
        self.nrows = nrows
        self._init_common(len(cols), labels)

    @classmethod
    def from_rows(cls, field: GF, rows: Sequence[Sequence[int]], labels=None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls(field, [], labels, nrows=0)
        ncols = len(rows[0])
        cols = [[rows[i][j] for i in range(len(rows))] for j in range(ncols)]
        return cls(field, cols, labels)

    def rows(self) -> list[list[int]]:
        return [[self.columns[j][i] for j in range(self.n)] for i in range(self.nrows)]

    def _rank_mask(self, mask: int) -> int:
        F = self.field
        mul = F.mul
        sub = F.sub
        basis: list[tuple[int, tuple[int, ...]]] = []  # (pivot row, normalized vector)
        for e in mask_bits(mask):
            v = list(self.columns[e])
            for pr, bv in basis:
                c = v[pr]
                if c:
                    mc = mul[c]
                    v = [sub(x, mc[y]) for x, y in zip(v, bv)]
            pivot = next((i for i, x in enumerate(v) if x), None)
            if pivot is not None:
                scale = mul[F.invert(v[pivot])]
                basis.append((pivot, tuple(scale[x] for x in v)))
        return len(basis)

    def contract_by_elimination(self, subset) -> "LinearMatroid":
        """Contract by explicit matrix surgery: pivot on the contracted
        columns and drop their pivot rows.  Useful as an independent
        cross-check of the rank-offset contraction."""
        cmask = as_mask(self.n, subset)
        F = self.field
        mul = F.mul
        sub = F.sub
        basis: list[tuple[int, tuple[int, ...]]] = []
        for e in mask_bits(cmask):
            v = list(self.columns[e])
            for pr, bv in basis:
                c = v[pr]
                if c:
                    mc = mul[c]
                    v = [sub(x, mc[y]) for x, y in zip(v, bv)]
            pivot = next((i for i, x in enumerate(v) if x), None)
            if pivot is not None:
                scale = mul[F.invert(v[pivot])]
                basis.append((pivot, tuple(scale[x] for x in v)))
        pivot_rows = {pr for pr, _ in basis}
        keep_rows = [i for i in range(self.nrows) if i not in pivot_rows]
        new_cols = []
        labels = []
        for e in range(self.n):
            if (1 << e) & cmask:
                continue
            v = list(self.columns[e])
            for pr, bv in basis:
                c = v[pr]
                if c:
                    mc = mul[c]
                    v = [sub(x, mc[y]) for x, y in zip(v, bv)]
            new_cols.append([v[i] for i in keep_rows])
            labels.append(self.labels[e])
        return LinearMatroid(F, new_cols, tuple(labels), nrows=len(keep_rows))


class UniformMatroid(Matroid):
    """U_{r,n}: every subset of at most r elements is independent."""

    def __init__(self, r: int, n: int, labels=None):
        if r < 0 or r > n:
            raise ValueError("a uniform matroid needs 0 <= r <= n")
        self.r = r
        self._init_common(n, labels)

    def _rank_mask(self, mask: int) -> int:
        c = bin(mask).count("1")
        return c if c < self.r else self.r


class GraphicMatroid(Matroid):
    """Cycle matroid of a multigraph given as an edge list."""

    def __init__(self, num_vertices: int, edges: Sequence[tuple[int, int]], labels=None):
        self.num_vertices = num_vertices
        self.edges = tuple((int(u), int(v)) for u, v in edges)
        for u, v in self.edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError("edge endpoint out of range")
        self._init_common(len(self.edges), labels)

    def _rank_mask(self, mask: int) -> int:
        parent = list(range(self.num_vertices))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        rank = 0
        for e in mask_bits(mask):
            u, v = self.edges[e]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                rank += 1
        return rank


class MinorMatroid(Matroid):
    """A minor of a root matroid, evaluated by rank offset:
    r_{M/C\\D}(A) = r_M(A | C) - r_M(C)."""

    def __init__(self, root: Matroid, kept: tuple[int, ...], contracted_mask: int, labels=None):
        self._root = root
        self.kept = kept
        self.contracted_mask = contracted_mask
        self._kept_bits = tuple(1 << k for k in kept)
        self._contract_rank = root.rank_mask(contracted_mask)
        if labels is None:
            labels = tuple(root.labels[k] for k in kept)
        self._init_common(len(kept), labels)

    @property
    def root(self) -> Matroid:
        return self._root

    def _root_triple(self):
        return self._root, self.kept, self.contracted_mask

    def to_root_mask(self, mask: int) -> int:
        out = 0
        bits = self._kept_bits
        while mask:
            low = mask & -mask
            out |= bits[low.bit_length() - 1]
            mask ^= low
        return out

    def _rank_mask(self, mask: int) -> int:
        root_mask = self.to_root_mask(mask)
        return self._root.rank_mask(root_mask | self.contracted_mask) - self._contract_rank


def uniform(r: int, n: int) -> UniformMatroid:
    return UniformMatroid(r, n)


def graphic(num_vertices: int, edges) -> GraphicMatroid:
    return GraphicMatroid(num_vertices, edges)


def ranks_agree(a: Matroid, b: Matroid) -> bool:
    """Exhaustive rank-function equality; both matroids must be small."""
    if a.n != b.n:
        return False
    if a.n > 16:
        raise TooLargeError("exhaustive rank comparison is limited to 16 elements")
    return all(a.rank_mask(m) == b.rank_mask(m) for m in range(1 << a.n))


# -- file format --------------------------------------------------------------
#
# Linear matroids:   line 1 is "q r n", then r lines of n integers in [0, q),
#                    whitespace separated (the matrix, row by row).
# Graphic matroids:  line 1 is "graph V E", then E lines "u v" with
#                    0-based vertex indices.


def parse_matroid_text(text: str) -> Matroid:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matroid file")
    head = lines[0].split()
    if head[0] == "graph":
        nv, ne = int(head[1]), int(head[2])
        if len(lines) != 1 + ne:
            raise ValueError(f"expected {ne} edge lines, found {len(lines) - 1}")
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
        return GraphicMatroid(nv, edges)
    q, r, n = (int(x) for x in head)
    field = gf(q)
    if len(lines) != 1 + r:
        raise ValueError(f"expected {r} matrix rows, found {len(lines) - 1}")
    if r == 0:
        # n loops; from_rows cannot express a 0 x n matrix
        return LinearMatroid(field, [()] * n, nrows=0)
    rows = []
    for ln in lines[1:]:
        row = [int(x) for x in ln.split()]
        if len(row) != n:
            raise ValueError(f"expected {n} entries per row, got {len(row)}")
        rows.append(row)
    return LinearMatroid.from_rows(field, rows)


def format_matroid(m: Matroid) -> str:
    if isinstance(m, LinearMatroid):
        head = f"{m.field.q} {m.nrows} {m.n}"
        body = "\n".join(" ".join(str(x) for x in row) for row in m.rows())
        return head + ("\n" + body if m.nrows else "") + "\n"
    if isinstance(m, GraphicMatroid):
        head = f"graph {m.num_vertices} {m.n}"
        body = "\n".join(f"{u} {v}" for u, v in m.edges)
        return head + ("\n" + body if m.edges else "") + "\n"
    raise NotLinearError("only matrix-backed and graphic matroids have a file form")


def load_matroid(path) -> Matroid:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matroid_text(fh.read())


def save_matroid(m: Matroid, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matroid(m))


def require_simple(m: Matroid) -> None:
    if m.loops_mask():
        raise NotSimpleError("matroid has a loop")
    if any(len(c) > 1 for c in m.parallel_classes()):
        raise NotSimpleError("matroid has a parallel pair")

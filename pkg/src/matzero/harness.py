"""Instance generation and end-to-end verification of the zero-free
bounds.

Everything here is deterministic given a seed, and every numeric claim
in a report is exact: bounds and root brackets are rational numbers
carried as numerator/denominator pairs in the JSON output.  The env var
``MZ_SEED`` globally overrides generator seeds.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .charpoly import (
    IntPoly,
    ZERO,
    cp_cocircuit_expansion,
    cp_delete_contract,
    largest_real_root,
    sturm_positive_beyond,
)
from .errors import LineMinorPresentError, TooLargeError, WidthWitnessExceededError
from .gfq import gf
from .matroid import (
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    load_matroid,
    mask_of,
    save_matroid,
)
from .projgeom import (
    brylawski_charpoly,
    embed,
    extend,
    neck_of_edge,
    pg_build,
    telescoping_expansion,
)
from .treedecomp import (
    Tree,
    TreeDecomposition,
    best_heuristic,
    heuristic_decomposition,
    load_decomposition,
    save_decomposition,
)

ROOT_TOL = Fraction(1, 2 ** 30)


def effective_seed(seed):
    env = os.environ.get("MZ_SEED")
    if env is not None:
        return int(env)
    return seed


def charpoly_auto(m: Matroid) -> IntPoly:
    """Engine choice for bulk verification: deletion-contraction for
    small ground sets, cocircuit expansion of the simplification for
    larger ones (cheap when the tree-width is low)."""
    if m.loops_mask():
        return ZERO
    if m.n <= 11:
        return cp_delete_contract(m)
    simple, _ = m.simplify()
    return cp_cocircuit_expansion(simple)


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass
class InstanceRecord:
    id: str
    q: int | None
    matroid: Matroid
    decomposition: TreeDecomposition | None
    construction: dict = field(default_factory=dict)
    seed: int | None = None

    @property
    def witnessed_width(self) -> int | None:
        if self.decomposition is None:
            return None
        return self.decomposition.width()


def gen_random_linear(q: int, r: int, n: int, seed) -> InstanceRecord:
    """Uniformly random r x n matrix over GF(q); zero columns are
    resampled so the result is loopless.  Comes with the best of the
    cheap decomposition heuristics as a width witness."""
    seed = effective_seed(seed)
    rng = random.Random(f"random:{q}:{r}:{n}:{seed}")
    fieldq = gf(q)
    cols = []
    for _ in range(n):
        code = rng.randrange(1, q ** r)
        col = []
        for _ in range(r):
            col.append(code % q)
            code //= q
        cols.append(col)
    m = LinearMatroid(fieldq, cols)
    return InstanceRecord(
        id=f"random-q{q}r{r}n{n}-s{seed}",
        q=q,
        matroid=m,
        decomposition=best_heuristic(m),
        construction={"kind": "random", "q": q, "r": r, "n": n},
        seed=seed,
    )


def _glued_points(q: int, block_rank: int, blocks: int, overlap_rank: int):
    """Vectors of a path of full projective-geometry blocks, consecutive
    blocks sharing an overlap coordinate window.  Returns (vectors,
    block membership lists, overlap lists, total rank)."""
    if not 0 <= overlap_rank < block_rank:
        raise ValueError("need 0 <= overlap_rank < block_rank")
    if blocks < 1:
        raise ValueError("need at least one block")
    step = block_rank - overlap_rank
    total_rank = block_rank + (blocks - 1) * step
    model = pg_build(block_rank, q)
    vectors: list[tuple[int, ...]] = []
    where: dict[tuple[int, ...], int] = {}
    block_elements: list[list[int]] = [[] for _ in range(blocks)]
    for b in range(blocks):
        off = b * step
        for pt in model.points:
            vec = (0,) * off + pt + (0,) * (total_rank - off - block_rank)
            idx = where.get(vec)
            if idx is None:
                idx = len(vectors)
                vectors.append(vec)
                where[vec] = idx
            block_elements[b].append(idx)
    overlap_elements: list[list[int]] = []
    for j in range(blocks - 1):
        shared = sorted(set(block_elements[j]) & set(block_elements[j + 1]))
        overlap_elements.append(shared)
    return vectors, block_elements, overlap_elements, total_rank


def gen_glued(
    q: int,
    block_rank: int,
    blocks: int,
    overlap_rank: int,
    seed=None,
    delete_count: int = 0,
) -> InstanceRecord:
    """Glue full projective-geometry blocks along a path, overlapping in
    a common coordinate subspace, then optionally delete some random
    non-shared points.  The natural one-bag-per-block path decomposition
    is attached; with no deletions its width is exactly block_rank."""
    seed = effective_seed(seed)
    vectors, block_elements, overlap_elements, total_rank = _glued_points(
        q, block_rank, blocks, overlap_rank
    )
    shared_ids = set()
    for ov in overlap_elements:
        shared_ids.update(ov)
    keep = list(range(len(vectors)))
    if delete_count:
        rng = random.Random(f"glued:{q}:{block_rank}:{blocks}:{overlap_rank}:{seed}")
        private = [e for e in keep if e not in shared_ids]
        rng.shuffle(private)
        victims = set(private[: min(delete_count, max(0, len(private) - 1))])
        keep = [e for e in keep if e not in victims]
    if len(keep) > 24:
        raise TooLargeError(
            f"glued construction would have {len(keep)} elements; the cap is 24"
        )
    relabel = {old: i for i, old in enumerate(keep)}
    fieldq = gf(q)
    m = LinearMatroid(fieldq, [vectors[e] for e in keep])
    first_block = {}
    for b, elems in enumerate(block_elements):
        for e in elems:
            first_block.setdefault(e, b)
    assignment = [first_block[old] for old in keep]
    tree = Tree(blocks, [(i, i + 1) for i in range(blocks - 1)]) if blocks > 1 else Tree(1, ())
    dec = TreeDecomposition(m, tree, assignment)
    construction = {
        "kind": "glued",
        "q": q,
        "block_rank": block_rank,
        "blocks": blocks,
        "overlap_rank": overlap_rank,
        "block_elements": [
            sorted(relabel[e] for e in elems if e in relabel) for elems in block_elements
        ],
        "overlap_elements": [
            sorted(relabel[e] for e in ov if e in relabel) for ov in overlap_elements
        ],
    }
    return InstanceRecord(
        id=f"glued-q{q}b{block_rank}x{blocks}o{overlap_rank}-s{seed}d{delete_count}",
        q=q,
        matroid=m,
        decomposition=dec,
        construction=construction,
        seed=seed,
    )


def _suite(q: int, k: int, count: int, seed, tag: str, max_n: int) -> list[InstanceRecord]:
    seed = effective_seed(seed)
    rng = random.Random(f"suite:{tag}:{q}:{k}:{seed}")
    out = []
    glued_shapes = []
    for block_rank in range(1, k + 1):
        for overlap_rank in range(0, block_rank):
            for blocks in range(1, 4):
                try:
                    vecs, _, _, _ = _glued_points(q, block_rank, blocks, overlap_rank)
                except ValueError:
                    continue
                if len(vecs) <= max_n:
                    glued_shapes.append((block_rank, blocks, overlap_rank, len(vecs)))
    i = 0
    while len(out) < count:
        sub = rng.randrange(1 << 30)
        if i % 2 == 0 or not glued_shapes:
            r = rng.randint(1, k)
            n = rng.randint(max(r, 2), min(10, max_n))
            rec = gen_random_linear(q, r, n, sub)
        else:
            block_rank, blocks, overlap_rank, full_n = glued_shapes[
                rng.randrange(len(glued_shapes))
            ]
            room = max(0, full_n - max(2, full_n // 2))
            dels = rng.randint(0, room)
            rec = gen_glued(q, block_rank, blocks, overlap_rank, sub, delete_count=dels)
            if rec.witnessed_width > k:
                rec = gen_glued(q, block_rank, blocks, overlap_rank, sub, delete_count=0)
        if rec.witnessed_width <= k:
            rec.id = f"{tag}-q{q}k{k}-{len(out):04d}"
            out.append(rec)
        i += 1
    return out


def main_theorem_suite(q: int, k: int, count: int, seed=0) -> list[InstanceRecord]:
    """Seeded instances over GF(q) with witnessed width at most k."""
    return _suite(q, k, count, seed, "main", max_n=18)


def no_lines_suite(q: int, k: int, count: int, seed=0) -> list[InstanceRecord]:
    """Like the main suite but sized so the lattice-of-flats scan for
    long-line minors stays cheap."""
    return _suite(q, k, count, seed, "nolines", max_n=13)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _frac_pair(x: Fraction) -> list[str]:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


@dataclass
class BoundReport:
    instance_id: str
    theorem: str
    q: int
    k: int | None
    n: int
    rank: int
    witnessed_width: int | None
    bound: Fraction
    verdict: bool
    largest_root: tuple[Fraction, Fraction] | None = None
    cocircuit_size: int | None = None
    identically_zero: bool = False

    def to_json(self) -> str:
        payload = {
            "instance": self.instance_id,
            "theorem": self.theorem,
            "q": self.q,
            "k": self.k,
            "n": self.n,
            "rank": self.rank,
            "witnessed_width": self.witnessed_width,
            "bound": _frac_pair(self.bound),
            "verdict": self.verdict,
            "largest_root": None
            if self.largest_root is None
            else [_frac_pair(self.largest_root[0]), _frac_pair(self.largest_root[1])],
            "cocircuit_size": self.cocircuit_size,
            "identically_zero": self.identically_zero,
        }
        return json.dumps(payload, separators=(",", ":"))


@dataclass
class IdentityCheck:
    instance_id: str
    check: str
    passed: bool
    detail: str = ""

    def to_json(self) -> str:
        return json.dumps(
            {
                "instance": self.instance_id,
                "check": self.check,
                "passed": self.passed,
                "detail": self.detail,
            },
            separators=(",", ":"),
        )


def reports_to_jsonl(reports) -> str:
    return "\n".join(r.to_json() for r in reports) + "\n"


def all_verdicts_true(reports) -> bool:
    return all(getattr(r, "verdict", None) is True or getattr(r, "passed", None) is True for r in reports)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _check_witness(rec: InstanceRecord, k: int) -> int:
    if rec.decomposition is None:
        raise WidthWitnessExceededError(f"{rec.id}: no width witness attached")
    w = rec.decomposition.width()
    if w > k:
        raise WidthWitnessExceededError(f"{rec.id}: witness width {w} exceeds k={k}")
    return w


def verify_main_theorem(instances, q: int, k: int) -> list[BoundReport]:
    """Check chi > 0 strictly beyond q**(k-1) (or chi identically zero)
    for every instance; the witness decomposition must have width <= k."""
    bound = Fraction(q ** (k - 1))
    out = []
    for rec in instances:
        w = _check_witness(rec, k)
        chi = charpoly_auto(rec.matroid)
        if chi.is_zero:
            verdict, root = True, None
        else:
            verdict = sturm_positive_beyond(chi, bound)
            root = largest_real_root(chi, ROOT_TOL)
        out.append(
            BoundReport(
                instance_id=rec.id,
                theorem="main",
                q=q,
                k=k,
                n=rec.matroid.n,
                rank=rec.matroid.full_rank,
                witnessed_width=w,
                bound=bound,
                verdict=verdict,
                largest_root=root,
                identically_zero=chi.is_zero,
            )
        )
    return out


def verify_no_lines_theorem(instances, q: int, k: int) -> list[BoundReport]:
    """Positivity beyond (q**k - 1)/(q - 1) for instances with no
    (q+2)-point line minor.  Here q may be any integer >= 2; an instance
    that does contain such a line is a hard error."""
    bound = Fraction(q ** k - 1, q - 1)
    out = []
    for rec in instances:
        w = _check_witness(rec, k)
        if rec.matroid.has_line_minor(q + 2):
            raise LineMinorPresentError(
                f"{rec.id}: contains a {q + 2}-point line minor"
            )
        chi = charpoly_auto(rec.matroid)
        if chi.is_zero:
            verdict, root = True, None
        else:
            verdict = sturm_positive_beyond(chi, bound)
            root = largest_real_root(chi, ROOT_TOL)
        out.append(
            BoundReport(
                instance_id=rec.id,
                theorem="no-lines",
                q=q,
                k=k,
                n=rec.matroid.n,
                rank=rec.matroid.full_rank,
                witnessed_width=w,
                bound=bound,
                verdict=verdict,
                largest_root=root,
                identically_zero=chi.is_zero,
            )
        )
    return out


def _poly_str(p: IntPoly) -> str:
    return "[" + ",".join(p.to_json()) + "]"


def verify_identities(instances) -> list[IdentityCheck]:
    """Exact identity checks on every instance:

    * deletion-contraction at every element that is neither a loop nor
      a coloop;
    * the glued-block factorization through the common flat, when the
      construction metadata identifies the blocks;
    * the telescoping extension expansion on the simplification;
    * the cocircuit expansion against deletion-contraction.

    Any mismatch is reported with the offending polynomials.
    """
    out = []
    for rec in instances:
        m = rec.matroid
        chi = charpoly_auto(m)

        ok = True
        detail = ""
        r = m.full_rank
        for e in range(m.n):
            ebit = 1 << e
            if m.rank_mask(ebit) == 0:
                continue  # loop
            if m.rank_mask(m.full_mask & ~ebit) < r:
                continue  # coloop
            lhs = chi
            rhs = charpoly_auto(m.delete(ebit)) - charpoly_auto(m.contract(ebit))
            if lhs != rhs:
                ok = False
                detail = (
                    f"element {e}: chi={_poly_str(lhs)} but "
                    f"del-con gives {_poly_str(rhs)}"
                )
                break
        out.append(IdentityCheck(rec.id, "delete-contract", ok, detail))

        cons = rec.construction
        if cons.get("kind") == "glued" and cons.get("blocks", 1) >= 2:
            blocks = cons["block_elements"]
            overlaps = cons["overlap_elements"]
            last = mask_of(blocks[-1])
            prefix = 0
            for elems in blocks[:-1]:
                prefix |= mask_of(elems)
            common = mask_of(overlaps[-1])
            try:
                via_split = brylawski_charpoly(
                    m.restrict(last), m.restrict(prefix), m.restrict(common)
                )
                ok = via_split == chi
                detail = "" if ok else (
                    f"factored {_poly_str(via_split)} vs direct {_poly_str(chi)}"
                )
            except Exception as exc:  # report, never crash the suite
                ok = False
                detail = f"split failed: {exc}"
            out.append(IdentityCheck(rec.id, "glued-factorization", ok, detail))

        if isinstance(m, LinearMatroid) and not m.loops_mask():
            reps = [cls[0] for cls in m.parallel_classes()]
            ls = LinearMatroid(m.field, [m.columns[e] for e in reps])
            chi_s = cp_delete_contract(ls)

            ok = cp_cocircuit_expansion(ls) == chi_s
            out.append(IdentityCheck(rec.id, "cocircuit-expansion", ok))

            dec = heuristic_decomposition(ls, "path")
            if dec.tree.num_vertices >= 2:
                emb = embed(ls)
                dec = TreeDecomposition(emb.base, dec.tree, dec.assignment)
                # the fattest external neck that still fits makes the
                # most demanding check; the leaf edge always fits
                chosen = None
                for edge in dec.tree.edges:
                    _, external = neck_of_edge(emb, dec, edge)
                    if ls.n + len(external) <= 20 and (
                        chosen is None or len(external) > len(chosen)
                    ):
                        chosen = external
                if chosen is not None:
                    ext = extend(emb, chosen)
                    total = ZERO
                    for term, _role in telescoping_expansion(ext):
                        total = total + charpoly_auto(term)
                    ok = total == chi_s
                    detail = "" if ok else (
                        f"telescoped {_poly_str(total)} vs direct {_poly_str(chi_s)}"
                    )
                    out.append(IdentityCheck(rec.id, "telescoping-extension", ok, detail))
    return out


def verify_size_and_cocircuit_bounds(instances, q: int, k: int) -> list[BoundReport]:
    """Two counting bounds on simple instances:

    * point count at most (q**r - 1)/(q - 1) when no (q+2)-point line
      minor exists;
    * some cocircuit of size at most q**(k-1) when a width-k witness
      exists over GF(q).
    """
    out = []
    for rec in instances:
        m = rec.matroid
        if not m.is_simple():
            m, _ = m.simplify()
        r = m.full_rank
        if r == 0:
            continue
        if not rec.matroid.has_line_minor(q + 2):
            bound = Fraction(q ** r - 1, q - 1)
            out.append(
                BoundReport(
                    instance_id=rec.id,
                    theorem="size",
                    q=q,
                    k=None,
                    n=m.n,
                    rank=r,
                    witnessed_width=rec.witnessed_width,
                    bound=bound,
                    verdict=m.n <= bound,
                )
            )
        if rec.decomposition is not None and rec.q == q:
            w = rec.decomposition.width()
            if w <= k:
                size = bin(m.find_small_cocircuit()).count("1")
                bound = Fraction(q ** (k - 1))
                out.append(
                    BoundReport(
                        instance_id=rec.id,
                        theorem="cocircuit",
                        q=q,
                        k=k,
                        n=m.n,
                        rank=r,
                        witnessed_width=w,
                        bound=bound,
                        verdict=size <= bound,
                        cocircuit_size=size,
                    )
                )
    return out


# ---------------------------------------------------------------------------
# graphic cross-check
# ---------------------------------------------------------------------------

_chromatic_memo: dict[tuple, IntPoly] = {}


def chromatic_polynomial(num_vertices: int, edges) -> IntPoly:
    """Chromatic polynomial of a multigraph by deletion-contraction,
    written directly on graphs so it is independent of the matroid
    engines."""
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    key = (num_vertices, edges)
    hit = _chromatic_memo.get(key)
    if hit is not None:
        return hit
    if any(u == v for u, v in edges):
        out = ZERO
    else:
        dedup = tuple(sorted(set(edges)))
        if not dedup:
            out = IntPoly([0] * num_vertices + [1])  # lam ** num_vertices
        else:
            u, v = dedup[0]
            rest = dedup[1:]
            merged = []
            for a, b in rest:
                a2 = u if a == v else a
                b2 = u if b == v else b
                a2 = a2 - 1 if a2 > v else a2
                b2 = b2 - 1 if b2 > v else b2
                merged.append((a2, b2))
            out = chromatic_polynomial(num_vertices, rest) - chromatic_polynomial(
                num_vertices - 1, merged
            )
    _chromatic_memo[key] = out
    return out


@dataclass
class GraphicCrossCheck:
    chromatic: IntPoly
    matroid_charpoly: IntPoly
    components: int
    passed: bool


def cross_check_graphic(num_vertices: int, edges) -> GraphicCrossCheck:
    """P_G(lam) must equal lam**c * chi(M(G)) with c the number of
    connected components (isolated vertices included)."""
    m = GraphicMatroid(num_vertices, edges)
    chi = charpoly_auto(m)
    c = num_vertices - m.full_rank
    shifted = chi * IntPoly([0] * c + [1])
    chrom = chromatic_polynomial(num_vertices, edges)
    return GraphicCrossCheck(chrom, chi, c, chrom == shifted)


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------

def save_instances(directory, instances) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for rec in instances:
        save_matroid(rec.matroid, d / f"{rec.id}.matrix")
        if rec.decomposition is not None:
            save_decomposition(rec.decomposition, d / f"{rec.id}.decomp")
        meta = {"id": rec.id, "q": rec.q, "seed": rec.seed, "construction": rec.construction}
        (d / f"{rec.id}.json").write_text(json.dumps(meta, indent=1), encoding="utf-8")


def load_instances(directory) -> list[InstanceRecord]:
    d = Path(directory)
    out = []
    for matrix_path in sorted(d.glob("*.matrix")):
        stem = matrix_path.stem
        m = load_matroid(matrix_path)
        dec = None
        dpath = d / f"{stem}.decomp"
        if dpath.exists():
            dec = load_decomposition(dpath, m)
        meta = {}
        jpath = d / f"{stem}.json"
        if jpath.exists():
            meta = json.loads(jpath.read_text(encoding="utf-8"))
        q = meta.get("q")
        if q is None and isinstance(m, LinearMatroid):
            q = m.field.q
        out.append(
            InstanceRecord(
                id=meta.get("id", stem),
                q=q,
                matroid=m,
                decomposition=dec,
                construction=meta.get("construction", {}),
                seed=meta.get("seed"),
            )
        )
    return out


def resolve_instances(spec: str, q: int, k: int) -> list[InstanceRecord]:
    """Either a directory of instance files or a seed spec
    ``kind:count:seed`` with kind one of mixed, random, glued."""
    if os.path.isdir(spec):
        return load_instances(spec)
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(
            f"{spec!r} is neither a directory nor a seed spec 'kind:count:seed'"
        )
    kind, count, seed = parts[0], int(parts[1]), int(parts[2])
    if kind == "mixed":
        return main_theorem_suite(q, k, count, seed)
    if kind == "random":
        seed = effective_seed(seed)
        rng = random.Random(f"cli-random:{q}:{k}:{seed}")
        out = []
        for i in range(count):
            r = rng.randint(1, k)
            n = rng.randint(max(r, 2), 10)
            rec = gen_random_linear(q, r, n, rng.randrange(1 << 30))
            rec.id = f"random-q{q}k{k}-{i:04d}"
            out.append(rec)
        return out
    if kind == "glued":
        seed = effective_seed(seed)
        rng = random.Random(f"cli-glued:{q}:{k}:{seed}")
        out = []
        tries = 0
        while len(out) < count:
            block_rank = rng.randint(1, k)
            overlap = rng.randint(0, block_rank - 1)
            blocks = rng.randint(1, 3)
            tries += 1
            try:
                rec = gen_glued(q, block_rank, blocks, overlap, rng.randrange(1 << 30))
            except TooLargeError:
                if tries > 100 * count:
                    raise
                continue
            rec.id = f"glued-q{q}k{k}-{len(out):04d}"
            out.append(rec)
        return out
    raise ValueError(f"unknown instance kind {kind!r}")

"""Command line front end.

Subcommands:

* ``charpoly``   characteristic polynomial of a matroid file
* ``treewidth``  width bounds and decompositions
* ``verify``     run a verification suite, exit 0 iff every verdict holds
* ``generate``   write instance files
* ``minors``     query for long-line minors

Polynomials are printed as JSON arrays of decimal strings, constant
coefficient first; the empty array is the zero polynomial.  The env var
``MZ_SEED`` overrides any ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .charpoly import (
    cp_boolean_expansion,
    cp_cocircuit_expansion,
    cp_delete_contract,
    cp_mobius,
    cp_uniform_closed_form,
)
from .gfq import factor_prime_power, gf
from .harness import (
    all_verdicts_true,
    charpoly_auto,
    gen_glued,
    gen_random_linear,
    reports_to_jsonl,
    resolve_instances,
    save_instances,
    verify_identities,
    verify_main_theorem,
    verify_no_lines_theorem,
    verify_size_and_cocircuit_bounds,
)
from .matroid import GraphicMatroid, LinearMatroid, load_matroid, save_matroid
from .treedecomp import (
    best_heuristic,
    exact_treewidth_small,
    heuristic_decomposition,
    load_decomposition,
    save_decomposition,
)


def _engine_charpoly(m, engine: str):
    if engine == "auto":
        return charpoly_auto(m)
    if engine == "mobius":
        return cp_mobius(m)
    if engine == "boolean":
        return cp_boolean_expansion(m)
    if engine == "delcon":
        return cp_delete_contract(m)
    if engine == "cocircuit":
        if m.loops_mask():
            from .charpoly import ZERO

            return ZERO
        simple, _ = m.simplify()
        return cp_cocircuit_expansion(simple)
    raise ValueError(f"unknown engine {engine!r}")


def _cmd_charpoly(args) -> int:
    m = load_matroid(args.file)
    p = _engine_charpoly(m, args.engine)
    print(json.dumps(p.to_json()))
    if args.pretty:
        print(p, file=sys.stderr)
    return 0


def _cmd_treewidth(args) -> int:
    m = load_matroid(args.file)
    if args.evaluate:
        dec = load_decomposition(args.evaluate, m)
        report = dec.width_report()
        print(json.dumps({"width": report.width, "node_widths": list(report.node_widths)}))
        return 0
    if args.exact:
        res = exact_treewidth_small(m)
        dec = res.decomposition
        out = {"width": res.width, "exact": True, "tree_vertices": res.num_vertices}
    else:
        if args.heuristic == "best":
            dec = best_heuristic(m)
        else:
            dec = heuristic_decomposition(m, args.heuristic)
        out = {
            "width": dec.width(),
            "exact": False,
            "tree_vertices": dec.tree.num_vertices,
        }
    print(json.dumps(out))
    if args.decomp:
        save_decomposition(dec, args.decomp)
    return 0


def _cmd_verify(args) -> int:
    instances = resolve_instances(args.instances, args.q, args.k)
    if args.suite == "main":
        reports = verify_main_theorem(instances, args.q, args.k)
    elif args.suite == "nolines":
        reports = verify_no_lines_theorem(instances, args.q, args.k)
    elif args.suite == "identities":
        reports = verify_identities(instances)
    elif args.suite == "bounds":
        reports = verify_size_and_cocircuit_bounds(instances, args.q, args.k)
    else:
        raise ValueError(f"unknown suite {args.suite!r}")
    text = reports_to_jsonl(reports)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if all_verdicts_true(reports) else 1


def _smallest_prime_power_at_least(x: int) -> int:
    q = max(2, x)
    while True:
        try:
            factor_prime_power(q)
            return q
        except ValueError:
            q += 1


def _uniform_linear(r: int, n: int) -> LinearMatroid:
    """A linear representation of the rank-r uniform matroid on n
    elements: moment-curve columns (1, t, ..., t**(r-1)) at distinct t,
    plus the point at infinity when n == q + 1, over the smallest prime
    power q >= n - 1."""
    if r <= 0 or n < r:
        raise ValueError("need 0 < r <= n")
    if r == 1:
        return LinearMatroid(gf(2), [[1]] * n)
    if r >= n:
        cols = []
        for j in range(n):
            col = [0] * r
            col[j] = 1
            cols.append(col)
        return LinearMatroid(gf(2), cols)
    q = _smallest_prime_power_at_least(n - 1)
    F = gf(q)
    cols = []
    for t in range(n - 1 if n == q + 1 else n):
        cols.append([F.pow(t, i) for i in range(r)])
    if n == q + 1:
        inf = [0] * r
        inf[r - 1] = 1
        cols.append(inf)
    return LinearMatroid(F, cols)


def _cmd_generate(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.kind == "random":
        recs = []
        for i in range(args.count):
            recs.append(gen_random_linear(args.q, args.rank, args.n, args.seed + i))
        save_instances(outdir, recs)
        for rec in recs:
            print(outdir / f"{rec.id}.matrix")
    elif args.kind == "glued":
        rec = gen_glued(
            args.q, args.block_rank, args.blocks, args.overlap, args.seed,
            delete_count=args.delete,
        )
        save_instances(outdir, [rec])
        print(outdir / f"{rec.id}.matrix")
    elif args.kind == "uniform":
        m = _uniform_linear(args.rank, args.n)
        stem = f"uniform-r{args.rank}n{args.n}"
        path = outdir / f"{stem}.matrix"
        save_matroid(m, path)
        save_decomposition(best_heuristic(m), outdir / f"{stem}.decomp")
        print(path)
        check = cp_uniform_closed_form(args.rank, args.n)
        if charpoly_auto(m) != check:
            print("warning: representation does not match the closed form", file=sys.stderr)
            return 1
    elif args.kind == "graphic":
        v = args.vertices
        if args.shape == "complete":
            edges = [(i, j) for i in range(v) for j in range(i + 1, v)]
        elif args.shape == "cycle":
            edges = [(i, (i + 1) % v) for i in range(v)]
        elif args.shape == "path":
            edges = [(i, i + 1) for i in range(v - 1)]
        else:
            raise ValueError(f"unknown shape {args.shape!r}")
        m = GraphicMatroid(v, edges)
        stem = f"graphic-{args.shape}{v}"
        path = outdir / f"{stem}.matrix"
        save_matroid(m, path)
        save_decomposition(best_heuristic(m), outdir / f"{stem}.decomp")
        print(path)
    else:
        raise ValueError(f"unknown instance kind {args.kind!r}")
    return 0


def _cmd_minors(args) -> int:
    m = load_matroid(args.file)
    present = m.has_line_minor(args.length)
    print(json.dumps({"line_length": args.length, "present": present}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="matzero", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a matroid file")
    p.add_argument("file")
    p.add_argument(
        "--engine",
        choices=["auto", "mobius", "boolean", "delcon", "cocircuit"],
        default="auto",
    )
    p.add_argument("--pretty", action="store_true", help="also print a human form to stderr")
    p.set_defaults(func=_cmd_charpoly)

    p = sub.add_parser("treewidth", help="width of a matroid")
    p.add_argument("file")
    p.add_argument("--exact", action="store_true", help="exact search (tiny ground sets only)")
    p.add_argument(
        "--heuristic", choices=["best", "path", "greedy", "single"], default="best"
    )
    p.add_argument("--decomp", help="write the found decomposition here")
    p.add_argument("--evaluate", help="evaluate the width of this decomposition file")
    p.set_defaults(func=_cmd_treewidth)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["main", "nolines", "identities", "bounds"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument(
        "--instances",
        required=True,
        help="directory of instance files, or seed spec kind:count:seed",
    )
    p.add_argument("--report", help="write JSON lines here instead of stdout")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("generate", help="write instance files")
    gsub = p.add_subparsers(dest="kind", required=True)

    g = gsub.add_parser("random")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--rank", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=".")
    g.set_defaults(func=_cmd_generate)

    g = gsub.add_parser("glued")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--block-rank", type=int, required=True)
    g.add_argument("--blocks", type=int, default=2)
    g.add_argument("--overlap", type=int, default=1)
    g.add_argument("--delete", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=".")
    g.set_defaults(func=_cmd_generate)

    g = gsub.add_parser("uniform")
    g.add_argument("--rank", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--out", default=".")
    g.set_defaults(func=_cmd_generate)

    g = gsub.add_parser("graphic")
    g.add_argument("--shape", choices=["complete", "cycle", "path"], required=True)
    g.add_argument("--vertices", type=int, required=True)
    g.add_argument("--out", default=".")
    g.set_defaults(func=_cmd_generate)

    p = sub.add_parser("minors", help="minor queries")
    msub = p.add_subparsers(dest="query", required=True)
    q = msub.add_parser("line", help="is there an l-point line minor?")
    q.add_argument("file")
    q.add_argument("--l", "--length", dest="length", type=int, required=True)
    q.set_defaults(func=_cmd_minors)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

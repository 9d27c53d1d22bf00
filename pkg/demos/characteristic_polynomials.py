"""Four ways to compute a characteristic polynomial, and why they agree.

The characteristic polynomial of a matroid counts, with Mobius signs,
the flats of the lattice below each corank.  This script computes it
for a handful of named matroids with every engine in the package and
prints the (identical) results, then isolates the largest real roots
exactly.
"""

from fractions import Fraction

from matzero import (
    UniformMatroid,
    cp_boolean_expansion,
    cp_cocircuit_expansion,
    cp_delete_contract,
    cp_mobius,
    cp_pg_closed_form,
    cp_uniform_closed_form,
    largest_real_root,
)
from matzero.instances import fano, k4_graphic, non_fano

ENGINES = [
    ("mobius over flats", cp_mobius),
    ("boolean expansion", cp_boolean_expansion),
    ("deletion-contraction", cp_delete_contract),
]


def show(name, m):
    print(f"\n{name}  (rank {m.full_rank}, {m.n} elements)")
    results = []
    for label, engine in ENGINES:
        p = engine(m)
        results.append(p)
        print(f"  {label:22s} {p}")
    if m.is_simple():
        p = cp_cocircuit_expansion(m)
        results.append(p)
        print(f"  {'cocircuit expansion':22s} {p}")
    assert all(p == results[0] for p in results), "engines disagree!"
    root = largest_real_root(results[0], Fraction(1, 2 ** 30))
    if root is None:
        print("  no real roots")
    else:
        lo, hi = root
        if lo == hi:
            print(f"  largest real root: exactly {lo}")
        else:
            print(f"  largest real root in ({lo}, {hi}]")
    return results[0]


def main():
    plane = show("Fano plane PG(2, 2)", fano())
    assert plane == cp_pg_closed_form(3, 2)
    print("  matches the projective closed form (x-1)(x-2)(x-4)")

    show("non-Fano (same points over GF(3))", non_fano())

    line = show("U_{2,6}, a six point line", UniformMatroid(2, 6))
    assert line == cp_uniform_closed_form(2, 6)
    print("  matches the uniform closed form; note the root at 5 = n - 1")

    show("cycle matroid of K4", k4_graphic())

    # loops kill the polynomial outright: every flat contains the loop
    loopy = UniformMatroid(0, 1)
    print(f"\nU_{{0,1}} has a loop; chi = {cp_mobius(loopy)}")


if __name__ == "__main__":
    main()

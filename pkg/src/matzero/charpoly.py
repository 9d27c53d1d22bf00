"""Characteristic polynomials of matroids, exactly, plus real-root tools.

The characteristic polynomial of a matroid M with ground set E is

    chi_M(lam) = sum over flats F of mu(cl(empty), F) * lam**(r(E) - r(F))

when M is loopless, and the zero polynomial otherwise.  Four independent
engines compute it here: the Mobius expansion above, the brute-force
subset expansion, deletion-contraction, and a cocircuit expansion.  They
must agree coefficient for coefficient, which the test suite exploits.

All arithmetic is exact: coefficients are Python integers, bounds and
root brackets are ``fractions.Fraction`` values, and sign questions are
settled by Sturm chains rather than floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd

from .errors import InexactDivisionError, NotSimpleError, TooLargeError
from .matroid import Matroid, MinorMatroid, mask_bits

BOOLEAN_EXPANSION_MAX = 20


class IntPoly:
    """Dense univariate polynomial with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``lam**i`` (constant term first).
    Trailing zeros are stripped, so the zero polynomial has no
    coefficients at all and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def evaluate(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def to_json(self) -> list[str]:
        """Coefficients as decimal strings, constant term first."""
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "IntPoly":
        return cls(int(s) for s in data)

    def __repr__(self):
        if self.is_zero:
            return "IntPoly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            term = "lam" if i == 1 else f"lam^{i}" if i else ""
            mag = "" if (abs(c) == 1 and i) else str(abs(c))
            piece = (mag + "*" + term).strip("*") if term else str(abs(c))
            parts.append(("- " if c < 0 else "+ " if parts else "") + piece)
        return "IntPoly(" + " ".join(parts) + ")"


ZERO = IntPoly(())
ONE = IntPoly((1,))


def x_minus(c: int) -> IntPoly:
    return IntPoly((-c, 1))


_lin_powers: dict[int, IntPoly] = {0: ONE}


def lam_minus_one_power(r: int) -> IntPoly:
    """(lam - 1) ** r, cached."""
    p = _lin_powers.get(r)
    if p is None:
        p = lam_minus_one_power(r - 1) * x_minus(1)
        _lin_powers[r] = p
    return p


# ---------------------------------------------------------------------------
# engines
# ---------------------------------------------------------------------------

def cp_mobius(m: Matroid) -> IntPoly:
    """Mobius-function expansion over the lattice of flats."""
    if m.loops_mask():
        return ZERO
    r = m.full_rank
    coeffs = [0] * (r + 1)
    for flat in m.all_flats_with_mobius():
        coeffs[r - flat.rank] += flat.mobius
    return IntPoly(coeffs)


def cp_boolean_expansion(m: Matroid) -> IntPoly:
    """Brute-force alternating sum over all subsets of the ground set:
    sum over A of (-1)**|A| * lam**(r(E) - r(A)).  Exponential; capped
    at 20 elements.  Serves as the reference oracle for the others."""
    if m.n > BOOLEAN_EXPANSION_MAX:
        raise TooLargeError(
            f"subset expansion is capped at {BOOLEAN_EXPANSION_MAX} elements, got {m.n}"
        )
    r = m.full_rank
    coeffs = [0] * (r + 1)
    for a in range(1 << m.n):
        sign = -1 if bin(a).count("1") & 1 else 1
        coeffs[r - m.rank_mask(a)] += sign
    return IntPoly(coeffs)


class _MinorContext:
    """Shared state for the recursive engines: a fixed root matroid plus
    rank queries for its minors, addressed by (kept-mask, contracted-mask)
    pairs at root level."""

    def __init__(self, m: Matroid):
        root, kept, cmask = m._root_triple()
        self.root = root
        self.start_key = (sum(1 << k for k in kept), cmask)
        self.memo: dict[tuple[int, int], IntPoly] = {}

    def rank_in(self, cmask: int, mask: int) -> int:
        return self.root.rank_mask(mask | cmask) - self.root.rank_mask(cmask)


def _loops_and_duplicates(ctx: _MinorContext, rest: int, cmask: int):
    """Locate loops and redundant parallel copies inside a minor.
    Returns (loop mask, duplicate mask): duplicates are every element of
    a parallel class except its lowest-index member."""
    loops = 0
    reps: list[int] = []
    dupes = 0
    for e in mask_bits(rest):
        ebit = 1 << e
        if ctx.rank_in(cmask, ebit) == 0:
            loops |= ebit
            continue
        for rep in reps:
            if ctx.rank_in(cmask, rep | ebit) == 1:
                dupes |= ebit
                break
        else:
            reps.append(ebit)
    return loops, dupes


def cp_delete_contract(m: Matroid) -> IntPoly:
    """Deletion-contraction with simplification before every split.

    chi_M = chi_{M minus e} - chi_{M contract e}  whenever e is neither
    a loop nor a coloop; a loop kills the polynomial, and once every
    element is a coloop the minor contributes (lam - 1)**rank.  Minors
    are memoized by their (remaining, contracted) mask pair relative to
    the root matroid, with no cross-instance canonicalization.
    """
    ctx = _MinorContext(m)
    full = ctx.start_key[0]

    def rec(rest: int, cmask: int) -> IntPoly:
        key = (rest, cmask)
        hit = ctx.memo.get(key)
        if hit is not None:
            return hit
        loops, dupes = _loops_and_duplicates(ctx, rest, cmask)
        if loops:
            out = ZERO
        elif dupes:
            out = rec(rest & ~dupes, cmask)
        else:
            r = ctx.rank_in(cmask, rest)
            count = bin(rest).count("1")
            if r == count:
                out = lam_minus_one_power(r)
            else:
                pivot = next(
                    e for e in mask_bits(rest)
                    if ctx.rank_in(cmask, rest & ~(1 << e)) == r
                )
                pbit = 1 << pivot
                out = rec(rest & ~pbit, cmask) - rec(rest & ~pbit, cmask | pbit)
        ctx.memo[key] = out
        return out

    return rec(full, ctx.start_key[1])


def cp_cocircuit_expansion(m: Matroid) -> IntPoly:
    """Expansion along a minimum-size cocircuit C* = {x_1 < ... < x_m}:

        chi_M = (lam - m) * chi_{M minus C*}
              + sum_{1 <= i < j <= m} chi_{M minus X_{i,j} / x_i, x_j}

    where X_{i,j} = {x_1, ..., x_{j-1}} minus {x_i}.  The input must be
    simple; intermediate minors are normalized (loops kill a term,
    parallel copies are deleted) before recursing.
    """
    if not m.is_simple():
        raise NotSimpleError("the cocircuit expansion needs a simple matroid")
    ctx = _MinorContext(m)
    root = ctx.root

    def norm(rest: int, cmask: int) -> IntPoly:
        key = (rest, cmask)
        hit = ctx.memo.get(key)
        if hit is not None:
            return hit
        loops, dupes = _loops_and_duplicates(ctx, rest, cmask)
        if loops:
            out = ZERO
        elif dupes:
            out = norm(rest & ~dupes, cmask)
        else:
            out = expand(rest, cmask)
        ctx.memo[key] = out
        return out

    def expand(rest: int, cmask: int) -> IntPoly:
        r = ctx.rank_in(cmask, rest)
        count = bin(rest).count("1")
        if r == count:
            return lam_minus_one_power(r)
        kept = tuple(mask_bits(rest))
        minor = MinorMatroid(root, kept, cmask)
        local = minor.find_small_cocircuit()
        xs = [kept[i] for i in mask_bits(local)]
        mlen = len(xs)
        cstar = 0
        for x in xs:
            cstar |= 1 << x
        total = x_minus(mlen) * norm(rest & ~cstar, cmask)
        for j in range(1, mlen):
            for i in range(j):
                drop = 0
                for t in range(j):
                    if t != i:
                        drop |= 1 << xs[t]
                pair = (1 << xs[i]) | (1 << xs[j])
                total = total + norm(rest & ~drop & ~pair, cmask | pair)
        return total

    return norm(*ctx.start_key)


def cp_pg_closed_form(r: int, q: int) -> IntPoly:
    """Characteristic polynomial of the rank-r projective geometry over
    GF(q): the product (lam - 1)(lam - q)...(lam - q**(r-1))."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    if q < 2:
        raise ValueError("the field order must be at least 2")
    out = ONE
    power = 1
    for _ in range(r):
        out = out * x_minus(power)
        power *= q
    return out


def cp_uniform_closed_form(r: int, n: int) -> IntPoly:
    """Characteristic polynomial of U_{r,n}:
    sum_{k=0}^{r-1} (-1)**k (n choose k) (lam**(r-k) - 1)."""
    if not 0 <= r <= n:
        raise ValueError("a uniform matroid needs 0 <= r <= n")
    if r == 0:
        # empty matroid if n == 0, otherwise every element is a loop
        return ONE if n == 0 else ZERO
    coeffs = [0] * (r + 1)
    for k in range(r):
        c = comb(n, k) * (-1 if k & 1 else 1)
        coeffs[r - k] += c
        coeffs[0] -= c
    return IntPoly(coeffs)


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------

def poly_exact_div(num: IntPoly, den: IntPoly) -> IntPoly:
    """Quotient num / den when the division is exact over the integers;
    raises InexactDivisionError otherwise."""
    if den.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    if num.is_zero:
        return ZERO
    if num.degree < den.degree:
        raise InexactDivisionError("quotient would have negative degree")
    rem = [Fraction(c) for c in num.coeffs]
    dcs = den.coeffs
    dlead = Fraction(dcs[-1])
    qlen = len(rem) - len(dcs) + 1
    quot = [Fraction(0)] * qlen
    for i in range(qlen - 1, -1, -1):
        c = rem[i + len(dcs) - 1] / dlead
        quot[i] = c
        if c:
            for j, dcj in enumerate(dcs):
                rem[i + j] -= c * dcj
    if any(rem):
        raise InexactDivisionError("nonzero remainder")
    if any(c.denominator != 1 for c in quot):
        raise InexactDivisionError("quotient has fractional coefficients")
    return IntPoly(int(c) for c in quot)


# ---------------------------------------------------------------------------
# Sturm chains and real roots
# ---------------------------------------------------------------------------

def _primitive(coeffs) -> tuple[int, ...]:
    """Divide out the positive content; the sign pattern is preserved."""
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g <= 1:
        return tuple(coeffs)
    return tuple(c // g for c in coeffs)


def _frac_to_primitive_int(fracs) -> tuple[int, ...]:
    """Scale a Fraction coefficient list by a positive rational to a
    primitive integer list."""
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    return _primitive(ints)


def _poly_rem_frac(a: tuple[int, ...], b: tuple[int, ...]) -> list[Fraction]:
    """Remainder of a modulo b over the rationals (dense int inputs)."""
    rem = [Fraction(c) for c in a]
    blead = Fraction(b[-1])
    while len(rem) >= len(b):
        c = rem[-1] / blead
        shift = len(rem) - len(b)
        for j, bj in enumerate(b):
            rem[shift + j] -= c * bj
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            break
    return rem


def _poly_gcd_int(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over the integers, normalized to positive lead."""
    x, y = a.coeffs, b.coeffs
    if not x:
        x, y = y, x
    while y:
        rem = _poly_rem_frac(x, y)
        x, y = y, _frac_to_primitive_int(rem) if rem else ()
    if not x:
        return ZERO
    x = _primitive(x)
    if x[-1] < 0:
        x = tuple(-c for c in x)
    return IntPoly(x)


def squarefree_part(p: IntPoly) -> IntPoly:
    """p divided by gcd(p, p'), scaled primitive with positive lead.
    Same real roots as p, all simple."""
    if p.is_zero:
        raise ValueError("the zero polynomial has no squarefree part")
    if p.degree == 0:
        return ONE
    g = _poly_gcd_int(p, p.derivative())
    if g.degree == 0:
        sf = _primitive(p.coeffs)
    else:
        rem = [Fraction(c) for c in p.coeffs]
        gcs = g.coeffs
        glead = Fraction(gcs[-1])
        qlen = len(rem) - len(gcs) + 1
        quot = [Fraction(0)] * qlen
        for i in range(qlen - 1, -1, -1):
            c = rem[i + len(gcs) - 1] / glead
            quot[i] = c
            for j, gj in enumerate(gcs):
                rem[i + j] -= c * gj
        sf = _frac_to_primitive_int(quot)
    if sf[-1] < 0:
        sf = tuple(-c for c in sf)
    return IntPoly(sf)


def sturm_chain(p: IntPoly) -> list[IntPoly]:
    """Sturm chain of a squarefree polynomial, with content stripped at
    every step to keep the integers small.  Scaling factors are always
    positive, so sign variation counts are unaffected."""
    chain = [p, p.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        rem = _poly_rem_frac(chain[-2].coeffs, chain[-1].coeffs)
        if not rem:
            break
        nxt = _frac_to_primitive_int([-c for c in rem])
        chain.append(IntPoly(nxt))
    return [c for c in chain if not c.is_zero]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs) -> int:
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            out += 1
        prev = s
    return out


def _variations_at(chain, x) -> int:
    return _variations(_sign(c.evaluate(x)) for c in chain)


def _variations_at_pos_inf(chain) -> int:
    return _variations(_sign(c.leading) for c in chain)


def _variations_at_neg_inf(chain) -> int:
    return _variations(
        _sign(c.leading) * (-1 if c.degree & 1 else 1) for c in chain
    )


def count_roots_above(p: IntPoly, bound) -> int:
    """Number of distinct real roots of p in the open interval
    (bound, +infinity)."""
    if p.is_zero:
        raise ValueError("the zero polynomial has every point as a root")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return 0
    chain = sturm_chain(sf)
    return _variations_at(chain, Fraction(bound)) - _variations_at_pos_inf(chain)


def sturm_positive_beyond(p: IntPoly, bound) -> bool:
    """Whether p(lam) > 0 for every rational lam strictly above bound.
    A root exactly at the bound does not spoil the verdict because the
    region is open on the left."""
    if p.is_zero:
        raise ValueError("the zero polynomial is nowhere positive")
    if p.degree == 0:
        return p.leading > 0
    if p.leading < 0:
        return False
    return count_roots_above(p, bound) == 0


def cauchy_root_bound(p: IntPoly) -> int:
    """Integer B with every real root of p strictly inside (-B, B)."""
    lead = abs(p.leading)
    worst = max((abs(c) for c in p.coeffs[:-1]), default=0)
    return 1 + (worst + lead - 1) // lead if worst else 1


def _simplest_in(a: Fraction, b: Fraction) -> Fraction:
    """Simplest rational in the closed interval [a, b]: smallest
    denominator, ties broken towards zero."""
    if a > b:
        raise ValueError("empty interval")
    if a == b:
        return a
    ceil_a = -((-a.numerator) // a.denominator)
    if ceil_a <= b:
        if a <= 0 <= b:
            return Fraction(0)
        if a > 0:
            return Fraction(ceil_a)
        return Fraction(b.numerator // b.denominator)
    floor_a = a.numerator // a.denominator
    inner = _simplest_in(1 / (b - floor_a), 1 / (a - floor_a))
    return floor_a + 1 / inner


def largest_real_root(p: IntPoly, tol) -> tuple[Fraction, Fraction] | None:
    """Bracket the largest real root of p to within tol.

    Returns a pair (lo, hi) of exact rationals with lo < root <= hi and
    hi - lo <= tol.  When the root itself is the simplest rational in
    the final bracket (an integer root, in particular), the bracket
    collapses to the degenerate pair (root, root).  Returns None when p
    has no real root.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no largest root")
    sf = squarefree_part(p)
    if sf.degree < 1:
        return None
    chain = sturm_chain(sf)
    v_hi = _variations_at_pos_inf(chain)
    total = _variations_at_neg_inf(chain) - v_hi
    if total == 0:
        return None
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    bound = cauchy_root_bound(sf)
    lo, hi = Fraction(-bound), Fraction(bound)
    # invariant: the largest root lies in (lo, hi]
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _variations_at(chain, mid) - v_hi >= 1:
            lo = mid
        else:
            hi = mid
    if sf.evaluate(hi) == 0:
        return hi, hi
    cand = _simplest_in(lo, hi)
    if cand > lo and sf.evaluate(cand) == 0 and _variations_at(chain, cand) == v_hi:
        return cand, cand
    return lo, hi

"""Factorization of univariate polynomials into monic primes.

Over GF(p): squarefree decomposition, distinct-degree splitting, then
Cantor-Zassenhaus equal-degree splitting driven by a seeded generator.

Over Q: squarefree decomposition in characteristic zero, then each squarefree
part is factored modulo a prime large enough to recover integer factors
directly (no Hensel lifting), with Zassenhaus subset recombination.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import ConstantPolynomial, DegreeBoundExceeded
from .field import GF, FieldSpec, is_prime
from .poly import Polynomial, gcd

DEFAULT_MAX_DEGREE = 12


@dataclass(frozen=True)
class PrimePowerFactorization:
    unit: object
    factors: tuple[tuple[Polynomial, int], ...]

    def expand(self) -> Polynomial:
        field = self.factors[0][0].field if self.factors else None
        if field is None:
            raise ValueError("empty factorization")
        out = Polynomial.constant(field, self.unit)
        for prime, k in self.factors:
            out = out * prime**k
        return out

    def __str__(self) -> str:
        parts = [f"({p})^{k}" for p, k in self.factors]
        if self.unit != 1:
            parts.insert(0, str(self.unit))
        return " * ".join(parts)


def factor(
    p: Polynomial, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> PrimePowerFactorization:
    """Factor ``p`` as ``unit * prod(prime**power)`` with monic distinct primes."""
    if p.degree < 1:
        raise ConstantPolynomial(f"cannot factor constant {p}")
    unit = p.lc
    monic = p.monic()
    if p.field.is_finite:
        rng = random.Random(seed)
        pairs = _factor_gf(monic, rng)
    else:
        pairs = _factor_q(monic, seed, max_degree)
    merged: dict[Polynomial, int] = {}
    for prime, k in pairs:
        merged[prime] = merged.get(prime, 0) + k
    ordered = sorted(merged.items(), key=lambda item: item[0].sort_key())
    return PrimePowerFactorization(unit, tuple(ordered))


# -- finite fields ----------------------------------------------------------


def _pth_root(f: Polynomial) -> Polynomial:
    p = f.field.modulus
    return Polynomial._raw(f.field, list(f.coeffs[::p]))


def squarefree_gf(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Squarefree decomposition of a monic polynomial over GF(p)."""
    p = f.field.modulus
    out: list[tuple[Polynomial, int]] = []
    if f.degree < 1:
        return out
    df = f.derivative()
    if not df:
        return [(g, e * p) for g, e in squarefree_gf(_pth_root(f))]
    c = gcd(f, df)
    w = f.exact_div(c)
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        fac = w.exact_div(y)
        if fac.degree > 0:
            out.append((fac, i))
        w, c = y, c.exact_div(y)
        i += 1
    if c.degree > 0:
        out.extend((g, e * p) for g, e in squarefree_gf(_pth_root(c)))
    return out


def distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Split a monic squarefree ``f`` into products of primes of equal degree."""
    field = f.field
    p = field.modulus
    x = Polynomial.x(field)
    out = []
    rest = f
    h = x % rest
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(p, rest)
        g = gcd(rest, h - x)
        if g.degree > 0:
            out.append((g, i))
            rest = rest.exact_div(g)
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def equal_degree(f: Polynomial, d: int, rng: random.Random) -> list[Polynomial]:
    """Cantor-Zassenhaus: split ``f`` (product of degree-``d`` primes)."""
    field = f.field
    p = field.modulus
    n = f.degree
    if n == d:
        return [f]
    r = n // d
    parts = [f]
    one = Polynomial.one(field)
    while len(parts) < r:
        a = Polynomial._raw(field, [rng.randrange(p) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map onto GF(2)
            t = a % f
            acc = t
            for _ in range(d - 1):
                t = (t * t) % f
                acc = acc + t
            g = acc
        else:
            g = a.powmod((p**d - 1) // 2, f) - one
        nxt = []
        for u in parts:
            if u.degree > d:
                z = gcd(g % u, u) if g % u else u
                if 0 < z.degree < u.degree:
                    nxt.extend((z, u.exact_div(z)))
                    continue
            nxt.append(u)
        parts = nxt
    return [u.monic() for u in parts]


def _factor_gf(f: Polynomial, rng: random.Random) -> list[tuple[Polynomial, int]]:
    out = []
    for sq, e in squarefree_gf(f):
        for block, d in distinct_degree(sq):
            for prime in equal_degree(block, d, rng):
                out.append((prime, e))
    return out


# -- rationals ---------------------------------------------------------------


def _to_primitive_int(f: Polynomial) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _primitive(a: list[int]) -> list[int]:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    a = [c // g for c in a]
    return [-c for c in a] if a[-1] < 0 else a


def squarefree_q(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm; ``f`` monic over Q."""
    out = []
    df = f.derivative()
    a = gcd(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def _modular_prime(ints: list[int]) -> int:
    """A prime above twice the factor-coefficient bound, not dividing lc or disc."""
    n = len(ints) - 1
    lc = abs(ints[-1])
    norm = math.isqrt(sum(c * c for c in ints)) + 1
    bound = lc * (2**n) * norm
    q = 2 * bound + 1
    while True:
        if is_prime(q) and ints[-1] % q:
            field = GF(q)
            fq = Polynomial(field, ints)
            if gcd(fq, fq.derivative()).degree == 0:
                return q
        q += 1


def _sym(c: int, q: int) -> int:
    c %= q
    return c - q if c > q // 2 else c


def _factor_squarefree_int(ints: list[int], seed: int) -> list[list[int]]:
    """Irreducible primitive integer factors of a squarefree primitive polynomial."""
    if len(ints) <= 2:
        return [ints]
    q = _modular_prime(ints)
    field = GF(q)
    rng = random.Random(seed)
    fq = Polynomial(field, ints).monic()
    modular = []
    for block, d in distinct_degree(fq):
        modular.extend(equal_degree(block, d, rng))
    modular.sort(key=lambda u: u.sort_key())

    result = []
    f = ints
    s = 1
    while 2 * s <= len(modular):
        for subset in combinations(range(len(modular)), s):
            lc = f[-1]
            g = Polynomial.constant(field, lc)
            for i in subset:
                g = g * modular[i]
            g_int = _primitive([_sym(c, q) for c in g.coeffs])
            rest = [u for i, u in enumerate(modular) if i not in subset]
            h = Polynomial.constant(field, lc)
            for u in rest:
                h = h * u
            h_int = _primitive([_sym(c, q) for c in h.coeffs])
            if _int_mul(g_int, h_int) == f:
                result.append(g_int)
                modular = rest
                f = h_int
                break
        else:
            s += 1
    result.append(f)
    return result


def _factor_q(
    f: Polynomial, seed: int, max_degree: int
) -> list[tuple[Polynomial, int]]:
    field = f.field
    out = []
    for part, e in squarefree_q(f):
        if part.degree > max_degree:
            raise DegreeBoundExceeded(
                f"squarefree part of degree {part.degree} exceeds cap {max_degree}"
            )
        for g in _factor_squarefree_int(_to_primitive_int(part), seed):
            out.append((Polynomial(field, [Fraction(c) for c in g]).monic(), e))
    return out

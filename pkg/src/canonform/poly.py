"""Univariate polynomials over a :class:`~canonform.field.FieldSpec`.

Coefficients are stored constant term first with no trailing zeros, so the
zero polynomial has an empty coefficient tuple and degree ``-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BothZero,
    DivisionByZero,
    FieldMismatch,
    NotCoprime,
    ParseError,
)
from .field import FieldSpec


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class Polynomial:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, coeffs: Iterable = ()):
        self.field = field
        self.coeffs = tuple(_trim([field(c) for c in coeffs]))
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, coeffs: list) -> Polynomial:
        # coeffs already canonical; skips coercion on hot paths
        p = object.__new__(cls)
        p.field = field
        p.coeffs = tuple(_trim(coeffs))
        p._hash = None
        return p

    @classmethod
    def zero(cls, field: FieldSpec) -> Polynomial:
        return cls._raw(field, [])

    @classmethod
    def one(cls, field: FieldSpec) -> Polynomial:
        return cls._raw(field, [field.one])

    @classmethod
    def x(cls, field: FieldSpec) -> Polynomial:
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: FieldSpec, c) -> Polynomial:
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable) -> Polynomial:
        out = cls.one(field)
        for r in roots:
            out = out * cls(field, [field.neg(field(r)), 1])
        return out

    # -- basic properties ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self) -> Polynomial:
        if not self.coeffs or self.is_monic():
            return self
        inv = self.field.inv(self.lc)
        mul = self.field.mul
        return Polynomial._raw(self.field, [mul(c, inv) for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.degree, tuple(self.field.sort_key(c) for c in self.coeffs))

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: Polynomial) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Polynomial._raw(self.field, out)

    def __neg__(self) -> Polynomial:
        neg = self.field.neg
        return Polynomial._raw(self.field, [neg(c) for c in self.coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = self.field(other)
            mul = self.field.mul
            return Polynomial._raw(self.field, [mul(a, c) for a in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        p = self.field.modulus
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        if p:
            out = [c % p for c in out]
        else:
            out = [self.field(c) for c in out]
        return Polynomial._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Polynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        self._check(other)
        if not other.coeffs:
            raise DivisionByZero("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return Polynomial.zero(f), self
        inv_lc = f.inv(other.lc)
        b = other.coeffs
        quot = [f.zero] * (len(rem) - db)
        p = f.modulus
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = f.mul(c, inv_lc)
            quot[k - db] = q
            base = k - db
            if p:
                for j in range(db + 1):
                    rem[base + j] = (rem[base + j] - q * b[j]) % p
            else:
                for j in range(db + 1):
                    rem[base + j] = rem[base + j] - q * b[j]
        return Polynomial._raw(f, quot), Polynomial._raw(f, rem[:db])

    def __divmod__(self, other: Polynomial):
        return self.divmod(other)

    def __floordiv__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other: Polynomial) -> Polynomial:
        return self.divmod(other)[1]

    def exact_div(self, other: Polynomial) -> Polynomial:
        q, r = self.divmod(other)
        if r:
            raise ValueError("division leaves a remainder")
        return q

    def derivative(self) -> Polynomial:
        f = self.field
        return Polynomial._raw(f, [f.mul(c, f(i)) for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, e: int, modulus: Polynomial) -> Polynomial:
        result = Polynomial.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    def __call__(self, value):
        f = self.field
        acc = f.zero
        for c in reversed(self.coeffs):
            acc = f.add(f.mul(acc, value), c)
        return acc

    # -- text ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Polynomial({self.field!r}, {self})"

    def __str__(self) -> str:
        return format_poly(self)


def poly_arith(p: Polynomial, q: Polynomial, op: str):
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divmod":
        return p.divmod(q)
    raise ValueError(f"unknown op {op!r}")


def xgcd(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b`` and ``g`` monic (or zero)."""
    a._check(b)
    field = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.one(field), Polynomial.zero(field)
    t0, t1 = Polynomial.zero(field), Polynomial.one(field)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0:
        inv = field.inv(r0.lc)
        r0, s0, t0 = r0 * inv, s0 * inv, t0 * inv
    return r0, s0, t0


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p and not q:
        raise BothZero("gcd(0, 0) is undefined")
    p._check(q)
    a, b = p, q
    while b:
        a, b = b, a % b
    return a.monic()


@dataclass(frozen=True)
class BezoutCertificate:
    g: tuple[Polynomial, ...]
    cofactors: tuple[Polynomial, ...]

    def verify(self) -> bool:
        if not self.g:
            return False
        total = Polynomial.zero(self.g[0].field)
        for gi, hi in zip(self.g, self.cofactors):
            total = total + gi * hi
        return total.is_one()


def bezout_multi(g: Sequence[Polynomial]) -> BezoutCertificate:
    """Cofactors ``h`` with ``sum(g[i] * h[i]) == 1``, by iterated extended Euclid."""
    if not g:
        raise ValueError("need at least one polynomial")
    field = g[0].field
    acc = Polynomial.zero(field)
    cof = []
    for gi in g:
        gi._check(g[0])
        if not acc and not gi:
            cof.append(Polynomial.zero(field))
            continue
        # invariant: acc == sum(g[j] * cof[j]) == gcd of g[:i]
        acc, s, t = xgcd(acc, gi)
        cof = [c * s for c in cof]
        cof.append(t)
    if not acc.is_one():
        raise NotCoprime(f"gcd is {acc}, not 1")
    cert = BezoutCertificate(tuple(g), tuple(cof))
    if not cert.verify():
        raise AssertionError("Bezout identity failed to verify")
    return cert


# -- text syntax ------------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*([+-])?\s*                      # sign
        (\d+(?:/\d+)?)?\s*\*?\s*           # coefficient
        (x(?:\s*\^\s*(\d+))?)?\s*          # x, x^n
    """,
    re.VERBOSE,
)


def parse_poly(text: str, field: FieldSpec) -> Polynomial:
    """Parse ``x^2 - 2/3x + 1`` or a coefficient list ``poly: c0 c1 c2``."""
    s = text.strip().replace("−", "-")
    if s.lower().startswith("poly:"):
        parts = s[5:].split()
        if not parts:
            raise ParseError("empty coefficient list")
        return Polynomial(field, [field.parse(t) for t in parts])
    if not s:
        raise ParseError("empty polynomial")
    coeffs: dict[int, object] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coef, xpart, exp = m.groups()
        if not first and sign is None:
            raise ParseError(f"missing operator before {s[pos:]!r}")
        if coef is None and xpart is None:
            raise ParseError(f"dangling sign in {text!r}")
        c = field.parse(coef) if coef is not None else field.one
        if sign == "-":
            c = field.neg(c)
        d = 0 if xpart is None else (int(exp) if exp is not None else 1)
        coeffs[d] = field.add(coeffs.get(d, field.zero), c)
        pos = m.end()
        first = False
    deg = max(coeffs)
    return Polynomial(field, [coeffs.get(i, field.zero) for i in range(deg + 1)])


def format_poly(p: Polynomial) -> str:
    if not p.coeffs:
        return "0"
    out = []
    for d in range(p.degree, -1, -1):
        c = p.coeffs[d]
        if not c:
            continue
        neg = not p.field.modulus and c < 0
        mag = -c if neg else c
        if d == 0:
            body = p.field.format(mag)
        else:
            xs = "x" if d == 1 else f"x^{d}"
            body = xs if mag == 1 else f"{p.field.format(mag)}{xs}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)

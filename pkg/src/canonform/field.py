"""Exact arithmetic over the rationals and prime fields GF(p).

Elements are stored as plain Python values: :class:`fractions.Fraction`
over Q and ``int`` residues in ``[0, p)`` over GF(p).  A :class:`FieldSpec`
carries the operations; matrices and polynomials keep raw values and call
into their field.  :class:`Scalar` wraps a value together with its field
for the public, type-checked surface.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

from .errors import DivisionByZero, FieldMismatch, ParseError, ZeroDenominator

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=1024)
def is_prime(n: int) -> bool:
    """Trial division below 10**6, then Miller-Rabin on fixed bases.

    The bases are exact below about 3.3e24; above that a strong Lucas test
    is added (Baillie-PSW, no known counterexample).
    """
    if n < 2:
        return False
    if n < 10**6:
        if n % 2 == 0:
            return n == 2
        d = 3
        while d * d <= n:
            if n % d == 0:
                return False
            d += 2
        return True
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases are exact for n < 3.3e24
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    if n >= 3_317_044_064_679_887_385_961_981:
        return _strong_lucas(n)
    return True


def _jacobi(a: int, n: int) -> int:
    a %= n
    out = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                out = -out
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            out = -out
        a %= n
    return out if n == 1 else 0


def _strong_lucas(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters."""
    r = math.isqrt(n)
    if r * r == n:
        return False
    D = 5
    while _jacobi(D, n) != -1:
        if _jacobi(D, n) == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    half = pow(2, -1, n)
    # U, V, Q^k by binary expansion of d
    U, V, Qk = 0, 2, 1
    for bit in bin(d)[2:]:
        U, V, Qk = U * V % n, (V * V - 2 * Qk) % n, Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * half % n, (D * U + P * V) * half % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V, Qk = (V * V - 2 * Qk) % n, Qk * Qk % n
        if V == 0:
            return True
    return False


def _inverse_mod(a: int, p: int) -> int:
    """Extended Euclid."""
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise DivisionByZero(f"{a} is not invertible mod {p}")
    return s0 % p


class FieldKind(enum.Enum):
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"


_INT_RE = re.compile(r"^([+-]?)(\d+)$")
_FRAC_RE = re.compile(r"^([+-]?)(\d+)/(\d+)$")


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    modulus: int | None = None

    def __post_init__(self):
        if self.kind is FieldKind.PRIME_FIELD:
            if self.modulus is None or not is_prime(self.modulus):
                raise ValueError(f"GF(p) needs a prime modulus, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ValueError("the rationals take no modulus")

    @property
    def is_finite(self) -> bool:
        return self.kind is FieldKind.PRIME_FIELD

    @property
    def characteristic(self) -> int:
        return self.modulus or 0

    def __repr__(self) -> str:
        return "QQ" if self.modulus is None else f"GF({self.modulus})"

    def __str__(self) -> str:
        return "q" if self.modulus is None else f"gf {self.modulus}"

    # -- element constructors -------------------------------------------
    @property
    def zero(self):
        return 0 if self.modulus else Fraction(0)

    @property
    def one(self):
        return 1 if self.modulus else Fraction(1)

    def __call__(self, value: Any):
        """Coerce an int or Fraction into a canonical element."""
        p = self.modulus
        if p:
            if isinstance(value, Fraction):
                if value.denominator % p == 0:
                    raise DivisionByZero(f"denominator of {value} vanishes mod {p}")
                return value.numerator * _inverse_mod(value.denominator, p) % p
            return int(value) % p
        return Fraction(value)

    def elements(self):
        """Iterate the elements of a finite field in residue order."""
        if not self.modulus:
            raise ValueError("the rationals are infinite")
        return range(self.modulus)

    # -- arithmetic on raw values -----------------------------------------
    def add(self, a, b):
        return (a + b) % self.modulus if self.modulus else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.modulus else a - b

    def mul(self, a, b):
        return a * b % self.modulus if self.modulus else a * b

    def neg(self, a):
        return -a % self.modulus if self.modulus else -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("division by zero")
        if self.modulus:
            return _inverse_mod(a, self.modulus)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e: int):
        if e < 0:
            return self.power(self.inv(a), -e)
        return pow(a, e, self.modulus) if self.modulus else a**e

    # -- text -------------------------------------------------------------
    def parse(self, text: str):
        """Parse ``n``, ``-n`` or (rationals only) ``n/m``."""
        s = text.strip().replace("−", "-")
        m = _INT_RE.match(s)
        if m:
            n = int(m.group(2))
            return self(-n if m.group(1) == "-" else n)
        m = _FRAC_RE.match(s)
        if m:
            if self.modulus:
                raise ParseError(f"fraction {text!r} not allowed over {self!r}")
            den = int(m.group(3))
            if den == 0:
                raise ZeroDenominator(f"zero denominator in {text!r}")
            num = int(m.group(2))
            return Fraction(-num if m.group(1) == "-" else num, den)
        raise ParseError(f"not a scalar: {text!r}")

    def format(self, a) -> str:
        return str(a)

    def sort_key(self, a):
        return a


QQ = FieldSpec(FieldKind.RATIONALS)


def GF(p: int) -> FieldSpec:
    return FieldSpec(FieldKind.PRIME_FIELD, p)


def parse_field(text: str) -> FieldSpec:
    """Accepts ``q``, ``gf 7``, ``gf7`` and ``gf:7``."""
    s = text.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    m = re.fullmatch(r"gf\s*[:(]?\s*(\d+)\s*\)?", s)
    if not m:
        raise ParseError(f"unknown field {text!r}")
    try:
        return GF(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class Scalar:
    """A field element tagged with its field."""

    field: FieldSpec
    value: Any

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _check(self, other: Scalar) -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self) -> Scalar:
        return Scalar(self.field, self.field.neg(self.value))

    def __lt__(self, other: Scalar) -> bool:
        self._check(other)
        return self.value < other.value

    def __bool__(self) -> bool:
        return bool(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)


_OPS = {
    "add": Scalar.__add__,
    "sub": Scalar.__sub__,
    "mul": Scalar.__mul__,
    "div": Scalar.__truediv__,
}


def arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    return fn(a, b)


def parse_scalar(text: str, field: FieldSpec) -> Scalar:
    return Scalar(field, field.parse(text))

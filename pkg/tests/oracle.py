"""Brute-force verifiers used only by the test suite.

Nothing here reuses the library's elimination or factoring paths beyond
matrix multiplication and equality: searches enumerate group elements,
irreducibility is trial division by every monic polynomial, and the
characteristic polynomial is a cofactor expansion.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache

from canonform.contra import ContraPair
from canonform.field import FieldSpec
from canonform.linalg import Matrix
from canonform.poly import Polynomial


class BudgetExceeded(Exception):
    pass


class InfiniteField(Exception):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_dim: int
    field: FieldSpec
    max_elements: int = 2**16

    def check(self, *dims: int) -> None:
        if not self.field.is_finite:
            raise InfiniteField("enumeration needs a finite field")
        p = self.field.modulus
        for d in dims:
            if d > self.max_dim or p ** (d * d) > self.max_elements:
                raise BudgetExceeded(f"GL({d}, {p}) is over budget")


def _det(field: FieldSpec, rows) -> object:
    """Cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return field.one
    total = field.zero
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = field.mul(rows[0][j], _det(field, minor))
        total = field.sub(total, term) if j % 2 else field.add(total, term)
    return total


@lru_cache(maxsize=None)
def general_linear_group(field: FieldSpec, n: int) -> tuple[Matrix, ...]:
    out = []
    for flat in itertools.product(field.elements(), repeat=n * n):
        rows = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
        if _det(field, rows):
            out.append(Matrix(field, rows, cols=n))
    return tuple(out)


@lru_cache(maxsize=None)
def all_matrices(field: FieldSpec, rows: int, cols: int) -> tuple[Matrix, ...]:
    return tuple(
        Matrix(field, [flat[i * cols : (i + 1) * cols] for i in range(rows)], cols=cols)
        for flat in itertools.product(field.elements(), repeat=rows * cols)
    )


def similar_by_search(A: Matrix, B: Matrix, budget: EnumerationBudget | None = None) -> bool:
    """Is there an invertible ``Q`` with ``Q A = B Q``?"""
    budget = budget or EnumerationBudget(3, A.field)
    if A.shape != B.shape:
        return False
    budget.check(A.rows)
    return any(Q @ A == B @ Q for Q in general_linear_group(A.field, A.rows))


def contra_equiv_by_search(p: ContraPair, q: ContraPair, budget: EnumerationBudget | None = None) -> bool:
    """Is there ``(S, T)`` with ``A T = S C`` and ``B S = T D``?"""
    budget = budget or EnumerationBudget(2, p.field)
    if (p.m, p.n) != (q.m, q.n):
        return False
    budget.check(p.m, p.n)
    field = p.field
    for S in general_linear_group(field, p.m):
        SC = S @ q.A
        for T in general_linear_group(field, p.n):
            if p.A @ T == SC and p.B @ S == T @ q.B:
                return True
    return False


def contra_orbit(p: ContraPair) -> frozenset:
    """All ``(S A T^-1, T B S^-1)`` as ``(A, B)`` data tuples."""
    field = p.field
    out = set()
    gl_m = general_linear_group(field, p.m)
    gl_n = general_linear_group(field, p.n)
    inv_m = {S: _inverse_by_search(S, gl_m) for S in gl_m}
    inv_n = {T: _inverse_by_search(T, gl_n) for T in gl_n}
    for S in gl_m:
        for T in gl_n:
            out.add(((S @ p.A @ inv_n[T]).data, (T @ p.B @ inv_m[S]).data))
    return frozenset(out)


def _inverse_by_search(M: Matrix, group) -> Matrix:
    ident = Matrix.identity(M.field, M.rows)
    return next(N for N in group if M @ N == ident)


def monic_polynomials(field: FieldSpec, degree: int):
    for tail in itertools.product(field.elements(), repeat=degree):
        yield Polynomial(field, list(tail) + [1])


def irreducible_by_trial(p: Polynomial) -> bool:
    """No monic divisor of degree ``1..deg/2``; finite fields, degree <= 6."""
    if not p.field.is_finite:
        raise InfiniteField("trial division needs a finite field")
    if p.degree > 6:
        raise BudgetExceeded("degree above 6")
    if p.degree < 1:
        return False
    for d in range(1, p.degree // 2 + 1):
        for q in monic_polynomials(p.field, d):
            if not (p % q):
                return False
    return True


def charpoly_by_cofactor(A: Matrix) -> Polynomial:
    """``det(x I - A)`` by cofactor expansion over polynomial entries."""
    field = A.field
    n = A.rows
    x = Polynomial.x(field)

    def entry(i, j):
        c = Polynomial.constant(field, field.neg(A[i, j]))
        return x + c if i == j else c

    def det(rows, cols):
        if not rows:
            return Polynomial.one(field)
        i = rows[0]
        total = Polynomial.zero(field)
        for k, j in enumerate(cols):
            term = entry(i, j) * det(rows[1:], cols[:k] + cols[k + 1 :])
            total = total - term if k % 2 else total + term
        return total

    return det(list(range(n)), list(range(n)))


def rank_by_minors(A: Matrix) -> int:
    """Largest nonvanishing minor, by cofactor determinants (tiny matrices only)."""
    field = A.field
    for k in range(min(A.rows, A.cols), 0, -1):
        for rs in itertools.combinations(range(A.rows), k):
            for cs in itertools.combinations(range(A.cols), k):
                if _det(field, [[A[i, j] for j in cs] for i in rs]):
                    return k
    return 0


def classical_jordan_blocks(A: Matrix) -> dict[tuple[object, int], int]:
    """``{(eigenvalue, size): count}`` from the rank staircase of ``A - lambda I``.

    Enumerates every element of a finite field as a candidate eigenvalue.
    Raises if the eigenvalues do not account for the full dimension.
    """
    field = A.field
    n = A.rows
    out: dict[tuple[object, int], int] = {}
    covered = 0
    ident = Matrix.identity(field, n)
    for lam in field.elements():
        N = A - ident.scale(lam)
        ranks = [n]
        power = ident
        while True:
            power = power @ N
            ranks.append(_rank_by_echelon(power))
            if ranks[-1] == ranks[-2]:
                break
        ranks.append(ranks[-1])
        # blocks of size >= j: r_{j-1} - r_j
        for j in range(1, len(ranks) - 1):
            count = (ranks[j - 1] - ranks[j]) - (ranks[j] - ranks[j + 1])
            if count:
                out[(lam, j)] = count
                covered += count * j
    if covered != n:
        raise ValueError("matrix has eigenvalues outside the field")
    return out


def _rank_by_echelon(M: Matrix) -> int:
    # textbook elimination kept separate from the library implementation
    field = M.field
    rows = [list(r) for r in M.data]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = field.div(rows[i][c], rows[r][c])
                rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# -- random instances --------------------------------------------------------


class Instances:
    """Deterministic stream of test matrices, conjugators and pairs."""

    def __init__(self, seed: int, field: FieldSpec, entry_range: int = 5):
        self.rng = random.Random(seed)
        self.field = field
        self.entry_range = entry_range

    def scalar(self):
        if self.field.is_finite:
            return self.rng.randrange(self.field.modulus)
        return self.field(self.rng.randint(-self.entry_range, self.entry_range))

    def matrix(self, rows: int, cols: int) -> Matrix:
        return Matrix(self.field, [[self.scalar() for _ in range(cols)] for _ in range(rows)], cols=cols)

    def low_rank(self, rows: int, cols: int, rank: int | None = None) -> Matrix:
        if rank is None:
            rank = self.rng.randint(0, min(rows, cols))
        return self.matrix(rows, rank) @ self.matrix(rank, cols)

    def invertible(self, n: int) -> Matrix:
        """Product of random unit triangular factors and a permutation."""
        f = self.field
        L = [[f.one if i == j else (self.scalar() if i > j else f.zero) for j in range(n)] for i in range(n)]
        U = [[self.nonzero() if i == j else (self.scalar() if i < j else f.zero) for j in range(n)] for i in range(n)]
        perm = list(range(n))
        self.rng.shuffle(perm)
        P = [[f.one if perm[i] == j else f.zero for j in range(n)] for i in range(n)]
        return Matrix(f, P, cols=n) @ Matrix(f, L, cols=n) @ Matrix(f, U, cols=n)

    def nonzero(self):
        while True:
            c = self.scalar()
            if c:
                return c

    def structured(self, n: int) -> Matrix:
        """Conjugate of a block-diagonal matrix with repeated small blocks."""
        blocks = []
        left = n
        palette = [self.matrix(d, d) for d in (1, 1, 2, 2, 3)]
        while left:
            B = self.rng.choice(palette)
            if B.rows > left:
                B = palette[0]
            if self.rng.random() < 0.4 and 2 * B.rows <= left:
                # a non-split extension: [[B, 0], [E, B]]
                E = self.matrix(B.rows, B.rows)
                B = B.hstack(Matrix.zeros(self.field, B.rows, B.rows)).vstack(E.hstack(B))
            blocks.append(B)
            left -= B.rows
        D = Matrix.block_diag(self.field, blocks)
        Q = self.invertible(n)
        from canonform.linalg import inverse

        return Q @ D @ inverse(Q)

    def square(self, max_n: int = 6) -> Matrix:
        n = self.rng.randint(0, max_n)
        kind = self.rng.random()
        if kind < 0.4:
            return self.matrix(n, n)
        if kind < 0.6:
            return self.low_rank(n, n)
        return self.structured(n)

    def pair(self, max_m: int = 5, max_n: int = 5) -> ContraPair:
        m = self.rng.randint(0, max_m)
        n = self.rng.randint(0, max_n)
        A = self.matrix(m, n) if self.rng.random() < 0.3 else self.low_rank(m, n)
        B = self.matrix(n, m) if self.rng.random() < 0.3 else self.low_rank(n, m)
        if self.rng.random() < 0.3 and m and n:
            # nilpotent-heavy: B A has a large kernel
            B = self.low_rank(n, m, rank=min(1, n, m))
        return ContraPair(A, B)


def random_instances(seed: int, field: FieldSpec, entry_range: int = 5) -> Instances:
    return Instances(seed, field, entry_range)

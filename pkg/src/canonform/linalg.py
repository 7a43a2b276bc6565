"""Exact dense linear algebra over a :class:`~canonform.field.FieldSpec`.

Conventions used throughout the package:

* vectors are columns; a :class:`Subspace` is the column span of its basis;
* linear functionals are rows (:class:`DualVector`), the pairing
  ``<v, t>`` is the 1x1 product ``t @ v``, and the adjoint of ``A`` acts on
  a functional by right multiplication ``t @ A``;
* elimination pivots on the first nonzero entry of each column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    FieldMismatch,
    Inconsistent,
    InternalInvariantViolated,
    NonSquare,
    NotInvariant,
    ShapeMismatch,
    SingularMatrix,
)
from .field import FieldSpec
from .poly import Polynomial


class Matrix:
    """Immutable dense matrix; ``data`` is a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field: FieldSpec, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(field(x) for x in r) for r in data)
        if cols is None:
            if not rows:
                raise ShapeMismatch("column count is ambiguous for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self._hash = None

    @classmethod
    def _raw(cls, field: FieldSpec, data: Sequence[Sequence], cols: int) -> Matrix:
        m = object.__new__(cls)
        m.field = field
        m.data = tuple(tuple(r) for r in data)
        m.rows = len(m.data)
        m.cols = cols
        m._hash = None
        return m

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls._raw(field, [[z] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], n: int) -> Matrix:
        """Build an ``n x len(columns)`` matrix from column tuples."""
        return cls._raw(field, [[c[i] for c in columns] for i in range(n)], len(columns))

    @classmethod
    def unit_vector(cls, field: FieldSpec, n: int, i: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._raw(field, [[o if k == i else z] for k in range(n)], 1)

    @classmethod
    def diag(cls, field: FieldSpec, entries: Sequence) -> Matrix:
        n = len(entries)
        z = field.zero
        return cls._raw(
            field, [[field(entries[i]) if i == j else z for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def block_diag(cls, field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[field.zero] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.data):
                out[r0 + i][c0 : c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls._raw(field, out, cols)

    # -- access ----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [tuple(col) for col in zip(*self.data)] if self.rows else [()] * self.cols

    def row(self, i: int) -> tuple:
        return self.data[i]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._raw(self.field, [[self.data[i][j] for j in cols] for i in rows], len(cols))

    def col_slice(self, start: int, stop: int) -> Matrix:
        return Matrix._raw(self.field, [r[start:stop] for r in self.data], stop - start)

    def transpose(self) -> Matrix:
        return Matrix._raw(self.field, self.columns(), self.rows)

    T = property(transpose)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def hstack(self, *others: Matrix) -> Matrix:
        mats = (self, *others)
        for m in others:
            self._check(m)
            if m.rows != self.rows:
                raise ShapeMismatch("hstack needs equal row counts")
        data = [sum((m.data[i] for m in mats), ()) for i in range(self.rows)]
        return Matrix._raw(self.field, data, sum(m.cols for m in mats))

    def vstack(self, *others: Matrix) -> Matrix:
        for m in others:
            self._check(m)
            if m.cols != self.cols:
                raise ShapeMismatch("vstack needs equal column counts")
        return Matrix._raw(self.field, self.data + sum((m.data for m in others), ()), self.cols)

    # -- equality --------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix({self.field!r}, {self.rows}x{self.cols}, [{body}])"

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: Matrix) -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.field.add
        return Matrix._raw(
            self.field,
            [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
            self.cols,
        )

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix._raw(self.field, [[neg(a) for a in r] for r in self.data], self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        mul = self.field.mul
        return Matrix._raw(self.field, [[mul(a, c) for a in r] for r in self.data], self.cols)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        p = self.field.modulus
        cols = other.columns()
        out = []
        if p:
            for r in self.data:
                out.append([sum(a * b for a, b in zip(r, c)) % p for c in cols])
        else:
            zero = self.field.zero
            for r in self.data:
                out.append([sum((a * b for a, b in zip(r, c) if a), zero) for c in cols])
        return Matrix._raw(self.field, out, other.cols)

    def __pow__(self, e: int) -> Matrix:
        if not self.is_square:
            raise NonSquare(f"power of a {self.shape} matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result


@dataclass(frozen=True)
class DualVector:
    """A linear functional stored as a 1 x n row."""

    row: Matrix

    def __post_init__(self):
        if self.row.rows != 1:
            raise ShapeMismatch("a dual vector is a single row")

    @classmethod
    def coordinate(cls, field: FieldSpec, n: int, i: int) -> DualVector:
        return cls(Matrix.unit_vector(field, n, i).transpose())

    @property
    def dim(self) -> int:
        return self.row.cols

    def pair(self, v: Matrix):
        """``<v, self>`` for a column vector ``v``."""
        return (self.row @ v)[0, 0]

    def adjoint_apply(self, A: Matrix) -> DualVector:
        return DualVector(self.row @ A)


# -- elimination core --------------------------------------------------------


def _rref(field: FieldSpec, rows: list[list], ncols: int | None = None):
    """Reduced row echelon form in place; returns ``(rows, pivot_columns)``.

    Only the first ``ncols`` columns are eligible as pivots.
    """
    if not rows:
        return rows, []
    width = len(rows[0])
    if ncols is None:
        ncols = width
    p = field.modulus
    inv = field.inv
    pivots: list[int] = []
    r = 0
    m = len(rows)
    for c in range(ncols):
        pr = next((i for i in range(r, m) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        ic = inv(prow[c])
        if p:
            prow = [x * ic % p for x in prow]
        else:
            prow = [x * ic for x in prow]
        rows[r] = prow
        for i in range(m):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    if p:
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
                    else:
                        rows[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    rows, piv = _rref(A.field, [list(r) for r in A.data], A.cols)
    return Matrix._raw(A.field, rows, A.cols), piv


def rank(A: Matrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(_rref(A.field, [list(r) for r in A.data])[1])


def _kernel_columns(A: Matrix) -> list[tuple]:
    field = A.field
    n = A.cols
    if A.rows == 0:
        return [tuple(field.one if i == j else field.zero for i in range(n)) for j in range(n)]
    rows, piv = _rref(field, [list(r) for r in A.data])
    pivset = set(piv)
    out = []
    for free in range(n):
        if free in pivset:
            continue
        v = [field.zero] * n
        v[free] = field.one
        for i, pc in enumerate(piv):
            v[pc] = field.neg(rows[i][free])
        out.append(tuple(v))
    return out


class Subspace:
    """A subspace of ``F^n`` given by a basis matrix with independent columns.

    ``Subspace.span`` stores the reduced column echelon basis, so equal
    subspaces built that way carry identical bases.  The plain constructor
    keeps the given (ordered) basis; equality always compares spans.
    """

    __slots__ = ("field", "ambient_dim", "basis", "_canon")

    def __init__(self, basis: Matrix, *, check: bool = True):
        if check and rank(basis) != basis.cols:
            raise InternalInvariantViolated("subspace basis is linearly dependent")
        self.field = basis.field
        self.ambient_dim = basis.rows
        self.basis = basis
        self._canon = None

    @classmethod
    def span(cls, field: FieldSpec, n: int, vectors: Iterable[Sequence]) -> Subspace:
        vecs = [list(v) for v in vectors]
        rows, piv = _rref(field, vecs)
        canon = Matrix.from_columns(field, rows[: len(piv)], n)
        s = cls(canon, check=False)
        s._canon = canon
        return s

    @classmethod
    def of_columns(cls, M: Matrix) -> Subspace:
        return cls.span(M.field, M.rows, M.columns())

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> Subspace:
        return cls.span(field, n, [])

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> Subspace:
        return cls.span(field, n, Matrix.identity(field, n).columns())

    @property
    def dim(self) -> int:
        return self.basis.cols

    def canonical_basis(self) -> Matrix:
        if self._canon is None:
            self._canon = Subspace.of_columns(self.basis).basis
        return self._canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.canonical_basis() == other.canonical_basis()
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.canonical_basis()))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def vectors(self) -> list[Matrix]:
        return [self.basis.col_slice(j, j + 1) for j in range(self.dim)]

    def contains(self, v: Matrix) -> bool:
        try:
            solve(self.basis, v)
        except Inconsistent:
            return False
        return True

    def coordinates(self, v: Matrix) -> Matrix:
        """Coordinates of the columns of ``v`` in this basis."""
        return solve(self.basis, v)


def kernel_basis(A: Matrix) -> Subspace:
    return Subspace.span(A.field, A.cols, _kernel_columns(A))


def range_basis(A: Matrix) -> Subspace:
    return Subspace.of_columns(A)


def solve(A: Matrix, b: Matrix) -> Matrix:
    """One exact solution ``x`` of ``A @ x == b`` (free variables set to zero)."""
    A._check(b)
    if b.rows != A.rows:
        raise ShapeMismatch(f"solve: A is {A.shape}, b is {b.shape}")
    field = A.field
    n, k = A.cols, b.cols
    if A.rows == 0:
        return Matrix.zeros(field, n, k)
    aug = [list(ra) + list(rb) for ra, rb in zip(A.data, b.data)]
    rows, piv = _rref(field, aug, n)
    for i in range(len(piv), len(rows)):
        if any(rows[i][n:]):
            raise Inconsistent("linear system has no solution")
    x = [[field.zero] * k for _ in range(n)]
    for i, pc in enumerate(piv):
        x[pc] = rows[i][n:]
    return Matrix._raw(field, x, k)


def inverse(A: Matrix) -> Matrix:
    if not A.is_square:
        raise NonSquare(f"inverse of a {A.shape} matrix")
    n = A.rows
    field = A.field
    if n == 0:
        return A
    ident = Matrix.identity(field, n)
    aug = [list(ra) + list(ri) for ra, ri in zip(A.data, ident.data)]
    rows, piv = _rref(field, aug, n)
    if len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return Matrix._raw(field, [r[n:] for r in rows], n)


def is_invertible(A: Matrix) -> bool:
    return A.is_square and rank(A) == A.rows


def eval_at_matrix(p: Polynomial, A: Matrix) -> Matrix:
    """``p(A)`` by Horner's rule."""
    if not A.is_square:
        raise NonSquare(f"cannot evaluate a polynomial at a {A.shape} matrix")
    if p.field != A.field:
        raise FieldMismatch(f"{p.field!r} vs {A.field!r}")
    n = A.rows
    field = A.field
    acc = Matrix.zeros(field, n, n)
    for c in reversed(p.coeffs):
        acc = acc @ A
        if c:
            acc = Matrix._raw(
                field,
                [
                    [field.add(x, c) if i == j else x for j, x in enumerate(r)]
                    for i, r in enumerate(acc.data)
                ],
                n,
            )
    return acc


def minimal_polynomial(A: Matrix) -> Polynomial:
    """First linear dependence among ``I, A, A^2, ...`` (as vectors)."""
    if not A.is_square:
        raise NonSquare(f"minimal polynomial of a {A.shape} matrix")
    field = A.field
    n = A.rows
    # Incremental elimination: each stored row is a reduced power vector
    # paired with the combination of powers that produced it.
    basis: list[tuple[int, list, list]] = []  # (pivot, vector, combo)
    power = Matrix.identity(field, n)
    k = 0
    while True:
        vec = [x for r in power.data for x in r]
        combo = [field.zero] * (k + 1)
        combo[k] = field.one
        for pc, bv, bc in basis:
            f = vec[pc]
            if f:
                vec = [field.sub(a, field.mul(f, b)) for a, b in zip(vec, bv)]
                combo = [field.sub(a, field.mul(f, b)) for a, b in zip(combo, bc + [field.zero] * (len(combo) - len(bc)))]
        pc = next((i for i, x in enumerate(vec) if x), None)
        if pc is None:
            # combo annihilates A, with leading coefficient 1 at x^k
            return Polynomial(field, combo)
        ic = field.inv(vec[pc])
        basis.append((pc, [field.mul(x, ic) for x in vec], [field.mul(x, ic) for x in combo]))
        power = power @ A
        k += 1


def restrict(A: Matrix, S: Subspace) -> Matrix:
    """Matrix of ``A`` on the invariant subspace ``S`` in ``S``'s basis."""
    if not A.is_square:
        raise NonSquare(f"restrict of a {A.shape} matrix")
    if A.rows != S.ambient_dim:
        raise ShapeMismatch("subspace lives in a different ambient space")
    try:
        return solve(S.basis, A @ S.basis)
    except Inconsistent:
        raise NotInvariant("subspace is not invariant") from None


def map_between(A: Matrix, S: Subspace, T: Subspace) -> Matrix:
    """Matrix of ``A`` restricted to ``S`` with image expressed in ``T``'s basis."""
    try:
        return solve(T.basis, A @ S.basis)
    except Inconsistent:
        raise NotInvariant("image is not contained in the target subspace") from None


def annihilator(T: Sequence[DualVector], ambient_dim: int, field: FieldSpec | None = None) -> Subspace:
    """``{v : <v, t> = 0 for all t in T}``."""
    if not T:
        if field is None:
            raise ValueError("field is required when T is empty")
        return Subspace.full(field, ambient_dim)
    stacked = T[0].row.vstack(*(t.row for t in T[1:]))
    if stacked.cols != ambient_dim:
        raise ShapeMismatch("functional dimension differs from ambient dimension")
    return kernel_basis(stacked)


def stack_columns(field: FieldSpec, n: int, vectors: Sequence[Matrix]) -> Matrix:
    if not vectors:
        return Matrix.zeros(field, n, 0)
    return vectors[0].hstack(*vectors[1:])

"""Generalized Jordan normal form over an arbitrary supported field.

Each block is attached to a monic prime ``f`` of degree ``d`` and a power
``k``; it is ``k x k`` in ``d x d`` cells, with the companion matrix of
``f`` on the diagonal cells and a single 1 in the top-right corner of each
subdiagonal cell.  The companion matrix has ones on its first subdiagonal
and last column ``(a_d, ..., a_1)`` where ``f = x^d - a_1 x^(d-1) - ... - a_d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import factor as _factor
from .duality import split_by_duality
from .errors import (
    FieldMismatch,
    InternalInvariantViolated,
    NonSquare,
    NotAFactor,
)
from .field import FieldSpec
from .linalg import (
    DualVector,
    Matrix,
    Subspace,
    eval_at_matrix,
    inverse,
    kernel_basis,
    minimal_polynomial,
    range_basis,
    rank,
    restrict,
    solve,
    stack_columns,
)
from .poly import Polynomial, bezout_multi

DEFAULT_MAX_DEGREE = _factor.DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class GeneralizedJordanBlock:
    prime: Polynomial
    power: int

    @property
    def degree(self) -> int:
        return self.prime.degree

    @property
    def size(self) -> int:
        return self.power * self.prime.degree

    def companion_coefficients(self) -> tuple:
        """``(a_1, ..., a_d)`` with ``prime = x^d - a_1 x^(d-1) - ... - a_d``."""
        f = self.prime.field
        c = self.prime.coeffs
        d = self.degree
        return tuple(f.neg(c[d - j]) for j in range(1, d + 1))

    def sort_key(self) -> tuple:
        return (*self.prime.sort_key(), -self.power)

    def __str__(self) -> str:
        return f"({self.prime})^{self.power}"


@dataclass(frozen=True)
class JordanForm:
    blocks: tuple[GeneralizedJordanBlock, ...]
    total_dim: int

    @classmethod
    def from_blocks(cls, blocks: Sequence[GeneralizedJordanBlock]) -> JordanForm:
        ordered = tuple(sorted(blocks, key=GeneralizedJordanBlock.sort_key))
        return cls(ordered, sum(b.size for b in ordered))

    def multiset(self) -> dict[tuple[Polynomial, int], int]:
        out: dict[tuple[Polynomial, int], int] = {}
        for b in self.blocks:
            out[(b.prime, b.power)] = out.get((b.prime, b.power), 0) + 1
        return out

    def __str__(self) -> str:
        return " + ".join(str(b) for b in self.blocks) if self.blocks else "(empty)"


@dataclass(frozen=True)
class JordanReport:
    field: FieldSpec
    form: JordanForm
    form_matrix: Matrix
    transform: Matrix


@dataclass(frozen=True)
class PrimaryComponent:
    prime: Polynomial
    power: int
    subspace: Subspace


def companion(prime: Polynomial) -> Matrix:
    field = prime.field
    d = prime.degree
    a = GeneralizedJordanBlock(prime, 1).companion_coefficients()
    rows = [[field.zero] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = field.one
    for i in range(d):
        rows[i][d - 1] = field.add(rows[i][d - 1], a[d - 1 - i])
    return Matrix._raw(field, rows, d)


def block_matrix(block: GeneralizedJordanBlock) -> Matrix:
    field = block.prime.field
    d, k = block.degree, block.power
    C = companion(block.prime)
    n = d * k
    rows = [[field.zero] * n for _ in range(n)]
    for b in range(k):
        for i in range(d):
            rows[b * d + i][b * d : (b + 1) * d] = C.data[i]
        if b + 1 < k:
            rows[(b + 1) * d][b * d + d - 1] = field.one
    return Matrix._raw(field, rows, n)


def assemble_form(blocks: Sequence[GeneralizedJordanBlock], field: FieldSpec) -> Matrix:
    return Matrix.block_diag(field, [block_matrix(b) for b in blocks])


# -- primary decomposition ---------------------------------------------------


def primary_decomposition(
    A: Matrix, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> list[PrimaryComponent]:
    if not A.is_square:
        raise NonSquare(f"primary decomposition of a {A.shape} matrix")
    field = A.field
    n = A.rows
    f = minimal_polynomial(A)
    if f.degree < 1:
        return []
    fac = _factor.factor(f, seed=seed, max_degree=max_degree)
    powers = [p**k for p, k in fac.factors]
    g = [f.exact_div(q) for q in powers]
    cert = bezout_multi(g)
    out = []
    total = 0
    for (prime, k), qk, gi, hi in zip(fac.factors, powers, g, cert.cofactors):
        projector = eval_at_matrix(hi * gi, A)
        comp = range_basis(projector)
        if comp != kernel_basis(eval_at_matrix(qk, A)):
            raise InternalInvariantViolated(f"projector image differs from ker ({prime})^{k}")
        total += comp.dim
        out.append(PrimaryComponent(prime, k, comp))
    if total != n:
        raise InternalInvariantViolated("primary components do not fill the space")
    return out


# -- splitting one primary component -----------------------------------------


def _pow_apply(M: Matrix, v: Matrix, times: int) -> Matrix:
    for _ in range(times):
        v = M @ v
    return v


def cyclic_vector(A: Matrix, prime: Polynomial, k: int) -> Matrix:
    """First standard basis vector ``v`` with ``prime(A)^(k-1) A^(d-1) v != 0``."""
    d = prime.degree
    op = eval_at_matrix(prime, A) ** (k - 1) @ A ** (d - 1)
    for j in range(op.cols):
        if any(op.data[i][j] for i in range(op.rows)):
            return Matrix.unit_vector(A.field, A.rows, j)
    raise InternalInvariantViolated(f"({prime})^{k} is not the minimal polynomial")


def dual_cyclic_vector(A: Matrix, v: Matrix, prime: Polynomial, k: int) -> DualVector:
    """Functional vanishing on ``f(A)^(k-1) A^j v`` for ``j < d-1`` and 1 at ``j = d-1``."""
    field = A.field
    d = prime.degree
    w = _pow_apply(eval_at_matrix(prime, A), v, k - 1)
    cols = []
    for _ in range(d):
        cols.append(w)
        w = A @ w
    system = stack_columns(field, A.rows, cols).transpose()
    rhs = Matrix.unit_vector(field, d, d - 1)
    return DualVector(solve(system, rhs).transpose())


def _chain_vectors(A: Matrix, v: Matrix, prime: Polynomial, k: int) -> list[Matrix]:
    fA = eval_at_matrix(prime, A)
    out = []
    head = v
    for _ in range(k):
        u = head
        for _ in range(prime.degree):
            out.append(u)
            u = A @ u
        head = fA @ head
    return out


def chain_basis(A: Matrix, v: Matrix, prime: Polynomial, k: int) -> Subspace:
    """Basis ``f(A)^(i1-1) A^(i2-1) v`` ordered lexicographically in ``(i1, i2)``."""
    vecs = _chain_vectors(A, v, prime, k)
    M = stack_columns(A.field, A.rows, vecs)
    if rank(M) != len(vecs):
        raise InternalInvariantViolated("chain vectors are dependent")
    return Subspace(M, check=False)


def dual_chain(A: Matrix, vdual: DualVector, prime: Polynomial, k: int) -> list[DualVector]:
    """Rows ``v' f(A)^(i1-1) A^(i2-1)``, same lexicographic order as :func:`chain_basis`."""
    fA = eval_at_matrix(prime, A)
    out = []
    head = vdual.row
    for _ in range(k):
        u = head
        for _ in range(prime.degree):
            out.append(DualVector(u))
            u = u @ A
        head = head @ fA
    stacked = stack_columns(A.field, A.rows, [t.row.transpose() for t in out])
    if rank(stacked) != len(out):
        raise InternalInvariantViolated("dual chain is dependent")
    return out


def split_component(A: Matrix, prime: Polynomial, k: int) -> tuple[Subspace, Subspace]:
    """Split off one indecomposable block of size ``k*deg(prime)``.

    Returns the chain subspace (ordered basis realizing the block) and an
    ``A``-invariant complement.
    """
    d = prime.degree
    v = cyclic_vector(A, prime, k)
    vdual = dual_cyclic_vector(A, v, prime, k)
    chain = chain_basis(A, v, prime, k)
    duals = dual_chain(A, vdual, prime, k)
    # pair f^(i1-1) A^(d-i2) v with v' f^(k-j1) A^(j2-1): triangular, unit diagonal
    s_order = [(i1 - 1) * d + (d - i2) for i1 in range(1, k + 1) for i2 in range(1, d + 1)]
    t_order = [(k - j1) * d + (j2 - 1) for j1 in range(1, k + 1) for j2 in range(1, d + 1)]
    S = Subspace(chain.basis.submatrix(range(A.rows), s_order), check=False)
    T = [duals[i] for i in t_order]
    split = split_by_duality(A, S, T)
    G = split.gram
    one = A.field.one
    for i in range(G.rows):
        if G[i, i] != one or any(G[i, j] for j in range(i)):
            raise InternalInvariantViolated("pairing matrix is not unit upper triangular")
    return chain, split.complement


def _split_primary(A: Matrix, prime: Polynomial) -> list[tuple[int, Matrix]]:
    """Blocks of a matrix whose minimal polynomial is a power of ``prime``.

    Returns ``(power, columns)`` pairs in the coordinates of ``A``.
    """
    if A.rows == 0:
        return []
    mp = minimal_polynomial(A)
    d = prime.degree
    k = mp.degree // d
    if prime**k != mp:
        raise InternalInvariantViolated(f"minimal polynomial {mp} is not a power of {prime}")
    chain, rest = split_component(A, prime, k)
    out = [(k, chain.basis)]
    if rest.dim:
        sub = _split_primary(restrict(A, rest), prime)
        out.extend((kk, rest.basis @ cols) for kk, cols in sub)
    return out


def jordan_canonical(
    A: Matrix, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> JordanReport:
    """Generalized Jordan form with a transform ``P`` such that ``P^-1 A P`` is the form."""
    if not A.is_square:
        raise NonSquare(f"Jordan form of a {A.shape} matrix")
    field = A.field
    n = A.rows
    pieces: list[tuple[GeneralizedJordanBlock, Matrix]] = []
    for comp in primary_decomposition(A, seed=seed, max_degree=max_degree):
        basis = comp.subspace.basis
        for k, cols in _split_primary(restrict(A, comp.subspace), comp.prime):
            pieces.append((GeneralizedJordanBlock(comp.prime, k), basis @ cols))
    pieces.sort(key=lambda item: item[0].sort_key())
    blocks = [b for b, _ in pieces]
    form = JordanForm(tuple(blocks), sum(b.size for b in blocks))
    form_matrix = assemble_form(blocks, field)
    P = stack_columns(field, n, [cols for _, cols in pieces])
    if P.cols != n or inverse(P) @ A @ P != form_matrix:
        raise InternalInvariantViolated("similarity certificate failed")
    return JordanReport(field, form, form_matrix, P)


def block_multiplicities_by_kernels(A: Matrix, prime: Polynomial) -> dict[int, int]:
    """Block sizes for ``prime`` from kernel dimensions of its powers at ``A``.

    With ``n_j = dim ker prime(A)^j`` the count of blocks of size ``j*d`` is the
    negated second difference of ``n`` at ``j`` divided by ``d``.
    """
    if not A.is_square:
        raise NonSquare(f"kernel counts of a {A.shape} matrix")
    if prime.field != A.field:
        raise FieldMismatch(f"{prime.field!r} vs {A.field!r}")
    if prime.degree < 1 or minimal_polynomial(A) % prime:
        raise NotAFactor(f"{prime} does not divide the minimal polynomial")
    d = prime.degree
    fA = eval_at_matrix(prime, A)
    dims = [0]
    power = Matrix.identity(A.field, A.rows)
    while True:
        power = power @ fA
        dims.append(A.rows - rank(power))
        if dims[-1] == dims[-2]:
            break
    dims.append(dims[-1])
    out = {}
    for j in range(1, len(dims) - 1):
        count, r = divmod((dims[j] - dims[j - 1]) - (dims[j + 1] - dims[j]), d)
        if r:
            raise InternalInvariantViolated("kernel dimensions not divisible by prime degree")
        if count:
            out[j * d] = count
    return out


def is_similar(
    A: Matrix, B: Matrix, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> bool:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field!r} vs {B.field!r}")
    if not A.is_square or not B.is_square:
        raise NonSquare("similarity is defined for square matrices")
    if A.rows != B.rows:
        return False
    if A == B:
        return True
    fa = jordan_canonical(A, seed=seed, max_degree=max_degree).form
    fb = jordan_canonical(B, seed=seed, max_degree=max_degree).form
    return fa == fb

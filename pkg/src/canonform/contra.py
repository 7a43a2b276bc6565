"""Canonical form of a pair ``(A, B)`` under contragredient equivalence.

``A`` is ``m x n`` (a map ``V = F^n -> W = F^m``) and ``B`` is ``n x m``.
Pairs ``(A, B)`` and ``(C, D)`` are equivalent when ``A = S C T^-1`` and
``B = T D S^-1`` for invertible ``S`` (on ``W``) and ``T`` (on ``V``).

The space splits into the part where ``BA`` / ``AB`` are invertible, which
carries the nonsingular Jordan part, and a nilpotent part that is peeled
into alternating chains ``x, Ax, BAx, ...`` one at a time.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .duality import split_by_duality
from .errors import FieldMismatch, InternalInvariantViolated, NotInvariant, ShapeMismatch
from .field import FieldSpec
from .jordan import DEFAULT_MAX_DEGREE, JordanForm, assemble_form, jordan_canonical
from .linalg import (
    DualVector,
    Matrix,
    Subspace,
    inverse,
    kernel_basis,
    map_between,
    range_basis,
    rank,
    restrict,
    stack_columns,
)
from .poly import Polynomial


class ContraKind(enum.Enum):
    WIDE_SHIFT = "WideShift"
    TALL_SHIFT = "TallShift"
    IDENTITY_NILPOTENT = "IdentityNilpotent"
    NILPOTENT_IDENTITY = "NilpotentIdentity"
    INVERTIBLE = "Invertible"
    ZERO = "Zero"


_KIND_ORDER = {
    ContraKind.INVERTIBLE: 0,
    ContraKind.WIDE_SHIFT: 1,
    ContraKind.TALL_SHIFT: 2,
    ContraKind.IDENTITY_NILPOTENT: 3,
    ContraKind.NILPOTENT_IDENTITY: 4,
    ContraKind.ZERO: 5,
}


@dataclass(frozen=True)
class ContraPair:
    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.field != self.B.field:
            raise FieldMismatch(f"{self.A.field!r} vs {self.B.field!r}")
        if self.A.cols != self.B.rows or self.A.rows != self.B.cols:
            raise ShapeMismatch(f"A is {self.A.shape}, B is {self.B.shape}")

    @property
    def field(self) -> FieldSpec:
        return self.A.field

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    def transformed(self, S: Matrix, T: Matrix) -> ContraPair:
        """``(S A T^-1, T B S^-1)``."""
        return ContraPair(S @ self.A @ inverse(T), T @ self.B @ inverse(S))


@dataclass(frozen=True)
class ContraBlock:
    """One diagonal block pair ``(A_i, B_i)``.

    ``rows`` x ``cols`` is the shape of ``A_i`` (``B_i`` is the transpose
    shape).  ``size`` is the kind's size parameter: ``A_i`` is
    ``(size-1) x size`` for WideShift, ``size x (size-1)`` for TallShift and
    ``size x size`` otherwise.  Zero blocks are a single rectangular pad.
    """

    kind: ContraKind
    rows: int
    cols: int
    jordan: JordanForm | None = dc_field(default=None, compare=True)

    @property
    def size(self) -> int:
        return max(self.rows, self.cols)

    def sort_key(self) -> tuple:
        return (_KIND_ORDER[self.kind], -self.size)

    def matrices(self, field: FieldSpec) -> tuple[Matrix, Matrix]:
        r, c = self.rows, self.cols
        z, o = field.zero, field.one
        kind = self.kind
        if kind is ContraKind.ZERO:
            return Matrix.zeros(field, r, c), Matrix.zeros(field, c, r)
        if kind is ContraKind.INVERTIBLE:
            return Matrix.identity(field, r), assemble_form(self.jordan.blocks, field)
        if kind in (ContraKind.WIDE_SHIFT, ContraKind.TALL_SHIFT):
            k = min(r, c)
            left = Matrix._raw(field, [[o if i == j else z for j in range(k + 1)] for i in range(k)], k + 1)
            down = Matrix._raw(field, [[o if i == j + 1 else z for j in range(k)] for i in range(k + 1)], k)
            return (left, down) if kind is ContraKind.WIDE_SHIFT else (down, left)
        ident = Matrix.identity(field, r)
        shift = Matrix._raw(field, [[o if i == j + 1 else z for j in range(r)] for i in range(r)], r)
        if kind is ContraKind.IDENTITY_NILPOTENT:
            return ident, shift
        return shift, ident

    def __str__(self) -> str:
        if self.kind is ContraKind.INVERTIBLE:
            return f"Invertible[{self.rows}] J = {self.jordan}"
        return f"{self.kind.value}[{self.rows}x{self.cols}]"


@dataclass(frozen=True)
class RankProfile:
    """Ranks of the alternating products up to length ``2t``, ``t = min(m, n)``.

    ``a_chain`` lists ``A, BA, ABA, ...`` (rightmost factor ``A``) and
    ``b_chain`` lists ``B, AB, BAB, ...``.
    """

    t: int
    a_chain: tuple[int, ...]
    b_chain: tuple[int, ...]


@dataclass(frozen=True)
class ContraReport:
    pair: ContraPair
    blocks: tuple[ContraBlock, ...]
    canonical_A: Matrix
    canonical_B: Matrix
    S: Matrix
    T: Matrix

    @property
    def canonical_pair(self) -> ContraPair:
        return ContraPair(self.canonical_A, self.canonical_B)


@dataclass(frozen=True)
class FittingDecomposition:
    V1: Subspace
    V2: Subspace
    W1: Subspace
    W2: Subspace
    r: int


# -- step 1 --------------------------------------------------------------------


def _stable_exponent(M: Matrix) -> int:
    r = 0
    power = Matrix.identity(M.field, M.rows)
    prev = rank(power)
    while True:
        power = power @ M
        cur = rank(power)
        if cur == prev:
            return r
        prev = cur
        r += 1


def fitting_decomposition(p: ContraPair) -> FittingDecomposition:
    """Invertible / nilpotent splitting of ``V`` under ``BA`` and ``W`` under ``AB``."""
    A, B = p.A, p.B
    BA, AB = B @ A, A @ B
    r = max(_stable_exponent(BA), _stable_exponent(AB))
    BAr, ABr = BA**r, AB**r
    V1, V2 = range_basis(BAr), kernel_basis(BAr)
    W1, W2 = range_basis(ABr), kernel_basis(ABr)
    if V1.dim != W1.dim or V1.dim + V2.dim != p.n or W1.dim + W2.dim != p.m:
        raise InternalInvariantViolated("Fitting subspaces have inconsistent dimensions")
    for src, dst, M in ((V1, W1, A), (V2, W2, A), (W1, V1, B), (W2, V2, B)):
        map_between(M, src, dst)
    if rank(A @ V1.basis) != V1.dim:
        raise InternalInvariantViolated("A is not one-one on the invertible part")
    return FittingDecomposition(V1, V2, W1, W2, r)


def invertible_part(
    p: ContraPair,
    V1: Subspace,
    W1: Subspace,
    *,
    seed: int = 0,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> tuple[ContraBlock | None, Matrix, Matrix]:
    """Bases of ``V1`` (Jordan basis of ``BA``) and ``W1`` (their images under ``A``).

    In these bases ``A`` is the identity and ``B`` is the Jordan form of ``BA``.
    """
    field = p.field
    if V1.dim == 0:
        return None, Matrix.zeros(field, p.n, 0), Matrix.zeros(field, p.m, 0)
    report = jordan_canonical(restrict(p.B @ p.A, V1), seed=seed, max_degree=max_degree)
    x = Polynomial.x(field)
    if any(b.prime == x for b in report.form.blocks):
        raise InternalInvariantViolated("invertible part has eigenvalue zero")
    v_basis = V1.basis @ report.transform
    w_basis = p.A @ v_basis
    if Subspace.of_columns(w_basis) != W1:
        raise InternalInvariantViolated("A does not map V1 onto W1")
    k = V1.dim
    return ContraBlock(ContraKind.INVERTIBLE, k, k, report.form), v_basis, w_basis


# -- step 2 --------------------------------------------------------------------


def _alternating_lengths(p: ContraPair) -> tuple[int, int]:
    """Longest nonzero products with rightmost factor ``A`` and ``B``."""
    out = []
    for first, second in ((p.A, p.B), (p.B, p.A)):
        length = 0
        M = first
        letters = (second, first)
        while not M.is_zero():
            length += 1
            M = letters[(length - 1) % 2] @ M
            if length > 2 * (p.m + p.n) + 2:
                raise InternalInvariantViolated("alternating products are not nilpotent")
        out.append(length)
    return out[0], out[1]


def longest_chain(p: ContraPair) -> tuple[int, str, Matrix | None]:
    """``(l, ends_in, x)`` for the longest nonzero alternating product ``C``.

    ``ends_in`` names the rightmost factor (applied first); ``x`` is the
    first standard basis vector of ``C``'s domain with ``C x != 0``.  Ties
    prefer ``"A"``; ``l = 0`` means both maps vanish.
    """
    la, lb = _alternating_lengths(p)
    if la == 0 and lb == 0:
        return 0, "A", None
    ends_in = "A" if la >= lb else "B"
    length = max(la, lb)
    C = _product(p, length, ends_in)
    for j in range(C.cols):
        if any(C.data[i][j] for i in range(C.rows)):
            return length, ends_in, Matrix.unit_vector(p.field, C.cols, j)
    raise InternalInvariantViolated("longest product vanishes")


def _letters(p: ContraPair, length: int, ends_in: str) -> list[Matrix]:
    """Factors in application order: ``L_1`` is applied first."""
    pair = (p.A, p.B) if ends_in == "A" else (p.B, p.A)
    return [pair[i % 2] for i in range(length)]


def _product(p: ContraPair, length: int, ends_in: str) -> Matrix:
    letters = _letters(p, length, ends_in)
    M = letters[0]
    for L in letters[1:]:
        M = L @ M
    return M


@dataclass(frozen=True)
class NilpotentSplit:
    block: ContraBlock
    V3: Subspace
    V4: Subspace
    W3: Subspace
    W4: Subspace


def split_nilpotent(p: ContraPair, l: int, ends_in: str, x: Matrix) -> NilpotentSplit:
    """Split off the chain through ``x`` and its dual complement."""
    if l < 1:
        raise ValueError("chain length must be positive")
    field = p.field
    letters = _letters(p, l, ends_in)
    chain = [x]
    for L in letters:
        chain.append(L @ chain[-1])
    top = chain[-1]
    i0 = next((i for i in range(top.rows) if top.data[i][0]), None)
    if i0 is None:
        raise InternalInvariantViolated("chain top vanishes")
    # dual chain y_0 = e_i0*, y_{j+1} = y_j L_{l-j}; y_{l-i} pairs with chain[i]
    y = [DualVector.coordinate(field, top.rows, i0)]
    for L in reversed(letters):
        y.append(y[-1].adjoint_apply(L))
    x_in_v = ends_in == "A"
    # chain[i] lies in V exactly when i has the parity of the start space
    v_idx = [i for i in range(l + 1) if (i % 2 == 0) == x_in_v]
    w_idx = [i for i in range(l + 1) if (i % 2 == 0) != x_in_v]

    BA, AB = p.B @ p.A, p.A @ p.B
    V3 = Subspace(stack_columns(field, p.n, [chain[i] for i in v_idx]), check=False)
    W3 = Subspace(stack_columns(field, p.m, [chain[i] for i in w_idx]), check=False)
    splits = []
    for op, sub, idx in ((BA, V3, v_idx), (AB, W3, w_idx)):
        if sub.dim == 0:
            splits.append(Subspace.full(field, op.rows))
            continue
        split = split_by_duality(op, sub, [y[l - i] for i in idx])
        splits.append(split.complement)
    V4, W4 = splits
    for src, dst, M in ((V3, W3, p.A), (V4, W4, p.A), (W3, V3, p.B), (W4, V4, p.B)):
        try:
            map_between(M, src, dst)
        except NotInvariant:
            raise InternalInvariantViolated("chain split is not compatible with A, B") from None
    if V3.dim + V4.dim != p.n or W3.dim + W4.dim != p.m:
        raise InternalInvariantViolated("chain split does not fill the spaces")

    half = l // 2
    if l % 2 == 0:
        kind = ContraKind.WIDE_SHIFT if ends_in == "A" else ContraKind.TALL_SHIFT
        shape = (half, half + 1) if ends_in == "A" else (half + 1, half)
    else:
        kind = ContraKind.IDENTITY_NILPOTENT if ends_in == "A" else ContraKind.NILPOTENT_IDENTITY
        shape = (half + 1, half + 1)
    block = ContraBlock(kind, *shape)
    return NilpotentSplit(block, V3, V4, W3, W4)


# -- assembly ------------------------------------------------------------------


def assemble_pair(blocks: Sequence[ContraBlock], field: FieldSpec) -> tuple[Matrix, Matrix]:
    mats = [b.matrices(field) for b in blocks]
    return (
        Matrix.block_diag(field, [a for a, _ in mats]),
        Matrix.block_diag(field, [b for _, b in mats]),
    )


def contragredient_canonical(
    p: ContraPair, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> ContraReport:
    field = p.field
    fit = fitting_decomposition(p)
    inv_block, v_basis, w_basis = invertible_part(
        p, fit.V1, fit.W1, seed=seed, max_degree=max_degree
    )

    pieces: list[tuple[ContraBlock, Matrix, Matrix]] = []
    Vc, Wc = fit.V2, fit.W2
    while True:
        sub = ContraPair(map_between(p.A, Vc, Wc), map_between(p.B, Wc, Vc))
        l, ends_in, x = longest_chain(sub)
        if l == 0:
            break
        split = split_nilpotent(sub, l, ends_in, x)
        pieces.append((split.block, Vc.basis @ split.V3.basis, Wc.basis @ split.W3.basis))
        Vc = Subspace(Vc.basis @ split.V4.basis, check=False)
        Wc = Subspace(Wc.basis @ split.W4.basis, check=False)
    pieces.sort(key=lambda item: item[0].sort_key())

    blocks: list[ContraBlock] = []
    v_cols, w_cols = [v_basis], [w_basis]
    if inv_block is not None:
        blocks.append(inv_block)
    for block, vb, wb in pieces:
        blocks.append(block)
        v_cols.append(vb)
        w_cols.append(wb)
    if Vc.dim or Wc.dim:
        blocks.append(ContraBlock(ContraKind.ZERO, Wc.dim, Vc.dim))
        v_cols.append(Vc.basis)
        w_cols.append(Wc.basis)

    T = stack_columns(field, p.n, v_cols)
    S = stack_columns(field, p.m, w_cols)
    can_A, can_B = assemble_pair(blocks, field)
    if S.cols != p.m or T.cols != p.n:
        raise InternalInvariantViolated("bases do not cover the spaces")
    if inverse(S) @ p.A @ T != can_A or inverse(T) @ p.B @ S != can_B:
        raise InternalInvariantViolated("contragredient certificate failed")
    return ContraReport(p, tuple(blocks), can_A, can_B, S, T)


# -- invariants and decision -----------------------------------------------------


def alternating_product_ranks(p: ContraPair, length: int) -> tuple[list[int], list[int]]:
    """Ranks of the alternating products of lengths ``1..length``, both parities."""
    chains = []
    for ends_in in ("A", "B"):
        ranks = []
        letters = _letters(p, length, ends_in)
        M = None
        for L in letters:
            M = L if M is None else L @ M
            ranks.append(rank(M))
        chains.append(ranks)
    return chains[0], chains[1]


def rank_profile(p: ContraPair) -> RankProfile:
    t = min(p.m, p.n)
    a_chain, b_chain = alternating_product_ranks(p, 2 * t)
    return RankProfile(t, tuple(a_chain), tuple(b_chain))


def is_contra_equivalent(
    p: ContraPair, q: ContraPair, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> bool:
    """Equivalence via similarity of ``AB`` and equal alternating rank profiles."""
    if p.field != q.field:
        raise FieldMismatch(f"{p.field!r} vs {q.field!r}")
    return contra_invariants(p, seed=seed, max_degree=max_degree) == contra_invariants(
        q, seed=seed, max_degree=max_degree
    )


def contra_invariants(
    p: ContraPair, *, seed: int = 0, max_degree: int = DEFAULT_MAX_DEGREE
) -> tuple:
    """Complete invariant: shape, Jordan form of ``AB`` and the rank profile."""
    AB = p.A @ p.B
    form = jordan_canonical(AB, seed=seed, max_degree=max_degree).form
    return (p.m, p.n, form, rank_profile(p))

"""Invariant complements from dual invariant subspaces.

Given an ``A``-invariant subspace ``S`` and a family ``T`` of functionals
whose span is invariant under the adjoint (``t @ A`` stays in the span),
a nonsingular pairing matrix between ``S`` and ``T`` makes ``ann(T)`` an
``A``-invariant complement of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegeneratePairing, Inconsistent, NotInvariant, ShapeMismatch
from .linalg import DualVector, Matrix, Subspace, annihilator, rank, restrict, solve


@dataclass(frozen=True)
class DualitySplit:
    summand: Subspace
    complement: Subspace
    gram: Matrix

    def certificate(self) -> Matrix:
        """Summand basis followed by complement basis; invertible by construction."""
        return self.summand.basis.hstack(self.complement.basis)


def gram_matrix(S: Subspace, T: Sequence[DualVector]) -> Matrix:
    """``G[i][j] = <s_i, t_j>``."""
    field = S.field
    if not T:
        return Matrix.zeros(field, S.dim, 0)
    stacked = T[0].row.vstack(*(t.row for t in T[1:]))
    return (stacked @ S.basis).transpose()


def _check_dual_invariant(A: Matrix, T: Sequence[DualVector]) -> None:
    if not T:
        return
    stacked = T[0].row.vstack(*(t.row for t in T[1:]))
    try:
        # rows of stacked @ A must be combinations of rows of stacked
        solve(stacked.transpose(), (stacked @ A).transpose())
    except Inconsistent:
        raise NotInvariant("span of the functionals is not adjoint-invariant") from None


def split_by_duality(A: Matrix, S: Subspace, T: Sequence[DualVector]) -> DualitySplit:
    if S.ambient_dim != A.rows or any(t.dim != A.cols for t in T):
        raise ShapeMismatch("operator, subspace and functionals disagree on dimension")
    if len(T) != S.dim:
        raise DegeneratePairing(f"{len(T)} functionals against a {S.dim}-dimensional subspace")
    restrict(A, S)
    _check_dual_invariant(A, T)
    gram = gram_matrix(S, T)
    if rank(gram) != S.dim:
        raise DegeneratePairing("pairing between subspace and functionals is degenerate")
    complement = annihilator(list(T), A.rows, A.field)
    restrict(A, complement)
    if complement.dim + S.dim != A.rows:
        raise DegeneratePairing("complement has the wrong dimension")
    return DualitySplit(S, complement, gram)

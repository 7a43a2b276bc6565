import pytest

from canonform.contra import ContraPair
from canonform.field import GF, QQ
from canonform.linalg import Matrix, inverse, is_invertible
from canonform.poly import parse_poly

from oracle import (
    BudgetExceeded,
    EnumerationBudget,
    InfiniteField,
    all_matrices,
    contra_equiv_by_search,
    general_linear_group,
    irreducible_by_trial,
    random_instances,
    similar_by_search,
)

F2 = GF(2)


def M(rows, field=F2):
    return Matrix(field, rows)


def test_group_orders():
    assert len(general_linear_group(F2, 2)) == 6
    assert len(general_linear_group(F2, 3)) == 168
    assert len(general_linear_group(GF(3), 2)) == 48
    assert len(all_matrices(F2, 2, 2)) == 16


def test_similar_by_search():
    assert similar_by_search(M([[0, 1], [1, 0]]), M([[1, 1], [0, 1]]))
    assert not similar_by_search(M([[0, 0], [0, 0]]), M([[0, 0], [1, 0]]))
    A = M([[1, 1, 0], [0, 1, 1], [1, 0, 0]])
    assert similar_by_search(A, A)


def test_contra_search():
    assert not contra_equiv_by_search(ContraPair(M([[1]]), M([[0]])), ContraPair(M([[0]]), M([[1]])))
    p = ContraPair(M([[1, 0]]), M([[0], [1]]))
    assert contra_equiv_by_search(p, p)
    assert contra_equiv_by_search(p, ContraPair(M([[0, 1]]), M([[1], [0]])))


def test_budget():
    with pytest.raises(BudgetExceeded):
        similar_by_search(Matrix.identity(F2, 4), Matrix.identity(F2, 4))
    with pytest.raises(InfiniteField):
        similar_by_search(Matrix.identity(QQ, 2), Matrix.identity(QQ, 2))
    with pytest.raises(BudgetExceeded):
        EnumerationBudget(3, GF(7)).check(3)


def test_irreducible_by_trial():
    assert irreducible_by_trial(parse_poly("x^2 + x + 1", F2))
    assert not irreducible_by_trial(parse_poly("x^2 + 1", F2))
    for p in (2, 3, 7):
        assert irreducible_by_trial(parse_poly("x", GF(p)))
    with pytest.raises(InfiniteField):
        irreducible_by_trial(parse_poly("x", QQ))


def test_instances_reproducible():
    a = random_instances(0, GF(3))
    b = random_instances(0, GF(3))
    assert [a.square() for _ in range(5)] == [b.square() for _ in range(5)]
    for _ in range(20):
        n = a.rng.randint(0, 5)
        Q = a.invertible(n)
        assert is_invertible(Q) and Q @ inverse(Q) == Matrix.identity(GF(3), n)
        p = a.pair()
        assert (p.A.rows, p.A.cols) == (p.B.cols, p.B.rows)

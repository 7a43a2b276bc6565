import random

import pytest

from canonform.errors import ConstantPolynomial, DegreeBoundExceeded
from canonform.factor import distinct_degree, factor, squarefree_gf, squarefree_q
from canonform.field import GF, QQ
from canonform.poly import Polynomial, parse_poly

from oracle import irreducible_by_trial


def P(text, field=QQ):
    return parse_poly(text, field)


def test_examples():
    assert factor(P("x^2 - 1")).factors == ((P("x - 1"), 1), (P("x + 1"), 1))
    F = GF(2)
    assert factor(P("x^2 + 1", F)).factors == ((P("x + 1", F), 2),)
    assert factor(P("x^2 + 1")).factors == ((P("x^2 + 1"), 1),)


def test_unit_and_rational_coefficients():
    f = P("3x^3 - 3/4x")
    fac = factor(f)
    assert fac.unit == 3
    assert fac.expand() == f
    assert [q for q, _ in fac.factors] == [P("x - 1/2"), P("x"), P("x + 1/2")]


def test_constant_rejected():
    with pytest.raises(ConstantPolynomial):
        factor(P("7"))


def test_degree_cap():
    f = P("x^13 + x + 1")
    with pytest.raises(DegreeBoundExceeded):
        factor(f)
    assert factor(f, max_degree=13).expand() == f
    # the cap applies to squarefree parts, not to repeated factors
    assert factor(P("x - 2") ** 20).factors == ((P("x - 2"), 20),)


def test_swinnerton_dyer_like_recombination():
    # irreducible over Q but splits into quadratics modulo every prime
    f = P("x^4 - 10x^2 + 1")
    assert factor(f).factors == ((f, 1),)
    g = P("x^4 + 1") * P("x^2 - 2") * P("x - 3") ** 2
    fac = factor(g)
    assert fac.expand() == g
    assert sorted(str(q) for q, _ in fac.factors) == sorted(["x^4 + 1", "x^2 - 2", "x - 3"])


def test_inseparable_gf():
    F = GF(3)
    f = P("x^3 + 2", F) * P("x^2 + 1", F) ** 3  # (x + 2)^3 (x^2 + 1)^3
    fac = factor(f)
    assert fac.factors == ((P("x + 2", F), 3), (P("x^2 + 1", F), 3))
    assert squarefree_gf(P("x^4 + x^2 + 1", GF(2)))  == [(P("x^2 + x + 1", GF(2)), 2)]


def test_squarefree_q():
    f = P("x - 1") * P("x + 2") ** 2 * P("x^2 + 1") ** 3
    assert squarefree_q(f) == [(P("x - 1"), 1), (P("x + 2"), 2), (P("x^2 + 1"), 3)]


def test_distinct_degree_gf2():
    F = GF(2)
    f = P("x^8 + x", F)  # product of all monic primes of degree 1 and 3
    parts = distinct_degree(f)
    assert [(d, g.degree) for g, d in parts] == [(1, 2), (3, 6)]


def test_seed_does_not_change_result():
    F = GF(7)
    f = P("x^6 - 1", F) * P("x^4 + 1", F)
    assert len({factor(f, seed=s) for s in range(5)}) == 1


def _random_monic(rng, F, deg):
    if F.is_finite:
        tail = [rng.randrange(F.modulus) for _ in range(deg)]
    else:
        tail = [rng.randint(-6, 6) for _ in range(deg)]
    return Polynomial(F, tail + [1])


@pytest.mark.parametrize("F,max_deg", [(GF(2), 8), (GF(3), 8), (GF(7), 8), (QQ, 6)], ids=repr)
def test_products_reconstruct_and_primes_irreducible(F, max_deg):
    rng = random.Random(11)
    for _ in range(60):
        f = _random_monic(rng, F, rng.randint(1, max_deg))
        if rng.random() < 0.3:
            f = f * _random_monic(rng, F, rng.randint(1, 2)) ** 2
        fac = factor(f)
        assert fac.expand() == f
        primes = [q for q, _ in fac.factors]
        assert len(set(primes)) == len(primes)
        for q in primes:
            assert q.is_monic()
            if F.is_finite and q.degree <= 4:
                assert irreducible_by_trial(q)


def test_huge_rational_coefficients():
    f = parse_poly("x^2 - " + "1" + "0" * 60, QQ)
    fac = factor(f)
    assert [p.degree for p, _ in fac.factors] == [1, 1]
    assert fac.expand() == f

import itertools
import random

import pytest

from pentagram.dual import evaluate_with_partials
from pentagram.fields import GF, QQ
from pentagram.linalg import Mat3, charpoly3, cross, det3, nullspace, proportional, rank
from pentagram.polys import BivariatePoly, LaurentPoly


def rand_laurent(F, r, lo=-2, hi=2):
    return LaurentPoly({e: F.random_element(r) for e in range(lo, hi + 1)})


def convolve(p, q):
    out = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            out[e1 + e2] = out.get(e1 + e2, c1 * 0) + c1 * c2
    return out


def test_laurent_mul_matches_convolution(rng):
    F = GF(7)
    for _ in range(50):
        p, q = rand_laurent(F, rng), rand_laurent(F, rng, -3, 1)
        assert p * q == LaurentPoly(convolve(p, q))


def test_laurent_div_by_unit_roundtrips(rng):
    F = GF(11)
    for _ in range(30):
        p = rand_laurent(F, rng)
        u = LaurentPoly.monomial(F.random_element(rng) or F.one, rng.randint(-3, 3))
        assert (p * u) / u == p


def leibniz_det(m):
    """Permutation expansion; used as an oracle independent of Mat3.det."""
    total = None
    for perm in itertools.permutations(range(3)):
        sign = 1
        for i in range(3):
            for j in range(i + 1, 3):
                if perm[i] > perm[j]:
                    sign = -sign
        term = m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
        term = term if sign == 1 else -term
        total = term if total is None else total + term
    return total


def charpoly_oracle(m):
    lam = BivariatePoly({(1, 0): 1})
    rows = [[(lam if i == j else BivariatePoly()) - BivariatePoly.from_laurent(m[i, j])
             for j in range(3)] for i in range(3)]
    return leibniz_det(rows)


def test_charpoly_trivial_cases():
    one = QQ.one
    ident = Mat3.identity(LaurentPoly.monomial(one), LaurentPoly())
    lam = BivariatePoly({(1, 0): one})
    assert charpoly3(ident) == (lam - one) ** 3
    z = LaurentPoly.monomial(one, 1)
    scalar = Mat3([[z if i == j else LaurentPoly() for j in range(3)] for i in range(3)])
    assert charpoly3(scalar) == (lam - BivariatePoly({(0, 1): one})) ** 3


def test_charpoly_matches_cofactor_oracle(rng):
    F = GF(7)
    for _ in range(20):
        m = Mat3([[rand_laurent(F, rng) for _ in range(3)] for _ in range(3)])
        cp = charpoly3(m)
        assert cp == charpoly_oracle(m)
        assert cp.coeff(3, 0) == F.one


def test_mat3_adjugate_and_det(rng):
    F = QQ
    for _ in range(20):
        m = Mat3([[F.random_element(rng) for _ in range(3)] for _ in range(3)])
        d = m.det()
        assert d == leibniz_det(m.rows)
        assert m @ m.adjugate() == Mat3.identity(F.one, F.zero) * d


def test_cross_product_is_orthogonal(rng):
    F = GF(13)
    for _ in range(20):
        u, v = [F.random_element(rng) for _ in range(3)], [F.random_element(rng) for _ in range(3)]
        w = cross(u, v)
        assert sum((a * b for a, b in zip(w, u)), F.zero) == F.zero
        assert sum((a * b for a, b in zip(w, v)), F.zero) == F.zero
        assert det3(u, v, w) == sum((c * c for c in w), F.zero)


def test_nullspace_examples():
    one, zero = QQ.one, QQ.zero
    assert nullspace([[one, zero], [zero, one]], 2, 2) == []
    (v,) = nullspace([[one, one]], 1, 2)
    assert proportional(v, [one, -one])


def test_nullspace_random(rng):
    F = GF(11)
    for _ in range(20):
        rows, cols = rng.randint(1, 5), rng.randint(2, 7)
        a = [[F.random_element(rng) for _ in range(cols)] for _ in range(rows)]
        basis = nullspace(a, rows, cols)
        assert len(basis) == cols - rank(a, rows, cols)
        for v in basis:
            assert all(sum((x * y for x, y in zip(r, v)), F.zero) == F.zero for r in a)


def test_proportional_over_laurent():
    F = GF(7)
    p = LaurentPoly({0: F(1), 1: F(2)})
    a = Mat3([[p, p * p, LaurentPoly()], [p, p, p], [LaurentPoly(), p, p]])
    b = a * LaurentPoly.monomial(F(3), -2)
    assert proportional(a, b)
    assert not proportional(a, b + Mat3.identity(LaurentPoly.monomial(F.one), LaurentPoly()))


# ---- dual numbers --------------------------------------------------------

def q(s):
    return QQ.parse(s)


def test_dual_examples():
    assert evaluate_with_partials(lambda x: x * x, [q("3")]) == (q("9"), [q("6")])
    val, grad = evaluate_with_partials(lambda x, y: x / y, [q("1"), q("2")])
    assert val == q("1/2") and grad == [q("1/2"), q("-1/4")]
    val, grad = evaluate_with_partials(lambda x: x + 0 * x, [q("5")])
    assert val == q("5") and grad == [q("1")]


CIRCUITS = [
    # (program, symbolic gradient)
    (lambda x, y: x * y + x, lambda x, y: [y + 1, x]),
    (lambda x, y: (x - y) / (x + y), lambda x, y: [2 * y / (x + y) ** 2, -2 * x / (x + y) ** 2]),
    (lambda x, y: 1 / (x * x * y), lambda x, y: [-2 / (x ** 3 * y), -1 / (x * x * y * y)]),
    (lambda x, y: x ** 3 - y ** 2, lambda x, y: [3 * x * x, -2 * y]),
    (lambda x, y: (1 - x * y) / x, lambda x, y: [-1 / (x * x), -x / x]),
]


@pytest.mark.parametrize("k", range(len(CIRCUITS)))
def test_dual_matches_symbolic(k):
    prog, grad = CIRCUITS[k]
    r = random.Random(k)
    for _ in range(10):
        x, y = (QQ.random_element(r) for _ in range(2))
        if not x or not y or not (x + y):
            continue
        val, g = evaluate_with_partials(prog, [x, y])
        assert val == prog(x, y)
        assert g == grad(x, y)

import itertools

import pytest

from conftest import domain_points
from pentagram.dual import evaluate_with_partials
from pentagram.errors import SingularP, SupportViolation
from pentagram.fields import GF, QQ
from pentagram.lax import (
    _c, invariants_H, jacobian_rank_H, lax_image, lax_L, lax_P, lax_conjugacy_holds,
    monodromy_T, spectral_poly, support_pattern, zero_curvature_holds,
)
from pentagram.linalg import Mat3, proportional
from pentagram.pentagram import OrbitStatus, map_coords, orbit, scaling_act
from pentagram.polygon import CornerCoords, polygon_from_coords, random_coords
from pentagram.polys import BivariatePoly, LaurentPoly


def test_L_entries_and_determinant():
    c = random_coords(5, QQ, 1)
    for i in range(5):
        L = lax_L(i, c)
        x, y = c.x[(i + 2) % 5], c.y[(i + 2) % 5]
        assert L[2, 0] == _c(y) and not L[0, 2]
        # cofactor expansion along the third column: (-1/z) * (-1) * (y / x)
        assert L.det() == LaurentPoly.monomial(y / x, -1)
        assert lax_L(i + 5, c) == L


def test_P_entries_determinant_and_singularity():
    c = random_coords(6, GF(101), 4, in_domain=True)
    x, y = c.x, c.y
    for i in range(6):
        P = lax_P(i, c)
        w = [1 - x[(i + k) % 6] * y[(i + k) % 6] for k in range(4)]
        assert P[2, 1] == LaurentPoly.monomial(y[(i + 2) % 6] * w[3], 1)
        # zeta appears only in entry (3, 2)
        assert all(not e or set(e.terms) == {0} for k, e in enumerate(P.entries()) if k != 7)
        assert P.det() == LaurentPoly.monomial(y[(i + 2) % 6] * w[1] * w[2] ** 2 * w[3], 1)
        assert lax_P(i + 6, c) == P
    xs, ys = list(x), list(y)
    xs[2], ys[2] = GF(101)(5), 1 / GF(101)(5)
    with pytest.raises(SingularP):
        lax_P(1, CornerCoords(xs, ys))


def test_monodromy_valuation():
    c = random_coords(7, QQ, 2)
    T = monodromy_T(c)
    assert min(e.valuation() for e in T.entries() if e) >= -7


@pytest.mark.parametrize("desc", ["Q", "11", "11^2"])
@pytest.mark.parametrize("n", [5, 6, 7])
def test_zero_curvature_and_conjugacy(desc, n):
    from pentagram import parse_field
    for _, c in domain_points(n, parse_field(desc), 6):
        if any(1 - a * b == 0 for a, b in zip(c.x, c.y)):
            continue
        assert zero_curvature_holds(c)
        assert lax_conjugacy_holds(c)


def printed_P(i, c):
    """P_i with the opposite sign in the middle entry (regression for the sign repair)."""
    P = lax_P(i, c)
    rows = [list(r) for r in P.rows]
    rows[1][1] = -rows[1][1]
    return Mat3(rows)


def test_opposite_middle_sign_breaks_zero_curvature():
    for _, c in domain_points(5, QQ, 5):
        image = lax_image(c)
        assert not all(proportional(lax_L(i, image) @ printed_P(i, c),
                                    printed_P(i + 1, c) @ lax_L(i, c)) for i in range(5))


def _conj_invariants(m):
    d = m.det()
    return m.trace() ** 3 / d, m.principal_minor_sum() ** 3 / (d * d)


def test_monodromy_at_one_matches_polygon_monodromy():
    """T(1) is projectively conjugate to M^{-1} of the reconstructed polygon."""
    for F in (QQ, GF(101)):
        for _, c in domain_points(6, F, 5):
            T1 = monodromy_T(c).map(lambda p: p.evaluate(F.one))
            M = polygon_from_coords(c).monodromy
            if not (T1.trace() and M.trace() and T1.principal_minor_sum() and M.principal_minor_sum()):
                continue
            assert _conj_invariants(T1) == _conj_invariants(M.adjugate())


def test_support_n5():
    want = {(3, 5), (2, 3), (2, 4), (2, 5), (1, 2), (1, 1), (1, 0), (0, 0)}
    assert support_pattern(5) == want
    for _, c in domain_points(5, QQ, 10):
        q = spectral_poly(c)
        assert q.support() == want
        assert q.coeff(3, 5) == QQ.one and q.coeff(2, 5) == -QQ.one


def leibniz_charpoly(T):
    lam = BivariatePoly({(1, 0): 1})
    m = [[(lam if i == j else BivariatePoly()) - BivariatePoly.from_laurent(T[i, j])
          for j in range(3)] for i in range(3)]
    total = BivariatePoly()
    for perm in itertools.permutations(range(3)):
        inv = sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3))
        term = m[0][perm[0]] * m[1][perm[1]] * m[2][perm[2]]
        total = total + (term if inv % 2 == 0 else -term)
    return total


def test_spectral_poly_matches_cofactor_oracle():
    F = GF(7)
    done = 0
    for s in range(60):
        c = random_coords(5, F, s)
        try:
            q = spectral_poly(c)
        except Exception:  # noqa: BLE001 - normalisation may vanish over F_7
            continue
        cp = leibniz_charpoly(monodromy_T(c)).shift(0, 5)
        l = -1 / cp.coeff(2, 5)
        rescaled = BivariatePoly({(a, e): v * l ** (3 - a) for (a, e), v in cp.terms.items()})
        assert q == rescaled
        done += 1
    assert done >= 20


def test_support_violation_is_loud(monkeypatch):
    import pentagram.lax as lax
    monkeypatch.setattr(lax, "support_pattern", lambda n: {(3, n)})
    with pytest.raises(SupportViolation):
        lax.spectral_poly(random_coords(5, QQ, 1))


@pytest.mark.parametrize("desc", ["Q", "13", "5^2"])
def test_invariants_conserved(desc):
    from pentagram import parse_field
    F = parse_field(desc)
    for n in (5, 6):
        for _, c in domain_points(n, F, 8):
            h = invariants_H(c)
            assert len(h) == 2 * (n // 2) + 2
            assert invariants_H(map_coords(c)) == h


def test_periodic_orbit_shares_invariants():
    """Alternating coordinates at n = 6 form a genuine 2-cycle over F_11."""
    F = GF(11)
    a, b, u, v = F(3), F(5), F(5), F(7)   # x_i y_i and x_{i+1} y_i all differ from 1
    c = CornerCoords([a, b] * 3, [u, v] * 3)
    rec = orbit(c, 50, keep_points=True)
    assert rec.status is OrbitStatus.PERIODIC and rec.period == 2
    assert all(invariants_H(p) == rec.invariant_vector for p in rec.points)


def test_jacobian_rank():
    for n, want in ((5, 6), (6, 8)):
        c = domain_points(n, QQ, 1, start=3)[0][1]
        assert jacobian_rank_H(c) == want


def test_constant_circuit_has_zero_gradient():
    val, grad = evaluate_with_partials(lambda x, y: QQ(4), [QQ(2), QQ(3)])
    assert val == QQ(4) and not any(grad)


def test_scaling_keeps_support():
    for _, c in domain_points(6, QQ, 5):
        t = QQ.parse("-3/7")
        assert spectral_poly(scaling_act(c, t)).support() <= support_pattern(6)
        assert spectral_poly(scaling_act(c, t)).support() == spectral_poly(c).support()

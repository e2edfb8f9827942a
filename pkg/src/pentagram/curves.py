"""Normal-form spectral curves over finite fields: checks, point counts, genus.

The affine model is

    R(x, y) = x^3 y^n - sum_i J_i x^2 y^(n+i-m) + sum_i I_i x y^(m-i) - 1,

m = floor(n / 2).  Point counts over GF(q^r) use a vectorised engine built
on Zech logarithm tables (numpy) and, for small fields, a brute-force
enumeration that serves as its oracle.
"""

import functools
import json
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import (
    EnumerationTooLarge, ExtensionFieldUnavailable, InconsistentFunctionalEquation,
)
from .fields import GF, GFq, ModP, builtin_modulus, parse_field
from .polys import BivariatePoly
from .projective import _split_top

__all__ = [
    "NormalFormCurve", "build_curve", "lemma_fiber", "good_fiber_check",
    "GoodFiberReport", "count_points", "count_points_bruteforce",
    "infinity_points", "generic_genus", "hasse_weil_ok", "fit_l_polynomial",
    "genus_fit", "genus_report", "GenusReport",
]

DEFAULT_ENUMERATION_BOUND = 10 ** 7


@dataclass(frozen=True)
class NormalFormCurve:
    n: int
    I: tuple
    J: tuple
    field: object

    def __post_init__(self):
        m = self.n // 2
        I = tuple(self.field(v) for v in self.I)
        J = tuple(self.field(v) for v in self.J)
        if len(I) != m + 1 or len(J) != m + 1:
            raise ValueError(f"need m + 1 = {m + 1} values for each of I and J")
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)

    @property
    def m(self):
        return self.n // 2

    def to_text(self):
        return (f"n={self.n}; I=[{','.join(str(v) for v in self.I)}]; "
                f"J=[{','.join(str(v) for v in self.J)}]; field={self.field.describe()}")

    @classmethod
    def from_text(cls, text):
        parts = {}
        for chunk in _split_top(text.strip(), ";"):
            if chunk.strip():
                k, _, v = chunk.partition("=")
                parts[k.strip()] = v.strip()
        try:
            n = int(parts["n"])
            fld = parse_field(parts["field"])
            I = _parse_list(parts["I"], fld)
            J = _parse_list(parts["J"], fld)
        except KeyError as exc:
            raise ValueError(f"curve description is missing {exc}") from None
        return cls(n, I, J, fld)


def _parse_list(text, fld):
    m = re.fullmatch(r"\s*\[(.*)\]\s*", text)
    if not m:
        raise ValueError(f"expected a bracketed list, got {text!r}")
    return [fld.parse(s.strip()) for s in _split_top(m.group(1), ",") if s.strip()]


def lemma_fiber(kind, n, fld):
    """The two explicit good fibers: ``tame`` (I_m=-1, J_m=1) and ``wild``
    (I_m=1, J_{m-1}=-1, J_m=1), all other parameters zero."""
    m = n // 2
    I = [0] * (m + 1)
    J = [0] * (m + 1)
    if kind == "tame":
        I[m], J[m] = -1, 1
    elif kind == "wild":
        I[m], J[m - 1], J[m] = 1, -1, 1
    else:
        raise ValueError(f"unknown fiber kind {kind!r}")
    return NormalFormCurve(n, I, J, fld)


def build_curve(c):
    n, m = c.n, c.m
    one = c.field.one
    terms = {(3, n): one, (0, 0): -one}
    for i in range(m + 1):
        terms[(2, n + i - m)] = terms.get((2, n + i - m), 0 * one) - c.J[i]
        terms[(1, m - i)] = terms.get((1, m - i), 0 * one) + c.I[i]
    return BivariatePoly(terms)


def generic_genus(n):
    return n - 1 if n % 2 else n - 2


# ---------------------------------------------------------------------------
# good fibers

@dataclass
class GoodFiberReport:
    conditions: dict
    singular_points: list
    content_is_unit: bool
    no_vertical_component: bool

    @property
    def good(self):
        return (all(self.conditions.values()) and not self.singular_points
                and self.content_is_unit and self.no_vertical_component)

    def to_dict(self):
        return {"good": self.good, "conditions": self.conditions,
                "affine_singular_points": [[str(a), str(b)] for a, b in self.singular_points],
                "content_is_unit": self.content_is_unit,
                "no_vertical_component": self.no_vertical_component}


def good_fiber_check(c, bound=DEFAULT_ENUMERATION_BOUND):
    """Scalar conditions, exhaustive affine smoothness, integrality checks."""
    fld = c.field
    if not fld.is_finite:
        raise ValueError("good_fiber_check needs a finite field")
    q = fld.order
    if q * q > bound:
        raise EnumerationTooLarge(f"q^2 = {q * q} exceeds the bound {bound}")
    m = c.m
    I, J = c.I, c.J
    conds = {
        "I_m != 0": bool(I[m]),
        "J_m != 0": bool(J[m]),
        "J_0^2 - 4 I_m != 0": bool(J[0] * J[0] - 4 * I[m]),
        "I_0^2 - 4 J_m != 0": bool(I[0] * I[0] - 4 * J[m]),
    }
    r = build_curve(c)
    rx, ry = r.diff(0), r.diff(1)
    elems = fld.elements()
    sing = []
    for x in elems:
        for y in elems:
            if not r.evaluate(x, y) and not rx.evaluate(x, y) and not ry.evaluate(x, y):
                sing.append((x, y))
    # the x^0 coefficient is -1, so the content in x is a unit
    content_unit = bool(r.coefficient_in_first(0).coeff(0, 0))
    # a factor x - c would need R(c, y) == 0; the y^0 part is I_m x - 1
    vertical = False
    if I[m]:
        cx = 1 / I[m]
        restricted = sum((r.coefficient_in_first(a) * cx ** a for a in range(4)), 0 * fld.one)
        vertical = not restricted
    return GoodFiberReport(conds, sing, content_unit, not vertical)


# ---------------------------------------------------------------------------
# point counting

def _prime_coeffs(c):
    """Curve parameters as ints mod p (they must lie in the prime field)."""
    p = c.field.characteristic
    out = []
    for v in c.I + c.J:
        if isinstance(v, ModP):
            out.append(int(v.value))
        elif isinstance(v, GFq) and v.value < p:
            out.append(int(v.value))
        else:
            raise ExtensionFieldUnavailable("counting needs coefficients in the prime field")
    m = c.m
    return out[:m + 1], out[m + 1:]


def _base_degree(fld):
    return getattr(fld, "degree", 1)


def infinity_points(c, r):
    """Points of the smooth model over the line at infinity, over GF(q^r).

    Odd n: three rational points.  Even n: the roots of the two quadratics
    I_m z^2 - J_0 z + 1 and J_m x^2 - I_0 x + 1, plus one more point.
    """
    if c.n % 2:
        return 3
    p = c.field.characteristic
    ext = GF(p, _base_degree(c.field) * r)
    I, J = _prime_coeffs(c)
    m = c.m

    return _quadratic_roots(ext, I[m], -J[0], 1) + 1 + _quadratic_roots(ext, J[m], -I[0], 1)


def _quadratic_roots(ext, a, b, k):
    a, b, k = (ext(v) for v in (a, b, k))
    if ext.characteristic == 2:
        return sum(1 for z in ext.elements() if not (a * z * z + b * z + k))
    if not a:
        return 1 if b else 0
    disc = b * b - 4 * a * k
    if not disc:
        return 1
    # Euler criterion
    return 2 if disc ** ((ext.order - 1) // 2) == ext.one else 0


def count_points_bruteforce(c, r=1, bound=DEFAULT_ENUMERATION_BOUND):
    """N_r by scanning every (x, y) in GF(q^r)^2 plus the infinity points."""
    p = c.field.characteristic
    ext = GF(p, _base_degree(c.field) * r)
    Q = ext.order
    if Q * Q > bound:
        raise EnumerationTooLarge(f"{Q}^2 pairs exceed the bound {bound}")
    I, J = _prime_coeffs(c)
    cur = NormalFormCurve(c.n, I, J, ext)
    rpoly = build_curve(cur)
    elems = ext.elements()
    # R(x, y) = sum_a x^a * P_a(y); evaluate the P_a once per y
    by_a = {a: rpoly.coefficient_in_first(a) for a in range(4)}
    total = 0
    for y in elems:
        coeffs = [by_a[a].evaluate(y) + ext.zero for a in range(4)]
        for x in elems:
            if not (((coeffs[3] * x + coeffs[2]) * x + coeffs[1]) * x + coeffs[0]):
                total += 1
    return total + infinity_points(c, r)


class _ZechTables:
    """exp/log/Zech tables for GF(p^k) as numpy arrays.

    Nonzero elements are stored by discrete log in [0, Q-2]; zero is the
    sentinel Q-1.  The generator is the class of t modulo the built-in
    primitive modulus.
    """

    def __init__(self, p, k):
        self.p, self.k = p, k
        Q = p ** k
        self.Q, self.q1 = Q, Q - 1
        self.ZERO = Q - 1
        mod = builtin_modulus(p, k)
        weights = p ** np.arange(k, dtype=np.int64)
        # multiplication-by-t matrix acting on coefficient row vectors
        mt = np.zeros((k, k), dtype=np.int64)
        for j in range(k - 1):
            mt[j, j + 1] = 1
        mt[k - 1, :] = [(-c) % p for c in mod[:k]]
        block = max(1, int(Q ** 0.5))
        small = np.zeros((block, k), dtype=np.int64)
        v = np.zeros(k, dtype=np.int64)
        v[0] = 1
        for j in range(block):
            small[j] = v
            v = (v @ mt) % p
        # g^block as a polynomial, then its multiplication matrix
        step = _mult_matrix(v, mod, p)
        exp = np.empty(self.q1, dtype=np.int64)
        cur = np.eye(k, dtype=np.int64)
        for start in range(0, self.q1, block):
            rows = (small @ cur) % p
            cnt = min(block, self.q1 - start)
            exp[start:start + cnt] = rows[:cnt] @ weights
            cur = (cur @ step) % p
        log = np.full(Q, self.ZERO, dtype=np.int64)
        log[exp] = np.arange(self.q1, dtype=np.int64)
        if np.count_nonzero(log != self.ZERO) != self.q1:
            raise ArithmeticError("modulus is not primitive")
        c0 = exp % p
        plus_one = exp - c0 + (c0 + 1) % p
        self.exp, self.log = exp, log
        self.zech = log[plus_one]

    def const(self, v):
        v %= self.p
        return np.int64(self.ZERO if v == 0 else self.log[v])

    def mul(self, a, b):
        z = (a == self.ZERO) | (b == self.ZERO)
        return np.where(z, self.ZERO, (a + b) % self.q1)

    def add(self, a, b):
        za, zb = a == self.ZERO, b == self.ZERO
        d = (b - a) % self.q1
        zd = self.zech[np.where(za | zb, 0, d)]
        s = np.where(zd == self.ZERO, self.ZERO, (a + zd) % self.q1)
        return np.where(za, b, np.where(zb, a, s))

    def neg(self, a):
        if self.p == 2:
            return a
        return np.where(a == self.ZERO, self.ZERO, (a + self.q1 // 2) % self.q1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def pow_int(self, a, e):
        return np.where(a == self.ZERO, self.ZERO, (a * e) % self.q1)


def _mult_matrix(poly, mod, p):
    """Matrix of multiplication by ``poly`` on row vectors of GF(p)[t]/(mod)."""
    k = len(mod) - 1
    rows = []
    mt = np.zeros((k, k), dtype=np.int64)
    for j in range(k - 1):
        mt[j, j + 1] = 1
    mt[k - 1, :] = [(-c) % p for c in mod[:k]]
    # row j = t^j * poly
    cur = np.array(poly, dtype=np.int64) % p
    for _ in range(k):
        rows.append(cur.copy())
        cur = (cur @ mt) % p
    return np.array(rows, dtype=np.int64)


@functools.lru_cache(maxsize=4)
def _tables(p, k):
    return _ZechTables(p, k)


def _cubic_root_counts(t, b, c, d):
    """Distinct roots in GF(Q) of x^3 + b x^2 + c x + d, vectorised (char > 3)."""
    Z = t.ZERO
    k = t.const
    inv3 = k(pow(3, -1, t.p))
    b2 = t.mul(b, b)
    pp = t.sub(c, t.mul(b2, inv3))
    # s = 2 b^3 / 27 - b c / 3 + d
    s = t.add(t.sub(t.mul(t.mul(b2, b), k(2 * pow(27, -1, t.p))), t.mul(t.mul(b, c), inv3)), d)
    p3 = t.mul(t.mul(pp, pp), pp)
    disc = t.sub(t.mul(p3, k(-4)), t.mul(t.mul(s, s), k(27)))
    out = np.empty(b.shape, dtype=np.int64)
    dz = disc == Z
    out[dz] = np.where(pp[dz] == Z, 1, 2)
    nonsq = ~dz & (disc % 2 == 1)
    out[nonsq] = 1
    sq = ~dz & ~nonsq
    if not sq.any():
        return out
    if t.q1 % 3 == 0:
        # D = -disc / 108 is a square; the cubic splits iff A = -s/2 + sqrt(D) is a cube
        dd = t.mul(disc[sq], k(-pow(108, -1, t.p)))
        root = dd // 2
        half_s = t.mul(s[sq], k(-pow(2, -1, t.p)))
        a = t.add(half_s, root)
        a = np.where(a == Z, t.add(half_s, t.neg(root)), a)
        out[sq] = np.where(a % 3 == 0, 3, 0)
    else:
        out[sq] = np.where(_splits_by_frobenius(t, b[sq], c[sq], d[sq]), 3, 0)
    return out


def _splits_by_frobenius(t, b, c, d):
    """x^Q == x mod f for each cubic f (used when 3 does not divide Q - 1)."""
    Z = t.ZERO
    nb, nc, nd = t.neg(b), t.neg(c), t.neg(d)

    def reduce(coeffs):
        # coeffs low -> high, length 5; reduce x^4, x^3 using x^3 = -b x^2 - c x - d
        co = list(coeffs)
        for top in (4, 3):
            h = co[top]
            co[top - 1] = t.add(co[top - 1], t.mul(h, nb))
            co[top - 2] = t.add(co[top - 2], t.mul(h, nc))
            co[top - 3] = t.add(co[top - 3], t.mul(h, nd))
        return co[:3]

    def mulmod(u, v):
        prod = [np.full(b.shape, Z, dtype=np.int64) for _ in range(5)]
        for i in range(3):
            for j in range(3):
                prod[i + j] = t.add(prod[i + j], t.mul(u[i], v[j]))
        return reduce(prod)

    zero = np.full(b.shape, Z, dtype=np.int64)
    one = np.full(b.shape, 0, dtype=np.int64)
    xpoly = [zero, one, zero]
    acc = [one, zero, zero]
    base = xpoly
    e = t.Q
    while e:
        if e & 1:
            acc = mulmod(acc, base)
        base = mulmod(base, base)
        e >>= 1
    return (acc[0] == Z) & (acc[1] == 0) & (acc[2] == Z)


def count_points(c, r=1, chunk=1 << 20):
    """N_r: affine points of R = 0 over GF(q^r) plus the smooth points at infinity."""
    p = c.field.characteristic
    if p in (2, 3):
        return count_points_bruteforce(c, r)
    k = _base_degree(c.field) * r
    I, J = _prime_coeffs(c)
    n, m = c.n, c.m
    t = _tables(p, k)
    # y = 0: R(x, 0) = I_m x - 1
    total = 1 if I[m] % p else 0
    # y != 0: divide by y^n, giving a monic cubic in x
    jl = [t.const(-v) for v in J]
    il = [t.const(v) for v in I]
    dconst = t.const(-1)
    for start in range(0, t.q1, chunk):
        y = np.arange(start, min(start + chunk, t.q1), dtype=np.int64)
        Z = np.full(y.shape, t.ZERO, dtype=np.int64)
        b, cc = Z, Z
        for i in range(m + 1):
            if jl[i] != t.ZERO:
                b = t.add(b, t.mul(np.full(y.shape, jl[i]), t.pow_int(y, i - m)))
            if il[i] != t.ZERO:
                cc = t.add(cc, t.mul(np.full(y.shape, il[i]), t.pow_int(y, m - i - n)))
        d = t.mul(np.full(y.shape, dconst), t.pow_int(y, -n))
        total += int(_cubic_root_counts(t, b, cc, d).sum())
    return total + infinity_points(c, r)


def hasse_weil_ok(count, q, r, g):
    """|N_r - q^r - 1| <= 2 g q^(r/2), decided in integers."""
    dev = abs(count - q ** r - 1)
    return dev * dev <= 4 * g * g * q ** r


# ---------------------------------------------------------------------------
# L-polynomial fit

def fit_l_polynomial(counts, q, g):
    """Coefficients b_0..b_{2g} of L(T) from N_1..N_g and the functional equation."""
    if len(counts) < g:
        raise ValueError(f"need at least {g} counts")
    s = [None] + [q ** r + 1 - counts[r - 1] for r in range(1, g + 1)]
    b = [Fraction(1)]
    for k in range(1, g + 1):
        val = -sum(s[j] * b[k - j] for j in range(1, k + 1)) / Fraction(k)
        if val.denominator != 1:
            raise InconsistentFunctionalEquation(f"b_{k} = {val} is not an integer")
        b.append(val)
    full = [int(v) for v in b] + [0] * g
    for i in range(g):
        full[2 * g - i] = q ** (g - i) * full[i]
    return full


def _predict_counts(lpoly, q, upto):
    """N_1..N_upto implied by the L-polynomial (Newton's identities)."""
    deg = len(lpoly) - 1
    s = [None]
    for k in range(1, upto + 1):
        bk = lpoly[k] if k <= deg else 0
        val = -k * bk - sum(s[j] * (lpoly[k - j] if k - j <= deg else 0) for j in range(1, k))
        s.append(val)
    return [q ** r + 1 - s[r] for r in range(1, upto + 1)]


def genus_fit(counts, q, g0):
    """True iff the genus-g0 L-polynomial fitted on N_1..N_g0 predicts the rest exactly."""
    try:
        lpoly = fit_l_polynomial(counts, q, g0)
    except InconsistentFunctionalEquation:
        return False
    return _predict_counts(lpoly, q, len(counts)) == list(counts)


@dataclass
class GenusReport:
    curve: str
    q: int
    counts: list
    genus: int
    l_polynomial: list = dc_field(default=None)
    verdict: bool = False
    hasse_weil: bool = True

    def to_json(self):
        return json.dumps(self.__dict__, indent=2)


def genus_report(c, g0, rmax=None):
    """Count N_1..N_rmax (default 2 g0) and run the genus fit."""
    q = c.field.order
    rmax = rmax or 2 * g0
    counts = [count_points(c, r) for r in range(1, rmax + 1)]
    try:
        lpoly = fit_l_polynomial(counts, q, g0)
    except InconsistentFunctionalEquation:
        lpoly = None
    verdict = lpoly is not None and _predict_counts(lpoly, q, rmax) == counts
    hw = all(hasse_weil_ok(nr, q, r, g0) for r, nr in enumerate(counts, 1))
    return GenusReport(c.to_text(), q, counts, g0, lpoly, verdict, hw)

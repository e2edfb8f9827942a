"""Sparse Laurent and bivariate polynomials over an exact coefficient ring.

Coefficients may be anything implementing +, -, * and truthiness (field
elements, dual numbers, ints).  Zero coefficients are never stored, so two
polynomials are equal iff their dicts are.
"""

from .errors import DivisionByZero

__all__ = ["LaurentPoly", "BivariatePoly"]


def _is_poly(x):
    return isinstance(x, (LaurentPoly, BivariatePoly))


class LaurentPoly:
    """Element of R[z, 1/z], stored as ``{exponent: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: c for e, c in terms.items() if c}

    @classmethod
    def monomial(cls, coeff, exp=0):
        p = cls.__new__(cls)
        p.terms = {exp: coeff} if coeff else {}
        return p

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.monomial(other, 0)
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[e] for e, c in self.terms.items())

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if _is_poly(other):
                return NotImplemented
            other = LaurentPoly.monomial(other, 0)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if _is_poly(other):
                return NotImplemented
            other = LaurentPoly.monomial(other, 0)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if _is_poly(other):
                return NotImplemented
            if not other:
                return LaurentPoly()
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                t = c1 * c2
                if e in out:
                    out[e] = out[e] + t
                else:
                    out[e] = t
        return LaurentPoly(out)

    def __rmul__(self, other):
        return self * other

    def is_unit(self):
        """Units of a Laurent ring over a field are the nonzero monomials."""
        return len(self.terms) == 1

    def __truediv__(self, other):
        """Exact division by a scalar or by a unit (monomial)."""
        if isinstance(other, LaurentPoly):
            if not other.is_unit():
                raise ValueError("division only by monomials (units) is supported")
            (e, c), = other.terms.items()
            inv = 1 / c
            return LaurentPoly({k - e: v * inv for k, v in self.terms.items()})
        if not other:
            raise DivisionByZero("division of Laurent polynomial by zero")
        inv = 1 / other
        return LaurentPoly({k: v * inv for k, v in self.terms.items()})

    def shift(self, k):
        """Multiply by z**k."""
        return LaurentPoly._raw({e + k: c for e, c in self.terms.items()})

    def coeff(self, e, default=0):
        return self.terms.get(e, default)

    def degree(self):
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(self.terms)

    def valuation(self):
        if not self.terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self.terms)

    def evaluate(self, z):
        total = 0
        for e, c in self.terms.items():
            total = total + c * (z ** e)
        return total

    def map_coefficients(self, fn):
        return LaurentPoly({e: fn(c) for e, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*z^{e}" for e, c in sorted(self.terms.items()))


class BivariatePoly:
    """Polynomial in two variables, stored as ``{(i, j): coefficient}``.

    Exponents may be negative, so Laurent-in-the-second-variable inputs
    (the characteristic polynomial before clearing powers of zeta) fit too.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {k: c for k, c in terms.items() if c}

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def from_laurent(cls, poly, i=0):
        """Embed a Laurent polynomial in the second variable, times X**i."""
        return cls._raw({(i, e): c for e, c in poly.terms.items()})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BivariatePoly):
            other = BivariatePoly({(0, 0): other})
        if self.terms.keys() != other.terms.keys():
            return False
        return all(c == other.terms[k] for k, c in self.terms.items())

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def _lift(self, other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, LaurentPoly):
            return BivariatePoly.from_laurent(other)
        return BivariatePoly({(0, 0): other})

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                s = out[k] + c
                if s:
                    out[k] = s
                else:
                    del out[k]
            else:
                out[k] = c
        return BivariatePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                t = c1 * c2
                out[k] = out[k] + t if k in out else t
        return BivariatePoly(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = BivariatePoly({(0, 0): 1})
        for _ in range(int(e)):
            result = result * self
        return result

    def coeff(self, i, j, default=0):
        return self.terms.get((i, j), default)

    def support(self):
        return set(self.terms)

    def shift(self, di, dj):
        return BivariatePoly._raw({(a + di, b + dj): c for (a, b), c in self.terms.items()})

    def diff(self, var):
        """Formal partial derivative; ``var`` is 0 (first) or 1 (second)."""
        out = {}
        for (a, b), c in self.terms.items():
            k = (a, b)[var]
            if k:
                out[(a - 1, b) if var == 0 else (a, b - 1)] = c * k
        return BivariatePoly(out)

    def evaluate(self, x, y):
        total = 0
        for (a, b), c in self.terms.items():
            total = total + c * (x ** a) * (y ** b)
        return total

    def coefficient_in_first(self, i):
        """Coefficient of X**i as a Laurent polynomial in the second variable."""
        return LaurentPoly({b: c for (a, b), c in self.terms.items() if a == i})

    def homogenize(self):
        """Return ``{(i, j, k): coeff}`` with total degree equal to the maximum."""
        if not self.terms:
            return {}
        d = max(a + b for a, b in self.terms)
        return {(a, b, d - a - b): c for (a, b), c in self.terms.items()}

    def map_coefficients(self, fn):
        return BivariatePoly({k: fn(c) for k, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*X^{a}*Y^{b}" for (a, b), c in sorted(self.terms.items(), reverse=True))

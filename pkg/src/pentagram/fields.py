"""Exact fields: the rationals, prime fields GF(p) and extensions GF(p^r).

Elements are immutable and support the usual operators; plain Python ints
are coerced into whatever field the other operand lives in.  Each field
kind has its own element class, so ``type(a)`` doubles as the variant tag.

Text format (parsers and printers roundtrip exactly)::

    QQ:        "a/b" or "a"
    GF(p):     "a mod p"
    GF(p^r):   "[c0,c1,...] mod (p, [m0,m1,...,1])"
"""

import functools
import re
from fractions import Fraction

import gmpy2

from .errors import DivisionByZero, FieldConstructionError, MixedFieldContexts

__all__ = [
    "Field", "RationalField", "PrimeField", "ExtensionField", "QQ", "GF",
    "FieldElement", "Rational", "ModP", "GFq",
    "parse_element", "parse_field", "builtin_modulus", "is_irreducible",
]

TABLE_LIMIT = 1 << 16


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists low -> high, no trailing 0

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _pdivmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] = (a[i + shift] - c * bi) % p
        _trim(a)
    return _trim(q), a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(modulus, p):
    """Rabin's irreducibility test for a monic polynomial over GF(p)."""
    f = _trim([c % p for c in modulus])
    r = len(f) - 1
    if r < 1 or f[-1] != 1:
        return False
    if r == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    if _psub(_ppowmod(x, p ** r, f, p), x, p):
        return False
    for ell in _prime_factors(r):
        h = _psub(_ppowmod(x, p ** (r // ell), f, p), x, p)
        if len(_pgcd(f, h, p)) != 1:
            return False
    return True


def _is_primitive(modulus, p):
    if modulus[0] % p == 0:
        return False
    r = len(modulus) - 1
    order = p ** r - 1
    for ell in _prime_factors(order):
        if _ppowmod([0, 1], order // ell, list(modulus), p) == [1]:
            return False
    return True


@functools.lru_cache(maxsize=None)
def builtin_modulus(p, r):
    """Lexicographically first monic primitive polynomial of degree r over GF(p).

    Coefficients are returned low -> high.  "First" orders by the integer
    whose base-p digits are the lower coefficients, so the choice is stable.
    """
    if r < 1:
        raise FieldConstructionError("extension degree must be >= 1")
    for code in range(p ** r):
        low = [(code // p ** k) % p for k in range(r)]
        f = tuple(low + [1])
        if is_irreducible(f, p) and _is_primitive(f, p):
            return f
    raise FieldConstructionError(f"no primitive polynomial of degree {r} over GF({p})")


# ---------------------------------------------------------------------------
# field contexts

class Field:
    """Common interface of the three field kinds."""

    characteristic = 0
    order = None
    degree = 1

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_finite(self):
        return self.order is not None

    def __repr__(self):
        return self.describe()


class RationalField(Field):
    characteristic = 0

    def __call__(self, value, den=None):
        if isinstance(value, Rational):
            return value
        if isinstance(value, FieldElement):
            raise MixedFieldContexts(f"cannot coerce {value!r} into QQ")
        if isinstance(value, str):
            return self.parse(value)
        q = gmpy2.mpq(value) if den is None else gmpy2.mpq(value, den)
        return Rational(self, q)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __reduce__(self):
        return (_rational_field, ())

    def describe(self):
        return "Q"

    def parse(self, text):
        text = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:\s*/\s*(\d+))?", text)
        if not m:
            raise ValueError(f"not a rational: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise DivisionByZero("zero denominator")
        return Rational(self, gmpy2.mpq(num, den))

    def random_element(self, rng, bound=9):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, bound)
        return Rational(self, gmpy2.mpq(num, den))


def _rational_field():
    return QQ


class PrimeField(Field):
    degree = 1

    def __init__(self, p):
        if not gmpy2.is_prime(p):
            raise FieldConstructionError(f"{p} is not prime")
        self.p = int(p)
        self.characteristic = self.p
        self.order = self.p

    def __call__(self, value):
        if isinstance(value, ModP):
            if value.field is not self and value.field != self:
                raise MixedFieldContexts(f"{value!r} is not in {self}")
            return value
        if isinstance(value, FieldElement):
            raise MixedFieldContexts(f"cannot coerce {value!r} into {self}")
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            return ModP(self, int(value.numerator) % self.p) / ModP(self, int(value.denominator) % self.p)
        return ModP(self, int(value) % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __reduce__(self):
        return (GF, (self.p,))

    def describe(self):
        return str(self.p)

    def parse(self, text):
        m = re.fullmatch(r"\s*([+-]?\d+)\s*mod\s*(\d+)\s*", text)
        if not m:
            # bare integers are accepted too, reduced into the field
            m2 = re.fullmatch(r"\s*([+-]?\d+)\s*", text)
            if not m2:
                raise ValueError(f"not a GF({self.p}) element: {text!r}")
            return self(int(m2.group(1)))
        if int(m.group(2)) != self.p:
            raise MixedFieldContexts(f"{text!r} is not in GF({self.p})")
        return self(int(m.group(1)))

    def random_element(self, rng):
        return ModP(self, rng.randrange(self.p))

    def element_from_raw(self, value):
        return ModP(self, value)

    def elements(self):
        return [ModP(self, v) for v in range(self.p)]


class ExtensionField(Field):
    """GF(p^r) = GF(p)[t] / (modulus).

    Elements are stored as the integer ``sum c_k p^k`` of their coefficient
    vector.  Small fields (order <= TABLE_LIMIT) precompute exp/log/Zech
    tables so every operation is a few list lookups.
    """

    def __init__(self, p, modulus):
        if not gmpy2.is_prime(p):
            raise FieldConstructionError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise FieldConstructionError("modulus must be monic of degree >= 2")
        if not is_irreducible(modulus, p):
            raise FieldConstructionError(f"{list(modulus)} is reducible over GF({p})")
        self.p = int(p)
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = self.p
        self.order = self.p ** self.degree
        self._tables = None
        if self.order <= TABLE_LIMIT:
            self._build_tables()

    def __call__(self, value):
        if isinstance(value, GFq):
            if value.field is not self and value.field != self:
                raise MixedFieldContexts(f"{value!r} is not in {self}")
            return value
        if isinstance(value, FieldElement):
            raise MixedFieldContexts(f"cannot coerce {value!r} into {self}")
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (list, tuple)):
            return GFq(self, self._encode(value))
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            return self(int(value.numerator)) / self(int(value.denominator))
        return GFq(self, int(value) % self.p)

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.p == self.p and other.modulus == self.modulus

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def __reduce__(self):
        return (GF, (self.p, self.degree, self.modulus))

    def describe(self):
        return f"{self.p}^{self.degree}"

    # -- coefficient vectors <-> codes

    def _encode(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            # reduce an over-long vector modulo the modulus
            coeffs = _pdivmod(_trim([c % self.p for c in coeffs]), list(self.modulus), self.p)[1]
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return code

    def _decode(self, code):
        out = []
        for _ in range(self.degree):
            code, c = divmod(code, self.p)
            out.append(c)
        return out

    # -- slow polynomial arithmetic on codes

    def _slow_mul(self, a, b):
        prod = _pmul(_trim(self._decode(a)), _trim(self._decode(b)), self.p)
        return self._encode(_pdivmod(prod, list(self.modulus), self.p)[1])

    def _slow_add(self, a, b, sign=1):
        da, db = self._decode(a), self._decode(b)
        return self._encode([(x + sign * y) % self.p for x, y in zip(da, db)])

    def _slow_pow(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._slow_mul(result, base)
            base = self._slow_mul(base, base)
            e >>= 1
        return result

    def _build_tables(self):
        q1 = self.order - 1
        g = None
        if _is_primitive(self.modulus, self.p):
            g = self.p  # the class of t
        else:
            factors = _prime_factors(q1)
            for cand in range(2, self.order):
                if all(self._slow_pow(cand, q1 // ell) != 1 for ell in factors):
                    g = cand
                    break
        exp = [0] * q1
        log = [None] * self.order
        x = 1
        for k in range(q1):
            exp[k] = x
            log[x] = k
            x = self._slow_mul(x, g)
        # zech[k] = log(1 + g^k), None when 1 + g^k = 0
        zech = [None] * q1
        p = self.p
        for k in range(q1):
            c = exp[k]
            c1 = c + 1 if c % p != p - 1 else c - (p - 1)
            zech[k] = log[c1] if c1 else None
        self._tables = (exp, log, zech, q1)

    # -- arithmetic on codes, used by GFq

    def _add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        t = self._tables
        if t is None:
            return self._slow_add(a, b)
        exp, log, zech, q1 = t
        la = log[a]
        z = zech[(log[b] - la) % q1]
        if z is None:
            return 0
        return exp[(la + z) % q1]

    def _neg(self, a):
        if not a:
            return 0
        return self._encode([(-c) % self.p for c in self._decode(a)])

    def _mul(self, a, b):
        if not a or not b:
            return 0
        t = self._tables
        if t is None:
            return self._slow_mul(a, b)
        exp, log, _, q1 = t
        return exp[(log[a] + log[b]) % q1]

    def _inv(self, a):
        if not a:
            raise DivisionByZero(f"inverse of zero in {self}")
        t = self._tables
        if t is None:
            return self._slow_pow(a, self.order - 2)
        exp, log, _, q1 = t
        return exp[(-log[a]) % q1]

    def parse(self, text):
        m = re.fullmatch(r"\s*\[([^\]]*)\]\s*mod\s*\(\s*(\d+)\s*,\s*\[([^\]]*)\]\s*\)\s*", text)
        if not m:
            m2 = re.fullmatch(r"\s*\[([^\]]*)\]\s*", text)
            if not m2:
                raise ValueError(f"not a GF({self.order}) element: {text!r}")
            return self([int(c) for c in m2.group(1).split(",") if c.strip()])
        p = int(m.group(2))
        mod = tuple(int(c) for c in m.group(3).split(","))
        if p != self.p or tuple(c % p for c in mod) != self.modulus:
            raise MixedFieldContexts(f"{text!r} is not in {self}")
        return self([int(c) for c in m.group(1).split(",") if c.strip()])

    def random_element(self, rng):
        return GFq(self, rng.randrange(self.order))

    def element_from_raw(self, value):
        return GFq(self, value)

    def elements(self):
        return [GFq(self, v) for v in range(self.order)]

    def generator(self):
        """A primitive element (multiplicative generator)."""
        if self._tables is not None:
            return GFq(self, self._tables[0][1])
        raise NotImplementedError("generator only available for tabulated fields")


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def _prime_field(p):
    return PrimeField(p)


@functools.lru_cache(maxsize=None)
def _extension_field(p, modulus):
    return ExtensionField(p, modulus)


def GF(p, r=1, modulus=None):
    """Return the (cached) finite field with p^r elements.

    ``GF(q)`` for a prime power q is accepted too.  When no modulus is given
    the built-in one from :func:`builtin_modulus` is used.
    """
    p = int(p)
    if r == 1 and modulus is None and not gmpy2.is_prime(p):
        base, exp = _split_prime_power(p)
        p, r = base, exp
    if r == 1 and modulus is None:
        return _prime_field(p)
    if modulus is None:
        modulus = builtin_modulus(p, r)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) - 1 != r:
        raise FieldConstructionError(f"modulus degree {len(modulus) - 1} != r = {r}")
    return _extension_field(p, modulus)


def _split_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            if q != 1:
                break
            return p, r
    raise FieldConstructionError("field order must be a prime power")


def parse_field(desc):
    """Parse a field description: ``Q``, ``7``, ``25`` or ``5^2``."""
    desc = desc.strip()
    if desc in ("Q", "QQ"):
        return QQ
    m = re.fullmatch(r"(\d+)\s*\^\s*(\d+)", desc)
    if m:
        return GF(int(m.group(1)), int(m.group(2)))
    if re.fullmatch(r"\d+", desc):
        return GF(int(desc))
    raise FieldConstructionError(f"unknown field description {desc!r}")


def parse_element(text):
    """Parse an element, inferring its field from the text."""
    m = re.fullmatch(r"\s*\[([^\]]*)\]\s*mod\s*\(\s*(\d+)\s*,\s*\[([^\]]*)\]\s*\)\s*", text)
    if m:
        p = int(m.group(2))
        mod = tuple(int(c) for c in m.group(3).split(","))
        return GF(p, len(mod) - 1, mod).parse(text)
    m = re.fullmatch(r"\s*([+-]?\d+)\s*mod\s*(\d+)\s*", text)
    if m:
        return GF(int(m.group(2))).parse(text)
    return QQ.parse(text)


# ---------------------------------------------------------------------------
# elements

class FieldElement:
    """Abstract base for elements; concrete classes per field kind."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if type(other) is type(self):
            if other.field is self.field or other.field == self.field:
                return other.value
            raise MixedFieldContexts(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field(other).value
        if isinstance(other, FieldElement):
            raise MixedFieldContexts(f"{self.field} vs {other.field}")
        return NotImplemented

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        return (-self) + other

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            v = self._coerce(other)
        except MixedFieldContexts:
            return False
        if v is NotImplemented:
            return NotImplemented
        return self.value == v

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return str(self)

    def __reduce__(self):
        return (self.field, (str(self),))


class Rational(FieldElement):
    __slots__ = ()

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Rational(self.field, self.value + v)

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Rational(self.field, self.value - v)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Rational(self.field, self.value * v)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        if not v:
            raise DivisionByZero("division by zero in Q")
        return Rational(self.field, self.value / v)

    def __neg__(self):
        return Rational(self.field, -self.value)

    def inverse(self):
        if not self.value:
            raise DivisionByZero("inverse of zero in Q")
        return Rational(self.field, 1 / self.value)

    @property
    def numerator(self):
        return int(self.value.numerator)

    @property
    def denominator(self):
        return int(self.value.denominator)

    def to_fraction(self):
        return Fraction(self.numerator, self.denominator)

    def __str__(self):
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


class ModP(FieldElement):
    __slots__ = ()

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModP(self.field, (self.value + v) % self.field.p)

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModP(self.field, (self.value - v) % self.field.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return ModP(self.field, self.value * v % self.field.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        if not v:
            raise DivisionByZero(f"division by zero in GF({self.field.p})")
        p = self.field.p
        return ModP(self.field, self.value * pow(v, -1, p) % p)

    def __neg__(self):
        return ModP(self.field, -self.value % self.field.p)

    def inverse(self):
        if not self.value:
            raise DivisionByZero(f"inverse of zero in GF({self.field.p})")
        return ModP(self.field, pow(self.value, -1, self.field.p))

    def __int__(self):
        return self.value

    def __str__(self):
        return f"{self.value} mod {self.field.p}"


class GFq(FieldElement):
    __slots__ = ()

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFq(self.field, self.field._add(self.value, v))

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        f = self.field
        return GFq(f, f._add(self.value, f._neg(v)))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return GFq(self.field, self.field._mul(self.value, v))

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        f = self.field
        return GFq(f, f._mul(self.value, f._inv(v)))

    def __neg__(self):
        return GFq(self.field, self.field._neg(self.value))

    def inverse(self):
        return GFq(self.field, self.field._inv(self.value))

    def coefficients(self):
        return self.field._decode(self.value)

    def __str__(self):
        f = self.field
        coeffs = ",".join(str(c) for c in f._decode(self.value))
        mod = ",".join(str(c) for c in f.modulus)
        return f"[{coeffs}] mod ({f.p}, [{mod}])"

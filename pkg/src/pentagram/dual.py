"""Forward-mode differentiation with exact dual numbers.

A :class:`DualNumber` carries a value and the vector of its partial
derivatives with respect to a fixed list of independent variables.  Any
code written against the field-element operators (+, -, *, /) runs on
dual numbers unchanged, which is how the Jacobian of the pentagram
invariants is obtained.
"""

from .errors import DivisionByZero
from .fields import FieldElement

__all__ = ["DualNumber", "seed", "evaluate_with_partials"]


class DualNumber:
    __slots__ = ("value", "partials")

    def __init__(self, value, partials):
        self.value = value
        self.partials = tuple(partials)

    def _lift(self, other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, (int, FieldElement)):
            return DualNumber(other, (0,) * len(self.partials))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.value + o.value,
                          [a + b for a, b in zip(self.partials, o.partials)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return DualNumber(self.value - o.value,
                          [a - b for a, b in zip(self.partials, o.partials)])

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return DualNumber(-self.value, [-a for a in self.partials])

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        u, v = self.value, o.value
        # d(uv) = u dv + v du
        return DualNumber(u * v, [u * b + v * a for a, b in zip(self.partials, o.partials)])

    __rmul__ = __mul__

    def inverse(self):
        u = self.value
        if not u:
            raise DivisionByZero("dual number with zero value has no inverse")
        if isinstance(u, int):
            raise TypeError("cannot invert a dual number with a bare int value")
        inv = u.inverse()
        # d(1/u) = -du / u^2
        s = -(inv * inv)
        return DualNumber(inv, [s * a for a in self.partials])

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = DualNumber(1, (0,) * len(self.partials))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.value) or any(bool(a) for a in self.partials)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.value == o.value and all(a == b for a, b in zip(self.partials, o.partials))

    def __hash__(self):
        return hash((self.value, self.partials))

    def __repr__(self):
        return f"DualNumber({self.value}, {list(self.partials)})"


def seed(point):
    """Turn a list of field elements into independent dual variables."""
    k = len(point)
    zero = point[0].field.zero if k else 0
    one = point[0].field.one if k else 1
    return [DualNumber(x, [one if j == i else zero for j in range(k)])
            for i, x in enumerate(point)]


def evaluate_with_partials(program, point):
    """Evaluate ``program(*point)`` and its exact gradient at ``point``.

    ``program`` may only use field operations.  Returns ``(value, gradient)``.
    """
    if point and point[0].field.characteristic != 0:
        raise ValueError("evaluate_with_partials expects a characteristic-0 point")
    out = program(*seed(point))
    if not isinstance(out, DualNumber):
        # constant program
        zero = point[0].field.zero if point else 0
        return out, [zero] * len(point)
    return out.value, list(out.partials)

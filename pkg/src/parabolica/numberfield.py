"""Exact arithmetic in the real fields Q(2cos(pi/M)).

Every finite Coxeter group has a geometric representation whose matrix
entries live in such a field, so all linear algebra in the package is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _minpoly_2cos(M: int) -> tuple[int, ...]:
    """Monic minimal polynomial of 2cos(pi/M), coefficients low to high."""
    if M in (1, 2, 3):
        # 2cos(pi) = -2, 2cos(pi/2) = 0, 2cos(pi/3) = 1 are rational; the
        # field is Q and we use the generator 0.
        return (0, 1)
    import sympy

    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / M), x), x)
    coeffs = [int(c) for c in reversed(p.all_coeffs())]
    if coeffs[-1] != 1:
        raise ArithmeticError(f"minimal polynomial of 2cos(pi/{M}) is not monic")
    return tuple(coeffs)


class NumberField:
    """The field Q[x]/(p) with p the minimal polynomial of 2cos(pi/M).

    ``M == 1`` (or 2, 3) gives the rationals.
    """

    __slots__ = ("M", "minpoly", "degree", "_zero", "_one")

    def __init__(self, M: int = 1):
        if M < 1:
            raise ValueError(f"field parameter must be positive, got {M}")
        self.M = M
        self.minpoly = _minpoly_2cos(M)
        self.degree = len(self.minpoly) - 1
        self._zero = Scalar(self, (Fraction(0),) * self.degree)
        self._one = self(1)

    @classmethod
    def for_bonds(cls, bonds: Iterable[int]) -> "NumberField":
        """Smallest field of this family containing 2cos(pi/m) for all bonds."""
        M = 1
        for m in bonds:
            if m >= 4:
                M = _lcm(M, m)
        return _field(M)

    def __call__(self, value: Union[Number, Sequence[Number], "Scalar"]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise ValueError("scalar from a different field")
            return value
        if isinstance(value, (int, Fraction)):
            coeffs = [Fraction(0)] * self.degree
            coeffs[0] = Fraction(value)
            return Scalar(self, tuple(coeffs))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) > self.degree:
            return self._reduce_poly(coeffs)
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return Scalar(self, tuple(coeffs))

    @property
    def zero(self) -> "Scalar":
        return self._zero

    @property
    def one(self) -> "Scalar":
        return self._one

    @property
    def gen(self) -> "Scalar":
        """The generator 2cos(pi/M) (zero when the field is Q)."""
        if self.degree == 1:
            return self._zero
        return self((0, 1))

    def two_cos(self, m: int) -> "Scalar":
        """Exact value of 2cos(pi/m) for m dividing a multiple compatible with M."""
        if m == 2:
            return self._zero
        if m == 3:
            return self._one
        if m == 1:
            return self(-2)
        if self.M % m:
            raise ValueError(f"2cos(pi/{m}) is not in Q(2cos(pi/{self.M}))")
        j = self.M // m
        # c_j = 2cos(j*theta) satisfies c_{j+1} = c_1 c_j - c_{j-1}
        prev, cur = self(2), self.gen
        for _ in range(j - 1):
            prev, cur = cur, cur * self.gen - prev
        return cur

    def _reduce_poly(self, coeffs: list) -> "Scalar":
        p = self.minpoly
        d = self.degree
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[k]
            if c:
                for i in range(d):
                    coeffs[k - d + i] -= c * p[i]
            coeffs[k] = Fraction(0)
        return Scalar(self, tuple(coeffs[:d]))

    def describe(self) -> dict:
        return {"generator": f"2cos(pi/{self.M})" if self.degree > 1 else None,
                "minpoly": list(self.minpoly)}

    def __repr__(self) -> str:
        if self.degree == 1:
            return "NumberField(Q)"
        return f"NumberField(Q(2cos(pi/{self.M})))"


@lru_cache(maxsize=None)
def _field(M: int) -> NumberField:
    return NumberField(M)


def field(M: int = 1) -> NumberField:
    """Shared field instance; scalars only combine within one instance."""
    if M in (2, 3):
        M = 1
    return _field(M)


class Scalar:
    """An element of a :class:`NumberField`, stored as polynomial coefficients."""

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.c = coeffs
        self._hash = None

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValueError("cannot mix scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(self.field, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, tuple(a * other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.degree
        if d == 1:
            return Scalar(self.field, (self.c[0] * o.c[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return self.field._reduce_poly(prod)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        d = self.field.degree
        if d == 1:
            return Scalar(self.field, (1 / self.c[0],))
        # Solve (multiplication-by-self matrix) * y = e_0.
        basis = [self.field(tuple(Fraction(int(i == k)) for i in range(d))) for k in range(d)]
        cols = [(self * b).c for b in basis]
        aug = [[cols[k][i] for k in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        return Scalar(self.field, tuple(aug[i][d] for i in range(d)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, tuple(a / other for a in self.c))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.c) if self.field.degree > 1 else hash(self.c[0])
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                mono = "r" if k == 1 else f"r^{k}"
                terms.append(mono if a == 1 else f"-{mono}" if a == -1 else f"{a}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __repr__(self) -> str:
        return f"Scalar({self})"


def parse_scalar(F: NumberField, text: str) -> Scalar:
    """Inverse of ``str(Scalar)``: parses sums of ``a``, ``a*r^k`` terms."""
    import re

    text = text.replace(" ", "")
    if text == "0":
        return F.zero
    coeffs = [Fraction(0)] * F.degree
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        neg = sign == "-"
        if "r" in body:
            if "*" in body:
                coef, mono = body.split("*")
                a = Fraction(coef)
            else:
                a, mono = Fraction(1), body
            k = 1 if mono == "r" else int(mono.split("^")[1])
        else:
            a, k = Fraction(body), 0
        coeffs[k] += -a if neg else a
    return F(coeffs)


QQ = field(1)

"""Exact scalars: rationals and cyclotomic field elements.

Ranks, subspace identities and codimension tables downstream are only
meaningful if arithmetic never rounds, so scalars are represented as
coefficient vectors over Q in the quotient ring Q[x] / Phi_m(x), where
Phi_m is the m-th cyclotomic polynomial.  The rationals are the m = 1
case (Phi_1 = x - 1, degree 1, the coefficient vector has length one).

No floats appear anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    result = m
    p, n = 2, m
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def _poly_div_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials, low degree first, monic divisor."""
    num = list(num)
    dn, dd = len(num) - 1, len(den) - 1
    quot = [0] * (dn - dd + 1)
    for k in range(dn - dd, -1, -1):
        c = num[dd + k]
        quot[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    if any(num):
        raise ArithmeticError("division was not exact")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first, monic.

    Computed by dividing x^m - 1 by the product of Phi_d over proper
    divisors d of m.  Phi_1 = x - 1 seeds the recursion.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in _divisors(m):
        if d < m:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_rows(order: int) -> tuple[tuple[Fraction, ...], ...]:
    # row r = coefficients of x^(deg + r) reduced mod Phi_order, for the
    # degrees a product of two reduced elements can reach.
    phi = cyclotomic_polynomial(order)
    deg = len(phi) - 1
    rows = []
    # x^deg = -(phi[0] + phi[1] x + ...)
    cur = [Fraction(-c) for c in phi[:deg]]
    rows.append(tuple(cur))
    for _ in range(deg - 2):
        shifted = [Fraction(0)] + cur[:-1]
        lead = cur[-1]
        if lead:
            base = rows[0]
            shifted = [shifted[i] + lead * base[i] for i in range(deg)]
        cur = shifted
        rows.append(tuple(cur))
    return tuple(rows)


@dataclass(frozen=True)
class FieldSpec:
    """The coefficient field: Q when order == 1, else Q adjoined a
    primitive root of unity of the given order."""

    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("field order must be a positive integer")

    @property
    def degree(self) -> int:
        return 1 if self.order == 1 else euler_phi(self.order)

    def zero(self) -> "Scalar":
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "Scalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def from_rational(self, value) -> "Scalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return Scalar(self, tuple(coeffs))

    def scalar(self, coeffs) -> "Scalar":
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != self.degree:
            raise ValueError(
                f"expected {self.degree} coefficients, got {len(cs)}")
        return Scalar(self, cs)

    def root_of_unity(self, k: int = 1) -> "Scalar":
        """zeta^k for zeta a fixed primitive root of order `order`,
        namely the class of x in Q[x]/Phi_order."""
        k %= self.order
        if self.order == 1:
            return self.one()
        deg = self.degree
        if k < deg:
            coeffs = [Fraction(0)] * deg
            coeffs[k] = Fraction(1)
            return Scalar(self, tuple(coeffs))
        if deg == 1:
            # Phi is linear, x is congruent to -constant term
            phi = cyclotomic_polynomial(self.order)
            gen = self.from_rational(-phi[0])
        else:
            coeffs = [Fraction(0)] * deg
            coeffs[1] = Fraction(1)
            gen = Scalar(self, tuple(coeffs))
        return gen ** k

    def embed(self, other: "Scalar") -> "Scalar":
        """Carry a scalar from a subfield into this field.

        Only the rational-into-cyclotomic case is supported; anything
        else must already live here.
        """
        if other.field == self:
            return other
        if other.field.order == 1:
            return self.from_rational(other.coeffs[0])
        raise ValueError(f"cannot embed {other.field} into {self}")

    def __str__(self):
        return "Q" if self.order == 1 else f"Q(zeta_{self.order})"


RATIONALS = FieldSpec(1)


class Scalar:
    """Element of FieldSpec, stored as a tuple of Fractions."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: tuple):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError(
                    f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field,
                      tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.field,
                      tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        deg = len(a)
        if deg == 1:
            return Scalar(self.field, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:deg]
        high = prod[deg:]
        if any(high):
            rows = _reduction_rows(self.field.order)
            for r, c in enumerate(high):
                if c:
                    row = rows[r]
                    for k in range(deg):
                        out[k] += c * row[k]
        return Scalar(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("scalar is zero")
        deg = self.field.degree
        if deg == 1:
            return Scalar(self.field, (1 / self.coeffs[0],))
        # extended Euclid in Q[x] against Phi_m, which is irreducible,
        # so gcd(self, Phi) is a nonzero constant
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.field.order)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            while r1 and not r1[-1]:
                r1.pop()
            if len(r1) == 1:
                inv = 1 / r1[0]
                out = [c * inv for c in s1]
                out += [Fraction(0)] * (deg - len(out))
                return Scalar(self.field, tuple(out[:deg]))
            q, rem = _poly_divmod_frac(r0, r1)
            s_next = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1 = r1, rem
            s0, s1 = s1, s_next

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        out = self.field.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return (self.coeffs[0] == other
                    and not any(self.coeffs[1:]))
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction if it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_integer(self) -> bool:
        r = self.as_rational()
        return r is not None and r.denominator == 1

    def __repr__(self):
        if self.field.order == 1 or not any(self.coeffs[1:]):
            return str(self.coeffs[0])
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = f"z{k}" if k > 1 else "z"
                parts.append(f"{c}*{z}" if c != 1 else z)
        return " + ".join(parts) if parts else "0"


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    while num and not num[-1]:
        num.pop()
    dd = len(den) - 1
    if len(num) - 1 < dd:
        return [Fraction(0)], num
    quot = [Fraction(0)] * (len(num) - dd)
    lead = den[-1]
    for k in range(len(num) - 1 - dd, -1, -1):
        c = num[dd + k] / lead
        quot[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    while num and not num[-1]:
        num.pop()
    return quot, (num if num else [Fraction(0)])


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" with integer p, q.  Rejects floats."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"

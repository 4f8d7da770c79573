"""Dense univariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence, Union

from padicfe.errors import AllZero
from padicfe.valuation import NEG_INF, INF, ExtRat, Infinity, check_prime, format_rational, ord_rat

Number = Union[int, Fraction]


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` multiplies ``x**i``.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree ``NEG_INF``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence[Number], lead: Number = 1) -> "Poly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> Union[int, Infinity]:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def low_degree(self) -> Union[int, Infinity]:
        """Index of the lowest nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return INF

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Union["Poly", Number]) -> "Poly":
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Union["Poly", Number]) -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other: Number) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other: Union["Poly", Number]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: Number) -> "Poly":
        c = Fraction(c)
        return Poly(c * a for a in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def shift(self, s: Number) -> "Poly":
        """The polynomial ``x -> self(x + s)``."""
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * Poly([s, 1]) + c
        return out

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / other.lead
            quo[k] = c
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        return Poly(quo), Poly(rem)

    def integer_scaled(self) -> tuple[Fraction, list[int]]:
        """``(c, ints)`` with ``self == c * Poly(ints)`` and integer ``ints`` of content 1."""
        if self.is_zero():
            return Fraction(1), []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        ints = [v // g for v in ints]
        return Fraction(g, den), ints

    def __repr__(self) -> str:
        return f"Poly({[format_rational(c) for c in self.coeffs]})"

    def pretty(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mag = format_rational(a)
            if i == 0:
                body = mag
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else (f"{mag}*{mono}" if a.denominator != 1 else f"{mag}{mono}")
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = pretty


def _lift(v: Union[Poly, Number]) -> Poly:
    return v if isinstance(v, Poly) else Poly([v])


def falling_factorial(j: int) -> Poly:
    """``(xi)_j = xi (xi - 1) ... (xi - j + 1)`` with ``(xi)_0 = 1``."""
    if j < 0:
        raise ValueError("j must be >= 0")
    out = Poly([1])
    for k in range(j):
        out = out * Poly([-k, 1])
    return out


def gamma_normalize(p: int, fam: Sequence[Poly]) -> tuple[Fraction, list[Poly]]:
    """Scale a family by ``gamma = p**(-v)``, ``v`` the minimal coefficient valuation.

    Afterwards every coefficient is p-integral and at least one is a unit, so
    each member takes values of non-negative valuation at integers.
    """
    check_prime(p)
    vals = [ord_rat(p, c) for P in fam for c in P.coeffs if c]
    if not vals:
        raise AllZero("every polynomial in the family is zero")
    v = int(min(vals))
    gamma = Fraction(p) ** (-v)
    return gamma, [P.scale(gamma) for P in fam]


def eval_ord(p: int, P: Poly, n: Number) -> ExtRat:
    """``ord_p(P(n))``."""
    return ord_rat(p, P(n))


def rational_roots(P: Poly) -> list[Fraction]:
    """Rational roots with multiplicity (rational root test on the integer form)."""
    if P.is_zero():
        raise AllZero("the zero polynomial has every number as a root")
    roots: list[Fraction] = []
    work = P
    while work.low_degree() not in (0, INF) and work.degree >= 1:
        roots.append(Fraction(0))
        work = Poly(work.coeffs[1:])
    changed = True
    while changed and work.degree >= 1:
        changed = False
        _, ints = work.integer_scaled()
        for cand in _candidates(ints[0], ints[-1]):
            if work(cand) == 0:
                roots.append(cand)
                work, _ = work.divmod(Poly([-cand, 1]))
                changed = True
                break
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _candidates(const: int, lead: int) -> list[Fraction]:
    out = set()
    for a in _divisors(const):
        for b in _divisors(lead):
            out.add(Fraction(a, b))
            out.add(Fraction(-a, b))
    return sorted(out)

"""Exact p-adic valuations, element representations and the series norm.

Valuations are exact: finite values are :class:`fractions.Fraction`, and the
valuation of zero is the sentinel :data:`INF`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Union

from padicfe import kernels
from padicfe.errors import (
    AmbiguousPrecision,
    EvenPrimeUnsupported,
    NonResidue,
    NotPrime,
    UnsupportedElement,
    ZeroSeries,
)


class Infinity:
    """Signed infinity that absorbs addition and orders outside all rationals."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __repr__(self) -> str:
        return "+oo" if self.sign > 0 else "-oo"

    __str__ = __repr__

    def __hash__(self) -> int:
        return hash(("Infinity", self.sign))

    def __eq__(self, other) -> bool:
        return isinstance(other, Infinity) and other.sign == self.sign

    def __lt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __le__(self, other) -> bool:
        return self == other or self < other

    def __gt__(self, other) -> bool:
        if isinstance(other, Infinity):
            return self.sign > other.sign
        return self.sign > 0

    def __ge__(self, other) -> bool:
        return self == other or self > other

    def __add__(self, other):
        if isinstance(other, Infinity) and other.sign != self.sign:
            raise ArithmeticError("+oo + -oo is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Infinity):
            return self + Infinity(-other.sign)
        return self

    def __rsub__(self, other):
        return Infinity(-self.sign)

    def __neg__(self):
        return Infinity(-self.sign)


INF = Infinity(1)
NEG_INF = Infinity(-1)

ExtRat = Union[Fraction, Infinity]
Rational = Union[int, Fraction]


@lru_cache(maxsize=256)
def check_prime(p: int) -> int:
    """Return ``p`` if it is prime, else raise :class:`NotPrime`."""
    if not isinstance(p, int) or p < 2:
        raise NotPrime(f"{p!r} is not a prime")
    for d in range(2, isqrt(p) + 1):
        if p % d == 0:
            raise NotPrime(f"{p} is divisible by {d}")
    return p


def ord_int(p: int, n: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord_int of zero")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ord_rat(p: int, q: Rational) -> ExtRat:
    """Exponent of ``p`` in the rational ``q``; ``INF`` when ``q == 0``."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    return Fraction(ord_int(p, q.numerator) - ord_int(p, q.denominator))


def unit_part(p: int, q: Rational) -> Fraction:
    """``q / p**ord_p(q)`` for nonzero ``q``."""
    q = Fraction(q)
    v = int(ord_rat(p, q))
    return q / Fraction(p) ** v


def digit_sum(p: int, n: int) -> int:
    """Sum of the base-``p`` digits of ``n >= 0``."""
    check_prime(p)
    if n < 0:
        raise ValueError("digit_sum needs n >= 0")
    return kernels.digit_sum(p, n)


def ord_factorial(p: int, n: int) -> int:
    """``ord_p(n!)`` via the digit-sum identity ``(n - s_p(n)) / (p - 1)``."""
    if n < 0:
        raise ValueError("ord_factorial needs n >= 0")
    return (n - digit_sum(p, n)) // (p - 1)


def to_digits(p: int, n: int, k: int) -> tuple[int, ...]:
    """First ``k`` base-``p`` digits of ``n mod p**k`` (works for negative ``n``)."""
    n %= p**k
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return tuple(out)


# --------------------------------------------------------------------------
# Elements of C_p on which ord_p(alpha - i) is computable
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalElt:
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))


@dataclass(frozen=True)
class RamifiedShift:
    """``q + u * p**e`` with ``e`` a non-integer rational and ``u`` a unit.

    Only ``ord_p`` of the shift enters any computation, so ``u`` stands for
    any unit of the extension (it is checked to be a p-adic unit on use).
    """

    q: Fraction
    e: Fraction
    u: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        object.__setattr__(self, "e", Fraction(self.e))
        object.__setattr__(self, "u", Fraction(self.u))
        if self.e.denominator < 2:
            raise ValueError(f"RamifiedShift exponent must be non-integral, got {self.e}")
        if self.u == 0:
            raise ValueError("RamifiedShift unit must be nonzero")


@dataclass(frozen=True)
class UnramifiedShift:
    """``q + p**e * v`` with ``e`` an integer and ``v`` a unit whose residue
    lies outside F_p (an unramified quadratic unit).

    Sums ``x + p**e * v`` with ``x`` in Q_p never cancel below
    ``min(ord x, e)`` for odd ``p``, which makes ``ord_p(alpha - i)`` exact.
    """

    q: Fraction
    e: int

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if int(self.e) != self.e:
            raise ValueError("UnramifiedShift exponent must be an integer")
        object.__setattr__(self, "e", int(self.e))


@dataclass(frozen=True)
class TruncatedZp:
    """``p**exponent * sum(d_i p**i)`` known to ``len(digits)`` digits.

    ``exponent`` is 0 for elements of Z_p; a negative exponent (with a
    nonzero leading digit) places the element outside the unit disk.
    """

    p: int
    digits: tuple[int, ...]
    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        check_prime(self.p)
        if len(self.digits) < 1:
            raise ValueError("TruncatedZp needs precision >= 1")
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"digits must lie in [0, {self.p - 1}]")
        if self.exponent > 0:
            raise ValueError("use leading zero digits instead of a positive exponent")
        if self.exponent < 0 and self.digits[0] == 0:
            raise ValueError("negative exponent needs a nonzero leading digit")

    @property
    def precision(self) -> int:
        return len(self.digits)

    @classmethod
    def from_int(cls, p: int, n: int, k: int) -> "TruncatedZp":
        return cls(p, to_digits(p, n, k))

    def mantissa(self) -> int:
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    def approx(self) -> Fraction:
        """The rational ``p**exponent * mantissa`` (exact up to precision)."""
        return Fraction(self.mantissa()) * Fraction(self.p) ** self.exponent


PAdicElement = Union[RationalElt, RamifiedShift, UnramifiedShift, TruncatedZp]


def ord_element(p: int, alpha: PAdicElement) -> ExtRat:
    """``ord_p(alpha)`` itself."""
    if isinstance(alpha, TruncatedZp):
        if alpha.exponent < 0:
            return Fraction(alpha.exponent)
    return ord_shifted(p, alpha, 0)


def ord_shifted(p: int, alpha: PAdicElement, i: int) -> ExtRat:
    """``ord_p(alpha - i)`` for an integer ``i``.

    For :class:`TruncatedZp` an agreement that reaches the precision horizon
    raises :class:`AmbiguousPrecision` instead of returning a clipped value.
    """
    check_prime(p)
    if isinstance(alpha, RationalElt):
        return ord_rat(p, alpha.q - i)
    if isinstance(alpha, RamifiedShift):
        if ord_rat(p, alpha.u) != 0:
            raise UnsupportedElement(f"RamifiedShift unit {alpha.u} is not a {p}-adic unit")
        return min(ord_rat(p, alpha.q - i), alpha.e)
    if isinstance(alpha, UnramifiedShift):
        if p == 2:
            raise UnsupportedElement("unramified shifts are exact only for odd p")
        return min(ord_rat(p, alpha.q - i), Fraction(alpha.e))
    if isinstance(alpha, TruncatedZp):
        if alpha.p != p:
            raise UnsupportedElement(f"element is {alpha.p}-adic, asked for p={p}")
        if alpha.exponent < 0:
            return Fraction(alpha.exponent)
        k = alpha.precision
        x = (alpha.mantissa() - i) % p**k
        if x == 0:
            raise AmbiguousPrecision(k)
        return Fraction(ord_int(p, x))
    raise UnsupportedElement(f"unknown element {alpha!r}")


# --------------------------------------------------------------------------
# Square roots modulo p**k
# --------------------------------------------------------------------------


def _sqrt_mod_p(d: int, p: int) -> int:
    # Tonelli-Shanks
    d %= p
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        return pow(d, (p + 1) // 4, p)
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(d, q, p), pow(d, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def hensel_sqrt(p: int, d: int, k: int) -> int:
    """Square root of ``d`` modulo ``p**k`` for odd ``p`` and a unit ``d``.

    The root lifted is the one whose residue mod ``p`` is the smaller of the
    two, so the result is deterministic.
    """
    check_prime(p)
    if p == 2:
        raise EvenPrimeUnsupported("square roots modulo powers of 2 are not supported")
    if k < 1:
        raise ValueError("k must be >= 1")
    if d % p == 0:
        raise NonResidue(f"{d} is not a {p}-adic unit")
    if pow(d % p, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{d} is not a square modulo {p}")
    x = _sqrt_mod_p(d, p)
    x = min(x, p - x)
    mod = p
    # Newton lift, doubling the precision each step
    while mod < p**k:
        mod = min(mod * mod, p**k)
        x = (x - (x * x - d) * pow(2 * x, -1, mod)) % mod
    return x % p**k


# --------------------------------------------------------------------------
# Series prefixes and the ultrametric norm
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesPrefix:
    """Coefficients ``c_0..c_M`` of a power series; trailing zeros are data."""

    coeffs: tuple[Fraction, ...]
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        check_prime(self.prime)
        if not self.coeffs:
            raise ValueError("SeriesPrefix needs at least one coefficient")

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    def valuations(self) -> list[ExtRat]:
        return [ord_rat(self.prime, c) for c in self.coeffs]


def lognorm(f: SeriesPrefix, rho: Rational) -> Fraction:
    """``log_p ||f||(p**rho) = max_i (i*rho - ord_p(c_i))`` over nonzero ``c_i``."""
    rho = Fraction(rho)
    best = None
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        val = i * rho - ord_rat(f.prime, c)
        if best is None or val > best:
            best = val
    if best is None:
        raise ZeroSeries("all coefficients are zero")
    return best


def lognorm_argmax(f: SeriesPrefix, rho: Rational) -> int:
    """Largest index attaining :func:`lognorm` (the dominant term)."""
    rho = Fraction(rho)
    top = lognorm(f, rho)
    return max(i for i, c in enumerate(f.coeffs) if c != 0 and i * rho - ord_rat(f.prime, c) == top)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"num/den"`` or an integer literal exactly; floats are refused."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, str):
        s = text.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"decimal literal {text!r} is not exact; use num/den")
        return Fraction(s)
    raise ValueError(f"cannot read {text!r} as an exact rational")


def format_rational(q: Union[Fraction, Infinity, int]) -> str:
    if isinstance(q, Infinity):
        return str(q)
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def is_square_rational(q: Fraction) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


def sqrt_rational(q: Fraction) -> Fraction:
    q = Fraction(q)
    if not is_square_rational(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def parse_element(text: str) -> PAdicElement:
    """Parse the compact CLI notation.

    ``rat:Q`` | ``ram:Q:E[:U]`` | ``unr:Q:E`` | ``zp:P:d0,d1,...[:EXP]``.
    A bare rational is read as ``rat``.
    """
    parts = text.split(":")
    tag = parts[0]
    if tag == "rat":
        return RationalElt(parse_rational(parts[1]))
    if tag == "ram":
        u = parse_rational(parts[3]) if len(parts) > 3 else Fraction(1)
        return RamifiedShift(parse_rational(parts[1]), parse_rational(parts[2]), u)
    if tag == "unr":
        return UnramifiedShift(parse_rational(parts[1]), int(parts[2]))
    if tag == "zp":
        exp = int(parts[3]) if len(parts) > 3 else 0
        return TruncatedZp(int(parts[1]), tuple(int(d) for d in parts[2].split(",")), exp)
    if len(parts) == 1:
        return RationalElt(parse_rational(tag))
    raise ValueError(f"unknown element notation {text!r}")


def element_to_json(alpha: PAdicElement) -> dict:
    if isinstance(alpha, RationalElt):
        return {"type": "rat", "q": format_rational(alpha.q)}
    if isinstance(alpha, RamifiedShift):
        return {"type": "ram", "q": format_rational(alpha.q), "e": format_rational(alpha.e), "u": format_rational(alpha.u)}
    if isinstance(alpha, UnramifiedShift):
        return {"type": "unr", "q": format_rational(alpha.q), "e": alpha.e}
    if isinstance(alpha, TruncatedZp):
        return {"type": "zp", "p": alpha.p, "digits": list(alpha.digits), "exponent": alpha.exponent}
    raise TypeError(alpha)


def element_from_json(obj: Union[dict, str]) -> PAdicElement:
    if isinstance(obj, str):
        return parse_element(obj)
    tag = obj.get("type")
    if tag == "rat":
        return RationalElt(parse_rational(obj["q"]))
    if tag == "ram":
        return RamifiedShift(parse_rational(obj["q"]), parse_rational(obj["e"]), parse_rational(obj.get("u", "1")))
    if tag == "unr":
        return UnramifiedShift(parse_rational(obj["q"]), int(obj["e"]))
    if tag == "zp":
        return TruncatedZp(int(obj["p"]), tuple(obj["digits"]), int(obj.get("exponent", 0)))
    raise ValueError(f"unknown element type {tag!r}")


def describe_element(alpha: PAdicElement) -> str:
    if isinstance(alpha, RationalElt):
        return format_rational(alpha.q)
    if isinstance(alpha, RamifiedShift):
        return f"{format_rational(alpha.q)} + {format_rational(alpha.u)}*p^({format_rational(alpha.e)})"
    if isinstance(alpha, UnramifiedShift):
        return f"{format_rational(alpha.q)} + p^{alpha.e}*v (v unramified unit)"
    digits = "".join(str(d) if alpha.p <= 10 else f"[{d}]" for d in reversed(alpha.digits[:12]))
    return f"...{digits} (p={alpha.p}, K={alpha.precision}, exp={alpha.exponent})"

"""The second-order ODE satisfied by ``f`` when ``A f^2 + B g^2 = 1``.

From ``A'f + 2Af' = hg`` and ``B'g + 2Bg' = -hf`` one eliminates ``g``::

    4ABh f'' + (6A'Bh + 2AB'h - 4ABh') f' + (A'B'h + 2A''Bh - 2BA'h' + h^3) f = 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from padicfe.errors import BoundViolation, GZeroAtOrigin, InsufficientJet, ZeroInput
from padicfe.poly import Poly, falling_factorial
from padicfe.valuation import format_rational


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients ``c_i = f^(i)(0) / i!``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a jet needs at least one coefficient")

    def __len__(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_derivatives(cls, derivs: Sequence) -> "Jet":
        from math import factorial

        return cls(Fraction(d) / factorial(i) for i, d in enumerate(derivs))


@dataclass(frozen=True)
class OdeE:
    """``Q2 y'' + Q1 y' + Q0 y = 0``."""

    Q2: Poly
    Q1: Poly
    Q0: Poly

    def __post_init__(self):
        if self.Q2.is_zero():
            raise ZeroInput("the y'' coefficient must not vanish identically")

    def by_order(self) -> tuple[Poly, Poly, Poly]:
        return (self.Q0, self.Q1, self.Q2)


@dataclass(frozen=True)
class CharData:
    n_of_e: int
    p_e: Poly
    contributing: frozenset[int]


def h_degree_bound(A: Poly, B: Poly) -> Fraction:
    """``(deg A + deg B)/2 - 1``; a negative value forces ``h == 0``."""
    if A.is_zero() or B.is_zero():
        raise ZeroInput("A and B must be nonzero")
    return Fraction(A.degree + B.degree, 2) - 1


def h_from_jets(A: Poly, B: Poly, fjet: Jet, gjet: Jet) -> Poly:
    """Truncated series of ``(A'f + 2Af') / g`` up to the degree bound.

    Terms above the bound are not computed; for genuine solutions they
    vanish.  Jet entries are only demanded where they meet a nonzero
    multiplier.
    """
    bound = h_degree_bound(A, B)
    if gjet.coeffs[0] == 0:
        raise GZeroAtOrigin("g(0) must be nonzero")
    if bound < 0:
        return Poly()
    top = bound.numerator // bound.denominator
    dA = A.derivative()

    def f_at(idx: int, mult: Fraction) -> Fraction:
        if mult == 0:
            return Fraction(0)
        if idx >= len(fjet):
            raise InsufficientJet(f"f needs Taylor coefficient c_{idx}")
        return mult * fjet.coeffs[idx]

    num = []
    for m in range(top + 1):
        acc = Fraction(0)
        for k in range(m + 1):
            acc += f_at(m - k, dA.coeff(k))
            acc += f_at(m - k + 1, 2 * A.coeff(k) * (m - k + 1))
        num.append(acc)

    g0 = gjet.coeffs[0]
    h: list[Fraction] = []
    for m in range(top + 1):
        acc = num[m]
        for k in range(1, m + 1):
            if h[m - k] == 0:
                continue
            if k >= len(gjet):
                raise InsufficientJet(f"g needs Taylor coefficient c_{k}")
            acc -= gjet.coeffs[k] * h[m - k]
        h.append(acc / g0)
    return Poly(h)


def build_ode(A: Poly, B: Poly, h: Poly) -> OdeE:
    if A.is_zero() or B.is_zero() or h.is_zero():
        raise ZeroInput("A, B and h must all be nonzero")
    dA, dB, dh = A.derivative(), B.derivative(), h.derivative()
    ddA = dA.derivative()
    Q2 = 4 * A * B * h
    Q1 = 6 * dA * B * h + 2 * A * dB * h - 4 * A * B * dh
    Q0 = dA * dB * h + 2 * ddA * B * h - 2 * B * dA * dh + h * h * h
    return OdeE(Q2, Q1, Q0)


def char_data(E: OdeE) -> CharData:
    """Characteristic number ``N(E) = max_j (deg Q_j - j)`` and polynomial
    ``P_E(xi) = sum over attaining j of lead(Q_j) * (xi)_j``."""
    shifts = {j: Q.degree - j for j, Q in enumerate(E.by_order()) if not Q.is_zero()}
    n_of_e = max(shifts.values())
    contributing = frozenset(j for j, s in shifts.items() if s == n_of_e)
    p_e = Poly()
    for j in sorted(contributing):
        p_e = p_e + falling_factorial(j).scale(E.by_order()[j].lead)
    return CharData(n_of_e, p_e, contributing)


def closed_form_pe(eta: int, chi: int, mu: int, a, b, hlead) -> Poly:
    """Characteristic polynomial in terms of degrees and leading coefficients of A, B, h."""
    a, b, hlead = Fraction(a), Fraction(b), Fraction(hlead)
    bound = Fraction(eta + chi, 2) - 1
    if mu > bound:
        raise BoundViolation(f"deg h = {mu} exceeds (deg A + deg B)/2 - 1 = {format_rational(bound)}")
    scale = a * b * hlead
    ff2 = falling_factorial(2).scale(4)
    if mu == bound:
        inner = ff2 + Poly([eta**2 + hlead**2 / (a * b), 4 * (eta + 1)])
    else:
        inner = ff2 + Poly([eta * chi + 2 * eta * (eta - 1) - 2 * eta * mu, 6 * eta + 2 * chi - 4 * mu])
    return inner.scale(scale)

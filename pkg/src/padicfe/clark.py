"""Weights of p-adic numbers and the partial sums that converge to them.

The weight of ``alpha`` is the Cesaro limit of ``ord_p(alpha - i)`` over
integers ``i``.  Closed forms live next to the exhaustive scans that check
them; scans run through :mod:`padicfe.kernels`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from padicfe import kernels
from padicfe.errors import PoleHit, RootMismatch, UnsupportedElement
from padicfe.poly import Poly
from padicfe.valuation import (
    INF,
    ExtRat,
    PAdicElement,
    RamifiedShift,
    RationalElt,
    TruncatedZp,
    UnramifiedShift,
    check_prime,
    ord_rat,
    ord_shifted,
)


class WeightCase(enum.Enum):
    NATURAL_OR_ZP = "NaturalOrZp"
    DISK_NOT_ZP = "DiskNotZp"
    OUTSIDE_DISK = "OutsideDisk"


@dataclass(frozen=True)
class WeightReport:
    alpha: PAdicElement
    case: WeightCase
    r_alpha: ExtRat
    weight: Fraction
    m_start: int
    r_floor: Optional[int] = None
    r_frac: Optional[Fraction] = None
    # value obtained with a minus sign on the fractional-part term
    displayed_sign_weight: Optional[Fraction] = None
    note: str = ""


@dataclass(frozen=True)
class ScanReport:
    N: int
    mean: Fraction
    target: Fraction
    terms: int = 0
    abs_gap: Fraction = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "abs_gap", abs(self.mean - self.target))


# --------------------------------------------------------------------------
# Digit-density proposition
# --------------------------------------------------------------------------


def sumx_closed(p: int, s: int) -> Fraction:
    """Limit of ``(1/N) * sum_{j<=N, ord_p(j)<=s} ord_p(j)``."""
    check_prime(p)
    if s < 0:
        raise ValueError("s must be >= 0")
    P = Fraction(p)
    return (1 - P**-s) / (p - 1) - s / P ** (s + 1)


def _checkpoints(N: int, trace: Optional[Sequence[int]]) -> list[int]:
    pts = sorted({n for n in (trace or ()) if 1 <= n < N} | {N})
    return pts


def sumx_empirical(p: int, s: int, N: int, trace: Optional[Sequence[int]] = None) -> ScanReport | list[ScanReport]:
    """Exhaustive average over ``1 <= j <= N`` of ``ord_p(j)``, restricted to ``ord_p(j) <= s``.

    With ``trace`` the scan is split at those N and one report per
    checkpoint is returned (the last one is for ``N``).
    """
    check_prime(p)
    if N < 1:
        raise ValueError("N must be >= 1")
    target = sumx_closed(p, s)
    reports = []
    total, prev = 0, 0
    for stop in _checkpoints(N, trace):
        # a - i*b with a = 0, b = -1 scans ord_p(i)
        part, _ = kernels.ord_scan(p, 0, -1, prev + 1, stop, s)
        total += part
        prev = stop
        reports.append(ScanReport(stop, Fraction(total, stop), target, stop))
    return reports if trace is not None else reports[-1]


# --------------------------------------------------------------------------
# r(alpha) and the weight
# --------------------------------------------------------------------------


def _in_zp(p: int, q: Fraction) -> bool:
    return q.denominator % p != 0


def r_alpha(p: int, alpha: PAdicElement) -> ExtRat:
    """``sup_{i >= 0} ord_p(alpha - i)``."""
    check_prime(p)
    if isinstance(alpha, TruncatedZp):
        raise UnsupportedElement("r(alpha) of a truncated Z_p element is +oo by density; not computed")
    if isinstance(alpha, RationalElt):
        return INF if _in_zp(p, alpha.q) else ord_rat(p, alpha.q)
    if isinstance(alpha, (RamifiedShift, UnramifiedShift)):
        if isinstance(alpha, RamifiedShift) and ord_rat(p, alpha.u) != 0:
            raise UnsupportedElement(f"RamifiedShift unit {alpha.u} is not a {p}-adic unit")
        if isinstance(alpha, UnramifiedShift) and p == 2:
            raise UnsupportedElement("unramified shifts are exact only for odd p")
        e = Fraction(alpha.e)
        if _in_zp(p, alpha.q):
            # integers approximate q arbitrarily well, so the cap e is attained
            return e
        return min(ord_rat(p, alpha.q), e)
    raise UnsupportedElement(f"unknown element {alpha!r}")


def _disk_weight(p: int, r: Fraction, sign: int = 1) -> Fraction:
    fl = r.numerator // r.denominator
    frac = r - fl
    P = Fraction(p)
    return (1 - P**-fl) / (p - 1) + sign * frac * P ** (-fl - 1)


def weight(p: int, alpha: PAdicElement) -> WeightReport:
    """Closed-form weight of ``alpha`` with its case split."""
    check_prime(p)
    if isinstance(alpha, TruncatedZp):
        if alpha.p != p:
            raise UnsupportedElement(f"element is {alpha.p}-adic, asked for p={p}")
        if alpha.exponent < 0:
            v = Fraction(alpha.exponent)
            return WeightReport(alpha, WeightCase.OUTSIDE_DISK, v, v, 0, displayed_sign_weight=v)
        w = Fraction(1, p - 1)
        return WeightReport(alpha, WeightCase.NATURAL_OR_ZP, INF, w, 0, displayed_sign_weight=w)

    r = r_alpha(p, alpha)
    if r == INF:
        w = Fraction(1, p - 1)
        m = 0
        q = alpha.q
        if q.denominator == 1 and q >= 0:
            m = int(q) + 1  # alpha - i vanishes at i = alpha
        return WeightReport(alpha, WeightCase.NATURAL_OR_ZP, INF, w, m, displayed_sign_weight=w)
    if r < 0:
        return WeightReport(alpha, WeightCase.OUTSIDE_DISK, r, r, 0, displayed_sign_weight=r)

    fl = r.numerator // r.denominator
    frac = r - fl
    w = _disk_weight(p, r, +1)
    shown = _disk_weight(p, r, -1)
    note = ""
    if frac:
        note = (
            f"closed form uses +<r>p^(-[r]-1) = {w}; "
            f"the minus-sign variant gives {shown} and is contradicted by the exhaustive scan"
        )
    return WeightReport(alpha, WeightCase.DISK_NOT_ZP, r, w, 0, fl, frac, shown, note)


def _scan_sum(p: int, alpha: PAdicElement, m: int, stop: int) -> Fraction:
    """Exact ``sum_{i=m}^{stop} ord_p(alpha - i)``."""
    count = stop - m + 1
    if count <= 0:
        return Fraction(0)
    if isinstance(alpha, TruncatedZp):
        if alpha.exponent < 0:
            return count * Fraction(alpha.exponent)
        return sum((ord_shifted(p, alpha, i) for i in range(m, stop + 1)), Fraction(0))

    q = alpha.q
    if isinstance(alpha, RationalElt):
        if not _in_zp(p, q):
            return count * ord_rat(p, q)
        total, capped = kernels.ord_scan(p, q.numerator, q.denominator, m, stop)
        if capped:
            raise PoleHit(f"alpha - i vanishes for some i in [{m}, {stop}]")
        return Fraction(total)

    # ramified / unramified: min(ord(q - i), e)
    if isinstance(alpha, RamifiedShift) and ord_rat(p, alpha.u) != 0:
        raise UnsupportedElement(f"RamifiedShift unit {alpha.u} is not a {p}-adic unit")
    if isinstance(alpha, UnramifiedShift) and p == 2:
        raise UnsupportedElement("unramified shifts are exact only for odd p")
    e = Fraction(alpha.e)
    if not _in_zp(p, q):
        return count * min(ord_rat(p, q), e)
    if e < 0:
        return count * e
    # summands are ord(q - i) when that is < e, and e otherwise
    cap = (e.numerator // e.denominator) if e.denominator > 1 else int(e) - 1
    total, capped = kernels.ord_scan(p, q.numerator, q.denominator, m, stop, cap)
    return total + capped * e


def weight_empirical(
    p: int, alpha: PAdicElement, m: int, N: int, trace: Optional[Sequence[int]] = None
) -> ScanReport | list[ScanReport]:
    """Exact mean of ``ord_p(alpha - i)`` over ``i = m..N``.

    The mean divides by the number of summands ``N - m + 1``.
    """
    check_prime(p)
    if N < m:
        raise ValueError("need N >= m")
    target = weight(p, alpha).weight
    reports = []
    total, prev = Fraction(0), m - 1
    for stop in _checkpoints(N, trace):
        if stop < m:
            continue
        total += _scan_sum(p, alpha, prev + 1, stop)
        prev = stop
        count = stop - m + 1
        reports.append(ScanReport(stop, total / count, target, count))
    return reports if trace is not None else reports[-1]


# --------------------------------------------------------------------------
# Liouville defect
# --------------------------------------------------------------------------

_LOG_DEN = 64


def log_lower(p: int, n: int, den: int = _LOG_DEN) -> Fraction:
    """Largest ``a/den`` with ``p**a <= n**den``: a certified lower bound of ``log_p n``."""
    if n < 1:
        raise ValueError("log of n < 1")
    big = n**den
    # float guess only seeds the search; the loops below make it exact
    a = max(0, int(den * math.log(n) / math.log(p)) - 1)
    pa = p**a
    while pa * p <= big:
        pa *= p
        a += 1
    while pa > big:
        pa //= p
        a -= 1
    return Fraction(a, den)


def liouville_scan(p: int, alpha: PAdicElement, k: int, N: int) -> Fraction:
    """Certified upper bound of ``max_{2<=n<=N} ord_p(alpha - n) - k log_p(n)``."""
    check_prime(p)
    if not isinstance(alpha, RationalElt):
        raise UnsupportedElement("Liouville scans are implemented for rational alpha only")
    q = alpha.q
    if not _in_zp(p, q) or (q.denominator == 1 and q >= 0):
        raise UnsupportedElement("alpha must lie in d(0,1) and not be a natural number")
    if N < 2:
        raise ValueError("N must be >= 2")
    best = None
    for n in range(2, N + 1):
        v = ord_rat(p, q - n)
        val = v - k * log_lower(p, n)
        if best is None or val > best:
            best = val
    return best


def liouville_running_max(p: int, alpha: PAdicElement, k: int, checkpoints: Sequence[int]) -> list[Fraction]:
    return [liouville_scan(p, alpha, k, N) for N in checkpoints]


# --------------------------------------------------------------------------
# Weights of polynomials
# --------------------------------------------------------------------------

_SHIFT_TYPES = (RamifiedShift, UnramifiedShift)


def _check_roots(p: int, P: Poly, roots: Sequence[PAdicElement]) -> None:
    deg = P.degree
    if len(roots) != deg:
        raise RootMismatch(f"{len(roots)} roots supplied for a degree-{deg} polynomial")
    rational = [r.q for r in roots if isinstance(r, RationalElt)]
    truncated = [r for r in roots if isinstance(r, TruncatedZp)]
    shifts = [r for r in roots if isinstance(r, _SHIFT_TYPES)]

    rest, rem = P, Poly()
    for q in rational:
        rest, rem = rest.divmod(Poly([-q, 1]))
        if not rem.is_zero():
            raise RootMismatch(f"{q} is not a root of {P}")

    if truncated:
        # lead * prod(x - approx) must agree with the cofactor up to the precision
        approx = [t.approx() for t in truncated]
        floor = sum(min(0, t.exponent) for t in truncated)
        prec = min(t.precision + t.exponent for t in truncated)
        if shifts:
            raise RootMismatch("mixing truncated and shifted roots is not supported")
        target = rest
        built = Poly.from_roots(approx, lead=rest.lead)
        tol = ord_rat(p, rest.lead) + prec + floor
        for c_built, c_true in zip(built.coeffs, target.coeffs):
            if ord_rat(p, c_built - c_true) < tol:
                raise RootMismatch(f"truncated roots do not reproduce {P} to precision {prec}")
        return

    if shifts:
        if len(shifts) != 2 or shifts[0] != shifts[1]:
            raise RootMismatch("shifted roots must come as one conjugate pair")
        s = shifts[0]
        monic = rest.scale(1 / rest.lead)
        # (x - q)^2 - delta with ord(delta) = 2e
        if monic.coeff(1) != -2 * s.q:
            raise RootMismatch(f"conjugate pair centred at {s.q} does not match {P}")
        delta = s.q**2 - monic.coeff(0)
        if delta == 0 or ord_rat(p, delta) != 2 * Fraction(s.e):
            raise RootMismatch(f"conjugate pair with ord(shift) = {s.e} does not match {P}")
        if isinstance(s, UnramifiedShift):
            # delta / p^(2e) must be a non-residue unit
            u = delta / Fraction(p) ** (2 * s.e)
            if pow(u.numerator * u.denominator % p, (p - 1) // 2, p) == 1:
                raise RootMismatch("discriminant is a square: the roots are not unramified-inert")


def poly_weight(p: int, P: Poly, roots: Sequence[PAdicElement]) -> Fraction:
    """``ord_p(lead P) + sum of weights of the roots``; roots are re-verified first."""
    check_prime(p)
    if P.is_zero():
        raise RootMismatch("the zero polynomial has no weight")
    _check_roots(p, P, roots)
    return ord_rat(p, P.lead) + sum((weight(p, r).weight for r in roots), Fraction(0))


def poly_weight_empirical(p: int, P: Poly, m: int, N: int, target: Optional[Fraction] = None) -> ScanReport:
    """Exact mean of ``ord_p(P(n))`` over ``n = m..N``."""
    check_prime(p)
    c, ints = P.integer_scaled()
    total, capped = kernels.poly_ord_scan(p, ints, m, N)
    if capped:
        raise PoleHit(f"P vanishes at some n in [{m}, {N}]")
    count = N - m + 1
    mean = ord_rat(p, c) + Fraction(total, count)
    return ScanReport(N, mean, target if target is not None else mean, count)


def natural_root_bound(roots: Sequence[PAdicElement]) -> int:
    """Smallest ``m`` beyond every natural-number root."""
    m = 0
    for r in roots:
        if isinstance(r, RationalElt) and r.q.denominator == 1 and r.q >= 0:
            m = max(m, int(r.q) + 1)
    return m


# --------------------------------------------------------------------------
# Partial-fraction identity
# --------------------------------------------------------------------------


def check_zeq2(alpha: Fraction, n: int) -> bool:
    """Exact check of the partial-fraction expansion of ``1 / (alpha)_{n+1}``.

    ``(-1)^(n+1) / prod_{j<=n}(alpha - j) == sum_{i+j=n} (-1)^(j+1) / (i! j! (alpha - j))``.
    """
    alpha = Fraction(alpha)
    if alpha.denominator == 1 and 0 <= alpha <= n:
        raise PoleHit(f"alpha = {alpha} makes a denominator vanish")
    prod = Fraction(1)
    for j in range(n + 1):
        prod *= alpha - j
    lhs = Fraction((-1) ** (n + 1)) / prod
    rhs = sum(
        (Fraction((-1) ** (j + 1), factorial(n - j) * factorial(j)) / (alpha - j) for j in range(n + 1)),
        Fraction(0),
    )
    return lhs == rhs

"""Decision pipeline for ``A f^2 + B g^2 = 1`` and the JSON instance schema.

Given ``p``, ``A``, ``B`` and Taylor jets of ``f`` and ``g`` the pipeline ends
in one of four verdicts:

* ``ParityObstruction`` -- ``deg A`` and ``deg B`` have different parity;
* ``HZeroPolynomialOnly`` -- the multiplier ``h`` vanishes, so ``f`` and ``g``
  solve first-order equations and are polynomials;
* ``GrowthContradiction`` -- the coefficient recurrence bounds the growth of
  ``ord_p(c_n)`` by a finite weight limit ``L``, which no transcendental
  entire ``f`` can satisfy;
* ``Inconclusive`` -- some step is unsupported; the reason names it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from padicfe.clark import natural_root_bound, poly_weight, poly_weight_empirical
from padicfe.errors import DomainError, InvalidInstance, ZeroInput
from padicfe.ode import CharData, Jet, build_ode, h_degree_bound, h_from_jets
from padicfe.poly import Poly, rational_roots
from padicfe.recurrence import GrowthReport, Recurrence, default_lambda_grid, derive_recurrence, forward_solve, growth_report
from padicfe.valuation import (
    PAdicElement,
    RamifiedShift,
    RationalElt,
    TruncatedZp,
    UnramifiedShift,
    check_prime,
    describe_element,
    format_rational,
    hensel_sqrt,
    ord_int,
    parse_rational,
    to_digits,
)

HYPOTHESIS_NOTE = (
    "jets are exact rationals: f^(i)(0) for 0 <= i <= (deg A + deg B)/2 - 1 and "
    "g^(i)(0) for 0 <= i < (deg A + deg B)/2 - 1 are algebraic, and g(0) != 0"
)
ROOT_PRECISION = 48


# --------------------------------------------------------------------------
# Instance
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemInstance:
    p: int
    A: Poly
    B: Poly
    fjet: Optional[Jet] = None
    gjet: Optional[Jet] = None
    scan_N: int = 0
    lambda_grid: tuple[Fraction, ...] = ()
    series_terms: int = 60

    def __post_init__(self):
        check_prime(self.p)
        if self.A.is_zero() or self.B.is_zero():
            raise InvalidInstance("A and B must be nonzero")
        if (self.fjet is None) != (self.gjet is None):
            raise InvalidInstance("supply both jets or neither")
        if self.gjet is not None:
            if self.gjet.coeffs[0] == 0:
                raise InvalidInstance("g(0) must be nonzero")
            f0, g0 = self.fjet.coeffs[0], self.gjet.coeffs[0]
            if self.A(0) * f0**2 + self.B(0) * g0**2 != 1:
                raise InvalidInstance("A(0) f(0)^2 + B(0) g(0)^2 must equal 1")


def _rat_list(values) -> list[Fraction]:
    if not isinstance(values, list):
        raise InvalidInstance(f"expected a list of rationals, got {values!r}")
    try:
        return [parse_rational(v) for v in values]
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInstance(str(exc)) from None


def poly_from_json(values) -> Poly:
    return Poly(_rat_list(values))


def poly_to_json(P: Poly) -> list[str]:
    return [format_rational(c) for c in P.coeffs] or ["0"]


def instance_from_dict(obj: dict) -> ProblemInstance:
    try:
        p = int(obj["p"])
        A = poly_from_json(obj["A"])
        B = poly_from_json(obj["B"])
    except KeyError as exc:
        raise InvalidInstance(f"missing field {exc.args[0]!r}") from None
    fjet = Jet(_rat_list(obj["fjet"])) if obj.get("fjet") is not None else None
    gjet = Jet(_rat_list(obj["gjet"])) if obj.get("gjet") is not None else None
    grid = tuple(_rat_list(obj.get("lambda_grid", [])))
    return ProblemInstance(
        p, A, B, fjet, gjet, int(obj.get("scan_N", 0)), grid, int(obj.get("series_terms", 60))
    )


def instance_to_dict(inst: ProblemInstance) -> dict:
    out: dict = {"p": inst.p, "A": poly_to_json(inst.A), "B": poly_to_json(inst.B)}
    if inst.fjet is not None:
        out["fjet"] = [format_rational(c) for c in inst.fjet.coeffs]
        out["gjet"] = [format_rational(c) for c in inst.gjet.coeffs]
    out["scan_N"] = inst.scan_N
    out["lambda_grid"] = [format_rational(x) for x in inst.lambda_grid]
    out["series_terms"] = inst.series_terms
    return out


def load_instance(path: Union[str, Path]) -> ProblemInstance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


# --------------------------------------------------------------------------
# Roots of the characteristic polynomial
# --------------------------------------------------------------------------


class UnsupportedRoots(DomainError):
    pass


def _zp_root(p: int, num_int: int, num_val: int, num_prec: int, den: int) -> TruncatedZp:
    """``num / den`` as a truncated p-adic number, where ``num`` is known mod ``p**num_prec``."""
    w = ord_int(p, den)
    den_unit = den // p**w
    if num_val >= num_prec:
        raise UnsupportedRoots("root precision exhausted; cancellation too deep")
    mant_prec = num_prec - num_val
    mant = (num_int // p**num_val) * pow(den_unit, -1, p**mant_prec) % p**mant_prec
    exponent = num_val - w
    if exponent >= 0:
        digits = (0,) * exponent + to_digits(p, mant, mant_prec)
        return TruncatedZp(p, digits)
    return TruncatedZp(p, to_digits(p, mant, mant_prec), exponent)


def pe_roots(p: int, P: Poly, precision: int = ROOT_PRECISION) -> list[PAdicElement]:
    """Roots of a polynomial of degree <= 2 as elements with computable weights."""
    if P.degree > 2:
        raise UnsupportedRoots(f"degree {P.degree} characteristic polynomial")
    rat = rational_roots(P)
    if len(rat) == P.degree:
        return [RationalElt(r) for r in rat]
    # irreducible quadratic over Q
    _, (c, b, a) = P.integer_scaled()
    D = b * b - 4 * a * c
    v = ord_int(p, D)
    u = D // p**v
    q = Fraction(-b, 2 * a)
    if v % 2 == 1:
        e = Fraction(v, 2) - ord_int(p, 2 * a)
        root = RamifiedShift(q, e)
        return [root, root]
    if p == 2:
        raise UnsupportedRoots("p = 2 with an even-valuation discriminant")
    e = v // 2 - ord_int(p, 2 * a)
    if pow(u % p, (p - 1) // 2, p) != 1:
        root = UnramifiedShift(q, e)
        return [root, root]
    # split in Q_p: sqrt(D) = p^(v/2) * s with s known mod p^precision
    K = precision + v // 2
    s = hensel_sqrt(p, u % p**precision, precision)
    out = []
    for sign in (1, -1):
        num = (-b + sign * p ** (v // 2) * s) % p**K
        if num == 0:
            raise UnsupportedRoots("root precision exhausted; cancellation too deep")
        out.append(_zp_root(p, num, ord_int(p, num), K, 2 * a))
    return out


# --------------------------------------------------------------------------
# Verdicts
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ParityObstruction:
    deg_a: int
    deg_b: int
    kind: str = "ParityObstruction"

    def render(self) -> list[str]:
        return [
            f"verdict: {self.kind}",
            f"deg A = {self.deg_a}, deg B = {self.deg_b} have different parity;",
            "A f^2 + B g^2 = 1 has no solutions in entire functions beyond constants",
        ]


@dataclass(frozen=True)
class HZeroPolynomialOnly:
    reason: str
    h: Poly = field(default_factory=Poly)
    kind: str = "HZeroPolynomialOnly"

    def render(self) -> list[str]:
        return [
            f"verdict: {self.kind}",
            self.reason,
            "h = 0: f and g solve first-order equations, so every entire solution is a polynomial",
        ]


@dataclass(frozen=True)
class GrowthContradiction:
    L: Fraction
    char: CharData
    report: GrowthReport
    h: Poly
    recurrence: Recurrence
    roots: tuple[PAdicElement, ...]
    empirical: Optional[object] = None
    kind: str = "GrowthContradiction"

    def render(self) -> list[str]:
        rep = self.report
        lines = [
            f"verdict: {self.kind}",
            "no transcendental entire solution with these data (f, g must be polynomials)",
            f"h = {self.h.pretty('x')}",
            f"N(E) = {self.char.n_of_e}",
            f"P_E(xi) = {self.char.p_e.pretty('xi')}",
            f"gamma = {format_rational(self.recurrence.gamma)}, t = {self.recurrence.t}",
            "roots of P_E: " + "; ".join(describe_element(r) for r in self.roots),
            f"L = {format_rational(self.L)}",
        ]
        if self.empirical is not None:
            e = self.empirical
            lines.append(
                f"empirical weight of P_0 over n <= {e.N}: {format_rational(e.mean)} (gap {float(e.abs_gap):.3e})"
            )
        ls = "none" if rep.lambda_star is None else format_rational(rep.lambda_star)
        lines += [
            f"series window: c_0..c_{rep.window[1]}",
            f"lambda_star (window proxy) = {ls}",
            f"entire-consistent on window: {rep.entire_consistent}",
            f"growth witnesses checked: {len(rep.witnesses)}, violations: {len(rep.violations)}",
            "assumption: terms of h above the degree bound vanish (not checked on finite jets)",
            f"hypothesis: {HYPOTHESIS_NOTE}",
        ]
        return lines


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind: str = "Inconclusive"

    def render(self) -> list[str]:
        return [f"verdict: {self.kind}", f"reason: {self.reason}"]


Verdict = Union[ParityObstruction, HZeroPolynomialOnly, GrowthContradiction, Inconclusive]


def parity_check(A: Poly, B: Poly) -> bool:
    """True iff ``deg A`` and ``deg B`` differ in parity."""
    if A.is_zero() or B.is_zero():
        raise ZeroInput("A and B must be nonzero")
    return (A.degree - B.degree) % 2 == 1


def analyze(inst: ProblemInstance) -> Verdict:
    p = inst.p
    if parity_check(inst.A, inst.B):
        return ParityObstruction(inst.A.degree, inst.B.degree)
    bound = h_degree_bound(inst.A, inst.B)
    if bound < 0:
        return HZeroPolynomialOnly(f"(deg A + deg B)/2 - 1 = {format_rational(bound)} < 0 forces h = 0")
    if inst.fjet is None:
        return Inconclusive("jets of f and g are needed to compute h")
    try:
        h = h_from_jets(inst.A, inst.B, inst.fjet, inst.gjet)
    except DomainError as exc:
        return Inconclusive(f"{type(exc).__name__}: {exc}")
    if h.is_zero():
        return HZeroPolynomialOnly("h computed from the jets is identically zero", h)
    try:
        E = build_ode(inst.A, inst.B, h)
        R = derive_recurrence(p, E)
        P0 = R.P[0]
        roots = pe_roots(p, P0)
        L = poly_weight(p, P0, roots)
        empirical = None
        if inst.scan_N > 0:
            m = natural_root_bound(roots)
            empirical = poly_weight_empirical(p, P0, m, max(inst.scan_N, m), target=L)
        series = forward_solve(R, inst.fjet, max(inst.series_terms, len(inst.fjet) - 1))
        grid = inst.lambda_grid or tuple(default_lambda_grid())
        report = growth_report(p, R, series, L, grid)
    except DomainError as exc:
        return Inconclusive(f"{type(exc).__name__}: {exc}")
    if report.violations:
        return Inconclusive(f"{len(report.violations)} growth-inequality violations")
    return GrowthContradiction(L, R.char, report, h, R, tuple(roots), empirical)

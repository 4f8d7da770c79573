"""Coefficient recurrences of second-order ODEs and valuation growth of their solutions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from padicfe.errors import FreeParameter, Inconsistent, NotASolution
from padicfe.ode import CharData, Jet, OdeE, char_data
from padicfe.poly import Poly, falling_factorial, gamma_normalize
from padicfe.valuation import INF, ExtRat, SeriesPrefix, check_prime, ord_rat


@dataclass(frozen=True)
class Recurrence:
    """``P_t(n) c_{n+t} + ... + P_1(n) c_{n+1} + P_0(n) c_n = 0`` for ``n >= valid_from``.

    The polynomials are already multiplied by ``gamma``; ``P[0] == gamma * P_E``.
    """

    p: int
    t: int
    P: tuple[Poly, ...]
    gamma: Fraction
    origin: OdeE
    char: CharData
    valid_from: int = 0

    def __call__(self, n: int, coeffs: Sequence[Fraction]) -> Fraction:
        """Left-hand side at ``n`` for the given coefficient sequence."""
        return sum((Pi(n) * coeffs[n + i] for i, Pi in enumerate(self.P) if not Pi.is_zero()), Fraction(0))


def derive_recurrence(p: int, E: OdeE) -> Recurrence:
    """Match the ``x^(n + N(E))`` coefficients of ``Q2 y'' + Q1 y' + Q0 y``.

    A term ``q_k x^k`` of ``Q_j`` lands on ``c_{n+s}`` with ``s = N(E) + j - k``
    and multiplier ``q_k (n + s)_j``.  For ``n + N(E) < 0`` the multipliers
    vanish identically, so the relation holds for every ``n >= 0``.
    """
    check_prime(p)
    cd = char_data(E)
    N = cd.n_of_e
    parts: dict[int, Poly] = {}
    for j, Q in enumerate(E.by_order()):
        ff = falling_factorial(j)
        for k, q in enumerate(Q.coeffs):
            if q == 0:
                continue
            s = N + j - k
            parts[s] = parts.get(s, Poly()) + ff.shift(s).scale(q)
    t = max(s for s, P in parts.items() if not P.is_zero()) if parts else 0
    fam = [parts.get(s, Poly()) for s in range(t + 1)]
    if fam[0] != cd.p_e:
        raise AssertionError("lowest recurrence coefficient differs from the characteristic polynomial")
    gamma, scaled = gamma_normalize(p, fam)
    return Recurrence(p, t, tuple(scaled), gamma, E, cd)


def _constraint(E: OdeE, k: int) -> dict[int, Fraction]:
    """Coefficient of ``x^k`` in ``Q2 y'' + Q1 y' + Q0 y`` as ``{index: multiplier}``."""
    out: dict[int, Fraction] = {}
    for j, Q in enumerate(E.by_order()):
        for l, q in enumerate(Q.coeffs):
            if q == 0:
                continue
            idx = k - l + j
            if idx < j:  # (idx)_j vanishes, or the index is negative
                continue
            mult = q
            for r in range(j):
                mult *= idx - r
            out[idx] = out.get(idx, Fraction(0)) + mult
    return {i: m for i, m in out.items() if m != 0}


def _reach(E: OdeE) -> int:
    """Largest index offset ``j - l`` over nonzero terms ``q_l x^l`` of ``Q_j``."""
    return max(j - l for j, Q in enumerate(E.by_order()) for l, q in enumerate(Q.coeffs) if q)


def forward_solve(R: Recurrence, init: Jet, M: int) -> SeriesPrefix:
    """Coefficients ``c_0..c_M`` of the formal solution starting with ``init``.

    Constraints are processed in increasing order; each must either pin down
    exactly one new coefficient or be consistent with the known ones.
    """
    E = R.origin
    if M < len(init) - 1:
        raise ValueError("M must cover the initial jet")
    c: list[Optional[Fraction]] = [None] * (M + 1)
    for i, v in enumerate(init.coeffs):
        c[i] = v
    d = _reach(E)
    k = 0
    while k + d <= M:
        terms = _constraint(E, k)
        unknown = [i for i in terms if c[i] is None]
        if len(unknown) > 1:
            raise FreeParameter(f"x^{k} constraint leaves c_{min(unknown)} free; supply a longer initial jet")
        known = sum((m * c[i] for i, m in terms.items() if c[i] is not None), Fraction(0))
        if not unknown:
            if known != 0:
                raise Inconsistent(f"x^{k} constraint fails: residual {known}")
        else:
            i = unknown[0]
            c[i] = -known / terms[i]
        k += 1
    missing = [i for i, v in enumerate(c) if v is None]
    if missing:
        raise FreeParameter(f"c_{missing[0]} is not determined; supply a longer initial jet")
    return SeriesPrefix(tuple(c), R.p)


def check_solution(E: OdeE, s: SeriesPrefix) -> None:
    """Raise :class:`NotASolution` if any fully covered constraint fails."""
    d = _reach(E)
    k = 0
    while k + d <= s.M:
        terms = _constraint(E, k)
        if any(i > s.M for i in terms):
            break
        if sum((m * s.coeffs[i] for i, m in terms.items()), Fraction(0)) != 0:
            raise NotASolution(f"the x^{k} coefficient of the ODE does not vanish")
        k += 1


# --------------------------------------------------------------------------
# Growth analysis
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    n: int
    k: int
    lhs: ExtRat
    rhs: ExtRat

    @property
    def ok(self) -> bool:
        return self.lhs >= self.rhs


@dataclass(frozen=True)
class GrowthReport:
    valuations: tuple[ExtRat, ...]
    L: Fraction
    lambda_star: Optional[Fraction]
    entire_consistent: bool
    witnesses: tuple[Witness, ...]
    window: tuple[int, int]
    lambda_grid: tuple[Fraction, ...]

    @property
    def violations(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.ok]


def default_lambda_grid() -> list[Fraction]:
    return [Fraction(k, 20) for k in range(-60, 61)]


def eqp4_witnesses(R: Recurrence, vals: Sequence[ExtRat]) -> list[Witness]:
    """Sample ``ord(P_0(n)...P_0(n+k)) + ord(c_n) >= min_{1<=i<=t} ord(c_{n+k+i})``.

    ``n`` runs over ``0..M//4`` with ``c_n != 0``, ``k`` over powers of two.
    """
    M = len(vals) - 1
    P0 = R.P[0]
    ordP0 = [ord_rat(R.p, P0(n)) for n in range(M + 1)]
    out = []
    for n in range(max(R.valid_from, 0), M // 4 + 1):
        if vals[n] == INF:
            continue
        k = 1
        while n + k + R.t <= M:
            lhs = sum(ordP0[n : n + k + 1], Fraction(0)) + vals[n]
            rhs = min((vals[n + k + i] for i in range(1, R.t + 1)), default=INF)
            out.append(Witness(n, k, lhs, rhs))
            k *= 2
    return out


def _head_tail_mins(vals: Sequence[ExtRat], lam: Fraction) -> tuple[ExtRat, ExtRat]:
    M = len(vals) - 1
    half = M // 2
    head, tail = INF, INF
    for n, v in enumerate(vals):
        if v == INF:
            continue
        g = v - lam * n
        if n <= half:
            head = min(head, g)
        else:
            tail = min(tail, g)
    return head, tail


def window_growth(vals: Sequence[ExtRat], grid: Sequence[Fraction]) -> tuple[Optional[Fraction], bool]:
    """Window proxies for tail statements on ``g(n) = vals[n] - lambda n``.

    ``n <= M/2`` is the head, the rest the tail.  Bounded below means tail
    minimum >= head minimum and ``lambda_star`` is the largest grid value
    passing.  Tending to infinity means tail minimum > head minimum; the
    sequence is entire-consistent when that holds for every grid value.
    An all-zero series gives ``(None, True)``.
    """
    if all(v == INF for v in vals):
        return None, True
    lambda_star = None
    entire = True
    for lam in sorted(grid):
        head, tail = _head_tail_mins(vals, lam)
        if tail >= head:
            lambda_star = lam
        if not tail > head:
            entire = False
    return lambda_star, entire


def growth_report(
    p: int,
    R: Recurrence,
    s: SeriesPrefix,
    L: Fraction,
    lambda_grid: Optional[Sequence[Fraction]] = None,
) -> GrowthReport:
    """Valuation growth of a solution prefix against the recurrence.

    Raises :class:`NotASolution` unless ``s`` solves the ODE behind ``R``.
    """
    check_prime(p)
    check_solution(R.origin, s)
    grid = tuple(sorted(Fraction(x) for x in (lambda_grid or default_lambda_grid())))
    vals = tuple(s.valuations())
    witnesses = eqp4_witnesses(R, vals)
    lambda_star, entire = window_growth(vals, grid)
    return GrowthReport(vals, Fraction(L), lambda_star, entire, tuple(witnesses), (0, s.M), grid)

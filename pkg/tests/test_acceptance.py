"""Numbered acceptance criteria; each prints one PASS/FAIL line in the summary."""

import random
import time
from fractions import Fraction as F
from math import factorial, gcd

import pytest

from padicfe.analyzer import GrowthContradiction, HZeroPolynomialOnly, ParityObstruction, ProblemInstance, analyze
from padicfe.clark import (
    check_zeq2,
    natural_root_bound,
    poly_weight_empirical,
    sumx_closed,
    sumx_empirical,
    weight,
    weight_empirical,
)
from padicfe.ode import Jet, OdeE, build_ode, char_data, closed_form_pe
from padicfe.poly import Poly
from padicfe.recurrence import derive_recurrence, forward_solve, growth_report
from padicfe.valuation import RamifiedShift, RationalElt, ord_factorial
from oracles import brute_ord, legendre

x = Poly.x()
ONE = Poly.const(1)
COSH = OdeE(ONE, Poly(), Poly.const(-1))


def acceptance(number, title):
    return pytest.mark.acceptance(number, title)


@acceptance(1, "ord_p(n!) equals Legendre's sum for n <= 10^5, p in {2,3,5,7,11}, < 5 s")
def test_c01_factorial_identity(record_property):
    bad = []
    elapsed = 0.0
    for p in (2, 3, 5, 7, 11):
        running = 0
        for n in range(0, 10**5 + 1):
            if n:
                running += brute_ord(p, n)
            t0 = time.perf_counter()
            got = ord_factorial(p, n)
            elapsed += time.perf_counter() - t0
            if got != legendre(p, n) or got != running:
                bad.append((p, n))
    record_property("detail", f"mismatches {len(bad)}, time {elapsed:.2f}s")
    assert not bad
    assert elapsed < 5


@acceptance(2, "sumx mean at N = 10^6 within 1e-4 of closed form for p in {2,3,5}, s <= 3, < 10 s each")
def test_c02_sumx(record_property):
    worst_gap, worst_time = F(0), 0.0
    for p in (2, 3, 5):
        for s in range(4):
            t0 = time.perf_counter()
            rep = sumx_empirical(p, s, 10**6)
            dt = time.perf_counter() - t0
            assert rep.target == sumx_closed(p, s)
            worst_gap, worst_time = max(worst_gap, rep.abs_gap), max(worst_time, dt)
    record_property("detail", f"max gap {float(worst_gap):.2e}, slowest pair {worst_time:.3f}s")
    assert worst_gap <= F(1, 10**4)
    assert worst_time < 10


@acceptance(3, "Z_p weight: alpha in {7, 5/2, 1/(1-p)}, p in {3,5}, N = 10^6 mean within 5e-3 of 1/(p-1)")
def test_c03_zp_weight(record_property):
    worst = F(0)
    for p in (3, 5):
        for q in (F(7), F(5, 2), F(1, 1 - p)):
            alpha = RationalElt(q)
            rep = weight(p, alpha)
            assert rep.weight == F(1, p - 1)
            emp = weight_empirical(p, alpha, rep.m_start, 10**6)
            worst = max(worst, abs(emp.mean - F(1, p - 1)))
    record_property("detail", f"max gap {float(worst):.2e}")
    assert worst <= F(5, 1000)


@acceptance(4, "outside-disk weight: alpha = 1/p has empirical mean exactly -1 at every N")
def test_c04_outside_disk(record_property):
    checked = 0
    for p in (2, 3, 5, 7):
        alpha = RationalElt(F(1, p))
        assert weight(p, alpha).weight == -1
        for N in list(range(0, 300)) + [10**4, 10**6]:
            assert weight_empirical(p, alpha, 0, N).mean == -1
            checked += 1
    record_property("detail", f"{checked} values of N")


@acceptance(5, "sign resolution: ram(0, 3/2) at p = 3, N = 3^12 within 1e-3 of 7/18 and > 5e-2 from 5/18")
def test_c05_sign_resolution(record_property):
    alpha = RamifiedShift(0, F(3, 2), 1)
    rep = weight(3, alpha)
    emp = weight_empirical(3, alpha, 0, 3**12)
    to_plus = abs(emp.mean - F(7, 18))
    to_minus = abs(emp.mean - F(5, 18))
    record_property("detail", f"mean {float(emp.mean):.6f}, |mean-7/18| {float(to_plus):.2e}, |mean-5/18| {float(to_minus):.2e}")
    assert rep.weight == F(7, 18) and rep.displayed_sign_weight == F(5, 18)
    assert rep.note and "5/18" in rep.note
    assert to_plus < F(1, 1000)
    assert to_minus > F(5, 100)


@acceptance(6, "partial-fraction identity exact for reduced a/b, 1 <= a,b <= 10, b > 1, n <= 12")
def test_c06_partial_fractions(record_property):
    cases = 0
    for a in range(1, 11):
        for b in range(2, 11):
            if gcd(a, b) != 1:
                continue
            for n in range(13):
                assert check_zeq2(F(a, b), n)
                cases += 1
    record_property("detail", f"{cases} cases")


def _rand_poly(rng, deg):
    body = [F(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(deg)]
    return Poly(body + [F(rng.choice([-4, -3, -2, -1, 1, 2, 3, 5]), rng.randint(1, 6))])


@acceptance(7, "characteristic polynomial equals its closed form on 100 random instances, < 2 s")
def test_c07_closed_forms(record_property):
    rng = random.Random(7)
    cases = []
    while len(cases) < 100:
        eta, chi = rng.randint(0, 6), rng.randint(0, 6)
        bound = F(eta + chi, 2) - 1
        if bound < 0:
            continue
        mu = rng.randint(0, int(bound))
        cases.append((eta, chi, mu, _rand_poly(rng, eta), _rand_poly(rng, chi), _rand_poly(rng, mu)))
    t0 = time.perf_counter()
    equal = 0
    for eta, chi, mu, A, B, h in cases:
        if char_data(build_ode(A, B, h)).p_e == closed_form_pe(eta, chi, mu, A.lead, B.lead, h.lead):
            equal += 1
    dt = time.perf_counter() - t0
    both_cases = {mu == F(eta + chi, 2) - 1 for eta, chi, mu, *_ in cases}
    record_property("detail", f"{equal}/100 equal, {dt:.3f}s")
    assert equal == 100 and dt < 2
    assert both_cases == {True, False}


@acceptance(8, "y'' - y = 0: c_2k = 1/(2k)! for 2k <= 50; p = 3 growth not entire, lambda_star within 1/10 of -1/2")
def test_c08_cosh_fixture(record_property):
    R = derive_recurrence(3, COSH)
    s = forward_solve(R, Jet([1, 0]), 50)
    assert all(s.coeffs[2 * k] == F(1, factorial(2 * k)) for k in range(26))
    assert all(s.coeffs[2 * k + 1] == 0 for k in range(25))
    long = forward_solve(R, Jet([1, 0]), 200)
    rep = growth_report(3, R, long, F(0))
    record_property("detail", f"lambda_star {rep.lambda_star}, entire {rep.entire_consistent}")
    assert rep.entire_consistent is False
    assert abs(rep.lambda_star - F(-1, 2)) <= F(1, 10)


@acceptance(9, "pipeline: constant A, B -> h = 0; odd deg B -> parity; x^2 + 1 -> growth with P_E and L = 1/2")
def test_c09_pipeline(record_property):
    v42 = analyze(ProblemInstance(5, ONE, ONE, Jet([F(3, 5)]), Jet([F(4, 5)])))
    v43 = analyze(ProblemInstance(5, ONE, x - 3))
    vg = analyze(ProblemInstance(5, x * x + 1, ONE, Jet([0, 1]), Jet([1]), scan_N=5**8))
    assert isinstance(v42, HZeroPolynomialOnly)
    assert isinstance(v43, ParityObstruction)
    assert isinstance(vg, GrowthContradiction)
    assert vg.char.p_e == Poly([16, 16, 8])
    assert vg.L == F(1, 2)
    P0 = vg.recurrence.P[0]
    emp = poly_weight_empirical(5, P0, natural_root_bound(vg.roots), 5**8, target=vg.L)
    record_property("detail", f"L {vg.L}, empirical {float(emp.mean):.6f}")
    assert emp.abs_gap <= F(5, 1000)
    assert vg.empirical.mean == emp.mean


def _fixtures():
    for p in (2, 3, 5, 7):
        R = derive_recurrence(p, COSH)
        yield f"cosh p={p}", R, forward_solve(R, Jet([1, 0]), 120)
    for p in (3, 5, 7):
        R = derive_recurrence(p, build_ode(x * x + 1, ONE, Poly.const(2)))
        yield f"x^2+1 p={p}", R, forward_solve(R, Jet([0, 1]), 120)
    for p, A, h in ((5, x * x + x + 3, 1), (3, x * x - 2 * x + 2, 3), (2, x * x + 3, 1)):
        R = derive_recurrence(p, build_ode(A, ONE, Poly.const(h)))
        yield f"A={A.pretty()} p={p}", R, forward_solve(R, Jet([1, 1]), 100)
    R = derive_recurrence(5, OdeE(x * x, Poly(), Poly.const(-2)))
    yield "x^2 y'' = 2y", R, forward_solve(R, Jet([0, 0, 3]), 40)


@acceptance(10, "growth-inequality witnesses: zero violations on every forward-solved fixture")
def test_c10_witnesses(record_property):
    total, violations, fixtures = 0, 0, 0
    for name, R, s in _fixtures():
        rep = growth_report(R.p, R, s, F(0))
        total += len(rep.witnesses)
        violations += len(rep.violations)
        fixtures += 1
    record_property("detail", f"{fixtures} fixtures, {total} witnesses, {violations} violations")
    assert total > 0
    assert violations == 0


@acceptance(11, "x(x-1) at p = 5: mean of ord_5(P(n)) for N = 5^8 within 5e-3 of 1/2")
def test_c11_poly_weight(record_property):
    emp = poly_weight_empirical(5, x * (x - 1), 2, 5**8, target=F(1, 2))
    record_property("detail", f"mean {float(emp.mean):.6f}")
    assert emp.abs_gap <= F(5, 1000)

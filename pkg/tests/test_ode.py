import random
from fractions import Fraction as F

import pytest
import sympy as sp

from padicfe.errors import BoundViolation, GZeroAtOrigin, InsufficientJet, ZeroInput
from padicfe.ode import Jet, OdeE, build_ode, char_data, closed_form_pe, h_degree_bound, h_from_jets
from padicfe.poly import Poly

x = Poly.x()
X = sp.Symbol("x")


def to_sympy(P: Poly):
    return sum(sp.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(P.coeffs))


def from_sympy(expr) -> Poly:
    coeffs = sp.Poly(sp.expand(expr), X).all_coeffs()[::-1]
    return Poly([F(int(c.p), int(c.q)) for c in coeffs])


def sympy_ode(A: Poly, B: Poly, h: Poly) -> OdeE:
    """Eliminate g symbolically: g = (A'f + 2Af')/h, then h^2 (B'g + 2Bg' + hf) = 0."""
    a, b, hh = to_sympy(A), to_sympy(B), to_sympy(h)
    f = sp.Function("f")(X)
    g = (sp.diff(a, X) * f + 2 * a * sp.diff(f, X)) / hh
    expr = hh**2 * (sp.diff(b, X) * g + 2 * b * sp.diff(g, X) + hh * f)
    y0, y1, y2 = sp.symbols("y0 y1 y2")
    expr = expr.subs(sp.diff(f, X, 2), y2).subs(sp.diff(f, X), y1).subs(f, y0)
    expr = sp.expand(sp.cancel(expr))
    q2, q1, q0 = (expr.coeff(y) for y in (y2, y1, y0))
    return OdeE(from_sympy(q2), from_sympy(q1), from_sympy(q0))


def random_poly(rng, deg):
    coeffs = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg)]
    lead = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4))
    return Poly(coeffs + [lead])


def test_h_degree_bound_examples():
    assert h_degree_bound(Poly.const(1), Poly.const(1)) == -1
    assert h_degree_bound(x * x + 1, Poly.const(1)) == 0
    assert h_degree_bound(x, x) == 0
    assert h_degree_bound(x**3, Poly.const(1)) == F(1, 2)
    with pytest.raises(ZeroInput):
        h_degree_bound(Poly(), x)


def test_h_from_jets_examples():
    one = Poly.const(1)
    assert h_from_jets(one, one, Jet([F(3, 5)]), Jet([F(4, 5)])).is_zero()
    assert h_from_jets(x * x + 1, one, Jet([0, 1]), Jet([1])) == Poly.const(2)
    assert h_from_jets(x, x, Jet([1]), Jet([1])) == Poly.const(1)


def test_h_from_jets_errors():
    with pytest.raises(GZeroAtOrigin):
        h_from_jets(x, x, Jet([1]), Jet([0, 1]))
    with pytest.raises(InsufficientJet):
        h_from_jets(x * x + 1, Poly.const(1), Jet([0]), Jet([1]))
    # deg h bound 1 needs g_1 once h_0 != 0
    with pytest.raises(InsufficientJet):
        h_from_jets(x**2 + 1, x**2, Jet([0, 1, 0]), Jet([1]))


def test_h_from_jets_matches_series_division():
    rng = random.Random(3)
    for _ in range(40):
        A = random_poly(rng, rng.randint(0, 4))
        B = random_poly(rng, rng.randint(0, 4))
        bound = h_degree_bound(A, B)
        if bound < 0:
            continue
        top = int(bound)
        fj = [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(top + 2)]
        gj = [F(rng.randint(1, 5))] + [F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(top)]
        fs = to_sympy(Poly(fj))
        gs = to_sympy(Poly(gj))
        a = to_sympy(A)
        series = sp.series((sp.diff(a, X) * fs + 2 * a * sp.diff(fs, X)) / gs, X, 0, top + 1).removeO()
        expect = [sp.Rational(series.coeff(X, i)) for i in range(top + 1)]
        got = h_from_jets(A, B, Jet(fj), Jet(gj))
        assert [got.coeff(i) for i in range(top + 1)] == [F(int(e.p), int(e.q)) for e in expect]


def test_h_from_polynomial_identity():
    # (x^2+1)*1^2 + (-x^2)*1^2 = 1 with f = g = 1: h = A'f + 2Af' over g = 2x
    A, B = x * x + 1, -(x * x)
    h = h_from_jets(A, B, Jet([1, 0, 0]), Jet([1, 0]))
    assert h.degree <= h_degree_bound(A, B)
    assert h == Poly([0, 2])
    # cos/sin truncated jets for A = B = 1 give h = 0, consistent with bound -1
    assert h_from_jets(Poly.const(1), Poly.const(1), Jet([1, 0, F(-1, 2)]), Jet([F(1, 1), 1])).is_zero()


def test_build_ode_examples():
    E = build_ode(x, x, Poly.const(1))
    assert (E.Q2, E.Q1, E.Q0) == (4 * x * x, 8 * x, Poly.const(2))
    E = build_ode(x * x + 1, Poly.const(1), Poly.const(2))
    assert (E.Q2, E.Q1, E.Q0) == (8 * (x * x + 1), 24 * x, Poly.const(16))
    E = build_ode(Poly.const(1), Poly.const(1), Poly.const(1))
    assert (E.Q2, E.Q1, E.Q0) == (Poly.const(4), Poly(), Poly.const(1))
    with pytest.raises(ZeroInput):
        build_ode(x, x, Poly())


def test_build_ode_matches_symbolic_elimination():
    rng = random.Random(8)
    for _ in range(12):
        A = random_poly(rng, rng.randint(0, 3))
        B = random_poly(rng, rng.randint(0, 3))
        h = random_poly(rng, rng.randint(0, 2))
        E, S = build_ode(A, B, h), sympy_ode(A, B, h)
        assert (E.Q2, E.Q1, E.Q0) == (S.Q2, S.Q1, S.Q0)


def test_ode_annihilates_cos():
    # A = B = 1, f = cos, g = sin: h = -2 and the ODE is a multiple of f'' + f
    E = build_ode(Poly.const(1), Poly.const(1), Poly.const(-2))
    assert E.Q1.is_zero() and E.Q2 == E.Q0


def test_char_data_examples():
    cd = char_data(OdeE(4 * x * x, 8 * x, Poly.const(2)))
    assert cd.n_of_e == 0 and cd.p_e == Poly([2, 4, 4])
    cd = char_data(OdeE(8 * (x * x + 1), 24 * x, Poly.const(16)))
    assert cd.n_of_e == 0 and cd.p_e == Poly([16, 16, 8])
    cd = char_data(OdeE(Poly.const(1), Poly(), Poly.const(-1)))
    assert cd.n_of_e == 0 and cd.p_e == Poly.const(-1) and cd.contributing == frozenset({0})


def test_odee_rejects_zero_q2():
    with pytest.raises(ZeroInput):
        OdeE(Poly(), x, x)


def test_closed_form_examples():
    assert closed_form_pe(1, 1, 0, 1, 1, 1) == Poly([2, 4, 4])
    assert closed_form_pe(2, 0, 0, 1, 1, 2) == Poly([16, 16, 8])
    assert closed_form_pe(3, 3, 1, 1, 1, 1) == Poly([15, 16, 4])
    with pytest.raises(BoundViolation):
        closed_form_pe(1, 1, 1, 1, 1, 1)


def test_closed_form_generic_case_two():
    rng = random.Random(21)
    lower = random_poly(rng, 2)
    cd = char_data(build_ode(x**3, x**3 + lower, x))
    assert cd.p_e == Poly([15, 16, 4])


def _random_instance(rng):
    while True:
        eta, chi = rng.randint(0, 6), rng.randint(0, 6)
        bound = F(eta + chi, 2) - 1
        if bound >= 0:
            break
    mu = rng.randint(0, int(bound))
    return eta, chi, mu, random_poly(rng, eta), random_poly(rng, chi), random_poly(rng, mu)


def test_closed_form_equals_char_data_random():
    rng = random.Random(2024)
    for _ in range(100):
        eta, chi, mu, A, B, h = _random_instance(rng)
        cd = char_data(build_ode(A, B, h))
        assert cd.p_e == closed_form_pe(eta, chi, mu, A.lead, B.lead, h.lead)


def test_degree_bounds_random():
    rng = random.Random(99)
    for _ in range(100):
        eta, chi, mu, A, B, h = _random_instance(rng)
        E = build_ode(A, B, h)
        top = eta + chi + mu
        assert E.Q2.degree == top
        assert E.Q1.is_zero() or E.Q1.degree <= top - 1
        assert E.Q0.is_zero() or E.Q0.degree <= top - 2
        cd = char_data(E)
        assert cd.n_of_e == top - 2
        assert not cd.p_e.is_zero() and cd.p_e.degree == max(cd.contributing)

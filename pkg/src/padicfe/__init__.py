"""Exact p-adic valuation tools for the functional equation A f^2 + B g^2 = 1."""

from padicfe.kernels import BACKEND
from padicfe.valuation import (
    INF,
    NEG_INF,
    RamifiedShift,
    RationalElt,
    SeriesPrefix,
    TruncatedZp,
    UnramifiedShift,
    digit_sum,
    hensel_sqrt,
    lognorm,
    ord_factorial,
    ord_rat,
    ord_shifted,
)
from padicfe.poly import Poly, eval_ord, falling_factorial, gamma_normalize
from padicfe.clark import (
    check_zeq2,
    liouville_scan,
    poly_weight,
    r_alpha,
    sumx_closed,
    sumx_empirical,
    weight,
    weight_empirical,
)
from padicfe.ode import Jet, OdeE, build_ode, char_data, closed_form_pe, h_degree_bound, h_from_jets
from padicfe.recurrence import derive_recurrence, forward_solve, growth_report, window_growth
from padicfe.analyzer import ProblemInstance, analyze, parity_check

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "INF",
    "NEG_INF",
    "RamifiedShift",
    "RationalElt",
    "SeriesPrefix",
    "TruncatedZp",
    "UnramifiedShift",
    "digit_sum",
    "hensel_sqrt",
    "lognorm",
    "ord_factorial",
    "ord_rat",
    "ord_shifted",
    "Poly",
    "eval_ord",
    "falling_factorial",
    "gamma_normalize",
    "check_zeq2",
    "liouville_scan",
    "poly_weight",
    "r_alpha",
    "sumx_closed",
    "sumx_empirical",
    "weight",
    "weight_empirical",
    "Jet",
    "OdeE",
    "build_ode",
    "char_data",
    "closed_form_pe",
    "h_degree_bound",
    "h_from_jets",
    "derive_recurrence",
    "forward_solve",
    "growth_report",
    "window_growth",
    "ProblemInstance",
    "analyze",
    "parity_check",
]

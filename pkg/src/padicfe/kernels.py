"""Scan kernels with backend selection.

The compiled extension ``padicfe._kernels`` is used when it imports and the
arguments fit in signed 64-bit arithmetic; otherwise the pure-Python twins
run.  Set ``PADICFE_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from padicfe import _kernels_py as _py

_ext = None
if not os.environ.get("PADICFE_PURE_PYTHON"):
    try:
        from padicfe import _kernels as _ext  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _ext = None

BACKEND = "cython" if _ext is not None else "python"

_LIMIT = 1 << 62
# "no cap" for the compiled kernel; valuations of 64-bit values never reach it
NO_CAP = 1 << 40


def _fits(*values: int) -> bool:
    return all(-_LIMIT < v < _LIMIT for v in values)


def ord_scan(p: int, a: int, b: int, start: int, stop: int, cap: int = NO_CAP, *, backend: str | None = None):
    """Scan ``ord_p(a - i*b)`` for ``i`` in ``start..stop`` (inclusive).

    Returns ``(total, capped)`` where ``total`` sums valuations ``<= cap`` and
    ``capped`` counts zeros and valuations above ``cap``.
    """
    if stop < start:
        return 0, 0
    use_ext = (backend or BACKEND) == "cython" and _ext is not None
    if use_ext and _fits(a - start * b, a - stop * b, start, stop, cap, p):
        return _ext.ord_scan(p, a, b, start, stop, cap)
    return _py.ord_scan(p, a, b, start, stop, cap)


def poly_ord_scan(p: int, coeffs, start: int, stop: int, cap: int = NO_CAP, *, backend: str | None = None):
    """Scan ``ord_p(P(i))`` for an integer-coefficient ``P`` (low-to-high)."""
    if stop < start:
        return 0, 0
    coeffs = [int(c) for c in coeffs]
    use_ext = (backend or BACKEND) == "cython" and _ext is not None and len(coeffs) <= 64
    if use_ext:
        x = max(abs(start), abs(stop))
        bound = sum(abs(c) * x**k for k, c in enumerate(coeffs))
        # Horner partial values are bounded by the same majorant
        if bound < _LIMIT and _fits(start, stop, cap, p):
            return _ext.poly_ord_scan(p, coeffs, start, stop, cap)
    return _py.poly_ord_scan(p, coeffs, start, stop, cap)


def digit_sum(p: int, n: int, *, backend: str | None = None) -> int:
    if (backend or BACKEND) == "cython" and _ext is not None and n < _LIMIT:
        return _ext.digit_sum(p, n)
    return _py.digit_sum(p, n)

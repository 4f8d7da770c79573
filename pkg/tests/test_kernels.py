import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padicfe import _kernels_py, kernels
from oracles import brute_ord, count_divisible, ord_sum

BACKENDS = ["python"] + (["cython"] if kernels._ext is not None else [])


def brute_scan(p, a, b, start, stop, cap):
    total = capped = 0
    for i in range(start, stop + 1):
        x = a - i * b
        if x == 0:
            capped += 1
            continue
        v = brute_ord(p, abs(x))
        if v > cap:
            capped += 1
        else:
            total += v
    return total, capped


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=150, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5, 7]),
    a=st.integers(-10**6, 10**6),
    b=st.integers(-50, 50),
    start=st.integers(-200, 200),
    length=st.integers(0, 300),
    cap=st.integers(-1, 12),
)
def test_ord_scan_matches_brute_force(backend, p, a, b, start, length, cap):
    stop = start + length
    assert kernels.ord_scan(p, a, b, start, stop, cap, backend=backend) == brute_scan(p, a, b, start, stop, cap)


@pytest.mark.parametrize("backend", BACKENDS)
def test_ord_scan_matches_counting_formula(backend):
    rng = random.Random(7)
    for _ in range(50):
        p = rng.choice([2, 3, 5, 7, 11])
        b = rng.randint(1, 40)
        if b % p == 0:
            b += 1
        a = rng.randint(1, 10**5) * p + rng.randint(1, p - 1)  # never a multiple of b*i? ensure no zero
        m, N = 0, rng.randint(1, 20_000)
        if any(a - i * b == 0 for i in range(m, N + 1)):
            continue
        total, capped = kernels.ord_scan(p, a, b, m, N, backend=backend)
        assert capped == 0
        assert total == ord_sum(p, a, b, m, N)


def test_count_divisible_oracle_sanity():
    assert count_divisible(3, 1, 0, -1, 1, 10) == 3  # 3, 6, 9
    assert count_divisible(2, 3, 5, 1, 0, 100) == sum(1 for i in range(101) if (5 - i) % 8 == 0)


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=100, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5]),
    coeffs=st.lists(st.integers(-100, 100), min_size=1, max_size=4),
    start=st.integers(-100, 100),
    length=st.integers(0, 100),
)
def test_poly_scan_matches_brute_force(backend, p, coeffs, start, length):
    stop = start + length
    total = capped = 0
    for i in range(start, stop + 1):
        x = sum(c * i**k for k, c in enumerate(coeffs))
        if x == 0:
            capped += 1
        else:
            total += brute_ord(p, abs(x))
    assert kernels.poly_ord_scan(p, coeffs, start, stop, backend=backend) == (total, capped)


def test_overflow_falls_back_to_python():
    a = 10**30 + 1
    expected = _kernels_py.ord_scan(3, a, 1, 0, 50, kernels.NO_CAP)
    assert kernels.ord_scan(3, a, 1, 0, 50) == expected
    big = [10**20, 1]
    assert kernels.poly_ord_scan(5, big, 0, 20) == _kernels_py.poly_ord_scan(5, big, 0, 20, kernels.NO_CAP)
    assert kernels.digit_sum(3, 10**40) == _kernels_py.digit_sum(3, 10**40)


@pytest.mark.parametrize("backend", BACKENDS)
def test_digit_sum_backends(backend):
    for n in (0, 1, 26, 10**6, 2**61):
        assert kernels.digit_sum(3, n, backend=backend) == _kernels_py.digit_sum(3, n)


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_benchmark_script_runs():
    import subprocess
    import sys
    from pathlib import Path

    script = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    proc = subprocess.run(
        [sys.executable, str(script), "--scale", "0.001", "--repeat", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    assert "poly_ord_scan" in proc.stdout

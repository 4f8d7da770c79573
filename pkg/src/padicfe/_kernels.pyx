# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernels.  Signatures mirror ``_kernels_py``; callers must
keep every intermediate inside signed 64-bit range (checked in ``kernels``)."""

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil


cdef inline long long _ord_capped(long long x, long long p, long long cap) nogil:
    # x != 0, x > 0.  Returns cap + 1 as soon as the valuation exceeds cap.
    cdef long long v = 0
    if p == 2:
        v = __builtin_ctzll(<unsigned long long>x)
        return v if v <= cap else cap + 1
    while x % p == 0:
        x = x // p
        v += 1
        if v > cap:
            return v
    return v


def ord_scan(long long p, long long a, long long b, long long start, long long stop, long long cap):
    cdef long long i, x, v
    cdef long long total = 0, capped = 0
    with nogil:
        for i in range(start, stop + 1):
            x = a - i * b
            if x == 0:
                capped += 1
                continue
            if x < 0:
                x = -x
            v = _ord_capped(x, p, cap)
            if v > cap:
                capped += 1
            else:
                total += v
    return total, capped


def poly_ord_scan(long long p, coeffs, long long start, long long stop, long long cap):
    cdef Py_ssize_t deg = len(coeffs) - 1, k
    cdef long long[64] c
    cdef long long i, x, v
    cdef long long total = 0, capped = 0
    if deg >= 64:
        raise ValueError("degree too large for compiled kernel")
    for k in range(deg + 1):
        c[k] = coeffs[k]
    with nogil:
        for i in range(start, stop + 1):
            x = c[deg]
            k = deg - 1
            while k >= 0:
                x = x * i + c[k]
                k -= 1
            if x == 0:
                capped += 1
                continue
            if x < 0:
                x = -x
            v = _ord_capped(x, p, cap)
            if v > cap:
                capped += 1
            else:
                total += v
    return total, capped


def digit_sum(long long p, long long n):
    cdef long long s = 0
    while n > 0:
        s += n % p
        n = n // p
    return s

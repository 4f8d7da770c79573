"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``.

Each scan returns ``(total, capped)``: ``total`` sums the valuations that
are ``<= cap``; ``capped`` counts values that are zero or have valuation
above ``cap``.
"""


def _ord_capped(x: int, p: int, cap: int) -> int:
    if p == 2:
        v = (x & -x).bit_length() - 1
        return v if v <= cap else cap + 1
    v = 0
    while x % p == 0:
        x //= p
        v += 1
        if v > cap:
            break
    return v


def ord_scan(p: int, a: int, b: int, start: int, stop: int, cap: int) -> tuple[int, int]:
    total = capped = 0
    x = a - start * b
    for _ in range(start, stop + 1):
        if x == 0:
            capped += 1
        else:
            v = _ord_capped(x if x > 0 else -x, p, cap)
            if v > cap:
                capped += 1
            else:
                total += v
        x -= b
    return total, capped


def poly_ord_scan(p: int, coeffs, start: int, stop: int, cap: int) -> tuple[int, int]:
    total = capped = 0
    rev = list(reversed(coeffs))
    for i in range(start, stop + 1):
        x = 0
        for c in rev:
            x = x * i + c
        if x == 0:
            capped += 1
            continue
        v = _ord_capped(x if x > 0 else -x, p, cap)
        if v > cap:
            capped += 1
        else:
            total += v
    return total, capped


def digit_sum(p: int, n: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s

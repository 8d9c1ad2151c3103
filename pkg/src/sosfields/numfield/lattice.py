"""Exact Fincke-Pohst enumeration of integer points in a rational ellipsoid."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Optional, Sequence


def _decompose(gram: Sequence[Sequence]) -> list[list[Fraction]]:
    """Quadratic completion: Q(y) = sum_i q[i][i] (y_i + sum_{j>i} q[i][j] y_j)^2."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def _int_range(m: Fraction, r2: Fraction) -> range:
    """Integers x with (x - m)^2 <= r2, decided exactly."""
    if r2 < 0:
        return range(0)
    r = math.sqrt(float(r2))
    lo = math.floor(float(m) - r) - 1
    hi = math.ceil(float(m) + r) + 1
    while (lo - m) ** 2 > r2 and lo <= hi:
        lo += 1
    while (hi - m) ** 2 > r2 and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(gram: Sequence[Sequence], bound, center: Optional[Sequence] = None,
                  strict: bool = False) -> Iterator[tuple]:
    """All integer x with (x - c)^T G (x - c) <= bound (``< bound`` if strict).

    Every range is computed with rationals; floats only seed the integer
    endpoints, which are then corrected by exact comparisons.
    """
    n = len(gram)
    bound = Fraction(bound)
    c = [Fraction(0)] * n if center is None else [Fraction(x) for x in center]
    q = _decompose(gram)
    x = [0] * n
    rem = [Fraction(0)] * (n + 1)
    rem[n] = bound

    def value(i: int) -> Fraction:
        # U_i = sum_{j>i} q_ij (x_j - c_j)
        return sum((q[i][j] * (x[j] - c[j]) for j in range(i + 1, n)), Fraction(0))

    def rec(i: int) -> Iterator[tuple]:
        m = c[i] - value(i)
        for xi in _int_range(m, rem[i + 1] / q[i][i]):
            x[i] = xi
            left = rem[i + 1] - q[i][i] * (xi - m) ** 2
            if i == 0:
                if strict and left <= 0:
                    continue
                yield tuple(x)
            else:
                rem[i] = left
                yield from rec(i - 1)

    if n == 0:
        if (bound > 0) if strict else (bound >= 0):
            yield ()
        return
    yield from rec(n - 1)

"""Irreducibility over Q and characteristic polynomials of field elements.

``is_irreducible`` uses Kronecker's method: a monic factor g of degree k is
pinned down by its values at k+1 integers, each of which divides the value of
f there.  Exhaustive over divisor tuples, so it is a proof either way.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, isqrt
from typing import Sequence, Union

from . import poly as P
from .poly import IntPolynomial

MAX_IRREDUCIBLE_DEGREE = 8


def _coeffs(f) -> list:
    return list(f.coeffs) if isinstance(f, IntPolynomial) else P.trim(f)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for k in range(1, isqrt(n) + 1):
        if n % k == 0:
            small.append(k)
            if k != n // k:
                large.append(n // k)
    pos = small + large[::-1]
    return pos + [-k for k in pos]


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list:
    """Lagrange interpolation over Q, ascending coefficients."""
    out: list = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = [Fraction(1)]
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = P.mul(num, [-xj, 1])
                den *= xi - xj
        out = P.add(out, P.scale(num, Fraction(yi, den)))
    return out


def mignotte_bound(f: Sequence[int], k: int) -> int:
    """Bound on |coefficients| of any integer factor of degree k of f."""
    norm2 = isqrt(sum(c * c for c in f)) + 1
    return max(comb(k, j) for j in range(k + 1)) * norm2


def _has_factor_of_degree(f: list, k: int) -> bool:
    n = len(f) - 1
    bound = mignotte_bound(f, k)
    # pick k+1 evaluation points with small nonzero values
    vals = {}
    for x in range(-3 * n - 3, 3 * n + 4):
        v = P.evaluate(f, x)
        if v == 0:
            return True  # rational root, hence a linear factor
        vals[x] = _divisors(v)
    # points whose values have the fewest divisors keep the product small
    xs = sorted(sorted(vals, key=lambda x: (len(vals[x]), abs(x)))[: k + 1])
    choices = [vals[x] for x in xs]
    for ys in itertools.product(*choices):
        g = _interpolate(xs, ys)
        if len(g) != k + 1 or g[-1] != 1:
            continue
        if any(Fraction(c).denominator != 1 or abs(c) > bound for c in g):
            continue
        _, r = P.divmod_q(f, g)
        if not r:
            return True
    return False


def is_irreducible(f: Union[IntPolynomial, Sequence[int]]) -> bool:
    """True iff the monic integer polynomial f is irreducible over Q."""
    cs = _coeffs(f)
    n = len(cs) - 1
    if n < 1 or cs[-1] != 1:
        raise ValueError("is_irreducible expects a monic polynomial of degree >= 1")
    if n > MAX_IRREDUCIBLE_DEGREE:
        raise ValueError(f"degree {n} beyond supported range (<= {MAX_IRREDUCIBLE_DEGREE})")
    if n == 1:
        return True
    if cs[0] == 0:
        return False
    return not any(_has_factor_of_degree(cs, k) for k in range(1, n // 2 + 1))


def char_poly_of_element(f: Union[IntPolynomial, Sequence[int]], g: Sequence, *, check: bool = True) -> list:
    """Monic characteristic polynomial of g(alpha) in Q[x]/(f), ascending coefficients.

    Computed as Res_x(f(x), y - g(x)) interpolated from d+1 integer values of y.
    With f monic and the Sylvester convention this resultant is exactly
    prod (y - g(alpha_i)), already monic in y.
    """
    cs = _coeffs(f)
    d = len(cs) - 1
    if d < 1 or cs[-1] != 1:
        raise ValueError("char_poly_of_element expects a monic f")
    if check and not is_irreducible(cs):
        raise ValueError("char_poly_of_element expects an irreducible f")
    _, gr = P.divmod_q([Fraction(c) for c in g], cs)
    gr = [Fraction(c) for c in gr]
    xs = list(range(d + 1))
    ys = []
    for y in xs:
        h = P.sub([y], gr)
        ys.append(P.resultant(cs, h) if h else 0)
    poly = _interpolate(xs, ys)
    out = [P._demote(Fraction(c)) for c in poly]
    out += [0] * (d + 1 - len(out))
    return out

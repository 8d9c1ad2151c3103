"""Maximal orders of small totally real fields (Round 2 at each square prime).

Orders are stored as d x d rational matrices whose rows express a Z-basis in
the power basis 1, a, ..., a^(d-1).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from sympy import factorint, isprime

from ..exact import linalg as L
from ..exact import poly as P
from ..exact.factor import is_irreducible
from ..exact.roots import INF, sturm_count

MAX_FIELD_DEGREE = 6
TRIAL_LIMIT = 10**7


def poly_discriminant(f: Sequence[int]) -> int:
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f."""
    n = len(f) - 1
    return (-1) ** (n * (n - 1) // 2) * P.resultant(f, P.derivative(f))


def square_primes(n: int) -> list[int]:
    """Primes p with p^2 | n; cofactor must be 1 or prime after trial division."""
    n = abs(n)
    # sympy may hand back gmpy2 integers, which do not mix with Fraction
    fac = {int(p): int(e) for p, e in factorint(n, limit=TRIAL_LIMIT).items()}
    out = []
    for p, e in sorted(fac.items()):
        if p > TRIAL_LIMIT and not isprime(p):
            r = isqrt(p)
            if r * r == p and isprime(r):
                out.append(r)
                continue
            raise ValueError(f"discriminant cofactor {p} is composite beyond trial division")
        if e >= 2:
            out.append(p)
    return out


def mult_table(f: Sequence[int], w: Sequence[Sequence], winv: Sequence[Sequence]) -> list:
    """T[i][j] = integer coordinates of w_i * w_j in the basis w."""
    d = len(f) - 1
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            prod = P.divmod_q(P.mul(w[i], w[j]), f)[1]
            prod = list(prod) + [0] * (d - len(prod))
            coords = L.vecmat(prod, winv)
            if any(Fraction(c).denominator != 1 for c in coords):
                raise ArithmeticError("basis is not closed under multiplication")
            row.append([int(c) for c in coords])
        table.append(row)
    return table


def _mul_mod(a: list, b: list, table: list, p: int) -> list:
    d = len(a)
    out = [0] * d
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            c = ai * bj
            for k, t in enumerate(table[i][j]):
                out[k] += c * t
    return [x % p for x in out]


def _pow_mod(a: list, e: int, table: list, p: int) -> list:
    d = len(a)
    result = [1 if k == 0 else 0 for k in range(d)]  # w_0 = 1 in every basis used here
    base = [x % p for x in a]
    while e:
        if e & 1:
            result = _mul_mod(result, base, table, p)
        base = _mul_mod(base, base, table, p)
        e >>= 1
    return result


def _round2_step(f: list, w: list, p: int) -> list | None:
    """One p-enlargement of the order spanned by w; None if already p-maximal."""
    d = len(f) - 1
    winv = L.inverse(w)
    table = mult_table(f, w, winv)
    q = p
    while q < d:
        q *= p
    unit = L.identity(d)
    # p-radical: kernel of Frobenius^q on O/pO
    frob = [_pow_mod(unit[i], q, table, p) for i in range(d)]
    gens = L.left_kernel_mod_p(frob, p) + [[p * x for x in r] for r in unit]
    ideal = L.hnf_lower(gens, d)
    iinv = L.inverse(ideal)
    # U = {x in O : x I subset p I}
    rows = []
    for i in range(d):
        flat = []
        for v in ideal:
            prod = [sum(v[l] * table[i][l][k] for l in range(d)) for k in range(d)]
            y = L.vecmat(prod, iinv)
            flat.extend(int(c) % p for c in y)
        rows.append(flat)
    ugens = L.left_kernel_mod_p(rows, p) + [[p * x for x in r] for r in unit]
    u = L.hnf_lower(ugens, d)
    if L.det_int(u) == p**d:
        return None
    new = [[Fraction(c, p) for c in r] for r in u]
    return L.matmul(new, w)


def _canonical(w: list) -> list:
    """Lower-triangular Hermite form of the lattice, rows over the power basis."""
    d = len(w)
    den = 1
    for r in w:
        for c in r:
            den = lcm(den, Fraction(c).denominator)
    ints = [[int(Fraction(c) * den) for c in r] for r in w]
    h = L.hnf_lower(ints, d)
    return [[Fraction(c, den) for c in r] for r in h]


def check_defining_polynomial(f: Sequence[int], max_degree: int = MAX_FIELD_DEGREE) -> list:
    cs = P.trim(f)
    d = len(cs) - 1
    if d < 1 or cs[-1] != 1:
        raise ValueError("defining polynomial must be monic of degree >= 1")
    if d > max_degree:
        raise ValueError(f"degree {d} beyond supported range (<= {max_degree})")
    if not is_irreducible(cs):
        raise ValueError(f"{P.format_poly(cs)} is reducible")
    if sturm_count(cs, -INF, INF) != d:
        raise ValueError(f"{P.format_poly(cs)} is not totally real")
    return cs


def maximal_order(f: Sequence[int]) -> tuple[list, int]:
    """(basis rows over the power basis, field discriminant)."""
    cs = check_defining_polynomial(list(getattr(f, "coeffs", f)))
    d = len(cs) - 1
    disc_f = poly_discriminant(cs)
    w = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for p in square_primes(disc_f):
        while True:
            nxt = _round2_step(cs, w, p)
            if nxt is None:
                break
            w = nxt
    w = _canonical(w)
    index = 1 / L.det(w)  # [O_K : Z[a]]
    disc = Fraction(disc_f) / index**2
    assert disc.denominator == 1
    return w, int(disc)

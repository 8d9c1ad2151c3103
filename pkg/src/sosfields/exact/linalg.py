"""Small exact matrices: lists of rows with int or Fraction entries."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    n = len(m[0]) if m else 0
    out = [0] * n
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                out[j] += c * x
    return out


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over Q (clears denominators, then Bareiss)."""
    n = len(m)
    scale = Fraction(1)
    rows = []
    for r in m:
        den = 1
        for x in r:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in r])
        scale /= den
    return scale * det_int(rows) if n else Fraction(1)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse over Q; raises ZeroDivisionError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf_lower(rows: Sequence[Sequence[int]], n: int) -> Matrix:
    """Basis of the full-rank lattice spanned by ``rows`` in lower-triangular Hermite form.

    Row i is supported on columns 0..i with a positive pivot in column i;
    entries left of a pivot are reduced into [0, pivot of that column).
    """
    work = [list(r) for r in rows if any(r)]
    basis: list = [None] * n
    for c in range(n - 1, -1, -1):
        live = [r for r in work if r[c] != 0]
        rest = [r for r in work if r[c] == 0]
        if not live:
            raise ValueError("lattice is not of full rank")
        piv = live[0]
        others = []
        for r in live[1:]:
            g, s, t = _xgcd(piv[c], r[c])
            u, v = piv[c] // g, r[c] // g
            new_piv = [s * x + t * y for x, y in zip(piv, r)]
            killed = [u * y - v * x for x, y in zip(piv, r)]
            piv = new_piv
            if any(killed):
                others.append(killed)
        if piv[c] < 0:
            piv = [-x for x in piv]
        basis[c] = piv
        work = rest + others
    for i in range(n):
        row = basis[i]
        for j in range(i - 1, -1, -1):
            q = row[j] // basis[j][j]
            if q:
                row = [x - q * y for x, y in zip(row, basis[j])]
        basis[i] = row
    return basis


def nullspace_mod_p(m: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : m x = 0 mod p}, entries in [0, p)."""
    rows = [[x % p for x in r] for r in m]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        out.append(v)
    return out


def left_kernel_mod_p(m: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {v : v m = 0 mod p}."""
    if not m:
        return []
    return nullspace_mod_p(transpose(m), p)

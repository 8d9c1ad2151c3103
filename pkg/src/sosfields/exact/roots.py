"""Exact real-root machinery: Sturm sequences, isolation, signs at a + b*sqrt(6)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence, Union

from . import poly as P
from .poly import IntPolynomial

INF = math.inf


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_u_v_sqrt(u, v, r: int = 6) -> int:
    """Sign of u + v*sqrt(r) for rationals u, v."""
    su, sv = sign(u), sign(v)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    # opposite signs: compare u^2 with r v^2
    return su * sign(u * u - r * v * v)


@total_ordering
@dataclass(frozen=True)
class QuadIrrBound:
    """The real number a + b*sqrt(6), integers a and b."""

    a: int
    b: int = 0

    def __neg__(self) -> "QuadIrrBound":
        return QuadIrrBound(-self.a, -self.b)

    def __float__(self) -> float:
        return self.a + self.b * math.sqrt(6)

    def sign(self) -> int:
        return sign_u_v_sqrt(self.a, self.b)

    def cmp(self, other) -> int:
        """Exact sign of self - other (other rational or QuadIrrBound)."""
        if isinstance(other, QuadIrrBound):
            return sign_u_v_sqrt(self.a - other.a, self.b - other.b)
        return sign_u_v_sqrt(self.a - Fraction(other), self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadIrrBound):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, float):
            return float(self) < other
        return self.cmp(other) < 0

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def ceil(self) -> int:
        """Smallest integer >= self."""
        n = math.ceil(float(self))
        while self.cmp(n) > 0:
            n += 1
        while self.cmp(n - 1) <= 0:
            n -= 1
        return n

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt6"

    @classmethod
    def parse(cls, text: str) -> "QuadIrrBound":
        """Accepts ``2+sqrt6``, ``2+1*sqrt6``, ``3``, ``-1+2*sqrt(6)``."""
        t = text.replace(" ", "").replace("sqrt(6)", "sqrt6")
        if "sqrt6" not in t:
            return cls(int(t))
        head, _, _ = t.partition("sqrt6")
        head = head.rstrip("*")
        idx = max(head.rfind("+"), head.rfind("-"))
        if idx <= 0:
            a, bs = 0, head
        else:
            a, bs = int(head[:idx]), head[idx:]
        if bs in ("", "+"):
            b = 1
        elif bs == "-":
            b = -1
        else:
            b = int(bs)
        return cls(a, b)


HOUSE_BOUND = QuadIrrBound(2, 1)

Point = Union[int, Fraction, QuadIrrBound, float]


def sign_at(f: Union[IntPolynomial, Sequence], p) -> int:
    """Exact sign of f(p) for p rational, QuadIrrBound, or +-inf."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else f
    if not cs:
        return 0
    if isinstance(p, float):
        if p == INF:
            return sign(cs[-1])
        if p == -INF:
            return sign(cs[-1]) * (-1) ** (len(cs) - 1)
        raise TypeError("float points other than +-inf are not exact")
    if isinstance(p, QuadIrrBound):
        if p.b == 0:
            return sign(P.evaluate(cs, p.a))
        a, b = p.a, p.b
        u, v = 0, 0
        # Horner in Z[sqrt6]
        for c in reversed(cs):
            u, v = u * a + 6 * v * b + c, u * b + v * a
        return sign_u_v_sqrt(u, v)
    if isinstance(p, Fraction) and p.denominator != 1:
        num, den = p.numerator, p.denominator
        acc = 0
        dp = 1
        for c in reversed(cs):
            acc = acc * num + c * dp
            dp *= den
        # acc = den^(n) * f(p) up to the positive factor den^k
        return sign(acc)
    return sign(P.evaluate(cs, int(p)))


def sturm_sequence(f: Sequence) -> list[list]:
    """Sturm chain of an integer polynomial, scaled by positive factors."""
    f = P.primitive(P.to_integer(f))
    seq = [f]
    d = P.primitive(P.derivative(f))
    if not d:
        return seq
    seq.append(d)
    while True:
        r = P.pseudo_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(P.primitive([-c for c in r]))
    return seq


def _variations(seq: list[list], p) -> int:
    n = 0
    last = 0
    for q in seq:
        s = sign_at(q, p)
        if s == 0:
            continue
        if last and s != last:
            n += 1
        last = s
    return n


def _cmp(a, b) -> int:
    """Exact sign of a - b over rationals, QuadIrrBound and +-inf."""
    if isinstance(a, float) or isinstance(b, float):
        if a == b:
            return 0
        if a == -INF or b == INF:
            return -1
        if a == INF or b == -INF:
            return 1
        raise TypeError("float points other than +-inf are not exact")
    if isinstance(a, QuadIrrBound):
        return a.cmp(b)
    if isinstance(b, QuadIrrBound):
        return -b.cmp(a)
    return sign(a - b)


def sturm_count(f: Union[IntPolynomial, Sequence], lo: Point, hi: Point) -> int:
    """Number of distinct real roots of f in (lo, hi]."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else P.trim(f)
    if not cs:
        raise ValueError("sturm_count of the zero polynomial")
    if _cmp(hi, lo) <= 0:
        raise ValueError("sturm_count needs lo < hi")
    seq = sturm_sequence(P.squarefree_part(cs))
    return _variations(seq, lo) - _variations(seq, hi)


def count_roots_with_sequence(seq: list[list], lo: Point, hi: Point) -> int:
    return _variations(seq, lo) - _variations(seq, hi)


def all_roots_inside(f: Sequence, bound: QuadIrrBound) -> bool:
    """True iff every complex root of f is real and lies in the open (-bound, bound)."""
    cs = P.trim(f)
    n = len(cs) - 1
    if n <= 0:
        return n == 0
    if sign_at(cs, bound) == 0 or sign_at(cs, -bound) == 0:
        return False
    sf = P.squarefree_part(cs)
    m = len(sf) - 1
    if m == 0:
        return True
    seq = sturm_sequence(sf)
    return _variations(seq, -bound) - _variations(seq, bound) == m


# ---------------------------------------------------------------------------
# isolation


@dataclass(frozen=True)
class RootInterval:
    """Half-open rational interval (lo, hi] holding exactly one root."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("RootInterval needs lo < hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def contains(self, x) -> bool:
        return self.lo < x <= self.hi


def cauchy_bound(cs: Sequence) -> Fraction:
    lc = abs(Fraction(cs[-1]))
    return 1 + max((abs(Fraction(c)) / lc for c in cs[:-1]), default=Fraction(0))


def isolate_real_roots(f: Union[IntPolynomial, Sequence]) -> list[RootInterval]:
    """One disjoint interval per distinct real root, ascending."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else P.trim(f)
    if not cs:
        raise ValueError("cannot isolate roots of the zero polynomial")
    sf = P.squarefree_part(cs)
    if len(sf) <= 1:
        return []
    seq = sturm_sequence(sf)
    r = cauchy_bound(sf)
    out: list[RootInterval] = []
    stack = [(-r, r, count_roots_with_sequence(seq, -r, r))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append(RootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        left = count_roots_with_sequence(seq, lo, mid)
        stack.append((mid, hi, k - left))
        stack.append((lo, mid, left))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(f: Union[IntPolynomial, Sequence], iv: RootInterval, width) -> RootInterval:
    """Bisect an isolating interval of a root of f until narrower than width."""
    cs = f.coeffs if isinstance(f, IntPolynomial) else P.trim(f)
    sf = P.squarefree_part(cs)
    lo, hi = iv.lo, iv.hi
    width = Fraction(width)
    shi = sign_at(sf, hi)
    if shi == 0:
        return RootInterval(hi - min(width, hi - lo) / 2, hi)
    slo = sign_at(sf, lo)
    if slo == 0:
        # lo is a neighbouring simple root; the sign just right of it is f'(lo)'s
        slo = sign_at(P.derivative(sf), lo)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        s = sign_at(sf, mid)
        if s == 0:
            return RootInterval(mid - min(width, mid - lo) / 2, mid)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)

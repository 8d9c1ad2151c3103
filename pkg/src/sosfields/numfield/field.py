"""Totally real fields with a fixed integral basis, and their elements.

Two coordinate systems are in play.  ``Element.coords`` are rationals over the
power basis 1, a, ..., a^(d-1); hot loops instead pass plain integer tuples
over the integral basis ("ivec") straight to the ``NumberField`` methods.

Signs of conjugates are decided from dyadic enclosures: each sigma_i(b_k) is
boxed in [lo, hi] / 2^prec with exact integers, and a combination with
integer or rational weights is boxed by the obvious sums.  A nonzero element
has no zero conjugate, so refining the precision always settles its sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from ..exact import linalg as L
from ..exact import poly as P
from ..exact.factor import char_poly_of_element
from ..exact.poly import IntPolynomial
from ..exact.roots import QuadIrrBound, RootInterval, all_roots_inside, isolate_real_roots, refine, sturm_count
from .order import check_defining_polynomial, maximal_order, mult_table

START_PREC = 60


def _interval_horner(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    a = b = Fraction(0)
    for c in reversed(coeffs):
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


def _newton_power_sums(f: Sequence[int], count: int) -> list[int]:
    """p_k = sum of k-th powers of the roots of monic f, for k < count (Newton)."""
    d = len(f) - 1
    p = [d]
    for k in range(1, count):
        s = sum(f[d - j] * p[k - j] for j in range(1, min(k - 1, d) + 1))
        if k <= d:
            s += k * f[d - k]
        p.append(-s)
    return p


class NumberField:
    """Q(a) for a root a of ``f``, with conjugates ordered ascending.

    ``basis`` rows give the integral basis over the power basis; when omitted
    the maximal order is computed.
    """

    def __init__(self, f, basis: Optional[Sequence[Sequence]] = None, disc: Optional[int] = None,
                 *, name: Optional[str] = None, trusted: bool = False):
        cs = list(getattr(f, "coeffs", f))
        if not trusted:
            cs = check_defining_polynomial(cs)
        self.f = IntPolynomial(cs)
        self.d = d = len(cs) - 1
        self.name = name
        if basis is None:
            basis, disc = maximal_order(cs)
        self.basis = [[Fraction(x) for x in row] for row in basis]
        self.basis_inv = L.inverse(self.basis)
        self.roots: list[RootInterval] = isolate_real_roots(cs)
        if len(self.roots) != d:
            raise ValueError("defining polynomial is not totally real")
        self.mult = mult_table(cs, self.basis, self.basis_inv)
        tr_pow = _newton_power_sums(cs, 2 * d)
        self._tr_pow = tr_pow
        self.traces = [int(sum(c * tr_pow[k] for k, c in enumerate(row))) for row in self.basis]
        self.gram = [[sum(t * tr for t, tr in zip(self.mult[i][j], self.traces)) for j in range(d)]
                     for i in range(d)]
        gdisc = L.det_int(self.gram)
        if disc is not None and disc != gdisc:
            raise ValueError(f"discriminant {disc} disagrees with the trace form ({gdisc})")
        self.disc = gdisc
        self._encl: dict[int, list] = {}
        self.one = self.ivec_of_power([1])

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_basis(cls, f, basis, *, name: Optional[str] = None, trusted: bool = False) -> "NumberField":
        """Use a known integral basis (closure and discriminant are still checked)."""
        return cls(f, basis=basis, name=name, trusted=trusted)

    def __repr__(self) -> str:
        label = self.name or str(self.f)
        return f"NumberField({label}, disc={self.disc})"

    def serialize(self) -> str:
        head = "f = " + ",".join(str(c) for c in self.f.coeffs)
        rows = ";".join(",".join(str(c) for c in row) for row in self.basis)
        return f"{head}\nbasis = {rows}"

    @classmethod
    def parse(cls, text: str) -> "NumberField":
        f, basis = None, None
        for line in text.strip().splitlines():
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "f":
                f = P.parse_poly(val)
            elif key == "basis":
                basis = [[Fraction(x) for x in row.split(",")] for row in val.split(";")]
            else:
                raise ValueError(f"unknown field descriptor key {key!r}")
        if f is None:
            raise ValueError("field descriptor needs an 'f = ...' line")
        return cls(f, basis=basis)

    # -- coordinates ---------------------------------------------------------

    def ivec_of_power(self, coeffs: Sequence) -> tuple:
        """Integral-basis coordinates of a power-basis polynomial (rationals allowed)."""
        red = P.divmod_q([Fraction(c) for c in coeffs], list(self.f.coeffs))[1] if len(coeffs) > self.d else list(coeffs)
        red = [Fraction(c) for c in red] + [Fraction(0)] * (self.d - len(red))
        out = L.vecmat(red, self.basis_inv)
        return tuple(P._demote(Fraction(c)) for c in out)

    def power_of_ivec(self, v: Sequence) -> list:
        return [P._demote(Fraction(c)) for c in L.vecmat(v, self.basis)]

    def element(self, coeffs: Sequence) -> "Element":
        """Element from power-basis coordinates."""
        return Element(self, coeffs)

    def from_ivec(self, v: Sequence) -> "Element":
        return Element(self, self.power_of_ivec(v))

    def rational(self, r) -> "Element":
        return Element(self, [r])

    @property
    def generator(self) -> "Element":
        return Element(self, [0, 1])

    # -- integral-basis arithmetic ------------------------------------------

    def mul_iv(self, a: Sequence, b: Sequence) -> tuple:
        d = self.d
        out = [0] * d
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = self.mult[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def square_iv(self, a: Sequence) -> tuple:
        return self.mul_iv(a, a)

    def trace_power(self, coeffs: Sequence):
        """Trace of a power-basis polynomial (any degree < 2d)."""
        return P._demote(sum((Fraction(c) * self._tr_pow[k] for k, c in enumerate(coeffs)), Fraction(0)))

    def trace_iv(self, a: Sequence) -> int:
        return sum(c * t for c, t in zip(a, self.traces))

    def trace_square_iv(self, a: Sequence) -> int:
        g = self.gram
        return sum(a[i] * a[j] * g[i][j] for i in range(self.d) for j in range(self.d) if a[i] and a[j])

    def mult_matrix_iv(self, a: Sequence) -> list:
        """Matrix of multiplication by a, rows = images of basis elements."""
        return [list(self.mul_iv(self.unit_vector(i), a)) for i in range(self.d)]

    def norm_iv(self, a: Sequence) -> int:
        return L.det_int(self.mult_matrix_iv(a))

    def unit_vector(self, i: int) -> tuple:
        return tuple(int(k == i) for k in range(self.d))

    # -- embeddings ----------------------------------------------------------

    @cached_property
    def embedding_matrix(self) -> list[list[float]]:
        """E[i][k] ~ sigma_i(b_k) in floats (for proposals only)."""
        enc = self._enclosures(START_PREC)
        scale = 2.0 ** START_PREC
        return [[(lo + hi) / 2 / scale for lo, hi in row] for row in enc]

    def _enclosures(self, prec: int) -> list:
        if prec in self._encl:
            return self._encl[prec]
        width = Fraction(1, 2 ** (prec + 16))
        rows = []
        for iv in self.roots:
            r = refine(self.f, iv, width)
            row = []
            for b in self.basis:
                lo, hi = _interval_horner(b, r.lo, r.hi)
                while hi - lo > Fraction(1, 2 ** (prec + 2)):
                    width /= 2 ** 8
                    r = refine(self.f, r, width)
                    lo, hi = _interval_horner(b, r.lo, r.hi)
                row.append((math.floor(lo * 2**prec), math.ceil(hi * 2**prec)))
            rows.append(row)
        self._encl[prec] = rows
        return rows

    def conjugate_box(self, v: Sequence, prec: int = START_PREC) -> list[tuple[Fraction, Fraction]]:
        """Rigorous rational enclosures [lo, hi] of sigma_i(v), v over the integral basis."""
        enc = self._enclosures(prec)
        out = []
        for row in enc:
            lo = hi = Fraction(0)
            for c, (l, h) in zip(v, row):
                if c > 0:
                    lo += c * l
                    hi += c * h
                elif c < 0:
                    lo += c * h
                    hi += c * l
            out.append((lo / 2**prec, hi / 2**prec))
        return out

    def signs_iv(self, v: Sequence) -> tuple:
        """Exact signs of sigma_1(v), ..., sigma_d(v) (ascending embedding order)."""
        if not any(v):
            return (0,) * self.d
        fast = self._float_signs(v)
        if fast is not None:
            return fast
        prec = START_PREC
        while True:
            box = self.conjugate_box(v, prec)
            if all(lo > 0 or hi < 0 for lo, hi in box):
                return tuple(1 if lo > 0 else -1 for lo, _ in box)
            prec *= 2

    def _float_signs(self, v: Sequence) -> Optional[tuple]:
        # certified when the value clears a generous a priori rounding bound
        out = []
        for row in self.embedding_matrix:
            s = 0.0
            mag = 0.0
            for c, e in zip(v, row):
                if c:
                    t = float(c) * e
                    s += t
                    mag += abs(t)
            if abs(s) <= 1e-9 * (mag + 1.0):
                return None
            out.append(1 if s > 0 else -1)
        return tuple(out)

    def is_totally_positive_iv(self, v: Sequence) -> bool:
        return any(v) and all(s > 0 for s in self.signs_iv(v))

    def is_nonneg_iv(self, v: Sequence) -> bool:
        """v totally positive or zero."""
        return not any(v) or all(s > 0 for s in self.signs_iv(v))

    def float_conjugates(self, v: Sequence) -> list[float]:
        return [sum(c * e for c, e in zip(v, row)) for row in self.embedding_matrix]

    def conjugates_below(self, v: Sequence, bound: Fraction) -> bool:
        """Every sigma_i(v) < bound, decided exactly."""
        prec = START_PREC
        while True:
            box = self.conjugate_box(v, prec)
            if any(lo >= bound for lo, _ in box):
                return False
            if all(hi < bound for _, hi in box):
                return True
            prec *= 2
            if prec > 1 << 14:
                # a conjugate equal to a rational bound means v is that rational
                return False

    # -- misc ---------------------------------------------------------------

    def is_integral_coords(self, coeffs: Sequence) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.ivec_of_power(coeffs))


class Element:
    """Element of a NumberField, exact rational coordinates over the power basis."""

    __slots__ = ("field", "coords", "_ivec", "_charpoly")

    def __init__(self, field: NumberField, coords: Iterable):
        cs = [Fraction(c) for c in coords]
        if len(cs) > field.d:
            cs = P.divmod_q(cs, list(field.f.coeffs))[1]
        cs = list(cs) + [Fraction(0)] * (field.d - len(cs))
        self.field = field
        self.coords = tuple(P._demote(c) for c in cs)
        self._ivec = None
        self._charpoly = None

    @classmethod
    def from_ivec(cls, field: NumberField, v: Sequence) -> "Element":
        e = cls(field, field.power_of_ivec(v))
        e._ivec = tuple(P._demote(Fraction(c)) for c in v)
        return e

    # -- coordinates ---------------------------------------------------------

    @property
    def ivec(self) -> tuple:
        """Coordinates over the integral basis (rational in general)."""
        if self._ivec is None:
            self._ivec = self.field.ivec_of_power(self.coords)
        return self._ivec

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.ivec)

    def int_ivec(self) -> tuple:
        if not self.is_integral():
            raise ValueError(f"{self} is not an algebraic integer")
        return tuple(int(c) for c in self.ivec)

    def is_zero(self) -> bool:
        return not any(self.coords)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        return Element(self.field, [other])

    def __add__(self, other) -> "Element":
        o = self._coerce(other)
        return Element(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.field, [-a for a in self.coords])

    def __sub__(self, other) -> "Element":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Element":
        o = self._coerce(other)
        return Element(self.field, P.mul(self.coords, o.coords) or [0])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            return self.inverse() ** (-n)
        out = Element(self.field, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Element":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # solve x * self = 1 using the multiplication matrix over the power basis
        d = self.field.d
        f = list(self.field.f.coeffs)
        rows = []
        for i in range(d):
            prod = P.divmod_q(P.mul([0] * i + [1], self.coords), f)[1]
            rows.append([Fraction(c) for c in prod] + [Fraction(0)] * (d - len(prod)))
        inv = L.inverse(rows)
        return Element(self.field, inv[0])

    def __truediv__(self, other) -> "Element":
        return self * self._coerce(other).inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.coords == Element(self.field, [other]).coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.field), self.coords))

    def __repr__(self) -> str:
        return f"Element({P.format_poly(self.coords, 'a')})"

    __str__ = __repr__

    # -- invariants ------------------------------------------------------------

    def charpoly(self) -> list:
        """Monic characteristic polynomial over Q, ascending coefficients."""
        if self._charpoly is None:
            self._charpoly = char_poly_of_element(list(self.field.f.coeffs), self.coords, check=False)
        return self._charpoly

    def trace(self):
        return -self.charpoly()[-2]

    def norm(self):
        cp = self.charpoly()
        return (-1) ** self.field.d * cp[0]

    def conjugates(self) -> list[float]:
        """Float approximations, ascending embedding order."""
        v = [float(c) for c in self.ivec]
        return self.field.float_conjugates(v)

    def house_less_than(self, bound: QuadIrrBound) -> bool:
        if self.is_zero():
            raise ValueError("house of zero is not used")
        return all_roots_inside(P.to_integer(self.charpoly()), bound)

    def is_totally_positive(self) -> bool:
        if self.is_zero():
            return False
        cp = P.to_integer(self.charpoly())
        # all d roots (with multiplicity) in (0, inf): squarefree count must be full and 0 not a root
        if cp[0] == 0:
            return False
        sf = P.squarefree_part(cp)
        return sturm_count(sf, 0, math.inf) == len(sf) - 1

    def signs(self) -> tuple:
        return self.field.signs_iv(self.ivec)

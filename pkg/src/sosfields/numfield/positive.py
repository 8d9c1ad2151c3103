"""Totally positive integers: enumeration below a bound, indecomposability, units, squares mod 2."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Optional

from ..exact.roots import QuadIrrBound
from .field import Element, NumberField
from .lattice import short_vectors

DEFAULT_C = Fraction(3, 2)


def _require_tp_integral(e: Element) -> tuple:
    if not e.is_integral():
        raise ValueError(f"{e} is not integral")
    v = e.int_ivec()
    if not e.field.is_totally_positive_iv(v):
        raise ValueError(f"{e} is not totally positive")
    return v


def _below_iter(field: NumberField, upper: tuple) -> Iterator[tuple]:
    """Integral-basis vectors b with 0 < b < upper in every embedding.

    From sigma(b)(sigma(u) - sigma(b)) > 0 summed with weights 1/sigma(u):
    Tr((b - u/2)^2 / u) < Tr(u)/4, an ellipsoid in coordinate space.  Its
    points are candidates only; each is checked exactly afterwards.
    """
    d = field.d
    uinv = field.from_ivec(upper).inverse()
    ell = [field.trace_power((field.from_ivec(field.unit_vector(m)) * uinv).coords) for m in range(d)]
    gram = [[sum(t * l for t, l in zip(field.mult[j][k], ell)) for k in range(d)] for j in range(d)]
    center = [Fraction(c, 2) for c in upper]
    bound = Fraction(field.trace_iv(upper), 4)
    for b in short_vectors(gram, bound, center, strict=True):
        if not any(b):
            continue
        if not field.is_totally_positive_iv(b):
            continue
        rest = tuple(u - x for u, x in zip(upper, b))
        if field.is_totally_positive_iv(rest):
            yield b


def totally_positive_below(upper: Element) -> list[Element]:
    """All beta in O_K with 0 < beta < upper, sorted by (trace, coordinates)."""
    v = _require_tp_integral(upper)
    field = upper.field
    found = sorted(_below_iter(field, v), key=lambda b: (field.trace_iv(b), b))
    return [Element.from_ivec(field, b) for b in found]


def totally_positive_upto_trace(field: NumberField, max_trace: int) -> list[tuple]:
    """Integral-basis vectors of all totally positive integers with trace <= max_trace."""
    if max_trace < field.d:
        return []
    upper = tuple((max_trace + 1) * c for c in field.one)
    out = [b for b in _below_iter(field, upper) if field.trace_iv(b) <= max_trace]
    out.sort(key=lambda b: (field.trace_iv(b), b))
    return out


def is_indecomposable(e: Element) -> bool:
    v = _require_tp_integral(e)
    return next(_below_iter(e.field, v), None) is None


def is_primitive_element(e: Element) -> bool:
    """No rational integer n >= 2 divides e in O_K."""
    g = 0
    for c in e.int_ivec():
        g = math.gcd(g, c)
    return g == 1


def indecomposability_by_norm(e: Element, c=DEFAULT_C) -> bool:
    """Sufficient test: primitive e with Nr(e) < 2^(d-1)(1+c) is indecomposable.

    False means no conclusion.  ``c`` must be valid for the field: every
    totally positive integer other than 1 has trace at least c*d.
    """
    _require_tp_integral(e)
    if not is_primitive_element(e):
        return False
    d = e.field.d
    return e.norm() < 2 ** (d - 1) * (1 + Fraction(c))


def indecomposability_by_norm_primitive_field(e: Element, c=DEFAULT_C, *, primitive_field: Optional[bool] = None) -> bool:
    """Experimental stronger variant for fields without proper subfields: Nr(e) < (2^d - 2)c + 2.

    Prime degree implies the field is primitive; otherwise the caller must
    vouch for it via ``primitive_field=True``.
    """
    _require_tp_integral(e)
    d = e.field.d
    if primitive_field is None:
        primitive_field = d == 1 or all(d % k for k in range(2, d))
    if not primitive_field or not is_primitive_element(e):
        return False
    return e.norm() < (2**d - 2) * Fraction(c) + 2


def squares_mod_2(field: NumberField) -> frozenset:
    """Residues x^2 mod 2O_K, as integral-basis vectors with entries in {0, 1}."""
    out = set()
    for x in itertools.product((0, 1), repeat=field.d):
        out.add(tuple(c % 2 for c in field.square_iv(x)))
    return frozenset(out)


_SQ2_CACHE: dict = {}


def is_square_mod_2(e: Element) -> bool:
    field = e.field
    key = id(field)
    if key not in _SQ2_CACHE or _SQ2_CACHE[key][0] is not field:
        _SQ2_CACHE[key] = (field, squares_mod_2(field))
    return tuple(c % 2 for c in e.int_ivec()) in _SQ2_CACHE[key][1]


def units_heuristic(field: NumberField, house_cap: QuadIrrBound) -> list[Element]:
    """Units with house below the cap, by exhaustive search; not a unit group."""
    cap_f = float(house_cap)
    bound = math.ceil(field.d * cap_f * cap_f) + 1  # Tr(x^2) < d * cap^2
    out = []
    for v in short_vectors(field.gram, bound):
        if not any(v):
            continue
        if abs(field.norm_iv(v)) != 1:
            continue
        e = Element.from_ivec(field, v)
        if e.house_less_than(house_cap):
            out.append(e)
    out.sort(key=lambda e: (field.trace_square_iv(e.int_ivec()), e.int_ivec()))
    return out

"""Concrete fields used by the classification, and isomorphism testing."""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np
from sympy import factorint

from ..exact import poly as P
from .field import Element, NumberField


def _squarefree(n: int) -> bool:
    return n > 1 and all(e == 1 for e in factorint(n).values())


def compositum_quadratic(d1: int, d2: int) -> NumberField:
    """Q(sqrt d1, sqrt d2) defined by the minimal polynomial of sqrt d1 + sqrt d2."""
    if not (_squarefree(d1) and _squarefree(d2)):
        raise ValueError("compositum needs squarefree integers > 1")
    if d1 == d2:
        raise ValueError("compositum needs distinct quadratic fields")
    f = [(d1 - d2) ** 2, 0, -2 * (d1 + d2), 0, 1]
    return NumberField(f, name=f"Q(sqrt{d1},sqrt{d2})")


def quadratic_field(D: int) -> NumberField:
    if not _squarefree(D):
        raise ValueError("D must be squarefree > 1")
    return NumberField([-D, 0, 1], name=f"Q(sqrt{D})")


def evaluate_in(field: NumberField, g, x: Element) -> Element:
    acc = field.rational(0)
    for c in reversed(list(getattr(g, "coeffs", g))):
        acc = acc * x + c
    return acc


def integral_roots_in(field: NumberField, g) -> list[Element]:
    """Roots of the monic integer polynomial g lying in O_K.

    Candidate coordinates come from matching conjugates to real roots of g
    in every possible way; each candidate is verified exactly.
    """
    cs = list(getattr(g, "coeffs", g))
    rts = np.polynomial.polynomial.polyroots([float(c) for c in cs])
    real = sorted(r.real for r in rts if abs(r.imag) < 1e-7)
    if not real:
        return []
    emb = np.array(field.embedding_matrix)
    found: dict = {}
    for choice in itertools.product(real, repeat=field.d):
        coords = np.linalg.solve(emb, np.array(choice))
        v = tuple(int(round(c)) for c in coords)
        if v in found or np.max(np.abs(coords - np.round(coords))) > 1e-4:
            continue
        x = Element.from_ivec(field, v)
        if evaluate_in(field, cs, x).is_zero():
            found[v] = x
    return [found[k] for k in sorted(found)]


def are_isomorphic(k1: NumberField, k2: NumberField) -> bool:
    """Equal discriminants and each defining polynomial has a root in the other field."""
    if k1.d != k2.d or k1.disc != k2.disc:
        return False
    return bool(integral_roots_in(k1, k2.f)) and bool(integral_roots_in(k2, k1.f))


def isomorphism_classes(fields: list[NumberField]) -> list[list[NumberField]]:
    classes: list[list[NumberField]] = []
    for k in fields:
        for cls in classes:
            if are_isomorphic(cls[0], k):
                cls.append(k)
                break
        else:
            classes.append([k])
    return classes


def canonical_quadratic_D(field: NumberField) -> Optional[int]:
    """Squarefree D with field = Q(sqrt D) for degree 2 (from the discriminant)."""
    if field.d != 2:
        return None
    disc = field.disc
    return disc // 4 if disc % 4 == 0 else disc

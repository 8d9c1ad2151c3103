import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from sosfields.exact import poly as P
from sosfields.exact.factor import char_poly_of_element, is_irreducible
from sosfields.exact.roots import HOUSE_BOUND, QuadIrrBound
from sosfields.numfield import (
    Element,
    NumberField,
    are_isomorphic,
    compositum_quadratic,
    indecomposability_by_norm,
    is_indecomposable,
    is_square_mod_2,
    maximal_order,
    squares_mod_2,
    totally_positive_below,
    totally_positive_upto_trace,
    units_heuristic,
)
from sosfields.numfield.positive import is_primitive_element

# -- oracles ------------------------------------------------------------------


def box_bound(fld: NumberField, conj_max: float) -> int:
    """Integral-basis coordinates of any element whose conjugates lie in (-conj_max, conj_max)."""
    inv = np.linalg.inv(np.array(fld.embedding_matrix, dtype=float))
    return int(math.ceil(np.abs(inv).sum(axis=1).max() * conj_max)) + 1


def box_totally_positive(fld: NumberField, max_trace: int) -> list[tuple]:
    """Every totally positive integer of trace <= max_trace, by brute force over a coordinate box."""
    r = box_bound(fld, max_trace)
    out = []
    for v in itertools.product(range(-r, r + 1), repeat=fld.d):
        if not any(v):
            continue
        e = Element.from_ivec(fld, v)
        if e.trace() <= max_trace and e.is_totally_positive():
            out.append(v)
    return sorted(out, key=lambda v: (fld.trace_iv(v), v))


def box_below(upper: Element) -> list[tuple]:
    fld = upper.field
    r = box_bound(fld, max(upper.conjugates()))
    emb = np.array(fld.embedding_matrix, dtype=float)
    top = np.array(upper.conjugates())
    pts = np.array(list(itertools.product(range(-r, r + 1), repeat=fld.d)), dtype=float)
    conj = pts @ emb.T  # rows in embedding order, like upper.conjugates()
    # float screen with a wide margin; every survivor is decided exactly
    keep = np.all(conj > -1e-6, axis=1) & np.all(conj < top + 1e-6, axis=1)
    out = []
    for v in pts[keep].astype(int):
        e = Element.from_ivec(fld, tuple(int(x) for x in v))
        if e.is_totally_positive() and (upper - e).is_totally_positive():
            out.append(tuple(int(x) for x in v))
    return sorted(out, key=lambda v: (fld.trace_iv(v), v))


def p_maximal_by_search(fld: NumberField, p: int) -> bool:
    """No element (sum c_i b_i)/p with 0 <= c_i < p, not all zero, is an algebraic integer."""
    for c in itertools.product(range(p), repeat=fld.d):
        if not any(c):
            continue
        e = Element.from_ivec(fld, [Fraction(x, p) for x in c])
        if all(Fraction(t).denominator == 1 for t in e.charpoly()):
            return False
    return True


def rational_root_bounds(n: int, d: int, scale: int) -> tuple[Fraction, Fraction]:
    """lo <= n^(1/d) <= hi with hi - lo = 1/scale."""
    r = _iroot(n * scale**d, d)
    return Fraction(r, scale), Fraction(r + 1, scale)


def _iroot(n: int, d: int) -> int:
    """floor(n^(1/d)) by integer Newton iteration from above."""
    if n < 2:
        return n
    x = 1 << (n.bit_length() // d + 1)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            return x
        x = y


def norm_superadditive_exact(a: int, b: int, c: int, d: int) -> bool | None:
    """Decide c >= (a^(1/d) + b^(1/d))^d by rational upper bounds; None if undecided."""
    scale = 10
    for _ in range(40):
        _, ha = rational_root_bounds(a, d, scale)
        _, hb = rational_root_bounds(b, d, scale)
        if c >= (ha + hb) ** d:
            return True
        la, _ = rational_root_bounds(a, d, scale)
        lb, _ = rational_root_bounds(b, d, scale)
        if c < (la + lb) ** d:
            return False
        scale *= 10
    return None


# -- fixtures -------------------------------------------------------------------

FIELD_KEYS = ["Q2", "Q3", "Q5", "K7", "rho", "Q25", "K20"]


def tp_vector(fld: NumberField, raw: list[int], extra: int) -> tuple:
    from sosfields.classify import least_positive_shift

    v = tuple(raw[: fld.d])
    k = least_positive_shift(fld, v) + extra
    return tuple(a + k * o for a, o in zip(v, fld.one))


# -- examples ---------------------------------------------------------------------


def test_maximal_order_examples():
    basis, disc = maximal_order([-5, 0, 1])
    assert disc == 5 and basis == [[1, 0], [Fraction(1, 2), Fraction(1, 2)]]
    assert maximal_order([-2, 0, 1])[1] == 8
    basis, disc = maximal_order([-2, -4, 0, 1])
    assert disc == 148 and basis == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert maximal_order([9, 0, -14, 0, 1])[1] == 1600
    assert maximal_order([1, 0, -10, 0, 1])[1] == 2304
    assert maximal_order([5, 0, -5, 0, 1])[1] == 2000
    assert maximal_order([-1, -2, 1, 1])[1] == 49


def test_maximal_order_rejects_bad_input():
    with pytest.raises(ValueError):
        maximal_order([1, 0, 1])  # not totally real
    with pytest.raises(ValueError):
        maximal_order([-1, 0, 1])  # reducible
    with pytest.raises(ValueError):
        maximal_order([-2, 0, 2])  # not monic


@pytest.mark.parametrize("key", FIELD_KEYS)
def test_maximality_by_brute_force(fields, key):
    fld = fields[key]
    for p in (2, 3, 5):
        if fld.disc % (p * p) == 0 or P.resultant(fld.f.coeffs, P.derivative(fld.f.coeffs)) % (p * p) == 0:
            assert p_maximal_by_search(fld, p)


@pytest.mark.parametrize("key", FIELD_KEYS)
def test_basis_closure_and_disc(fields, key):
    fld = fields[key]
    for i in range(fld.d):
        for j in range(fld.d):
            prod = fld.from_ivec(fld.unit_vector(i)) * fld.from_ivec(fld.unit_vector(j))
            assert prod.is_integral()
    gram = [[fld.trace_iv(fld.mul_iv(fld.unit_vector(i), fld.unit_vector(j))) for j in range(fld.d)]
            for i in range(fld.d)]
    from sosfields.exact.linalg import det_int

    assert det_int(gram) == fld.disc


def test_trace_norm_examples(fields):
    q2 = fields["Q2"]
    e = q2.element([2, -1])
    assert (e.trace(), e.norm()) == (4, 2)
    k5 = NumberField([-1, 1, 1])  # omega = 2cos(2 pi/5), root of x^2 + x - 1
    a = k5.element([2, -1])
    assert (a.trace(), a.norm()) == (5, 5)
    assert a.is_totally_positive()
    n = fields["K7"].rational(3)
    assert (n.trace(), n.norm()) == (9, 27)


def test_house_examples(fields):
    assert fields["Q2"].generator.house_less_than(HOUSE_BOUND)
    assert not fields["Q2"].rational(5).house_less_than(HOUSE_BOUND)
    from sosfields.cyclo import cyclo_field, omega, to_element

    for q in (7, 8, 16, 11):
        for j in range(1, cyclo_field(q).d + 1):
            w = to_element(omega(q, j))
            if not w.is_zero():
                assert w.house_less_than(HOUSE_BOUND) and w.house_less_than(QuadIrrBound(2))


def test_total_positivity_examples(fields):
    assert fields["Q3"].element([2, 1]).is_totally_positive()
    assert not fields["Q2"].generator.is_totally_positive()


def test_totally_positive_below_examples(fields):
    assert totally_positive_below(fields["Q"].rational(2)) == [fields["Q"].rational(1)]
    q5 = fields["Q5"]
    phi = q5.element([Fraction(1, 2), Fraction(1, 2)])
    assert totally_positive_below(phi + 1) == []
    q2 = fields["Q2"]
    # 1 < 2 + sqrt2 fails at the other embedding: 1 + sqrt2 has conjugate 1 - sqrt2 < 0
    assert totally_positive_below(q2.element([2, 1])) == []
    assert [e.ivec for e in totally_positive_below(q2.rational(3))] == [(1, 0), (2, 0)]


def test_indecomposable_examples(fields):
    q = fields["Q"]
    assert is_indecomposable(q.rational(1))
    assert not is_indecomposable(q.rational(2))
    assert not indecomposability_by_norm(fields["Q2"].rational(2))
    # Nr(e) equal to the threshold is not enough: strict inequality
    q2 = fields["Q2"]
    e = q2.element([3, 0])  # not primitive anyway
    assert not indecomposability_by_norm(e)


def test_squares_mod_2_examples(fields):
    assert squares_mod_2(fields["Q"]) == frozenset({(0,), (1,)})
    q3 = fields["Q3"]
    assert not is_square_mod_2(q3.generator)
    assert len(squares_mod_2(q3)) == 2
    q2 = fields["Q2"]
    for v in itertools.product(range(-3, 4), repeat=2):
        assert is_square_mod_2(q2.from_ivec(tuple(2 * c for c in v)))


def test_compositum_examples():
    assert list(compositum_quadratic(2, 5).f.coeffs) == [9, 0, -14, 0, 1]
    assert list(compositum_quadratic(2, 3).f.coeffs) == [1, 0, -10, 0, 1]
    with pytest.raises(ValueError):
        compositum_quadratic(3, 3)


def test_compositum_disc_independent(fields):
    from sosfields.exact.linalg import det

    k = fields["Q25"]
    gram = [[k.trace_power((k.from_ivec(k.unit_vector(i)) * k.from_ivec(k.unit_vector(j))).coords)
             for j in range(4)] for i in range(4)]
    assert det(gram) == k.disc == 1600


def test_units_examples(fields):
    q2 = fields["Q2"]
    us = {u.ivec for u in units_heuristic(q2, QuadIrrBound(4))}
    assert {(1, 1), (-1, 1), (1, -1), (-1, -1)} <= us
    q5 = fields["Q5"]
    phi = q5.element([Fraction(1, 2), Fraction(1, 2)]).ivec
    assert phi in {u.ivec for u in units_heuristic(q5, QuadIrrBound(3))}
    assert [u.ivec for u in units_heuristic(fields["Q"], QuadIrrBound(7))] == [(-1,), (1,)]


def test_isomorphism(fields):
    k7b = NumberField([-7, -7, 0, 1])  # same discriminant 49
    assert are_isomorphic(fields["K7"], k7b)
    assert not are_isomorphic(fields["K7"], fields["rho"])
    other = NumberField([64, 0, -24, 0, 1])  # sqrt2 + sqrt10 also generates Q(sqrt2, sqrt5)
    assert are_isomorphic(fields["Q25"], other)
    assert not are_isomorphic(fields["Q25"], compositum_quadratic(2, 3))


def test_serialize_roundtrip(fields):
    for key in FIELD_KEYS:
        k = fields[key]
        k2 = NumberField.parse(k.serialize())
        assert k2.basis == k.basis and k2.disc == k.disc


# -- properties -----------------------------------------------------------------

small = st.integers(-6, 6)
vec = st.lists(small, min_size=4, max_size=4)


@given(st.sampled_from(FIELD_KEYS), vec, vec)
def test_norm_multiplicative_trace_linear(fields, key, u, v):
    k = fields[key]
    a, b = k.from_ivec(u[: k.d]), k.from_ivec(v[: k.d])
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a + b).trace() == a.trace() + b.trace()
    assert k.norm_iv(tuple(u[: k.d])) == a.norm()


@given(st.sampled_from(FIELD_KEYS), vec, vec, st.integers(0, 4), st.integers(0, 4))
def test_norm_superadditivity(fields, key, u, v, s, t):
    k = fields[key]
    x, y = tp_vector(k, u, s), tp_vector(k, v, t)
    a, b = k.norm_iv(x), k.norm_iv(y)
    c = k.norm_iv(tuple(p + q for p, q in zip(x, y)))
    verdict = norm_superadditive_exact(a, b, c, k.d)
    if verdict is None:
        # equality case: the two elements are rationally proportional
        ratio = {Fraction(p, q) for p, q in zip(x, y) if q} | {None for p, q in zip(x, y) if q == 0 and p}
        assert len(ratio) == 1 and None not in ratio
    else:
        assert verdict


@given(st.sampled_from(FIELD_KEYS), st.lists(st.fractions(-4, 4, max_denominator=3), min_size=4, max_size=4))
def test_disc_is_a_field_invariant(fields, key, coords):
    """The maximal order of Q(theta') for another generator theta' has the same discriminant."""
    k = fields[key]
    e = k.element(coords[: k.d])
    cp = e.charpoly()
    assume(all(Fraction(c).denominator == 1 for c in cp))
    cp = [int(c) for c in cp]
    assume(is_irreducible(cp))
    assume(max(abs(c) for c in cp) < 10**5)
    assert maximal_order(cp)[1] == k.disc


@pytest.mark.parametrize("key", ["Q2", "Q3", "Q5", "K7"])
def test_small_trace_classification_exhaustive(fields, key):
    """Totally positive integers of trace < 3d/2 are only 1; at 3d/2 also phi^2 and its conjugate."""
    k = fields[key]
    d = k.d
    low = box_totally_positive(k, math.ceil(3 * d / 2))
    assert low == totally_positive_upto_trace(k, math.ceil(3 * d / 2))
    strict = [v for v in low if 2 * k.trace_iv(v) < 3 * d]
    assert strict == [k.one]
    at = {v for v in low if 2 * k.trace_iv(v) <= 3 * d}
    if key == "Q5":
        phi2 = k.element([Fraction(3, 2), Fraction(1, 2)])  # phi^2 = phi + 1
        assert phi2.ivec == (1, 1)
        assert at == {k.one, (1, 1), (2, -1)}
    else:
        assert at == {k.one}


@given(st.sampled_from(["Q2", "Q3", "Q5", "K7"]), vec)
def test_small_trace_classification_random(fields, key, u):
    k = fields[key]
    v = tuple(u[: k.d])
    e = k.from_ivec(v)
    assume(any(v))
    if e.is_totally_positive() and 2 * e.trace() <= 3 * k.d:
        allowed = {k.one} | ({(1, 1), (2, -1)} if key == "Q5" else set())
        assert v in allowed
        if 2 * e.trace() < 3 * k.d:
            assert v == k.one


@given(st.sampled_from(["Q", "Q2", "Q3", "Q5", "K7"]), vec, st.integers(0, 3))
def test_totally_positive_below_matches_box(fields, key, u, extra):
    k = fields[key]
    upper = tp_vector(k, u, extra)
    assume(k.trace_iv(upper) <= 12)
    got = [e.ivec for e in totally_positive_below(k.from_ivec(upper))]
    assert got == [v for v in box_below(k.from_ivec(upper)) if any(v)]


@given(st.sampled_from(["Q2", "Q3", "Q5", "K7", "rho"]), vec, st.integers(0, 2))
def test_norm_criterion_implies_indecomposable(fields, key, u, extra):
    k = fields[key]
    e = k.from_ivec(tp_vector(k, u, extra))
    assume(k.trace_iv(e.ivec) <= 20)
    if indecomposability_by_norm(e, Fraction(3, 2)):
        assert is_indecomposable(e)


@pytest.mark.parametrize("key", ["Q2", "Q3", "Q5", "K7", "rho"])
def test_trace_floor_constant(fields, key):
    """c = 3/2 is valid here: every totally positive integer other than 1 has trace >= 3d/2."""
    k = fields[key]
    for v in totally_positive_upto_trace(k, math.ceil(3 * k.d / 2) - 1):
        assert v == k.one


@given(st.sampled_from(["Q2", "Q3", "Q5", "K7"]), vec, st.integers(0, 3))
def test_unit_squares_keep_positivity(fields, key, u, extra):
    k = fields[key]
    e = k.from_ivec(tp_vector(k, u, extra))
    for unit in units_heuristic(k, QuadIrrBound(3)):
        assert (e * unit * unit).is_totally_positive()


@given(st.sampled_from(FIELD_KEYS), vec)
def test_signs_agree_with_charpoly(fields, key, u):
    k = fields[key]
    v = tuple(u[: k.d])
    assume(any(v))
    assert k.is_totally_positive_iv(v) == k.from_ivec(v).is_totally_positive()


def test_primitive_element():
    k = NumberField([-2, 0, 1])
    assert is_primitive_element(k.element([3, 2]))
    assert not is_primitive_element(k.element([4, 2]))


def test_alpha_16_indecomposable():
    from sosfields.cyclo import cyclo_field, special_elements, to_element

    alpha, gamma = special_elements(16, with_gamma=True)
    assert is_indecomposable(to_element(alpha))
    g = to_element(gamma)
    assert g.norm() == 17
    assert indecomposability_by_norm(g, Fraction(3, 2))
    assert cyclo_field(16).d == 4

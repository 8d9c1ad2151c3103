import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from sosfields.cyclo import (
    CycloElement,
    constant,
    cyclo_field,
    degree_of,
    from_element,
    galois,
    gamma_norm_tower,
    inertia_order_3,
    shifted_alpha_check,
    minimal_polynomial,
    norm_cyclo,
    omega,
    omega_mul,
    parity_obstruction_2n,
    small_trace_squares,
    special_elements,
    to_element,
    trace_cyclo,
    trace_square_formula,
    verify,
)
from sosfields.exact.factor import char_poly_of_element
from sosfields.numfield import is_indecomposable, totally_positive_upto_trace
from sosfields.sos import decide_sos

QS = [8, 16, 32, 5, 7, 11, 13]


def cyclo_elements(q, lo=-3, hi=3):
    d = degree_of(q)
    return st.lists(st.integers(lo, hi), min_size=d, max_size=d).map(lambda cs: CycloElement(q, tuple(cs)))


def any_cyclo(lo=-3, hi=3):
    return st.sampled_from(QS).flatmap(lambda q: cyclo_elements(q, lo, hi))


# -- reduction rules ----------------------------------------------------------------


@pytest.mark.parametrize("q", [8, 16, 32])
def test_reduction_pow2(q):
    d = degree_of(q)
    for j in range(-2 * q, 2 * q):
        w = omega(q, j)
        assert w == omega(q, -j) == omega(q, j + q) == omega(q, q - j)
        if j % (q // 2):  # index 0 is the basis element 1, not zeta^0 + zeta^0
            assert omega(q, q // 2 + j) == -w
    assert omega(q, d) == constant(q, 0)
    assert omega(q, q // 2) == constant(q, -2)
    assert omega(q, 0) == constant(q, 1)


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_reduction_prime(q):
    d = degree_of(q)
    total = constant(q, 0)
    for j in range(1, d + 1):
        total = total + omega(q, j)
        assert omega(q, j) == omega(q, -j) == omega(q, q - j) == omega(q, j + q)
    assert total == constant(q, -1)
    assert constant(q, 1).coeffs == tuple([-1] * d)


def test_product_examples():
    assert omega_mul(omega(16, 1), omega(16, 3)) == omega(16, 2)
    for q in QS:
        w = omega(q, 1)
        assert omega_mul(w, w) == constant(q, 2) + omega(q, 2)
        e = CycloElement(q, tuple(range(1, degree_of(q) + 1)))
        assert omega_mul(constant(q, 1), e) == e


def test_special_elements():
    a, g = special_elements(16, with_gamma=True)
    assert a == omega(16, 1) + constant(16, 2)
    assert g == omega(16, 1) + omega(16, 3) + constant(16, 3)
    a8, g8 = special_elements(8)
    assert a8 == omega(8, 1) + constant(8, 2) and g8 is None
    with pytest.raises(ValueError):
        special_elements(8, with_gamma=True)
    assert special_elements(7)[0] == constant(7, 2) - omega(7, 1)


def test_trace_norm_examples():
    a16, g16 = special_elements(16, with_gamma=True)
    assert trace_cyclo(a16) == 8 and trace_cyclo(g16) == 12
    assert norm_cyclo(special_elements(32)[0]) == 2
    assert norm_cyclo(g16) == 17
    assert trace_cyclo(special_elements(11)[0]) == 11
    assert norm_cyclo(special_elements(13)[0]) == 13


def test_trace_square_examples():
    for p in (5, 7, 11, 29):
        d = degree_of(p)
        assert trace_square_formula(constant(p, 1)) == d
        for i in range(1, d + 1):
            assert trace_square_formula(omega(p, i)) == 2 * d - 1
    assert trace_square_formula(omega(16, 1)) == 8


def test_parity_examples():
    a, g = special_elements(16, with_gamma=True)
    prod = omega_mul(a, g)
    assert prod.coeffs == (8, 5, 2, 2)
    assert parity_obstruction_2n(prod)
    assert not parity_obstruction_2n(omega(16, 1, 2))
    assert not parity_obstruction_2n(omega(16, 2))


def test_inertia_examples():
    assert [inertia_order_3(n) for n in range(3, 11)] == [2 ** (n - 2) for n in range(3, 11)]
    # oracle: multiplicative order of 3 in (Z/2^n)^* / {+-1}
    for n in range(3, 11):
        m = 2**n
        orders = [f for f in range(1, m) if pow(3, f, m) in (1, m - 1)]
        assert orders[0] == inertia_order_3(n)


def test_gamma_tower():
    t4 = gamma_norm_tower(4)
    assert t4[0] == constant(16, 5) - omega(16, 2, 2)
    assert t4[-1] == constant(16, 17)
    assert gamma_norm_tower(5)[-1] == constant(32, 257)


def test_shifted_alpha_check():
    assert shifted_alpha_check(11) and shifted_alpha_check(13)
    with pytest.raises(ValueError):
        shifted_alpha_check(7)


def test_small_trace_squares_small_cases():
    assert [(e.coeffs, t) for e, t in small_trace_squares(7, 1)] == [((0, 0, 0), 0)]
    # brute force over a coordinate box for p = 5 (d = 2)
    got = {e.coeffs for e, _ in small_trace_squares(5, 5)}
    want = set()
    for a in itertools.product(range(-3, 4), repeat=2):
        e = CycloElement(5, a)
        if trace_cyclo(omega_mul(e, e)) < 5:
            first = next((c for c in a if c), 0)
            if first >= 0:
                want.add(a)
    assert got == want == {(0, 0), (1, 1), (1, 0), (0, 1)}


@pytest.mark.parametrize("q", QS + [64, 17])
def test_verify_table(q):
    checks = list(verify(q))
    assert checks and all(c.ok for c in checks), [c for c in checks if not c.ok]


# -- cross-route checks ---------------------------------------------------------------


@pytest.mark.parametrize("q", QS)
def test_minimal_polynomial_against_roots(q):
    """Chebyshev route vs the product of (y - 2 cos(2 pi k / q)) rounded to integers."""
    mpmath.mp.dps = 50
    ks = [k for k in range(1, q // 2 + 1) if math.gcd(k, q) == 1]
    poly = [mpmath.mpf(1)]
    for k in ks:
        r = 2 * mpmath.cos(2 * mpmath.pi * k / q)
        poly = [-r * poly[0]] + [poly[i - 1] - r * poly[i] for i in range(1, len(poly))] + [poly[-1]]
    assert tuple(int(mpmath.nint(c)) for c in poly) == minimal_polynomial(q)


@pytest.mark.parametrize("q", QS)
def test_conjugate_omegas_share_minimal_polynomial(q):
    f = list(minimal_polynomial(q))
    for j in range(1, q // 2, 1 if q < 32 else 7):
        if math.gcd(j, q) == 1:
            assert char_poly_of_element(f, to_element(omega(q, j)).coords) == f


@given(any_cyclo())
def test_roundtrip_and_invariants(e):
    x = to_element(e)
    assert from_element(x, e.q) == e
    assert x.trace() == trace_cyclo(e)
    assert x.norm() == norm_cyclo(e)


@given(any_cyclo(), st.data())
def test_product_matches_field_product(e, data):
    f = data.draw(cyclo_elements(e.q))
    assert to_element(omega_mul(e, f)) == to_element(e) * to_element(f)


@given(any_cyclo(-5, 5))
def test_trace_square_formula(e):
    assert trace_square_formula(e) == trace_cyclo(omega_mul(e, e))


@pytest.mark.parametrize("q", QS)
def test_trace_square_formula_500(q):
    rng = np.random.default_rng(q)
    d = degree_of(q)
    for _ in range(500):
        e = CycloElement(q, tuple(int(c) for c in rng.integers(-6, 7, size=d)))
        assert trace_square_formula(e) == trace_cyclo(omega_mul(e, e))


@given(any_cyclo(), st.sampled_from([3, 5, 7]))
def test_galois_preserves_trace_and_norm(e, a):
    if math.gcd(a, e.q) != 1:
        return
    g = galois(e, a)
    assert trace_cyclo(g) == trace_cyclo(e) and norm_cyclo(g) == norm_cyclo(e)


@pytest.mark.parametrize("q", [8, 16])
def test_parity_obstruction_sound(q):
    d = degree_of(q)
    fld = cyclo_field(q)
    flagged = 0
    for v in totally_positive_upto_trace(fld, 4 * d + 2):
        e = CycloElement(q, v)
        if parity_obstruction_2n(e):
            flagged += 1
            assert not decide_sos(to_element(e))
    assert flagged > 0


@pytest.mark.parametrize("q", [16, 32])
def test_indecomposable_special_elements(q):
    a, g = special_elements(q, with_gamma=True)
    for e in (a, g, omega_mul(a, g)):
        assert is_indecomposable(to_element(e))


@pytest.mark.parametrize("q", [16, 32])
def test_no_norm_three_small_house(q):
    """No element of norm +-3 with house < 5/2 (box search over Tr(x^2) < d (5/2)^2)."""
    from sosfields.numfield.lattice import short_vectors

    fld = cyclo_field(q)
    bound = math.ceil(fld.d * 25 / 4)
    seen = 0
    for v in short_vectors(fld.gram, bound):
        if not any(v):
            continue
        seen += 1
        if abs(fld.norm_iv(v)) == 3:
            x = fld.from_ivec(v)
            assert not all(abs(c) < 2.5 for c in x.conjugates()), v
    assert seen > 0


def test_representability_pow2():
    a8, _ = special_elements(8)
    cert = decide_sos(to_element(a8.scale(2)))
    assert sorted(cert.vectors) == [(1, 0), (1, 1)]

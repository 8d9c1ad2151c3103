"""Maximal real subfields K_q = Q(zeta_q + zeta_q^-1) in the omega basis.

omega_j = zeta^j + zeta^-j.  Two canonical bases are used:

* q = 2^n:  (1, omega_1, ..., omega_{d-1}); omega_{q/2-k} = -omega_k, omega_d = 0.
* q = p:    (omega_1, ..., omega_d);        1 = -(omega_1 + ... + omega_d).

As a product symbol omega_0 = zeta^0 + zeta^0 = 2, which is what the rule
omega_i omega_j = omega_{i+j} + omega_{i-j} produces for i = j.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from sympy import isprime

from .exact import poly as P
from .numfield.field import Element, NumberField


def _kind(q: int) -> str:
    if q >= 8 and q & (q - 1) == 0:
        return "pow2"
    if q >= 5 and q % 2 == 1 and isprime(q):
        return "prime"
    raise ValueError(f"q = {q} must be 2^n (n >= 3) or an odd prime >= 5")


def degree_of(q: int) -> int:
    return q // 4 if _kind(q) == "pow2" else (q - 1) // 2


@dataclass(frozen=True)
class CycloElement:
    q: int
    coeffs: tuple

    def __post_init__(self):
        d = degree_of(self.q)
        cs = tuple(int(c) for c in self.coeffs)
        if len(cs) != d:
            raise ValueError(f"K_{self.q} elements need {d} coefficients, got {len(cs)}")
        object.__setattr__(self, "coeffs", cs)

    @property
    def d(self) -> int:
        return len(self.coeffs)

    @property
    def kind(self) -> str:
        return _kind(self.q)

    def __add__(self, other: "CycloElement") -> "CycloElement":
        _same(self, other)
        return CycloElement(self.q, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        _same(self, other)
        return CycloElement(self.q, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CycloElement":
        return CycloElement(self.q, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "CycloElement":
        return CycloElement(self.q, tuple(k * a for a in self.coeffs))

    def __mul__(self, other: "CycloElement") -> "CycloElement":
        return omega_mul(self, other)

    def __str__(self) -> str:
        names = basis_names(self.q)
        terms = [f"{c}*{n}" if n != "1" else str(c) for c, n in zip(self.coeffs, names) if c]
        return " + ".join(terms) if terms else "0"


def _same(a: CycloElement, b: CycloElement) -> None:
    if a.q != b.q:
        raise ValueError(f"mismatched fields K_{a.q} and K_{b.q}")


def basis_names(q: int) -> list[str]:
    d = degree_of(q)
    if _kind(q) == "pow2":
        return ["1"] + [f"w{j}" for j in range(1, d)]
    return [f"w{j}" for j in range(1, d + 1)]


# ---------------------------------------------------------------------------
# normalization


class _Acc:
    """Accumulates a constant and omega symbols, then normalizes to the basis."""

    def __init__(self, q: int):
        self.q = q
        self.kind = _kind(q)
        self.d = degree_of(q)
        self.const = 0
        self.om: dict[int, int] = {}

    def add_const(self, c: int) -> None:
        self.const += c

    def add_omega(self, j: int, c: int) -> None:
        """Add c * omega_j for an arbitrary integer index j."""
        if not c:
            return
        q = self.q
        j %= q
        if j > q // 2:
            j = q - j  # omega_{-j} = omega_j
        if j == 0:
            self.const += 2 * c
            return
        if self.kind == "pow2":
            if j == self.d:
                return
            if j > self.d:  # omega_{q/2 - k} = -omega_k
                k = q // 2 - j
                if k == 0:
                    self.const -= 2 * c
                else:
                    self.om[k] = self.om.get(k, 0) - c
                return
        self.om[j] = self.om.get(j, 0) + c

    def result(self) -> CycloElement:
        d = self.d
        if self.kind == "pow2":
            cs = [self.const] + [self.om.get(j, 0) for j in range(1, d)]
        else:
            cs = [self.om.get(j, 0) - self.const for j in range(1, d + 1)]
        return CycloElement(self.q, tuple(cs))


def _terms(e: CycloElement) -> tuple[int, dict]:
    """(constant, {omega index: coefficient}) with no constant hidden in omegas."""
    if e.kind == "pow2":
        return e.coeffs[0], {j: c for j, c in enumerate(e.coeffs) if j and c}
    return 0, {j + 1: c for j, c in enumerate(e.coeffs) if c}


def omega(q: int, j: int, coeff: int = 1) -> CycloElement:
    """coeff * omega_j reduced to the canonical basis (omega_0 here means 1)."""
    acc = _Acc(q)
    if j % q == 0:
        acc.add_const(coeff)
    else:
        acc.add_omega(j, coeff)
    return acc.result()


def constant(q: int, c: int) -> CycloElement:
    acc = _Acc(q)
    acc.add_const(c)
    return acc.result()


def omega_mul(e1: CycloElement, e2: CycloElement) -> CycloElement:
    _same(e1, e2)
    c1, t1 = _terms(e1)
    c2, t2 = _terms(e2)
    acc = _Acc(e1.q)
    acc.add_const(c1 * c2)
    for j, c in t1.items():
        acc.add_omega(j, c * c2)
    for j, c in t2.items():
        acc.add_omega(j, c * c1)
    for i, a in t1.items():
        for j, b in t2.items():
            acc.add_omega(i + j, a * b)
            acc.add_omega(i - j, a * b)
    return acc.result()


def galois(e: CycloElement, a: int) -> CycloElement:
    """Automorphism omega_k -> omega_{a k} (a odd, coprime to q)."""
    c, t = _terms(e)
    acc = _Acc(e.q)
    acc.add_const(c)
    for j, x in t.items():
        acc.add_omega(a * j, x)
    return acc.result()


# ---------------------------------------------------------------------------
# trace, norm, minimal polynomial


def trace_cyclo(e: CycloElement) -> int:
    if e.kind == "pow2":
        return e.d * e.coeffs[0]
    return -sum(e.coeffs)


def chebyshev(j: int) -> list[int]:
    """C_j with C_j(omega) = omega_j: C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}."""
    a, b = [2], [0, 1]
    if j == 0:
        return a
    for _ in range(j - 1):
        a, b = b, P.sub(P.mul([0, 1], b), a)
    return b


@lru_cache(maxsize=None)
def minimal_polynomial(q: int) -> tuple:
    d = degree_of(q)
    if _kind(q) == "pow2":
        return tuple(chebyshev(d))
    acc = [1]
    for j in range(1, d + 1):
        acc = P.add(acc, chebyshev(j))
    return tuple(acc)


def to_power(e: CycloElement) -> list[int]:
    """Coordinates over 1, omega, ..., omega^(d-1)."""
    c, t = _terms(e)
    out = [c]
    for j, x in t.items():
        out = P.add(out, P.scale(chebyshev(j), x))
    out = P.divmod_q(out, list(minimal_polynomial(e.q)))[1] if len(out) > e.d else out
    return [int(x) for x in out] + [0] * (e.d - len(out))


def norm_cyclo(e: CycloElement) -> int:
    """prod over conjugates, as Res(minpoly, g) with g the power-basis form of e."""
    g = P.trim(to_power(e))
    if not g:
        return 0
    return P.resultant(list(minimal_polynomial(e.q)), g)


def trace_square_formula(e: CycloElement) -> int:
    a = e.coeffs
    if e.kind == "pow2":
        return e.d * (a[0] ** 2 + 2 * sum(x * x for x in a[1:]))
    s = sum(x * x for x in a)
    s += 2 * sum((a[i] - a[j]) ** 2 for i in range(len(a)) for j in range(i))
    return s


def parity_obstruction_2n(e: CycloElement) -> bool:
    """True when some odd-index coefficient is odd (then e is not a sum of squares)."""
    if e.kind != "pow2":
        raise ValueError("parity obstruction is stated for q = 2^n")
    return any(c % 2 for i, c in enumerate(e.coeffs) if i % 2 == 1)


# ---------------------------------------------------------------------------
# bridge to numfield


def basis_rows(q: int) -> list[list[int]]:
    d = degree_of(q)
    names = range(d)
    rows = []
    for i in names:
        v = [0] * d
        v[i] = 1
        rows.append(to_power(CycloElement(q, tuple(v))))
    return rows


@lru_cache(maxsize=None)
def cyclo_field(q: int) -> NumberField:
    """K_q as a NumberField whose integral basis is the canonical omega basis."""
    return NumberField.from_basis(list(minimal_polynomial(q)), basis_rows(q), name=f"K{q}", trusted=True)


def to_element(e: CycloElement) -> Element:
    return Element.from_ivec(cyclo_field(e.q), e.coeffs)


def from_element(x: Element, q: int) -> CycloElement:
    return CycloElement(q, x.int_ivec())


# ---------------------------------------------------------------------------
# the special elements


def special_elements(q: int, with_gamma: bool = False) -> tuple[CycloElement, Optional[CycloElement]]:
    d = degree_of(q)
    w = omega(q, 1)
    if _kind(q) == "pow2":
        alpha = w + constant(q, 2)
        if not with_gamma:
            return alpha, None
        if q <= 8:
            raise ValueError("gamma_n is defined for n > 3")
        gamma = w + omega(q, d - 1) + constant(q, 3)
        return alpha, gamma
    if with_gamma:
        raise ValueError("gamma is only defined for q = 2^n")
    return constant(q, 2) - w, None


def inertia_order_3(n: int) -> int:
    """Smallest f >= 1 with 3^f = +-1 mod 2^n."""
    if n < 3:
        raise ValueError("n >= 3 required")
    m = 2**n
    f, x = 1, 3
    while x not in (1, m - 1):
        x = x * 3 % m
        f += 1
    return f


def gamma_norm_closed_form(n: int, j: int) -> CycloElement:
    """2^(2^j) + 1 - 2^(2^(j-1)) omega_{2^(j-1) d - 2^j}, inside K_{2^n}."""
    q = 2**n
    d = degree_of(q)
    return constant(q, 2 ** (2**j) + 1) - omega(q, 2 ** (j - 1) * d - 2**j, 2 ** (2 ** (j - 1)))


def gamma_norm_tower(n: int) -> list[CycloElement]:
    """Relative norms of gamma_n down to Q, each checked against the closed form."""
    if n <= 3:
        raise ValueError("n > 3 required")
    q = 2**n
    _, cur = special_elements(q, with_gamma=True)
    out = []
    for j in range(1, n - 1):
        cur = omega_mul(cur, galois(cur, 1 + 2 ** (n - j)))
        closed = gamma_norm_closed_form(n, j)
        if cur != closed:
            raise ArithmeticError(f"norm tower step {j}: {cur} != closed form {closed}")
        out.append(cur)
    return out


# ---------------------------------------------------------------------------
# small traces of squares in K_p


def small_trace_squares(p: int, bound: int) -> list[tuple[CycloElement, int]]:
    """All beta in K_p up to sign with Tr(beta^2) < bound, with that trace.

    Depth-first over the coordinates a_1, ..., a_d.  Each unassigned
    coordinate x still owes at least min_x (x^2 + 2 sum_assigned (x - a_j)^2),
    which prunes the tree.
    """
    if _kind(p) != "prime":
        raise ValueError("small_trace_squares needs an odd prime")
    d = degree_of(p)
    top = 0
    while (top + 1) ** 2 < bound:
        top += 1
    values = sorted(range(-top, top + 1), key=abs)
    out: list = []
    a: list[int] = []

    def cost_of(x: int) -> int:
        return x * x + 2 * sum((x - y) ** 2 for y in a)

    def rec(partial: int) -> None:
        k = len(a)
        if k == d:
            if partial < bound:
                out.append(tuple(a))
            return
        rest = d - k - 1
        for x in values:
            c = cost_of(x)
            new = partial + c
            if new >= bound:
                continue
            a.append(x)
            if rest:
                owed = min(cost_of(y) for y in values)
                if new + rest * owed >= bound:
                    a.pop()
                    continue
            rec(new)
            a.pop()

    rec(0)
    result = []
    for v in out:
        first = next((c for c in v if c), 0)
        if first < 0:
            continue
        e = CycloElement(p, v)
        result.append((e, trace_square_formula(e)))
    result.sort(key=lambda t: (t[1], t[0].coeffs))
    return result


def shifted_alpha_check(p: int) -> bool:
    """2 alpha_p - 1 and 2 alpha_p - omega_j^2 (1 <= j < d) are not totally positive."""
    if _kind(p) != "prime" or p <= 7:
        raise ValueError("p must be a prime > 7")
    d = degree_of(p)
    alpha, _ = special_elements(p)
    two_alpha = alpha.scale(2)
    checks = [two_alpha - constant(p, 1)]
    for j in range(1, d):
        w = omega(p, j)
        checks.append(two_alpha - omega_mul(w, w))
    fld = cyclo_field(p)
    return all(not fld.is_totally_positive_iv(e.coeffs) for e in checks)


# ---------------------------------------------------------------------------
# verification table


@dataclass(frozen=True)
class Check:
    identity: str
    q: int
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def verify(q: int) -> Iterator[Check]:
    """Every closed-form identity that applies to K_q."""
    d = degree_of(q)
    alpha, _ = special_elements(q)
    if _kind(q) == "pow2":
        n = q.bit_length() - 1
        yield Check("Tr(alpha_n) = 2d", q, 2 * d, trace_cyclo(alpha))
        yield Check("Nr(alpha_n) = 2", q, 2, norm_cyclo(alpha))
        yield Check("inertia order of 3 = 2^(n-2)", q, 2 ** (n - 2), inertia_order_3(n))
        yield Check("parity: 2 alpha_n has even odd-index coefficients", q, False,
                    parity_obstruction_2n(alpha.scale(2)))
        if n > 3:
            _, gamma = special_elements(q, with_gamma=True)
            yield Check("Tr(gamma_n) = 3d", q, 3 * d, trace_cyclo(gamma))
            yield Check("Nr(gamma_n) = 2^d + 1", q, 2**d + 1, norm_cyclo(gamma))
            try:
                tower = gamma_norm_tower(n)
                final = tower[-1]
                yield Check("norm tower ends at 2^d + 1", q, constant(q, 2**d + 1), final)
                for j, step in enumerate(tower, start=1):
                    yield Check(f"norm tower step {j} closed form", q, str(gamma_norm_closed_form(n, j)), str(step))
            except ArithmeticError as exc:
                yield Check("norm tower", q, "closed form", str(exc))
        if n == 4:
            _, gamma = special_elements(q, with_gamma=True)
            yield Check("alpha_4 gamma_4 = 8 + 5w1 + 2w2 + 2w3", q, (8, 5, 2, 2), omega_mul(alpha, gamma).coeffs)
            yield Check("parity obstruction on alpha_4 gamma_4", q, True, parity_obstruction_2n(omega_mul(alpha, gamma)))
    else:
        yield Check("Tr(alpha_p) = 2d + 1", q, 2 * d + 1, trace_cyclo(alpha))
        yield Check("Nr(alpha_p) = p", q, q, norm_cyclo(alpha))
        yield Check("Tr((1)^2) = d", q, d, trace_square_formula(constant(q, 1)))
        yield Check("Tr(omega_1^2) = 2d - 1", q, 2 * d - 1, trace_square_formula(omega(q, 1)))
        if q > 7:
            yield Check("2 alpha_p - 1, 2 alpha_p - omega_j^2 not totally positive", q, True, shifted_alpha_check(q))
    w1 = omega(q, 1)
    yield Check("omega_1^2 = 2 + omega_2", q, (constant(q, 2) + omega(q, 2)).coeffs, omega_mul(w1, w1).coeffs)
    x = alpha
    yield Check("closed-form Tr(alpha^2) = Tr(alpha * alpha)", q, trace_cyclo(omega_mul(x, x)), trace_square_formula(x))

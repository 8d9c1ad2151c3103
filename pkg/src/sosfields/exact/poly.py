"""Dense univariate polynomials over Z and Q.

Internally a polynomial is a list of coefficients, lowest degree first, with
no trailing zeros (the zero polynomial is ``[]``). Coefficients are ``int``
or ``Fraction``; the helpers below never round.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Coeffs = list


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    """Degree of a trimmed polynomial; -1 for zero."""
    return len(p) - 1


def add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return trim(out)


def scale(p: Sequence, c) -> list:
    if c == 0:
        return []
    return [c * a for a in p]


def mul(p: Sequence, q: Sequence) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def derivative(p: Sequence) -> list:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_linear(p: Sequence, a, b) -> list:
    """p(a*x + b)."""
    out: list = []
    lin = [b, a]
    for c in reversed(p):
        out = add(mul(out, lin), [c])
    return out


def divmod_q(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Euclidean division over Q."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in p]
    dq = len(q) - 1
    lc = Fraction(q[-1])
    quo = [Fraction(0)] * max(len(r) - dq, 0)
    while len(r) - 1 >= dq and r:
        k = len(r) - 1 - dq
        c = r[-1] / lc
        quo[k] = c
        for i in range(dq + 1):
            r[i + k] -= c * q[i]
        r = trim(r)
    return trim(quo), r


def exact_div(p: Sequence, q: Sequence) -> list:
    """p / q when q divides p; raises otherwise."""
    quo, rem = divmod_q(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return [_demote(c) for c in quo]


def pseudo_rem(p: Sequence, q: Sequence) -> list:
    """|lc(q)|^(deg p - deg q + 1) * (p mod q); integer in, integer out."""
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    alc = abs(lc)
    sgn = 1 if lc > 0 else -1
    e = len(r) - 1 - dq + 1
    while r and len(r) - 1 >= dq:
        k = len(r) - 1 - dq
        c = r[-1] * sgn
        r = [alc * x for x in r]
        for i in range(dq + 1):
            r[i + k] -= c * q[i]
        r = trim(r)
        e -= 1
    if e > 0 and r:
        m = alc**e
        r = [m * x for x in r]
    return r


def content(p: Sequence) -> int:
    g = 0
    for c in p:
        g = gcd(g, c)
    return g


def primitive(p: Sequence) -> list:
    """Divide an integer polynomial by its (positive) content."""
    g = content(p)
    if g in (0, 1):
        return list(p)
    return [c // g for c in p]


def to_integer(p: Sequence) -> list:
    """Positive rational multiple of p with coprime integer coefficients."""
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    return primitive([int(c * den) for c in p])


def gcd_z(p: Sequence, q: Sequence) -> list:
    """Primitive gcd over Z with positive leading coefficient."""
    a, b = primitive(to_integer(p)), primitive(to_integer(q))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = pseudo_rem(a, b)
        a, b = b, primitive(r)
    if not a:
        return []
    if a[-1] < 0:
        a = [-c for c in a]
    return a


def squarefree_part(p: Sequence) -> list:
    """Primitive squarefree part (same real roots, each simple)."""
    p = to_integer(p)
    if len(p) <= 2:
        return p
    g = gcd_z(p, derivative(p))
    if len(g) <= 1:
        return p
    return to_integer(exact_div(p, g))


def resultant(f: Sequence, g: Sequence):
    """Sylvester resultant, Res(f, g) = lc(f)^deg(g) * prod g(a) over roots a of f.

    Equivalently (-1)^(deg f deg g) lc(g)^deg(f) prod f(b) over roots b of g.
    Computed by the Euclidean recurrence over Q; exact.
    """
    f = trim(f)
    g = trim(g)
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    sign = 1
    acc = Fraction(1)
    while True:
        n, m = len(f) - 1, len(g) - 1
        if m == 0:
            return _demote(sign * acc * Fraction(g[0]) ** n)
        if n == 0:
            return _demote(sign * acc * Fraction(f[0]) ** m)
        if n < m:
            f, g = g, f
            if (n * m) % 2:
                sign = -sign
            continue
        # Res(f, g) = (-1)^(nm) Res(g, f) = (-1)^(nm) lc(g)^(n-k) Res(g, r)
        _, r = divmod_q(f, g)
        if not r:
            return 0
        k = len(r) - 1
        if (n * m) % 2:
            sign = -sign
        acc *= Fraction(g[-1]) ** (n - k)
        f, g = g, r


def _demote(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


# ---------------------------------------------------------------------------
# Public value type


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients lowest degree first."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable[int]):
        cs = trim(int(c) for c in coeffs)
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        return evaluate(self.coeffs, x)

    def __len__(self) -> int:
        return len(self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(derivative(self.coeffs))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(mul(self.coeffs, other.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(add(self.coeffs, other.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(sub(self.coeffs, other.coeffs))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def reflect(self) -> "IntPolynomial":
        """(-1)^deg f(-x): monic with negated roots."""
        n = self.degree
        return IntPolynomial((-1) ** (n - i) * c for i, c in enumerate(self.coeffs))

    def shift(self, k: int) -> "IntPolynomial":
        """f(x + k)."""
        return IntPolynomial(compose_linear(self.coeffs, 1, k))

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return cls(parse_poly(text))


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(x(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> list:
    """Parse ``x^3-4x-2``-style text or a comma list of ascending coefficients."""
    text = text.strip()
    if "x" not in text:
        return trim(int(t) for t in text.split(",") if t.strip())
    s = text.replace(" ", "").replace("**", "^")
    out: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, num, mono, exp = m.groups()
        if not num and not mono:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = 0 if not mono else (int(exp) if exp else 1)
        out[e] = out.get(e, 0) + c
        pos = m.end()
    n = max(out) if out else 0
    return trim(out.get(i, 0) for i in range(n + 1))

"""Sums of squares in O_K: complete decision, all decompositions, Z-form parity test.

Every nonzero square is totally positive, so a decomposition mu = x_1^2 + ...
+ x_s^2 has Tr(x_i^2) <= Tr(mu) for each part.  The candidate parts are the
integer points of the trace-form ellipsoid Tr(x^2) <= Tr(mu), which makes the
search finite and the negative answer a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import Optional, Sequence, Union

from .numfield.field import Element, NumberField
from .numfield.lattice import short_vectors
from .numfield.positive import squares_mod_2

DEFAULT_NODE_BUDGET = 2_000_000


class Indeterminate(RuntimeError):
    """The node budget ran out before the search finished; nothing was proved."""


@dataclass(frozen=True)
class NotRepresentable:
    """Proof by exhaustion that ``target`` is not a sum of squares in O_K."""

    target: Element
    nodes: int = 0

    def __bool__(self) -> bool:
        return False


def sign_normalize(v: Sequence[int]) -> tuple:
    for c in v:
        if c:
            return tuple(v) if c > 0 else tuple(-x for x in v)
    return tuple(v)


@dataclass(frozen=True)
class SosCertificate:
    target: Element
    parts: tuple

    def __post_init__(self):
        fld = self.target.field
        vecs = [sign_normalize(p.int_ivec()) for p in self.parts]
        if any(not any(v) for v in vecs):
            raise ValueError("parts must be nonzero")
        vecs.sort()
        parts = tuple(Element.from_ivec(fld, v) for v in vecs)
        object.__setattr__(self, "parts", parts)
        total = fld.rational(0)
        for p in parts:
            total = total + p * p
        if total != self.target:
            raise ArithmeticError("certificate does not sum to its target")

    def __bool__(self) -> bool:
        return True

    @property
    def vectors(self) -> list[tuple]:
        """Integral-basis coordinates of the parts, in canonical order."""
        return [p.int_ivec() for p in self.parts]

    def __len__(self) -> int:
        return len(self.parts)


SosResult = Union[SosCertificate, NotRepresentable]


class _Candidates:
    """Sign-normalized x != 0 with Tr(x^2) <= limit, largest squares first."""

    def __init__(self, fld: NumberField):
        self.field = fld
        self.limit = -1
        self.items: list = []

    def upto(self, limit: int) -> list:
        if limit > self.limit:
            seen = set()
            items = []
            for v in short_vectors(self.field.gram, limit):
                if not any(v):
                    continue
                v = sign_normalize(v)
                if v in seen:
                    continue
                seen.add(v)
                items.append((self.field.trace_square_iv(v), v, self.field.square_iv(v)))
            items.sort(key=lambda t: (-t[0], t[1]))
            self.items = items
            self.limit = limit
        return [it for it in self.items if it[0] <= limit]


_CACHE: dict = {}


def _candidates(fld: NumberField) -> _Candidates:
    entry = _CACHE.get(id(fld))
    if entry is None or entry.field is not fld:
        entry = _Candidates(fld)
        _CACHE[id(fld)] = entry
    return entry


def _target_vector(mu: Element) -> tuple:
    if not mu.is_integral():
        raise ValueError(f"{mu} is not integral")
    v = mu.int_ivec()
    if any(v) and not mu.field.is_totally_positive_iv(v):
        raise ValueError(f"{mu} is neither zero nor totally positive")
    return v


class _Search:
    def __init__(self, fld: NumberField, budget: int):
        self.field = fld
        self.budget = budget
        self.nodes = 0
        self.sq2 = squares_mod_2(fld)
        self.d = fld.d

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise Indeterminate(f"node budget {self.budget} exhausted")

    def viable(self, rem: tuple) -> bool:
        # a sum of squares is a square mod 2, and a nonzero one has trace >= d
        return tuple(c % 2 for c in rem) in self.sq2


def decide_sos(mu: Element, *, node_budget: int = DEFAULT_NODE_BUDGET) -> SosResult:
    """Certificate if mu is a sum of squares of integers, otherwise a NotRepresentable proof."""
    fld = mu.field
    target = _target_vector(mu)
    if not any(target):
        return SosCertificate(mu, ())
    trace = fld.trace_iv(target)
    cands = _candidates(fld).upto(trace)
    search = _Search(fld, node_budget)
    failed: set = set()

    def dfs(rem: tuple, tr: int) -> Optional[list]:
        search.tick()
        for tsq, v, sq in cands:
            if tsq > tr:
                continue
            nxt = tuple(a - b for a, b in zip(rem, sq))
            if not any(nxt):
                return [v]
            if tr - tsq < fld.d or nxt in failed or not search.viable(nxt):
                continue
            if not fld.is_totally_positive_iv(nxt):
                continue
            tail = dfs(nxt, tr - tsq)
            if tail is not None:
                return [v] + tail
            failed.add(nxt)
        return None

    if not search.viable(target):
        return NotRepresentable(mu, search.nodes)
    parts = dfs(target, trace)
    if parts is None:
        return NotRepresentable(mu, search.nodes)
    return SosCertificate(mu, tuple(Element.from_ivec(fld, v) for v in parts))


def all_sos_decompositions(mu: Element, *, node_budget: int = DEFAULT_NODE_BUDGET) -> list[SosCertificate]:
    """Every multiset of nonzero squares summing to mu, each reported once."""
    fld = mu.field
    target = _target_vector(mu)
    if not any(target):
        return [SosCertificate(mu, ())]
    trace = fld.trace_iv(target)
    cands = _candidates(fld).upto(trace)
    search = _Search(fld, node_budget)
    memo: dict = {}

    def tails(rem: tuple, tr: int, start: int) -> list:
        # multisets drawn from cands[start:], as index lists non-decreasing
        key = (rem, start)
        if key in memo:
            return memo[key]
        search.tick()
        out = []
        for i in range(start, len(cands)):
            tsq, v, sq = cands[i]
            if tsq > tr:
                continue
            nxt = tuple(a - b for a, b in zip(rem, sq))
            if not any(nxt):
                out.append([i])
                continue
            if tr - tsq < fld.d or not search.viable(nxt) or not fld.is_totally_positive_iv(nxt):
                continue
            for t in tails(nxt, tr - tsq, i):
                out.append([i] + t)
        memo[key] = out
        return out

    result = []
    if search.viable(target):
        for idx in tails(target, trace, 0):
            parts = tuple(Element.from_ivec(fld, cands[i][1]) for i in idx)
            result.append(SosCertificate(mu, parts))
    result.sort(key=lambda c: (len(c.parts), c.vectors))
    return result


# ---------------------------------------------------------------------------
# Z-form obstruction


@dataclass(frozen=True)
class ObstructionReport:
    alpha: Element
    decompositions: tuple
    verdicts: tuple  # True = diagonal of U^T U all even
    overall: str  # "witness" | "inconclusive"

    @property
    def is_witness(self) -> bool:
        return self.overall == "witness"

    def to_json(self) -> dict:
        return {
            "alpha": [str(c) for c in self.alpha.int_ivec()],
            "verdict": self.overall,
            "decompositions": [
                {"parts": [[str(c) for c in v] for v in cert.vectors], "diagonal": list(diag), "passes": ok}
                for cert, (diag, ok) in zip(self.decompositions, self.verdicts)
            ],
        }


def gram_diagonal(vectors: Sequence[Sequence[int]], change: Optional[Sequence[Sequence[int]]] = None) -> tuple:
    """Diagonal of U^T U, U having the given rows.

    ``change`` optionally re-expresses rows in another integral basis: if the
    new basis is C * old basis (C unimodular), old coordinates c become c C^-1.
    """
    rows = [list(v) for v in vectors]
    if change is not None:
        from .exact import linalg as L

        cinv = L.inverse(change)
        rows = [[int(x) for x in L.vecmat(r, cinv)] for r in rows]
    d = len(rows[0]) if rows else 0
    return tuple(sum(r[j] * r[j] for r in rows) for j in range(d))


def zform_obstruction(alpha: Element, *, change: Optional[Sequence[Sequence[int]]] = None,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> ObstructionReport:
    """Parity test on every decomposition of 2*alpha; witness when none passes."""
    _target_vector(alpha)
    if alpha.is_zero():
        raise ValueError("alpha must be totally positive")
    decomps = all_sos_decompositions(alpha * 2, node_budget=node_budget)
    verdicts = []
    for cert in decomps:
        diag = gram_diagonal(cert.vectors, change)
        verdicts.append((diag, all(x % 2 == 0 for x in diag)))
    overall = "inconclusive" if any(ok for _, ok in verdicts) else "witness"
    return ObstructionReport(alpha, tuple(decomps), tuple(verdicts), overall)


def is_exceptional(alpha: Element, *, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    from .numfield.positive import is_square_mod_2

    _target_vector(alpha)
    if alpha.is_zero():
        raise ValueError("alpha must be totally positive")
    return is_square_mod_2(alpha) and not decide_sos(alpha, node_budget=node_budget)

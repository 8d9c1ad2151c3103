"""Enumeration of monic integer polynomials with all roots real and in (-B, B).

The search walks the derivative tower top-down.  Write f = sum a_i x^i and

    P_k(x) = f^(k)(x) / k! = sum_{i >= k} binom(i, k) a_i x^(i-k),

an integer polynomial with constant term a_k.  If f has all roots real in
(-B, B) then so does every P_k (Rolle), and once a_{d-1}, ..., a_{k+1} are
fixed the admissible a_k form an integer interval: P_k = G_k + a_k has all roots
real and inside the window iff the values at the roots of P_{k+1} (its
critical points) alternate weakly in sign and P_k(+-B) have the right signs.
Each of those conditions is linear in a_k.

Floating point only proposes the interval ends; both ends are then settled by
exact Sturm tests (``all_roots_inside``), walking outward or inward one integer
at a time.  Since the admissible set is an interval, two exact boundary
decisions per prefix certify the whole range.

Traversal order is lexicographic on (a_{d-1}, ..., a_0), fixed.
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

import numpy as np

from .exact.poly import IntPolynomial
from .exact.roots import HOUSE_BOUND, QuadIrrBound, all_roots_inside

log = logging.getLogger(__name__)

CHECKPOINT_VERSION = "hunt-lex-v1"
MAX_DEGREE = 5


@dataclass(frozen=True)
class HuntJob:
    degree: int
    bound: QuadIrrBound = HOUSE_BOUND
    irreducible_only: bool = False
    shard: tuple = (0, 1)

    def __post_init__(self):
        if not 1 <= self.degree <= MAX_DEGREE:
            raise ValueError(f"unsupported degree {self.degree} (1..{MAX_DEGREE})")
        if self.bound.sign() <= 0:
            raise ValueError("bound must be positive")
        i, n = self.shard
        if not (n >= 1 and 0 <= i < n):
            raise ValueError(f"bad shard {self.shard}")

    def descriptor(self) -> dict:
        return {
            "degree": self.degree,
            "bound": [self.bound.a, self.bound.b],
            "irreducible_only": self.irreducible_only,
            "shard": list(self.shard),
        }


@dataclass
class HuntCheckpoint:
    job: HuntJob
    last_top: Optional[int] = None  # last fully processed a_{d-1}
    emitted: int = 0
    version: str = CHECKPOINT_VERSION

    def dumps(self) -> str:
        lines = [
            f"version {self.version}",
            f"job {json.dumps(self.job.descriptor(), sort_keys=True)}",
            f"last_top {'none' if self.last_top is None else self.last_top}",
            f"emitted {self.emitted}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "HuntCheckpoint":
        fields = dict(line.split(" ", 1) for line in text.strip().splitlines())
        if fields.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"checkpoint version mismatch: {fields.get('version')!r}")
        desc = json.loads(fields["job"])
        job = HuntJob(
            degree=desc["degree"],
            bound=QuadIrrBound(*desc["bound"]),
            irreducible_only=desc["irreducible_only"],
            shard=tuple(desc["shard"]),
        )
        lt = fields["last_top"]
        return cls(job=job, last_top=None if lt == "none" else int(lt), emitted=int(fields["emitted"]))

    def save(self, path: str) -> None:
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            fh.write(self.dumps())
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "HuntCheckpoint":
        with open(path) as fh:
            return cls.loads(fh.read())


# ---------------------------------------------------------------------------
# core recursion


def _level_poly(a: list, d: int, k: int) -> list:
    """Coefficients (ascending) of P_k with a[i] the coefficient of x^i, a[d] = 1."""
    return [comb(i, k) * a[i] for i in range(k, d + 1)]


def _float_range(a: list, d: int, k: int, crit: np.ndarray, B: float) -> tuple[float, float]:
    """Real interval for a_k from the linear conditions, evaluated in floats."""
    m = d - k
    g = _level_poly(a, d, k)
    g[0] = 0
    gf = np.polynomial.polynomial.Polynomial([float(c) for c in g])
    lo, hi = -math.inf, math.inf
    lo = max(lo, -gf(B))
    if m % 2 == 0:
        lo = max(lo, -gf(-B))
    else:
        hi = min(hi, -gf(-B))
    for j, c in enumerate(crit, start=1):
        v = -gf(c)
        if (m - j) % 2 == 0:
            lo = max(lo, v)
        else:
            hi = min(hi, v)
    return lo, hi


def _exact_ok(a: list, d: int, k: int, ak: int, bound: QuadIrrBound) -> bool:
    a[k] = ak
    return all_roots_inside(_level_poly(a, d, k), bound)


def _admissible(a: list, d: int, k: int, bound: QuadIrrBound, Bf: float) -> range:
    """Exact integer range of a_k given a[k+1..d]."""
    if k == d - 1:
        crit = np.empty(0)
    else:
        nxt = _level_poly(a, d, k + 1)
        roots = np.polynomial.polynomial.polyroots([float(c) for c in nxt])
        crit = np.sort(roots.real)
    lo_f, hi_f = _float_range(a, d, k, crit, Bf)
    eps = 1e-7
    lo = math.ceil(lo_f - eps)
    hi = math.floor(hi_f + eps)

    def ok(x: int) -> bool:
        return _exact_ok(a, d, k, x, bound)

    if lo > hi:
        # float says empty; settle the gap exactly
        probe = [x for x in range(hi, lo + 1) if ok(x)]
        if not probe:
            return range(0)
        lo, hi = probe[0], probe[-1]
        while ok(lo - 1):
            lo -= 1
        while ok(hi + 1):
            hi += 1
        return range(lo, hi + 1)
    if ok(lo):
        while ok(lo - 1):
            lo -= 1
    else:
        lo += 1
        while lo <= hi and not ok(lo):
            lo += 1
        if lo > hi:
            if ok(hi + 1):  # pragma: no cover - float grossly off
                lo = hi = hi + 1
            else:
                return range(0)
    if ok(hi):
        while ok(hi + 1):
            hi += 1
    else:
        hi -= 1
        while hi >= lo and not ok(hi):
            hi -= 1
    return range(lo, hi + 1)


def _walk(a: list, d: int, k: int, bound: QuadIrrBound, Bf: float) -> Iterator[tuple]:
    for ak in _admissible(a, d, k, bound, Bf):
        a[k] = ak
        if k == 0:
            yield tuple(a)
        else:
            yield from _walk(a, d, k - 1, bound, Bf)
    a[k] = 0


def top_coefficients(job: HuntJob) -> range:
    d = job.degree
    a = [0] * d + [1]
    return _admissible(a, d, d - 1, job.bound, float(job.bound))


def _prefixes(job: HuntJob, start_after: Optional[int]) -> Iterator[tuple[int, list]]:
    """(top coefficient, partial coefficient list) for the shard's work units.

    Work units are (a_{d-1}, a_{d-2}) pairs for d >= 2, distributed round-robin
    over shards in traversal order.
    """
    d = job.degree
    bound, Bf = job.bound, float(job.bound)
    idx, total = job.shard
    unit = 0
    for top in top_coefficients(job):
        if start_after is not None and top <= start_after:
            # keep the unit counter aligned with an uninterrupted run
            if d >= 2:
                a = [0] * d + [1]
                a[d - 1] = top
                unit += len(_admissible(a, d, d - 2, bound, Bf))
            else:
                unit += 1
            continue
        a = [0] * d + [1]
        a[d - 1] = top
        if d == 1:
            if unit % total == idx:
                yield top, a
            unit += 1
            yield top, None
            continue
        for second in _admissible(a, d, d - 2, bound, Bf):
            if unit % total == idx:
                b = list(a)
                b[d - 2] = second
                yield top, b
            unit += 1
        yield top, None  # end-of-top marker


def _raw_stream(job: HuntJob, start_after: Optional[int] = None) -> Iterator[tuple[int, Optional[tuple]]]:
    d = job.degree
    bound, Bf = job.bound, float(job.bound)
    for top, a in _prefixes(job, start_after):
        if a is None:
            yield top, None
            continue
        if d <= 2:
            yield top, tuple(a)
            continue
        for coeffs in _walk(a, d, d - 3, bound, Bf):
            yield top, coeffs


class ReducibleSet:
    """Products of lower-degree members of the same window.

    A monic integer polynomial whose roots all lie in (-B, B) factors over Z into
    monic factors whose roots also lie there, so the reducible members of degree
    d are exactly the products of enumerated members of lower degree.
    """

    def __init__(self, degree: int, bound: QuadIrrBound):
        from .exact.poly import mul

        self.degree = degree
        lists = {k: list(enumerate_totally_real(HuntJob(k, bound))) for k in range(1, degree)}
        members: set = set()
        for k in range(1, degree // 2 + 1):
            for p in lists[k]:
                for q in lists[degree - k]:
                    members.add(tuple(mul(p, q)))
        self.members = members

    def __contains__(self, coeffs) -> bool:
        return tuple(coeffs) in self.members


_REDUCIBLE_CACHE: dict = {}


def _reducible(degree: int, bound: QuadIrrBound) -> ReducibleSet:
    key = (degree, bound)
    if key not in _REDUCIBLE_CACHE:
        _REDUCIBLE_CACHE[key] = ReducibleSet(degree, bound)
    return _REDUCIBLE_CACHE[key]


def enumerate_totally_real(job: HuntJob, checkpoint: Optional[HuntCheckpoint] = None,
                           on_top_done=None) -> Iterator[tuple]:
    """Coefficient tuples (ascending, monic) in lexicographic order of (a_{d-1}, ..., a_0).

    ``on_top_done(top, emitted)`` is called after each a_{d-1} block completes;
    the CLI uses it to write checkpoints.
    """
    if checkpoint is not None and checkpoint.job != job:
        raise ValueError("checkpoint belongs to a different job")
    start_after = checkpoint.last_top if checkpoint else None
    emitted = checkpoint.emitted if checkpoint else 0
    red = _reducible(job.degree, job.bound) if job.irreducible_only and job.degree > 1 else None
    for top, coeffs in _raw_stream(job, start_after):
        if coeffs is None:
            if on_top_done is not None:
                on_top_done(top, emitted)
            continue
        if red is not None and coeffs in red:
            continue
        emitted += 1
        yield coeffs


def count(job: HuntJob) -> int:
    return sum(1 for _ in enumerate_totally_real(job))


def polynomials(job: HuntJob) -> Iterator[IntPolynomial]:
    for c in enumerate_totally_real(job):
        yield IntPolynomial(c)


def resume(checkpoint: HuntCheckpoint) -> Iterator[tuple]:
    """Continue the checkpoint's job after its last completed top coefficient."""
    if checkpoint.version != CHECKPOINT_VERSION:
        raise ValueError(f"checkpoint version mismatch: {checkpoint.version!r}")
    return enumerate_totally_real(checkpoint.job, checkpoint)


def lex_key(coeffs: tuple) -> tuple:
    """Sort key of the traversal order: (a_{d-1}, ..., a_0)."""
    return tuple(reversed(coeffs[:-1]))


def format_line(coeffs: tuple) -> str:
    return ",".join(str(c) for c in coeffs)


def format_jsonl(coeffs: tuple) -> str:
    return json.dumps({"degree": len(coeffs) - 1, "coeffs": list(coeffs)})

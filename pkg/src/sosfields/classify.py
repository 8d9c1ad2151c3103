"""Field classification: hunted generators -> fields up to isomorphism -> sum-of-squares sieve."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field as dfield
from typing import Iterable, Optional, Union

from .exact import poly as P
from .exact.roots import HOUSE_BOUND, QuadIrrBound
from .hunt import HuntJob, enumerate_totally_real
from .numfield.construct import compositum_quadratic, isomorphism_classes, quadratic_field
from .numfield.field import Element, NumberField
from .numfield.order import poly_discriminant
from .numfield.positive import totally_positive_upto_trace
from .sos import DEFAULT_NODE_BUDGET, decide_sos

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SieveConfig:
    trace_budget: Optional[int] = None  # None: 30 up to degree 3, 24 in degree 4
    node_budget: int = DEFAULT_NODE_BUDGET
    escalate_to: int = 60  # stage-2 budget ceiling for fields that survive the default scan
    escalate: bool = False

    def budget_for(self, degree: int) -> int:
        if self.trace_budget is not None:
            return self.trace_budget
        return 30 if degree <= 3 else 24


@dataclass(frozen=True)
class Counterexample:
    """gamma with 2*gamma not a sum of squares."""

    element: Element
    stage: int
    trace: int

    def to_json(self) -> dict:
        return {"verdict": "counterexample", "stage": self.stage, "trace": self.trace,
                "element": [str(c) for c in self.element.int_ivec()]}


@dataclass(frozen=True)
class SurvivedBounded:
    """No failure up to the trace budget; not a proof that every 2*gamma is represented."""

    trace_budget: int
    checked: int

    def to_json(self) -> dict:
        return {"verdict": "survived", "trace_budget": self.trace_budget, "checked": self.checked}


SieveResult = Union[Counterexample, SurvivedBounded]


def least_positive_shift(fld: NumberField, v: tuple) -> int:
    """Least rational integer k with v + k totally positive."""
    conj = fld.float_conjugates(v)
    k = math.floor(-min(conj)) + 1
    one = fld.one

    def ok(k: int) -> bool:
        return fld.is_totally_positive_iv(tuple(a + k * b for a, b in zip(v, one)))

    while not ok(k):
        k += 1
    while ok(k - 1):
        k -= 1
    return k


def sieve_stage1(fld: NumberField, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[Counterexample]:
    for i in range(fld.d):
        b = fld.unit_vector(i)
        k = least_positive_shift(fld, b)
        gamma = tuple(a + k * c for a, c in zip(b, fld.one))
        twice = Element.from_ivec(fld, tuple(2 * c for c in gamma))
        if not decide_sos(twice, node_budget=node_budget):
            return Counterexample(Element.from_ivec(fld, gamma), 1, fld.trace_iv(gamma))
    return None


def sieve_stage2(fld: NumberField, trace_budget: int, node_budget: int = DEFAULT_NODE_BUDGET,
                 start: int = 0) -> SieveResult:
    checked = 0
    for gamma in totally_positive_upto_trace(fld, trace_budget):
        if fld.trace_iv(gamma) <= start:
            continue
        checked += 1
        twice = Element.from_ivec(fld, tuple(2 * c for c in gamma))
        if not decide_sos(twice, node_budget=node_budget):
            return Counterexample(Element.from_ivec(fld, gamma), 2, fld.trace_iv(gamma))
    return SurvivedBounded(trace_budget, checked)


def sieve_field(fld: NumberField, trace_budget: Optional[int] = None,
                config: SieveConfig = SieveConfig()) -> SieveResult:
    """Stage 1 on shifted basis elements, then a scan by trace; first failure wins."""
    budget = trace_budget if trace_budget is not None else config.budget_for(fld.d)
    hit = sieve_stage1(fld, config.node_budget)
    if hit is not None:
        return hit
    res = sieve_stage2(fld, budget, config.node_budget)
    if config.escalate and isinstance(res, SurvivedBounded):
        lo = budget
        while lo < config.escalate_to and isinstance(res, SurvivedBounded):
            hi = min(lo + 6, config.escalate_to)
            res = sieve_stage2(fld, hi, config.node_budget, start=lo)
            lo = hi
    return res


# ---------------------------------------------------------------------------
# generators -> fields


def canonical_generator(coeffs: tuple) -> tuple:
    """Representative of f under x -> +-x + k: trace reduced into [0, d)."""
    d = len(coeffs) - 1
    best = None
    for s in (1, -1):
        g = [c * s ** i for i, c in enumerate(coeffs)]
        if g[-1] < 0:
            g = [-c for c in g]
        k = -(g[d - 1] // d)  # new a_{d-1} = a_{d-1} + d k, lands in [0, d)
        h = tuple(P.compose_linear(g, 1, k))
        if best is None or h < best:
            best = h
    return best


def fields_from_hunt(degree: int, bound: QuadIrrBound = HOUSE_BOUND) -> tuple[int, list[NumberField]]:
    """(number of irreducible generators, one field per distinct canonical generator)."""
    return fields_from_polys(enumerate_totally_real(HuntJob(degree, bound, irreducible_only=True)))


def fields_from_polys(polys: Iterable[tuple]) -> tuple[int, list[NumberField]]:
    """Same as fields_from_hunt for an already enumerated stream of irreducible generators."""
    count = 0
    reps = set()
    for coeffs in polys:
        count += 1
        reps.add(canonical_generator(tuple(coeffs)))
    fields = [NumberField(list(c), name=P.format_poly(c)) for c in sorted(reps, key=_poly_key)]
    return count, fields


def _poly_key(c: tuple) -> tuple:
    return (abs(poly_discriminant(list(c))), sum(x * x for x in c), tuple(reversed(c)))


def distinct_fields(fields: list[NumberField]) -> list[NumberField]:
    """One representative per isomorphism class (smallest |disc(f)| first)."""
    by_disc: dict[int, list] = {}
    for k in fields:
        by_disc.setdefault(k.disc, []).append(k)
    out = []
    for disc in sorted(by_disc):
        for cls in isomorphism_classes(by_disc[disc]):
            out.append(cls[0])
    return out


def quadratic_D(fld: NumberField) -> int:
    disc = fld.disc
    return disc // 4 if disc % 4 == 0 else disc


# ---------------------------------------------------------------------------
# report


@dataclass
class StageCounts:
    generators: int = 0
    fields: int = 0
    sieved_stage1: int = 0
    sieved_stage2: int = 0
    survivors: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class ClassifyReport:
    degree: int
    trace_budget: int
    counts: StageCounts
    survivors: list = dfield(default_factory=list)
    verdicts: list = dfield(default_factory=list)
    biquadratic: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "trace_budget": self.trace_budget,
            "counts": self.counts.to_json(),
            "survivors": self.survivors,
            "fields": self.verdicts,
        }
        if self.biquadratic is not None:
            out["biquadratic"] = self.biquadratic
        return out


def _field_label(fld: NumberField) -> dict:
    return {"name": fld.name or P.format_poly(fld.f.coeffs), "f": list(fld.f.coeffs), "disc": fld.disc}


def _sieve_all(fields: list[NumberField], budget: int, config: SieveConfig, counts: StageCounts,
               report: ClassifyReport) -> list[NumberField]:
    alive = []
    for fld in fields:
        res = sieve_field(fld, budget, config)
        entry = _field_label(fld) | res.to_json()
        report.verdicts.append(entry)
        if isinstance(res, Counterexample):
            if res.stage == 1:
                counts.sieved_stage1 += 1
            else:
                counts.sieved_stage2 += 1
        else:
            alive.append(fld)
        log.info("%s: %s", entry["name"], entry["verdict"])
    counts.survivors = len(alive)
    return alive


def quadratic_generator_fields(bound: QuadIrrBound = HOUSE_BOUND) -> tuple[int, list[NumberField]]:
    """Distinct Q(sqrt D) generated by quadratic irrationals of house < bound."""
    count = 0
    ds = set()
    for coeffs in enumerate_totally_real(HuntJob(2, bound, irreducible_only=True)):
        count += 1
        c, b = coeffs[0], coeffs[1]
        disc = b * b - 4 * c
        ds.add(_squarefree_part(disc))
    return count, [quadratic_field(D) for D in sorted(ds)]


def _squarefree_part(n: int) -> int:
    from sympy import factorint

    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= int(p)
    return out


def biquadratic_stage(config: SieveConfig = SieveConfig(), bound: QuadIrrBound = HOUSE_BOUND) -> dict:
    """Composites of pairs of quadratic fields with small-house generators."""
    _, quads = quadratic_generator_fields(bound)
    ds = [quadratic_D(k) for k in quads]
    seen = {}
    for i, a in enumerate(ds):
        for b in ds[i + 1:]:
            c = _squarefree_part(a * b)
            key = tuple(sorted((a, b, c)))
            if key not in seen:
                seen[key] = (a, b)
    composites = []
    for key in sorted(seen):
        a, b = seen[key]
        composites.append((key, compositum_quadratic(a, b)))
    stage1 = []
    verdicts = []
    for key, fld in composites:
        hit = sieve_stage1(fld, config.node_budget)
        verdicts.append({"subfields": list(key), "stage1": None if hit is None else hit.to_json()})
        if hit is None:
            stage1.append((key, fld))
    survivors = []
    budget = config.budget_for(4)
    for key, fld in stage1:
        res = sieve_stage2(fld, budget, config.node_budget)
        if config.escalate and isinstance(res, SurvivedBounded):
            res = sieve_field(fld, budget, config)
        for v in verdicts:
            if v["subfields"] == list(key):
                v["stage2"] = res.to_json()
        if isinstance(res, SurvivedBounded):
            survivors.append(list(key))
    return {
        "quadratic_fields": len(quads),
        "composites": len(composites),
        "after_stage1": len(stage1),
        "survivors": survivors,
        "fields": verdicts,
    }


def classify(degree: int, trace_budget: Optional[int] = None, config: SieveConfig = SieveConfig(),
             bound: QuadIrrBound = HOUSE_BOUND, *, long_running: bool = False,
             polys: Optional[Iterable[tuple]] = None) -> ClassifyReport:
    """Sieve every field generated by a small-house integer of the given degree.

    ``polys`` may carry an already enumerated stream of irreducible generators
    (degree >= 3) so a long enumeration is not repeated.
    """
    if degree not in (2, 3, 4, 5):
        raise ValueError("degree must be 2, 3 or 4 (5 with long_running)")
    if degree == 5 and not long_running:
        raise ValueError("degree 5 classification is long-running; pass long_running=True")
    if trace_budget is not None:
        config = SieveConfig(trace_budget, config.node_budget, config.escalate_to, config.escalate)
    budget = config.budget_for(degree)
    counts = StageCounts()
    report = ClassifyReport(degree, budget, counts)
    if degree == 2:
        counts.generators, fields = quadratic_generator_fields(bound)
    else:
        if polys is None:
            counts.generators, raw = fields_from_hunt(degree, bound)
        else:
            counts.generators, raw = fields_from_polys(polys)
        fields = distinct_fields(raw)
    counts.fields = len(fields)
    alive = _sieve_all(fields, budget, config, counts, report)
    report.survivors = [_field_label(k) for k in alive]
    if degree == 4:
        report.biquadratic = biquadratic_stage(config, bound)
    return report

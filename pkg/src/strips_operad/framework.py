"""Operad-style interfaces and exact law checkers.

Three kinds of structure are checked here, each supplied as a small bundle of
callables:

* :class:`OperadInstance` -- one-level composition (interval configurations,
  planar trees): associativity and the two unit laws.
* :class:`RelTwoOperadInstance` -- two-level configurations lying over a base
  operad (rectangle strips over intervals): the projection square, shape
  arithmetic, associativity of block composition, and units.
* :class:`AlgebraInstance` -- carriers and two-level elements acted on by the
  structures above (loops and sheets): interchange of acting before or after
  composing, boundary compatibility, units, and closure of the carrier class.

Every law is instantiated on concrete elements and both sides are compared
with ``==``; element types are expected to make that equality decide equality
of the underlying functions (see :mod:`strips_operad.exact`).  Failures are
collected rather than raised, so a corrupted instance yields a report instead
of a crash.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Optional, Sequence

from .shapes import ShapeError, check_shape, output_shape, total


class FiberProductError(ValueError):
    """Configurations meant to share a base configuration do not."""


class ChainError(ValueError):
    """Two-level inputs for one strip do not chain end-to-start."""


@dataclass(frozen=True)
class Block:
    """Composition input for one outer strip: a base element plus the
    two-level elements lying over it (none when the strip is empty)."""

    base: Any
    configs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "configs", tuple(self.configs))


# ---------------------------------------------------------------------------
# instance bundles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperadInstance:
    name: str
    unit: Callable[[], Any]
    arity: Callable[[Any], int]
    compose: Callable[[Any, Sequence], Any]
    random_element: Callable[[int, random.Random], Any]


@dataclass(frozen=True)
class RelTwoOperadInstance:
    name: str
    base: OperadInstance
    unit: Callable[[], Any]
    shape: Callable[[Any], tuple]
    project: Callable[[Any], Any]
    compose: Callable[[Any, Sequence[Block]], Any]
    random_over: Callable[[tuple, Any, random.Random], Any]


@dataclass(frozen=True)
class AlgebraInstance:
    """Carriers (one level) and elements (two levels) acted on by a
    relative two-operad and its base."""

    name: str
    source: Callable[[Any], Any]
    target: Callable[[Any], Any]
    act_path: Callable[[Any, Sequence], Any]
    act_sheet: Callable[[Any, Sequence], Any]
    random_carrier: Callable[[random.Random], Any]
    random_element: Callable[..., Any]
    violation: Callable[[Any], Optional[str]]


# ---------------------------------------------------------------------------
# plans: the combinatorial skeleton of one law instantiation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperadPlan:
    """Arities for a two-stage operad composition.

    ``middle_arities[i]`` is the arity of the element glued into slot i of
    the outer element; ``deep_arities[i][j]`` the arity glued into slot j of
    that element.
    """

    middle_arities: tuple
    deep_arities: tuple

    @property
    def outer_arity(self) -> int:
        return len(self.middle_arities)


@dataclass(frozen=True)
class RelPlan:
    """Shapes and arities for a two-stage block composition.

    ``m`` -- outer shape (length r); ``s[i]`` -- arity of the base glued into
    strip i; ``inner[i][a]`` -- shape of the a-th element over that base;
    ``t[i][j]`` -- arity of the base glued into output strip (i, j);
    ``deep[i][j][a][b]`` -- shape of the element glued onto the b-th
    rectangle that inner element a contributes to strip (i, j).
    """

    m: tuple
    s: tuple
    inner: tuple
    t: tuple
    deep: tuple


@dataclass(frozen=True)
class AlgebraPlan:
    m: tuple
    s: tuple
    inner: tuple


def random_operad_plan(rng: random.Random, max_arity: int) -> OperadPlan:
    r = rng.randint(1, max_arity)
    middles = tuple(rng.randint(1, max_arity) for _ in range(r))
    deep = tuple(tuple(rng.randint(1, max_arity) for _ in range(s)) for s in middles)
    return OperadPlan(middles, deep)


def all_operad_plans(max_arity: int) -> Iterator[OperadPlan]:
    """Every OperadPlan with all arities between 1 and max_arity, in a fixed
    deterministic order."""
    arities = range(1, max_arity + 1)
    for r in arities:
        for middles in itertools.product(arities, repeat=r):
            slots = sum(middles)
            for flat in itertools.product(arities, repeat=slots):
                deep = []
                pos = 0
                for s in middles:
                    deep.append(flat[pos:pos + s])
                    pos += s
                yield OperadPlan(middles, tuple(deep))


def _random_shape(rng: random.Random, length: int, max_total: int) -> tuple:
    while True:
        sh = tuple(rng.choice((0, 0, 1, 1, 2)) for _ in range(length))
        if any(sh) and sum(sh) <= max_total:
            return sh


def random_rel_plan(rng: random.Random, max_r: int, max_total: int) -> RelPlan:
    r = rng.randint(1, max_r)
    m = _random_shape(rng, r, min(3, max_total))
    s = tuple(rng.randint(1, max_r) for _ in range(r))
    while True:
        inner = tuple(tuple(_random_shape(rng, s[i], max_total) for _ in range(m[i]))
                      for i in range(r))
        mid_shape = output_shape(m, s, inner)
        if total(mid_shape) <= max_total:
            break
    t = tuple(tuple(rng.randint(1, max_r) for _ in range(s[i])) for i in range(r))
    while True:
        deep = tuple(
            tuple(
                tuple(
                    tuple(_random_shape(rng, t[i][j], max_total)
                          for _ in range(inner[i][a][j]))
                    for a in range(m[i]))
                for j in range(s[i]))
            for i in range(r))
        final = sum(total(sh)
                    for i in range(r) for j in range(len(deep[i]))
                    for row in deep[i][j] for sh in row)
        if final <= max_total:
            return RelPlan(m, s, inner, t, deep)


def random_algebra_plan(rng: random.Random, max_r: int, max_total: int) -> AlgebraPlan:
    r = rng.randint(1, max_r)
    m = _random_shape(rng, r, min(3, max_total))
    s = tuple(rng.randint(1, max_r) for _ in range(r))
    while True:
        inner = tuple(tuple(_random_shape(rng, s[i], max_total) for _ in range(m[i]))
                      for i in range(r))
        if total(output_shape(m, s, inner)) <= max_total:
            return AlgebraPlan(m, s, inner)


# ---------------------------------------------------------------------------
# elements for one law instantiation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperadElements:
    outer: Any
    middles: tuple
    inners: tuple


@dataclass(frozen=True)
class RelElements:
    outer: Any
    bases: tuple        # bases[i]
    inners: tuple       # inners[i][a]
    deep_bases: tuple   # deep_bases[i][j]
    deep: tuple         # deep[i][j][a][b]


@dataclass(frozen=True)
class AlgebraElements:
    outer: Any
    bases: tuple
    inners: tuple
    chains: tuple       # per flattened output strip: tuple of elements, or a carrier


def random_operad_elements(op: OperadInstance, plan: OperadPlan,
                           rng: random.Random) -> OperadElements:
    outer = op.random_element(plan.outer_arity, rng)
    middles = tuple(op.random_element(s, rng) for s in plan.middle_arities)
    inners = tuple(tuple(op.random_element(a, rng) for a in row)
                   for row in plan.deep_arities)
    return OperadElements(outer, middles, inners)


def random_rel_elements(rel: RelTwoOperadInstance, plan: RelPlan,
                        rng: random.Random) -> RelElements:
    proj = rel.base.random_element(len(plan.m), rng)
    outer = rel.random_over(plan.m, proj, rng)
    bases = tuple(rel.base.random_element(plan.s[i], rng) for i in range(len(plan.m)))
    inners = tuple(tuple(rel.random_over(sh, bases[i], rng) for sh in plan.inner[i])
                   for i in range(len(plan.m)))
    deep_bases = tuple(tuple(rel.base.random_element(plan.t[i][j], rng)
                             for j in range(plan.s[i]))
                       for i in range(len(plan.m)))
    deep = tuple(
        tuple(
            tuple(
                tuple(rel.random_over(sh, deep_bases[i][j], rng)
                      for sh in plan.deep[i][j][a])
                for a in range(plan.m[i]))
            for j in range(plan.s[i]))
        for i in range(len(plan.m)))
    return RelElements(outer, bases, inners, deep_bases, deep)


def random_algebra_elements(alg: AlgebraInstance, rel: RelTwoOperadInstance,
                            plan: AlgebraPlan, rng: random.Random) -> AlgebraElements:
    proj = rel.base.random_element(len(plan.m), rng)
    outer = rel.random_over(plan.m, proj, rng)
    bases = tuple(rel.base.random_element(plan.s[i], rng) for i in range(len(plan.m)))
    inners = tuple(tuple(rel.random_over(sh, bases[i], rng) for sh in plan.inner[i])
                   for i in range(len(plan.m)))
    out_shape = output_shape(plan.m, plan.s, plan.inner)
    chains = []
    for n in out_shape:
        if n == 0:
            chains.append(alg.random_carrier(rng))
        else:
            chain = [alg.random_element(rng)]
            for _ in range(n - 1):
                chain.append(alg.random_element(rng, source=alg.target(chain[-1])))
            chains.append(tuple(chain))
    return AlgebraElements(outer, bases, inners, tuple(chains))


# ---------------------------------------------------------------------------
# failure records and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckFailure:
    case: str
    law: str
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"case": self.case, "law": self.law, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckReport:
    instance: str
    mode: str
    seed: Optional[int]
    plan: dict
    cases_run: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "mode": self.mode,
            "seed": self.seed,
            "plan": self.plan,
            "cases_run": self.cases_run,
            "ok": self.ok,
            "failures": [f.to_json() for f in self.failures],
        }

    def json_bytes(self) -> bytes:
        return (json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# law checkers
# ---------------------------------------------------------------------------

def check_operad_laws(op: OperadInstance, elems: OperadElements,
                      case: str = "") -> list:
    """Associativity and units instantiated on the given elements."""
    fails = []

    def expect(law, lhs, rhs):
        if lhs != rhs:
            fails.append(CheckFailure(case, law, repr(lhs), repr(rhs)))

    r = op.arity(elems.outer)
    stage1 = op.compose(elems.outer, elems.middles)
    flat = tuple(w for row in elems.inners for w in row)
    lhs = op.compose(stage1, flat)
    rhs = op.compose(elems.outer,
                     tuple(op.compose(elems.middles[i], elems.inners[i])
                           for i in range(r)))
    expect("associativity", lhs, rhs)

    unit = op.unit()
    expect("right unit", op.compose(elems.outer, (unit,) * r), elems.outer)
    expect("left unit", op.compose(unit, (elems.outer,)), elems.outer)
    return fails


def check_rel_laws(rel: RelTwoOperadInstance, elems: RelElements,
                   case: str = "") -> list:
    """Projection square, shape arithmetic, associativity, and units."""
    fails = []

    def expect(law, lhs, rhs):
        if lhs != rhs:
            fails.append(CheckFailure(case, law, repr(lhs), repr(rhs)))

    base_op = rel.base
    outer = elems.outer
    m = rel.shape(outer)
    r = len(m)
    blocks1 = tuple(Block(elems.bases[i], elems.inners[i]) for i in range(r))
    stage1 = rel.compose(outer, blocks1)

    expect("projection square",
           rel.project(stage1),
           base_op.compose(rel.project(outer), tuple(b.base for b in blocks1)))
    expect("shape arithmetic",
           rel.shape(stage1),
           output_shape(m, tuple(base_op.arity(b) for b in elems.bases),
                        tuple(tuple(rel.shape(q) for q in elems.inners[i])
                              for i in range(r))))

    deep_blocks = []
    for i in range(r):
        s_i = base_op.arity(elems.bases[i])
        for j in range(s_i):
            configs = tuple(w for a in range(m[i]) for w in elems.deep[i][j][a])
            deep_blocks.append(Block(elems.deep_bases[i][j], configs))
    lhs = rel.compose(stage1, tuple(deep_blocks))

    inner_composed = tuple(
        tuple(rel.compose(elems.inners[i][a],
                          tuple(Block(elems.deep_bases[i][j], elems.deep[i][j][a])
                                for j in range(base_op.arity(elems.bases[i]))))
              for a in range(m[i]))
        for i in range(r))
    base_composed = tuple(base_op.compose(elems.bases[i], elems.deep_bases[i])
                          for i in range(r))
    rhs = rel.compose(outer,
                      tuple(Block(base_composed[i], inner_composed[i])
                            for i in range(r)))
    expect("associativity", lhs, rhs)

    unit2 = rel.unit()
    unit1 = base_op.unit()
    expect("right unit",
           rel.compose(outer, tuple(Block(unit1, (unit2,) * m[i]) for i in range(r))),
           outer)
    expect("left unit",
           rel.compose(unit2, (Block(rel.project(outer), (outer,)),)),
           outer)
    return fails


def _split_chain(alg: AlgebraInstance, chain_or_carrier, counts: Sequence):
    """Split one strip's input among the inner elements meeting that strip.

    ``counts[a]`` rectangles of the strip belong to inner element a; an inner
    with no rectangle there receives the junction carrier at its position.
    """
    if not isinstance(chain_or_carrier, tuple):
        # empty strip: every inner sees the same carrier
        return [chain_or_carrier] * len(counts)
    chain = chain_or_carrier
    parts = []
    off = 0
    for n in counts:
        if n == 0:
            if off == 0:
                parts.append(alg.source(chain[0]))
            else:
                parts.append(alg.target(chain[off - 1]))
        else:
            parts.append(chain[off:off + n])
            off += n
    if off != len(chain):
        raise ChainError(f"chain of length {len(chain)} does not split as {counts}")
    return parts


def _strip_ends(alg: AlgebraInstance, chains: Sequence) -> tuple:
    firsts = tuple(alg.source(c[0]) if isinstance(c, tuple) else c for c in chains)
    lasts = tuple(alg.target(c[-1]) if isinstance(c, tuple) else c for c in chains)
    return firsts, lasts


def check_algebra_laws(alg: AlgebraInstance, rel: RelTwoOperadInstance,
                       elems: AlgebraElements, case: str = "") -> list:
    """Interchange of acting and composing, boundary compatibility, units,
    and closure, instantiated on the given elements."""
    fails = []

    def expect(law, lhs, rhs):
        if lhs != rhs:
            fails.append(CheckFailure(case, law, repr(lhs), repr(rhs)))

    base_op = rel.base
    outer = elems.outer
    m = rel.shape(outer)
    r = len(m)
    blocks = tuple(Block(elems.bases[i], elems.inners[i]) for i in range(r))
    composite = rel.compose(outer, blocks)

    # one-step action with the composed configuration
    lhs = alg.act_sheet(composite, elems.chains)

    # two-step action: inner elements first, then the outer one
    outer_inputs = []
    k0 = 0
    for i in range(r):
        s_i = base_op.arity(elems.bases[i])
        strip_chains = elems.chains[k0:k0 + s_i]
        if m[i] == 0:
            outer_inputs.append(alg.act_path(elems.bases[i], strip_chains))
        else:
            # parts[j][a]: strip j's share of inner element a
            parts = [
                _split_chain(alg, strip_chains[j],
                             [rel.shape(elems.inners[i][a])[j] for a in range(m[i])])
                for j in range(s_i)]
            middles = tuple(
                alg.act_sheet(elems.inners[i][a],
                              tuple(parts[j][a] for j in range(s_i)))
                for a in range(m[i]))
            outer_inputs.append(middles)
        k0 += s_i
    rhs = alg.act_sheet(outer, tuple(outer_inputs))
    expect("interchange", lhs, rhs)

    # boundary compatibility of the one-step action
    firsts, lasts = _strip_ends(alg, elems.chains)
    expect("source boundary", alg.source(lhs),
           alg.act_path(rel.project(composite), firsts))
    expect("target boundary", alg.target(lhs),
           alg.act_path(rel.project(composite), lasts))

    # units
    some = next((c[0] for c in elems.chains if isinstance(c, tuple)), None)
    if some is not None:
        expect("unit", alg.act_sheet(rel.unit(), ((some,),)), some)
    carrier = firsts[0]
    expect("path unit", alg.act_path(base_op.unit(), (carrier,)), carrier)

    # closure: composite results stay inside the carrier class
    for label, res in (("one-step", lhs), ("two-step", rhs)):
        msg = alg.violation(res)
        if msg is not None:
            fails.append(CheckFailure(case, "closure", f"{label}: {msg}", "None"))
    return fails


# ---------------------------------------------------------------------------
# seeded runners
# ---------------------------------------------------------------------------

def _case_rng(seed: int, k) -> random.Random:
    return random.Random(f"{seed}:{k}")


def run_operad_check(op: OperadInstance, *, seed: int, cases: int,
                     max_arity: int) -> CheckReport:
    report = CheckReport(op.name, "seeded", seed,
                         {"cases": cases, "max_arity": max_arity}, cases)
    for k in range(cases):
        rng = _case_rng(seed, k)
        plan = random_operad_plan(rng, max_arity)
        elems = random_operad_elements(op, plan, rng)
        report.failures.extend(check_operad_laws(op, elems, case=str(k)))
    return report


def run_operad_exhaustive(op: OperadInstance, *, max_arity: int, seed: int = 0,
                          samples_per_plan: int = 2) -> CheckReport:
    """Check every composition plan with arities up to ``max_arity``,
    sampling elements per plan from the given seed."""
    report = CheckReport(op.name, "exhaustive", seed,
                         {"max_arity": max_arity,
                          "samples_per_plan": samples_per_plan}, 0)
    n = 0
    for idx, plan in enumerate(all_operad_plans(max_arity)):
        for v in range(samples_per_plan):
            rng = _case_rng(seed, f"{idx}:{v}")
            elems = random_operad_elements(op, plan, rng)
            report.failures.extend(
                check_operad_laws(op, elems, case=f"plan{idx}:{v}"))
            n += 1
    report.cases_run = n
    return report


def run_rel_check(rel: RelTwoOperadInstance, *, seed: int, cases: int,
                  max_r: int, max_total: int) -> CheckReport:
    report = CheckReport(rel.name, "seeded", seed,
                         {"cases": cases, "max_r": max_r, "max_total": max_total},
                         cases)
    for k in range(cases):
        rng = _case_rng(seed, k)
        plan = random_rel_plan(rng, max_r, max_total)
        elems = random_rel_elements(rel, plan, rng)
        report.failures.extend(check_rel_laws(rel, elems, case=str(k)))
    return report


def run_algebra_check(make_algebra: Callable[[random.Random], AlgebraInstance],
                      rel: RelTwoOperadInstance, *, seed: int, cases: int,
                      max_r: int, max_total: int, name: str = "") -> CheckReport:
    """``make_algebra`` builds the algebra for each case, so runs can vary
    the underlying map along with the elements."""
    first = make_algebra(_case_rng(seed, "probe"))
    report = CheckReport(name or first.name, "seeded", seed,
                         {"cases": cases, "max_r": max_r, "max_total": max_total},
                         cases)
    for k in range(cases):
        rng = _case_rng(seed, k)
        alg = make_algebra(rng)
        plan = random_algebra_plan(rng, max_r, max_total)
        elems = random_algebra_elements(alg, rel, plan, rng)
        report.failures.extend(check_algebra_laws(alg, rel, elems, case=str(k)))
    return report

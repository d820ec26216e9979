"""Corpus-wide verification suites and their JSON reports.

Every check runs over one corpus entry (or the corpus as a whole) and
produces a record ``{name, status, witness, residual, ms}``.  Tolerances
below are fixed; the numeric policy only governs rank decisions.
"""

from __future__ import annotations

import json
import time
import zlib
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from . import __version__
from .characters import additive_basis, enumerate_multiplicative
from .corpus import CorpusEntry
from .equations import KINDS, EquationSpec, make_spec, residual_matrix, residual_max, solve_for_f
from .errors import CorpusEmpty, SemiwilsonError, UnknownSuite
from .families import (
    FamilyMatch,
    FamilySpan,
    TRIVIAL,
    admissible_families,
    build_family,
    check_linear_dependence,
    classify,
    family_g,
    family_span,
    product_identity_deviation,
    reduce,
    skew_system,
)
from .functions import DEFAULT_POLICY, NumericPolicy, is_abelian, max_abs
from .linalg import nullspace
from .measures import parse_measure, render_measure, smear
from .semigroup import compute_center, find_neutral, generate_semigroups, parse_cayley, render_cayley

TOL_RESIDUAL = 1e-9
TOL_FIT = 1e-8
TOL_IDENTITY = 1e-8
TOL_MINOR = 1e-8
TOL_MONOID = 1e-8
TOL_VANISH = 1e-9
TOL_ABELIAN = 1e-9
SELF_PAIR_FLOOR = 0.1
PARAM_GRID = (1, -1, 2, 1j, 1 + 1j)
RANDOM_G_COUNT = 100
DEPENDENCE_SAMPLES = 20
SELF_PAIR_RANDOM = 100
ORDER3_LABELED = 113
ORDER3_CLASSES = 24
GENERATION_SECONDS = 5.0

MEASURED_KINDS = ("kw", "vvw", "kannappan", "vanvleck", "jensen", "symmetrized")


@dataclass
class Check:
    name: str
    status: str
    witness: Optional[dict] = None
    residual: Optional[float] = None
    ms: int = 0

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witness": self.witness,
            "residual": self.residual,
            "ms": self.ms,
        }


@dataclass
class Report:
    suite: str
    corpus: str
    policy: NumericPolicy
    seed: int
    checks: list = field(default_factory=list)
    command: Optional[list] = None

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "suite": self.suite,
            "corpus": self.corpus,
            "version": __version__,
            "command": self.command,
            "policy": {"epsilon": self.policy.epsilon, "seed": self.seed},
            "checks": [c.to_obj() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            res = "" if c.residual is None else f"  residual={c.residual:.3e}"
            lines.append(f"{c.status.upper():4}  {c.name}{res}")
            if c.status == "fail":
                lines.append(f"      witness: {json.dumps(c.witness, sort_keys=True)}")
        counts = {s: sum(c.status == s for c in self.checks) for s in ("pass", "fail", "skip")}
        lines.append(
            f"suite {self.suite}: {counts['pass']} passed, {counts['fail']} failed, "
            f"{counts['skip']} skipped (epsilon={self.policy.epsilon:g}, seed={self.seed})"
        )
        return "\n".join(lines) + "\n"


# -- per-entry context -----------------------------------------------------------

@dataclass
class Harvest:
    """The solution space for one family-prescribed ``g``."""

    spec: EquationSpec
    tag: str
    g: np.ndarray
    basis: list
    span: FamilySpan


class EntryContext:
    """Characters, equation instances and harvested solutions for one entry."""

    def __init__(self, entry: CorpusEntry, policy: NumericPolicy = DEFAULT_POLICY):
        self.entry = entry
        self.S = entry.semigroup
        self.policy = policy
        self.characters = enumerate_multiplicative(self.S)
        self._specs: dict = {}
        self._harvest: dict = {}

    def specs(self, kind: str) -> list[EquationSpec]:
        if kind not in self._specs:
            self._specs[kind] = specs_for(self.entry, kind)
        return self._specs[kind]

    def harvest(self, kind: str) -> list[Harvest]:
        if kind not in self._harvest:
            out = []
            for spec in self.specs(kind):
                seen = []
                for fam in admissible_families(spec, self.characters, (1,), self.policy):
                    if fam.tag in TRIVIAL:
                        continue
                    g = family_g(spec, fam.tag, fam.chi)
                    if any(max_abs(g - s) <= TOL_FIT for s in seen):
                        continue
                    seen.append(g)
                    basis = solve_for_f(spec, g, self.policy)
                    span = family_span(spec, g, self.characters, self.policy)
                    out.append(Harvest(spec, fam.tag, g, basis, span))
            self._harvest[kind] = out
        return self._harvest[kind]


def specs_for(entry: CorpusEntry, kind: str) -> list[EquationSpec]:
    """Every admissible instance of an equation on a corpus entry."""
    S = entry.semigroup
    weighting = KINDS[kind][1]
    center = compute_center(S)
    sigmas = [s for s in entry.sigmas if s.is_identity()][:1] if kind == "symmetrized" else entry.sigmas
    if kind == "symmetrized" and not sigmas:
        sigmas = [make_spec("wilson", S).sigma]
    out = []
    for sigma in sigmas:
        if weighting == "measure":
            out += [make_spec(kind, S, sigma, measure=m) for m in entry.measures]
        elif weighting == "z0":
            out += [make_spec(kind, S, sigma, z0=z) for z in center]
        else:
            out.append(make_spec(kind, S, sigma))
    return out


def _rng(seed: int, *labels: str) -> np.random.Generator:
    key = zlib.crc32("|".join(labels).encode())
    return np.random.default_rng([seed, key])


def _random_function(rng, n) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _pair_witness(spec, f, g) -> dict:
    R = np.abs(residual_matrix(spec, f, g))
    x, y = np.unravel_index(int(np.argmax(R)), R.shape)
    return {"pair": [int(x), int(y)], "residual": float(R[x, y])}


def _base_witness(ctx: EntryContext, spec: Optional[EquationSpec] = None, **extra) -> dict:
    w = {"semigroup": ctx.entry.id}
    if spec is not None:
        w["equation"] = spec.witness()
    w.update(extra)
    return w


def _vector(v) -> list:
    return [{"re": float(z.real), "im": float(z.imag)} for z in np.asarray(v, dtype=complex)]


# -- individual checks -------------------------------------------------------------
# Each returns (status, witness, residual).

def check_converse(ctx: EntryContext, kind: str):
    """Every family instance over the coefficient grid solves its equation."""
    specs = ctx.specs(kind)
    if not specs:
        return "skip", _base_witness(ctx, reason="no admissible sigma/measure"), None
    worst, count = 0.0, 0
    for spec in specs:
        for fam in admissible_families(spec, ctx.characters, PARAM_GRID, ctx.policy):
            try:
                f, g = build_family(spec, fam, ctx.policy)
            except SemiwilsonError as exc:
                return "fail", _base_witness(ctx, spec, family=fam.describe(), error=str(exc)), None
            res = residual_max(spec, f, g)
            worst = max(worst, res)
            count += 1
            if res > TOL_RESIDUAL:
                return "fail", _base_witness(ctx, spec, family=fam.describe(), **_pair_witness(spec, f, g)), res
    return "pass", _base_witness(ctx, pairs=count), worst


def check_nullspace_span(ctx: EntryContext, kind: str):
    """For each family g, the solution space in f is exactly the family span."""
    specs = ctx.specs(kind)
    if not specs:
        return "skip", _base_witness(ctx, reason="no admissible sigma/measure"), None
    worst, count = 0.0, 0
    try:
        harvest = ctx.harvest(kind)
    except SemiwilsonError as exc:
        return "fail", _base_witness(ctx, error=str(exc)), None
    for h in harvest:
        if len(h.basis) != h.span.dimension:
            return "fail", _base_witness(
                ctx, h.spec, family=h.tag, g=_vector(h.g), nullspace_dim=len(h.basis), predicted_dim=h.span.dimension
            ), None
        for v in h.basis:
            m = classify(h.spec, v, h.g, ctx.characters, ctx.policy)
            if not isinstance(m, FamilyMatch) or m.fit_residual > TOL_FIT or not set(m.all_tags) & h.span.tags:
                return "fail", _base_witness(
                    ctx, h.spec, family=h.tag, f=_vector(v), g=_vector(h.g),
                    classified=getattr(m, "all_tags", None), reason=getattr(m, "reason", None),
                ), getattr(m, "fit_residual", None)
            worst = max(worst, m.fit_residual)
            count += 1
    return "pass", _base_witness(ctx, g_values=len(harvest), basis_vectors=count), worst


def check_generic_g(ctx: EntryContext, kind: str, seed: int):
    """Random g admits only f = 0."""
    specs = ctx.specs(kind)
    if kind == "jensen" or not specs:
        return "skip", _base_witness(ctx, reason="g is fixed" if kind == "jensen" else "no admissible sigma/measure"), None
    n = ctx.S.n
    for spec in specs:
        rng = _rng(seed, "generic-g", ctx.entry.id, spec.label())
        for k in range(RANDOM_G_COUNT):
            g = _random_function(rng, n)
            try:
                basis = solve_for_f(spec, g, ctx.policy)
            except SemiwilsonError as exc:
                return "fail", _base_witness(ctx, spec, sample=k, g=_vector(g), error=str(exc)), None
            if basis:
                return "fail", _base_witness(ctx, spec, sample=k, g=_vector(g), nullspace_dim=len(basis)), None
    return "pass", _base_witness(ctx, instances=len(specs), samples=len(specs) * RANDOM_G_COUNT), None


def check_jensen_rigidity(ctx: EntryContext):
    """Jensen solutions are exactly the constants; no nonzero additive functions."""
    add = additive_basis(ctx.S, ctx.policy)
    if add:
        return "fail", _base_witness(ctx, additive_dim=len(add), A=_vector(add[0])), None
    specs = ctx.specs("jensen")
    worst = 0.0
    for spec in specs:
        basis = solve_for_f(spec, spec.fixed_g, ctx.policy)
        if len(basis) != 1:
            return "fail", _base_witness(ctx, spec, nullspace_dim=len(basis)), None
        v = basis[0]
        dev = max_abs(v - v[0])
        worst = max(worst, dev)
        if dev > TOL_RESIDUAL:
            return "fail", _base_witness(ctx, spec, f=_vector(v)), dev
    return "pass", _base_witness(ctx, instances=len(specs)), worst


def check_reductions(ctx: EntryContext, kind: str):
    """Reduction to the unmeasured equation on every harvested solution."""
    if not ctx.specs(kind):
        return "skip", _base_witness(ctx, reason="no admissible sigma/measure"), None
    worst = 0.0
    branches = {"nondegenerate": 0, "degenerate": 0}
    for h in ctx.harvest(kind):
        for f in h.basis:
            wit = partial(_base_witness, ctx, h.spec, family=h.tag, f=_vector(f), g=_vector(h.g))
            try:
                r = reduce(h.spec, f, h.g, ctx.policy)
            except SemiwilsonError as exc:
                return "fail", wit(error=str(exc)), None
            branches[r.branch] += 1
            worst = max(worst, r.deviation)
            if r.deviation > TOL_IDENTITY:
                return "fail", wit(branch=r.branch), r.deviation
            if max_abs(r.h) <= ctx.policy.epsilon:
                return "fail", wit(reason="smear of f vanishes"), None
            if r.branch == "nondegenerate" and max_abs(r.G) <= ctx.policy.epsilon:
                return "fail", wit(reason="G vanishes"), None
            if h.spec.sign > 0:
                dev = product_identity_deviation(h.spec, f, h.g)
                worst = max(worst, dev)
                if dev > TOL_IDENTITY:
                    return "fail", wit(reason="two-measure identity"), dev
    return "pass", _base_witness(ctx, **branches), worst


def check_linear_dependence_suite(ctx: EntryContext, seed: int):
    """Solutions F of F(xy) = F(x)G(y) - F(y)G(x) are proportional to G."""
    S = ctx.S
    rng = _rng(seed, "dependence", ctx.entry.id)
    samples = [("random", k, _random_function(rng, S.n)) for k in range(DEPENDENCE_SAMPLES)]
    samples += [("character", c.render(), np.asarray(c.vector)) for c in ctx.characters]
    # elements outside S S carry solutions with F proportional to G
    products = set(S.table.ravel().tolist())
    samples += [("indicator", S.name(a), np.eye(S.n, dtype=complex)[a]) for a in range(S.n) if a not in products]
    worst, nonvacuous = 0.0, 0
    for source, label, G in samples:
        basis = nullspace(skew_system(S, G), ctx.policy.epsilon)
        for F in basis:
            nonvacuous += 1
            try:
                cex = check_linear_dependence(S, F, G, ctx.policy, minor_tol=TOL_MINOR)
            except SemiwilsonError as exc:
                return "fail", _base_witness(ctx, G=_vector(G), F=_vector(F), error=str(exc)), None
            minors = np.abs(np.outer(F, G) - np.outer(G, F)).max()
            worst = max(worst, float(minors))
            if cex is not None:
                return "fail", _base_witness(ctx, source=source, G=_vector(G), F=_vector(F), **cex), cex["minor"]
    return "pass", _base_witness(ctx, samples=len(samples), nonvacuous=nonvacuous), worst


def check_monoid_reduction(ctx: EntryContext):
    """On a monoid, the smear of f equals g(e) f for plus-sign solutions."""
    e = find_neutral(ctx.S)
    if e is None:
        return "skip", _base_witness(ctx, reason="not a monoid"), None
    worst, count = 0.0, 0
    for kind in ("kw", "kannappan", "symmetrized", "jensen"):
        for h in ctx.harvest(kind):
            for f in h.basis:
                dev = max_abs(smear(ctx.S, h.spec.measure, f) - h.g[e] * f)
                worst = max(worst, dev)
                count += 1
                if dev > TOL_MONOID:
                    return "fail", _base_witness(ctx, h.spec, f=_vector(f), g=_vector(h.g)), dev
    return "pass", _base_witness(ctx, solutions=count), worst


def g_zero_instances(ctx: EntryContext):
    """Solutions of the plus equation with g = 0, per (sigma, z0)."""
    out = []
    for spec in ctx.specs("kannappan"):
        out.append((spec, solve_for_f(spec, np.zeros(ctx.S.n, dtype=complex), ctx.policy)))
    return out


def check_g_zero_vanishing(ctx: EntryContext):
    """With g = 0, every solution vanishes on S S S z0."""
    S = ctx.S
    inst = g_zero_instances(ctx)
    if not inst:
        return "skip", _base_witness(ctx, reason="empty center"), None
    worst = 0.0
    nonzero = []
    for spec, basis in inst:
        z0 = spec.z0
        targets = sorted({S.product(x, y, z, z0) for x in range(S.n) for y in range(S.n) for z in range(S.n)})
        for v in basis:
            dev = max_abs(v[targets])
            worst = max(worst, dev)
            if dev > TOL_VANISH:
                return "fail", _base_witness(ctx, spec, f=_vector(v), support=targets), dev
            if max_abs(v) > ctx.policy.epsilon:
                nonzero.append(spec.label())
    return "pass", _base_witness(ctx, nonvanishing_instances=sorted(set(nonzero))), worst


def check_minus_self_pair(ctx: EntryContext, seed: int):
    """No nonzero f makes (f, f) a solution of the unmeasured minus equation."""
    specs = ctx.specs("van1")
    worst = np.inf
    tested = 0
    for spec in specs:
        cands = [("harvested", h.g) for h in ctx.harvest("van1") if h.spec == spec]
        rng = _rng(seed, "minus-self-pair", ctx.entry.id, spec.label())
        cands += [("random", _random_function(rng, ctx.S.n)) for _ in range(SELF_PAIR_RANDOM)]
        for source, f in cands:
            f = f / max_abs(f)
            res = residual_max(spec, f, f)
            worst = min(worst, res)
            tested += 1
            if res <= SELF_PAIR_FLOOR:
                return "fail", _base_witness(ctx, spec, source=source, f=_vector(f)), res
            try:
                classify(spec, f, f, ctx.characters, ctx.policy)
            except SemiwilsonError:
                continue
            return "fail", _base_witness(ctx, spec, source=source, f=_vector(f), reason="classifier accepted (f, f)"), res
    return "pass", _base_witness(ctx, candidates=tested), (None if tested == 0 else float(worst))


def check_abelian(ctx: EntryContext, kind: str):
    """Nonzero family members and harvested solutions are abelian."""
    if not ctx.specs(kind):
        return "skip", _base_witness(ctx, reason="no admissible sigma/measure"), None
    pol = NumericPolicy(TOL_ABELIAN)
    count = 0
    for spec in ctx.specs(kind):
        for fam in admissible_families(spec, ctx.characters, PARAM_GRID, ctx.policy):
            if fam.tag in TRIVIAL:
                continue
            f, g = build_family(spec, fam, ctx.policy)
            for name, v in (("f", f), ("g", g)):
                if max_abs(v) > ctx.policy.epsilon:
                    count += 1
                    if not is_abelian(ctx.S, v, pol):
                        return "fail", _base_witness(ctx, spec, family=fam.describe(), which=name, value=_vector(v)), None
    for h in ctx.harvest(kind):
        for name, v in [("f", f) for f in h.basis] + [("g", h.g)]:
            count += 1
            if not is_abelian(ctx.S, v, pol):
                return "fail", _base_witness(ctx, h.spec, family=h.tag, which=name, value=_vector(v)), None
    return "pass", _base_witness(ctx, functions=count), None


def check_round_trip(ctx: EntryContext):
    """``.cayley`` and measure JSON survive a render/parse cycle byte for byte."""
    S = ctx.S
    text = render_cayley(S)
    back = parse_cayley(text)
    if back != S or render_cayley(back) != text:
        return "fail", _base_witness(ctx, format="cayley"), None
    for mu in ctx.entry.measures:
        mtext = render_measure(mu)
        mback = parse_measure(mtext, S)
        if mback != mu or render_measure(mback) != mtext:
            return "fail", _base_witness(ctx, format="measure", measure=json.loads(mtext)), None
    return "pass", _base_witness(ctx, measures=len(ctx.entry.measures)), None


def check_generation(timing: bool = True):
    """Exhaustive order-3 generation: count, class count and running time.

    The time limit is always enforced; ``timing=False`` only keeps the
    measured seconds out of the witness so reports stay reproducible.
    """
    t0 = time.perf_counter()
    labeled = generate_semigroups(3)
    elapsed = time.perf_counter() - t0
    classes = generate_semigroups(3, dedup=True)
    w = {"labeled": len(labeled), "classes": len(classes)}
    if timing:
        w["seconds_labeled"] = round(elapsed, 3)
    ok = len(labeled) == ORDER3_LABELED and len(classes) == ORDER3_CLASSES and elapsed < GENERATION_SECONDS
    return ("pass" if ok else "fail"), w, None


# -- suites --------------------------------------------------------------------------

THEOREM_SUITES = {
    "theorem-kw": ("kw",),
    "theorem-kannappan": ("kannappan",),
    "theorem-wilson": ("wilson",),
    "theorem-van1": ("van1",),
    "theorem-vvw": ("vvw",),
    "corollaries": ("jensen", "symmetrized", "vanvleck"),
}

SUITES = tuple(THEOREM_SUITES) + ("lemma-reductions", "lemma-lv", "remarks", "infrastructure", "all")


def _plan(suite: str, seed: int, timing: bool = True) -> list[tuple[str, Callable]]:
    """(check name prefix, per-entry function) pairs; '*' marks corpus-level checks."""
    if suite in THEOREM_SUITES:
        plan = []
        for kind in THEOREM_SUITES[suite]:
            plan += [
                (f"converse/{kind}", partial(check_converse, kind=kind)),
                (f"nullspace-span/{kind}", partial(check_nullspace_span, kind=kind)),
                (f"generic-g/{kind}", partial(check_generic_g, kind=kind, seed=seed)),
                (f"abelian/{kind}", partial(check_abelian, kind=kind)),
            ]
        if suite == "corollaries":
            plan.append(("jensen-rigidity", check_jensen_rigidity))
        return plan
    if suite == "lemma-reductions":
        return [(f"reductions/{kind}", partial(check_reductions, kind=kind)) for kind in MEASURED_KINDS]
    if suite == "lemma-lv":
        return [("linear-dependence", partial(check_linear_dependence_suite, seed=seed))]
    if suite == "remarks":
        return [
            ("monoid-reduction", check_monoid_reduction),
            ("g-zero-vanishing", check_g_zero_vanishing),
            ("*g-zero-nonvanishing", None),
            ("minus-self-pair", partial(check_minus_self_pair, seed=seed)),
        ]
    if suite == "infrastructure":
        return [("*generation", partial(check_generation, timing=timing)), ("round-trip", check_round_trip)]
    if suite == "all":
        plan = []
        for name in SUITES[:-1]:
            plan += _plan(name, seed, timing)
        return plan
    raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def run_suite(
    suite: str,
    entries: Sequence[CorpusEntry],
    policy: NumericPolicy = DEFAULT_POLICY,
    seed: int = 0,
    corpus_label: str = "builtin",
    timing: bool = True,
    command: Optional[list] = None,
) -> Report:
    """Run a named suite over the corpus and collect a ``Report``."""
    plan = _plan(suite, seed, timing)
    if not entries:
        raise CorpusEmpty("the corpus is empty")
    contexts = [EntryContext(e, policy) for e in entries]
    report = Report(suite, corpus_label, policy, seed, command=command)
    vanish_results = {}

    def record(name, fn):
        t0 = time.perf_counter()
        try:
            status, witness, residual = fn()
        except Exception as exc:  # a crash is a failed check, with the error as witness
            status, witness, residual = "fail", {"error": f"{type(exc).__name__}: {exc}"}, None
        ms = int(round((time.perf_counter() - t0) * 1000)) if timing else 0
        report.checks.append(Check(name, status, witness, residual, ms))
        return status, witness

    for prefix, fn in plan:
        if prefix == "*g-zero-nonvanishing":
            record("g-zero-nonvanishing", partial(_nonvanishing_summary, vanish_results))
            continue
        if prefix.startswith("*"):
            record(prefix[1:], fn)
            continue
        for ctx in contexts:
            status, witness = record(f"{prefix}/{ctx.entry.id}", partial(fn, ctx))
            if prefix == "g-zero-vanishing" and status == "pass":
                vanish_results[ctx.entry.id] = witness.get("nonvanishing_instances", [])
    return report


def _nonvanishing_summary(results: dict):
    hits = {k: v for k, v in results.items() if v}
    if hits:
        first = next(iter(hits))
        return "pass", {"semigroup": first, "instances": hits[first], "entries": sorted(hits)}, None
    return "fail", {"reason": "no corpus instance with a solution nonzero somewhere on S"}, None

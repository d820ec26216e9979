"""Command line interface: ``semiwilson <command> [options]``.

Exit status is 0 on success, 1 when a check or validation fails and 2 on
usage or input errors.  Diagnostics are a single line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .characters import enumerate_multiplicative
from .corpus import filter_corpus, load_corpus
from .equations import KINDS, make_spec, residual_max, solve_for_f
from .errors import NotASolution, SemiwilsonError
from .families import (
    FAMILIES_BY_KIND,
    TRIVIAL,
    FamilyMatch,
    build_family,
    classify,
    family_from_obj,
    first_admissible,
    structural_conditions,
)
from .functions import NumericPolicy, format_function, parse_function
from .measures import measure_to_obj, parse_measure
from .morphisms import enumerate_automorphisms, parse_sigma
from .semigroup import (
    compute_center,
    find_neutral,
    generate_semigroups,
    idempotents,
    parse_cayley,
    power_profile,
)
from .suites import SUITES, run_suite

GLOBAL_DEFAULTS = {"epsilon": 1e-9, "format": "text", "seed": 0, "timing": True}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # The same flags are accepted before and after the subcommand; SUPPRESS
    # keeps a subparser from clobbering a value given earlier.
    p = _Parser(add_help=False)
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--epsilon", type=float, default=d, help="numeric zero threshold (default 1e-9)")
    p.add_argument("--format", choices=("text", "json"), default=d, help="output format (default text)")
    p.add_argument("--seed", type=int, default=d, help="seed for randomized checks (default 0)")
    p.add_argument("--no-timing", dest="timing", action="store_false", default=d,
                   help="report ms = 0 so reports are byte-identical across runs")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semiwilson", description=__doc__.splitlines()[0], parents=[_global_flags(True)])
    parser.add_argument("--version", action="version", version=f"semiwilson {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_global_flags(True)]

    p = sub.add_parser("validate", parents=common, help="check a .cayley file")
    p.add_argument("file")

    p = sub.add_parser("info", parents=common, help="center, idempotents, automorphisms, characters")
    p.add_argument("file")

    def equation_args(p):
        p.add_argument("--eq", required=True, choices=tuple(KINDS))
        p.add_argument("--measure", help="measure JSON file (kw, vvw)")
        p.add_argument("--z0", help="central element (kannappan, vanvleck, jensen, symmetrized)")
        p.add_argument("--sigma", default="id", help='"id" or an image list such as 0,3,2,1')
        p.add_argument("file")

    p = sub.add_parser("solve", parents=common, help="solve for f given g")
    equation_args(p)
    p.add_argument("--g", help="function literal, family:TAG[:char], or a family JSON file")

    p = sub.add_parser("classify", parents=common, help="classify a solution pair (f, g)")
    equation_args(p)
    p.add_argument("--f", required=True, help="function literal")
    p.add_argument("--g", required=True, help="function literal")

    p = sub.add_parser("verify", parents=common, help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--corpus", default="builtin", help='"builtin" or a directory of .cayley files')
    p.add_argument("--only", help="comma-separated entry ids")
    p.add_argument("--monoids-only", action="store_true")

    p = sub.add_parser("gen", parents=common, help="list all semigroups of a small order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--dedup", action="store_true", help="one representative per isomorphism class")
    return parser


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_semigroup(path: str):
    try:
        return parse_cayley(_read(path))
    except SemiwilsonError as exc:
        raise SemiwilsonError(f"{path}: {exc}") from None


def _cj(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _vec(v) -> list:
    return [_cj(z) for z in v]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return _cj(obj)
    if isinstance(obj, np.ndarray):
        return _vec(obj)
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _emit(args, obj: dict, text: str):
    if args.format == "json":
        sys.stdout.write(json.dumps(_jsonable(obj), indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands ------------------------------------------------------------------

def cmd_validate(args) -> int:
    text = _read(args.file)
    try:
        S = parse_cayley(text)
    except SemiwilsonError as exc:
        _emit(args, {"file": args.file, "ok": False, "error": str(exc)}, f"error: {args.file}: {exc}")
        return 1
    _emit(args, {"file": args.file, "ok": True, "order": S.n}, f"ok: associative, order {S.n}")
    return 0


def cmd_info(args) -> int:
    S = _load_semigroup(args.file)
    center = compute_center(S)
    idem = idempotents(S)
    e = find_neutral(S)
    autos = enumerate_automorphisms(S)
    chars = enumerate_multiplicative(S)
    profiles = [power_profile(S, x) for x in range(S.n)]
    names = [S.name(x) for x in range(S.n)]
    obj = {
        "order": S.n,
        "names": names,
        "commutative": S.is_commutative,
        "neutral": e,
        "center": center,
        "idempotents": idem,
        "power_profile": [{"element": p.element, "index": p.index, "period": p.period} for p in profiles],
        "automorphisms": [{"sigma": a.spec(), "involutive": a.involutive} for a in autos],
        "characters": [{"index": i, "exact": c.render(), "values": c.vector} for i, c in enumerate(chars)],
    }
    lines = [
        f"order: {S.n}",
        "elements: " + ", ".join(f"{x}={n}" for x, n in enumerate(names)),
        f"commutative: {'yes' if S.is_commutative else 'no'}",
        f"neutral: {'none' if e is None else S.name(e)}",
        "center: {" + ", ".join(S.name(z) for z in center) + "}",
        "idempotents: {" + ", ".join(S.name(z) for z in idem) + "}",
        "automorphisms:",
    ]
    lines += [f"  {a.spec()}{'  (involutive)' if a.involutive else ''}" for a in autos]
    lines.append(f"characters: {len(chars)}")
    lines += [f"  [{i}] {c.render()}  = {format_function(c.vector)}" for i, c in enumerate(chars)]
    _emit(args, obj, "\n".join(lines))
    return 0


def _spec_from_args(args, S):
    sigma = parse_sigma(args.sigma, S)
    weighting = KINDS[args.eq][1]
    measure = z0 = None
    if weighting == "measure":
        if args.measure is None or args.z0 is not None:
            raise UsageError(f"--eq {args.eq} needs --measure (and no --z0)")
        measure = parse_measure(_read(args.measure), S)
    elif weighting == "z0":
        if args.z0 is None or args.measure is not None:
            raise UsageError(f"--eq {args.eq} needs --z0 (and no --measure)")
        try:
            z0 = S.element(args.z0)
        except ValueError as exc:
            raise UsageError(f"--z0: {exc}") from None
    elif args.measure is not None or args.z0 is not None:
        raise UsageError(f"--eq {args.eq} takes neither --measure nor --z0")
    try:
        return make_spec(args.eq, S, sigma, measure=measure, z0=z0)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _g_from_arg(spec, text: Optional[str], chars, policy):
    """Resolve --g; returns (g, description)."""
    S = spec.semigroup
    if text is None:
        if spec.fixed_g is not None:
            return spec.fixed_g, "1 (fixed)"
        raise UsageError(f"--eq {spec.kind} needs --g")
    obj = None
    if text.startswith("family:"):
        parts = text.split(":")
        tag = parts[1] if len(parts) > 1 else ""
        if tag not in FAMILIES_BY_KIND[spec.kind] or tag in TRIVIAL:
            allowed = [t for t in FAMILIES_BY_KIND[spec.kind] if t not in TRIVIAL]
            raise UsageError(f"family {tag!r} does not fit --eq {spec.kind}; choose from {', '.join(allowed)}")
        obj = {"family": tag}
        if tag != "JEN":
            if len(parts) > 2:
                idx = int(parts[2])
            else:
                idx = first_admissible(spec, tag, chars, policy)
                if idx is None:
                    raise UsageError(f"no character satisfies the side conditions of {tag} here")
            obj["m" if tag == "KW2" else "chi"] = idx
    elif text.lstrip().startswith("{") or text.endswith(".json"):
        raw = text if text.lstrip().startswith("{") else _read(text)
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SemiwilsonError(f"family spec: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if obj is None:
        return parse_function(text, S.n), text
    try:
        fam = family_from_obj(obj, spec, chars, policy)
    except (KeyError, IndexError, ValueError) as exc:
        raise UsageError(f"bad family spec: {exc}") from None
    _, g = build_family(spec, fam, policy)
    return g, fam.describe()


def _classification(spec, f, g, chars, policy) -> tuple[dict, str]:
    try:
        m = classify(spec, f, g, chars, policy)
    except NotASolution as exc:
        return {"tag": None, "reason": str(exc), "residual": exc.residual}, f"not a solution ({exc})"
    if not isinstance(m, FamilyMatch):
        return {"tag": None, "reason": m.reason}, f"unclassified: {m.reason}"
    violations = structural_conditions(spec, m.tag, m.family.chi, policy)
    obj = {
        "tag": m.tag,
        "all_tags": m.all_tags,
        "params": m.params,
        "fit_residual": m.fit_residual,
        "residual": residual_max(spec, f, g),
        "side_conditions": {"violated": [{"condition": c, "witness": w} for c, w in violations]},
    }
    text = m.family.describe()
    if len(m.all_tags) > 1:
        text += f"  (also {', '.join(t for t in m.all_tags if t != m.tag)})"
    return obj, text + f"  fit={m.fit_residual:.2e}"


def _equation_obj(spec) -> dict:
    out = {"kind": spec.kind, "sigma": spec.sigma.spec()}
    if spec.z0 is not None:
        out["z0"] = spec.z0
    elif spec.measure is not None:
        out["measure"] = measure_to_obj(spec.measure)
    return out


def cmd_solve(args) -> int:
    S = _load_semigroup(args.file)
    policy = NumericPolicy(args.epsilon)
    spec = _spec_from_args(args, S)
    chars = enumerate_multiplicative(S)
    g, gdesc = _g_from_arg(spec, args.g, chars, policy)
    basis = solve_for_f(spec, g, policy)
    classes = [_classification(spec, f, g, chars, policy) for f in basis]
    obj = {
        "equation": _equation_obj(spec),
        "g": g,
        "g_source": gdesc,
        "dimension": len(basis),
        "basis": basis,
        "classification": [c[0] for c in classes],
    }
    lines = [
        f"equation: {spec.label()}",
        f"g: {format_function(g)}  [{gdesc}]",
        f"nullspace dimension: {len(basis)}",
    ]
    for i, (f, (_, ctext)) in enumerate(zip(basis, classes), start=1):
        lines.append(f"  f{i} = {format_function(f)}")
        lines.append(f"       {ctext}")
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    S = _load_semigroup(args.file)
    policy = NumericPolicy(args.epsilon)
    spec = _spec_from_args(args, S)
    chars = enumerate_multiplicative(S)
    try:
        f = parse_function(args.f, S.n)
        g = parse_function(args.g, S.n)
    except SemiwilsonError as exc:
        raise UsageError(str(exc)) from None
    cobj, ctext = _classification(spec, f, g, chars, policy)
    obj = {"equation": _equation_obj(spec), "f": f, "g": g, "classification": cobj}
    _emit(args, obj, f"equation: {spec.label()}\n{ctext}")
    return 0 if cobj["tag"] is not None else 1


def cmd_verify(args, argv) -> int:
    entries = load_corpus(args.corpus)
    ids = None if args.only is None else args.only.split(",")
    entries = filter_corpus(entries, ids=ids, monoids_only=args.monoids_only)
    report = run_suite(
        args.suite,
        entries,
        NumericPolicy(args.epsilon),
        seed=args.seed,
        corpus_label=args.corpus,
        timing=args.timing,
        command=list(argv),
    )
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    out = generate_semigroups(args.order, dedup=args.dedup)
    if args.format == "json":
        _emit(args, {"order": args.order, "dedup": args.dedup, "count": len(out),
                     "tables": [S.table.tolist() for S in out]}, "")
    else:
        sys.stdout.write("".join(" ".join(map(str, S.flat())) + "\n" for S in out))
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "solve": cmd_solve,
    "classify": cmd_classify,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for k, v in GLOBAL_DEFAULTS.items():
            if getattr(args, k, None) is None:
                setattr(args, k, v)
        if args.epsilon <= 0:
            raise UsageError("--epsilon must be positive")
        if args.command == "verify":
            return cmd_verify(args, argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"semiwilson: usage error: {exc}\n")
        return 2
    except (SemiwilsonError, ValueError) as exc:
        sys.stderr.write(f"semiwilson: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

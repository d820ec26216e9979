"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible in ``pytest -v``
output) and then asserts.  The per-entry checks come from one run of the
``all`` suite over the bundled corpus at the default policy and seed 0.
"""

import json
import os
import subprocess
import sys
import time

import pytest

from semiwilson import suites
from semiwilson.corpus import builtin_corpus
from semiwilson.measures import parse_measure, render_measure
from semiwilson.semigroup import generate_semigroups, parse_cayley, render_cayley


@pytest.fixture(scope="module")
def full_run():
    t0 = time.perf_counter()
    report = suites.run_suite("all", builtin_corpus(), seed=0)
    return report, time.perf_counter() - t0


def select(report, *prefixes):
    return [c for c in report.checks if c.name.startswith(prefixes)]


def verdict(capsys, label, checks, extra_ok=True, note="", bounded=None):
    failed = [c for c in checks if c.status == "fail"]
    ran = [c for c in checks if c.status == "pass"]
    ok = extra_ok and not failed and bool(ran)
    bounded = ran if bounded is None else [c for c in ran if c in bounded]
    worst = max((c.residual for c in bounded if c.residual is not None), default=None)
    detail = f"{len(ran)} passed, {len(failed)} failed, {len(checks) - len(ran) - len(failed)} skipped"
    if worst is not None:
        detail += f", worst residual {worst:.2e}"
    if note:
        detail += f", {note}"
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'}  {label}: {detail}")
    for c in failed[:3]:
        with capsys.disabled():
            print(f"      {c.name}: {json.dumps(c.witness, sort_keys=True)}")
    return ok


def test_converse_residuals(full_run, capsys):
    report, _ = full_run
    checks = select(report, "converse/")
    seconds = sum(c.ms for c in checks) / 1000
    assert verdict(capsys, "converse residuals <= 1e-9", checks, seconds < 30, f"{seconds:.2f}s")


def test_nullspace_equals_family_span(full_run, capsys):
    report, _ = full_run
    assert verdict(capsys, "nullspace equals family span, fit <= 1e-8", select(report, "nullspace-span/"))


def test_generic_g_falsification(full_run, capsys):
    report, _ = full_run
    assert verdict(capsys, "generic g gives only f = 0 (100 seeded samples)", select(report, "generic-g/"))


def test_jensen_rigidity(full_run, capsys):
    report, _ = full_run
    assert verdict(capsys, "jensen solutions are constants, no additive functions", select(report, "jensen-rigidity/"))


def test_reduction_identities(full_run, capsys):
    report, _ = full_run
    checks = select(report, "reductions/")
    degenerate = sum(c.witness.get("degenerate", 0) for c in checks if c.status == "pass")
    assert verdict(capsys, "reduction identities <= 1e-8", checks, note=f"{degenerate} degenerate-branch solutions")


def test_linear_dependence(full_run, capsys):
    report, _ = full_run
    checks = select(report, "linear-dependence/")
    nonvacuous = sum(c.witness.get("nonvacuous", 0) for c in checks if c.status == "pass")
    assert verdict(capsys, "skew-system solutions proportional to G", checks, note=f"{nonvacuous} non-vacuous vectors")


def test_remarks(full_run, capsys):
    report, _ = full_run
    checks = select(report, "monoid-reduction/", "g-zero-vanishing/", "g-zero-nonvanishing", "minus-self-pair/")
    has_witness = any(c.name == "g-zero-nonvanishing" and c.status == "pass" for c in checks)
    self_pairs = [c.residual for c in checks if c.name.startswith("minus-self-pair/") and c.residual is not None]
    note = f"smallest (f, f) residual {min(self_pairs):.3f} (must exceed 0.1)"
    upper = [c for c in checks if not c.name.startswith("minus-self-pair/")]
    assert verdict(capsys, "monoid reduction, g = 0 vanishing, no minus self-pairs", checks, has_witness, note, upper)


def test_abelian(full_run, capsys):
    report, _ = full_run
    assert verdict(capsys, "solutions are abelian at 1e-9", select(report, "abelian/"))


def test_infrastructure(full_run, capsys):
    report, _ = full_run
    t0 = time.perf_counter()
    labeled = generate_semigroups(3)
    gen_seconds = time.perf_counter() - t0
    ok = len(labeled) == 113 and len(generate_semigroups(3, dedup=True)) == 24 and gen_seconds < 5
    for entry in builtin_corpus():
        text = render_cayley(entry.semigroup)
        ok &= render_cayley(parse_cayley(text)) == text
        for mu in entry.measures:
            m = render_measure(mu)
            ok &= render_measure(parse_measure(m, entry.semigroup)) == m
    argv = [sys.executable, "-m", "semiwilson", "verify", "--suite", "all", "--format", "json", "--no-timing"]
    t0 = time.perf_counter()
    first = subprocess.run(argv, capture_output=True, text=True, env={**os.environ, "PYTHONHASHSEED": "1"})
    cli_seconds = time.perf_counter() - t0
    second = subprocess.run(argv, capture_output=True, text=True, env={**os.environ, "PYTHONHASHSEED": "2"})
    identical = first.stdout == second.stdout
    ok &= first.returncode == 0 and identical and cli_seconds < 120
    note = (
        f"generation {gen_seconds:.3f}s, verify --suite all {cli_seconds:.1f}s (exit {first.returncode}), "
        f"reports {'byte-identical' if identical else 'DIFFER'}"
    )
    if first.returncode:
        note += f", stderr: {first.stderr.strip()[-200:]}"
    assert verdict(capsys, "generation, round trips, full verify", select(report, "generation", "round-trip/"), ok, note)

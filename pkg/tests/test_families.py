import numpy as np
import pytest

import oracles
from conftest import OMEGA
from semiwilson.characters import enumerate_multiplicative
from semiwilson.equations import make_spec, residual_max, solve_for_f
from semiwilson.errors import HypothesisFails, NotASolution, SideConditionViolated, ZeroFunction
from semiwilson.families import (
    FamilyMatch,
    SolutionFamily,
    Unclassified,
    admissible_families,
    build_family,
    check_linear_dependence,
    classify,
    family_from_obj,
    family_span,
    first_admissible,
    product_identity_deviation,
    reduce,
)
from semiwilson.measures import DiracCombination, delta
from semiwilson.morphisms import parse_sigma
from semiwilson.semigroup import cyclic_group, direct_product, n3, null_semigroup

Z3, Z4 = cyclic_group(3), cyclic_group(4)
NEG3 = parse_sigma("0,2,1", Z3)
NEG4 = parse_sigma("0,3,2,1", Z4)
P9 = direct_product(n3(), n3())
SWAP = parse_sigma(",".join(str(P9.element(n[1] + n[0])) for n in P9.names), P9)


def char_by_vector(S, v):
    for chi in enumerate_multiplicative(S):
        if np.allclose(chi.vector, v):
            return chi
    raise LookupError(v)


M3 = char_by_vector(Z3, [1, OMEGA, OMEGA**2])
CHI4 = char_by_vector(Z4, [1, 1j, -1, -1j])


def p9_kw4():
    spec = make_spec("kw", P9, SWAP, measure=delta(P9.element("11")))
    chi = char_by_vector(P9, [1.0 if n == "11" else 0.0 for n in P9.names])
    phi = np.zeros(9, dtype=complex)
    phi[P9.element("a1")], phi[P9.element("1a")] = 1, -1
    return spec, SolutionFamily("KW4", chi, {"lambda": 1, "gamma1": 0}, phi=phi)


def test_kw2_on_z3():
    spec = make_spec("kw", Z3, NEG3, measure=delta(0))
    f, g = build_family(spec, SolutionFamily("KW2", M3, {"lambda2": 3}))
    m = M3.vector
    assert np.allclose(f, 3 * m)
    assert np.allclose(g, (m + m[NEG3.array]) / 2)
    assert oracles.residual(Z3.table.tolist(), 1, NEG3.perm, [(0, 1)], f, g) < 1e-12


def test_kw4_on_p9():
    spec, fam = p9_kw4()
    f, g = build_family(spec, fam)
    assert oracles.residual(P9.table.tolist(), 1, SWAP.perm, [(P9.element("11"), 1)], f, g) < 1e-12
    assert np.allclose(f[SWAP.array], -f)
    m = classify(spec, f, g, enumerate_multiplicative(P9))
    assert isinstance(m, FamilyMatch) and m.tag == "KW4"
    lam, gam = m.family.coeffs["lambda"], m.family.coeffs["gamma1"]
    assert abs(lam * gam) < 1e-9
    assert np.allclose(lam * m.family.phi, f)


def test_kw3_side_condition_on_z3():
    spec = make_spec("kw", Z3, NEG3, measure=delta(1))
    with pytest.raises(SideConditionViolated) as info:
        build_family(spec, SolutionFamily("KW3", M3, {"alpha1": 1, "beta1": 0}))
    assert "int chi dmu = int chi* dmu" in str(info.value)


def test_other_side_conditions():
    spec = make_spec("kw", Z3, NEG3, measure=delta(0))
    with pytest.raises(SideConditionViolated):
        build_family(spec, SolutionFamily("KW2", M3, {"lambda2": 0}))
    with pytest.raises(SideConditionViolated):
        build_family(spec, SolutionFamily("KW1", g=np.zeros(3)))
    jen = make_spec("jensen", Z3, z0=0)
    with pytest.raises(SideConditionViolated) as info:
        build_family(jen, SolutionFamily("JEN", coeffs={"gamma1": 1}, A=np.array([0, 1, -1])))
    assert "NoNonzeroAdditive" in str(info.value)
    f, g = build_family(jen, SolutionFamily("JEN", coeffs={"gamma1": 2}))
    assert np.allclose(f, 2) and np.allclose(g, 1)


def test_every_admissible_instance_solves_by_oracle(corpus):
    grid = (1, -1, 2, 1j, 1 + 1j)
    for e in corpus:
        S = e.semigroup
        chars = enumerate_multiplicative(S)
        t = S.table.tolist()
        for s in e.sigmas:
            specs = [make_spec("kw", S, s, measure=m) for m in e.measures]
            specs += [make_spec("vvw", S, s, measure=m) for m in e.measures]
            specs += [make_spec("wilson", S, s), make_spec("van1", S, s)]
            for spec in specs:
                atoms = None if spec.measure is None else list(spec.measure.atoms)
                for fam in admissible_families(spec, chars, grid):
                    f, g = build_family(spec, fam)
                    assert oracles.residual(t, spec.sign, s.perm, atoms, f, g) <= 1e-9


def test_classify_examples():
    chars = enumerate_multiplicative(Z4)
    spec = make_spec("vanvleck", Z4, NEG4, z0=1)
    c = CHI4.vector
    cs = c[NEG4.array]
    m = classify(spec, c + 2 * cs, 1j * (c - cs) / 2, chars)
    assert m.tag == "VV2"
    a1, a2 = m.family.coeffs["alpha1"], m.family.coeffs["alpha2"]
    if np.allclose(m.family.chi.vector, c):
        assert np.allclose([a1, a2], [1, 2])
    else:
        assert np.allclose([a1, a2], [2, 1])
    kw = make_spec("kw", Z4, NEG4, measure=delta(0))
    m = classify(kw, np.zeros(4), np.array([1, 2, 3, 4]), chars)
    assert m.tag == "KW1"
    with pytest.raises(NotASolution):
        classify(kw, np.ones(4), np.zeros(4), chars)
    assert isinstance(classify(kw, np.zeros(4), np.zeros(4), chars), Unclassified)


def test_span_matches_nullspace_on_examples():
    spec = make_spec("vanvleck", Z4, NEG4, z0=1)
    c = CHI4.vector
    g = 1j * (c - c[NEG4.array]) / 2
    span = family_span(spec, g, enumerate_multiplicative(Z4))
    assert span.tags == {"VV2"} and span.dimension == 2 == len(solve_for_f(spec, g))


def test_reduce_nondegenerate():
    spec = make_spec("kw", Z3, NEG3, measure=delta(0))
    f, g = build_family(spec, SolutionFamily("KW2", M3, {"lambda2": 3}))
    r = reduce(spec, f, g)
    assert r.branch == "nondegenerate"
    m = M3.vector
    assert np.allclose(r.G, (m + m[NEG3.array]) / 2)
    assert residual_max(make_spec("wilson", Z3, NEG3), r.F, r.G) < 1e-12
    assert product_identity_deviation(spec, f, g) < 1e-12


def test_reduce_degenerate():
    spec = make_spec("kw", Z4, NEG4, measure=delta(1))
    f, g = build_family(spec, SolutionFamily("KW2", CHI4, {"lambda2": 1}))
    assert abs(g[1]) < 1e-12
    r = reduce(spec, f, g)
    assert r.branch == "degenerate" and np.isclose(r.lambda1, 1j)
    with pytest.raises(ZeroFunction):
        reduce(spec, np.zeros(4), g)


def test_minus_reduction_lands_on_plus_equation():
    spec = make_spec("vvw", Z4, NEG4, measure=delta(1))
    c = CHI4.vector
    f, g = build_family(spec, SolutionFamily("VV2", CHI4, {"alpha1": 1, "alpha2": 2}))
    r = reduce(spec, f, g)
    assert r.deviation < 1e-12
    assert residual_max(make_spec("van1", Z4, NEG4), r.F, r.G) > 0.1
    assert np.allclose(r.G, (c + c[NEG4.array]) / 2)


def test_measured_minus_equation_has_self_pairs():
    # with a measure, f = g = i (chi - chi*) / 2 solves the minus equation
    spec = make_spec("vvw", Z4, NEG4, measure=delta(1))
    c = CHI4.vector
    f = 1j * (c - c[NEG4.array]) / 2
    assert residual_max(spec, f, f) < 1e-12
    assert residual_max(make_spec("van1", Z4, NEG4), f, f) > 0.1


def test_linear_dependence():
    assert check_linear_dependence(Z3, np.zeros(3), M3.vector) is None
    with pytest.raises(HypothesisFails):
        check_linear_dependence(Z3, M3.vector, M3.vector)
    # on the null semigroup F(xy) = F(0), so any F, G with F(0) = G(0) = 0 that are dependent pass
    Nul = null_semigroup(3)
    G = np.array([0, 1, 2j])
    assert check_linear_dependence(Nul, 3 * G, G) is None
    # independent F, G cannot satisfy the hypothesis: the minor shows up on the left side
    with pytest.raises(HypothesisFails):
        check_linear_dependence(Nul, np.array([0, 1, 0]), np.array([0, 0, 1]))
    # exact multiples pass even with zero tolerance on the minors
    assert check_linear_dependence(Nul, 2 * G, G, minor_tol=0.0) is None


def test_family_json_and_first_admissible():
    chars = enumerate_multiplicative(Z4)
    spec = make_spec("vanvleck", Z4, NEG4, z0=1)
    idx = first_admissible(spec, "VV2", chars)
    fam = family_from_obj({"family": "VV2", "chi": idx, "alpha1": {"re": 0, "im": 1}}, spec, chars)
    f, g = build_family(spec, fam)
    assert residual_max(spec, f, g) < 1e-12
    assert fam.coeffs["alpha1"] == 1j and fam.coeffs["alpha2"] == 0
    with pytest.raises(ValueError):
        family_from_obj({"family": "KW2", "m": 0}, spec, chars)
    assert first_admissible(make_spec("kw", Z3, NEG3, measure=delta(1)), "KW3", enumerate_multiplicative(Z3)) is None


def test_measure_with_two_atoms():
    mu = DiracCombination(((1, 1 + 0j), (3, 1 + 0j)))
    spec = make_spec("kw", Z4, NEG4, measure=mu)
    chars = enumerate_multiplicative(Z4)
    for fam in admissible_families(spec, chars, (1, 1j)):
        f, g = build_family(spec, fam)
        if fam.tag != "KW1":
            assert classify(spec, f, g, chars).tag is not None

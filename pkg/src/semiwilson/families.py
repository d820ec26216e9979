"""Solution families of the Wilson-type equations, and the way back.

``build_family`` realizes a family as a pair ``(f, g)``; ``classify`` takes
a solution pair and finds the family (and parameters) it belongs to.
``reduce`` computes the auxiliary functions that relate a measured
equation to the unmeasured one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .characters import Character, sine_addition_basis
from .equations import EquationSpec, make_spec, residual_max
from .errors import (
    HypothesisFails,
    LambdaNotFound,
    NotASolution,
    SelfCheckFailed,
    SideConditionViolated,
    ZeroFunction,
)
from .functions import DEFAULT_POLICY, NumericPolicy, as_function, format_complex, is_additive, max_abs, star
from .linalg import nullspace
from .measures import DiracCombination, integrate, smear
from .semigroup import Semigroup

FAMILIES_BY_KIND = {
    "kw": ("KW1", "KW2", "KW3", "KW4"),
    "kannappan": ("KW1", "KW2", "KW3", "KW4"),
    "vvw": ("VV1", "VV2"),
    "vanvleck": ("VV1", "VV2"),
    "wilson": ("W1", "W2", "W3"),
    "van1": ("V1", "V2"),
    "symmetrized": ("SYM1", "SYM2"),
    "jensen": ("JEN",),
}

TRIVIAL = {"KW1", "VV1", "W1", "V1", "SYM1"}

# coefficient names per family, in display order
PARAMS = {
    "KW2": ("lambda2",),
    "KW3": ("alpha1", "beta1"),
    "KW4": ("lambda", "gamma1"),
    "W2": ("alpha", "beta"),
    "W3": ("gamma1",),
    "V2": ("lambda",),
    "VV2": ("alpha1", "alpha2"),
    "SYM2": ("lambda2",),
    "JEN": ("gamma1",),
}


@dataclass(eq=False)
class SolutionFamily:
    """A family tag with its parameters.

    ``chi`` is the character (called ``m`` for KW2), ``phi`` the sine
    addition component of KW4/W3, ``g`` the free function of the trivial
    families and ``A`` the additive part of JEN.
    """

    tag: str
    chi: Optional[Character] = None
    coeffs: dict = field(default_factory=dict)
    phi: Optional[np.ndarray] = None
    g: Optional[np.ndarray] = None
    A: Optional[np.ndarray] = None

    def describe(self) -> str:
        parts = [self.tag]
        if self.chi is not None:
            parts.append(("m=" if self.tag == "KW2" else "chi=") + self.chi.render())
        for k, v in self.coeffs.items():
            parts.append(f"{k}={format_complex(complex(v))}")
        return " ".join(parts)


@dataclass
class FamilyMatch:
    tag: str
    params: dict
    fit_residual: float
    all_tags: list
    family: SolutionFamily


@dataclass
class Unclassified:
    reason: str
    tag: None = None
    all_tags: list = field(default_factory=list)


@dataclass
class ReductionResult:
    h: np.ndarray
    branch: str  # "nondegenerate" or "degenerate"
    F: Optional[np.ndarray] = None
    G: Optional[np.ndarray] = None
    lambda1: Optional[complex] = None
    deviation: float = 0.0


# -- helpers ---------------------------------------------------------------

def _chi_vec(chi: Character) -> np.ndarray:
    return np.asarray(chi.vector, dtype=complex)


def _integral(spec: EquationSpec, v) -> complex:
    return integrate(spec.measure, v)


def sine_residual(S: Semigroup, chi, phi) -> float:
    chi = np.asarray(chi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    return max_abs(phi[S.table] - np.outer(phi, chi) - np.outer(chi, phi))


def odd_sine_basis(
    S: Semigroup,
    chi: Character,
    sigma,
    measure: Optional[DiracCombination] = None,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> list[np.ndarray]:
    """Basis of ``{phi : sine law for chi, phi o sigma = -phi, int phi dmu = 0}``.

    Without a measure the integral condition is dropped.
    """
    base = sine_addition_basis(S, chi, policy)
    if not base:
        return []
    B = np.array(base).T
    rows = [B[sigma.array] + B]
    if measure is not None:
        rows.append((measure.weights @ B[measure.points])[None, :])
    coeffs = nullspace(np.vstack(rows), policy.epsilon)
    return [B @ c for c in coeffs]


def family_g(spec: EquationSpec, tag: str, chi: Optional[Character]) -> np.ndarray:
    """The ``g`` a family prescribes (independent of the free coefficients)."""
    n = spec.semigroup.n
    if tag == "JEN":
        return np.ones(n, dtype=complex)
    c = _chi_vec(chi)
    cs = star(c, spec.sigma)
    if tag in ("KW2", "KW3"):
        return _integral(spec, c) * (c + cs) / 2
    if tag == "KW4":
        return _integral(spec, c) * c
    if tag == "W2":
        return (c + cs) / 2
    if tag == "W3":
        return c.copy()
    if tag == "V2":
        return (c - cs) / 2
    if tag == "VV2":
        return _integral(spec, c) * (c - cs) / 2
    if tag == "SYM2":
        return c[spec.z0] * c
    raise ValueError(f"no prescribed g for family {tag}")


def _check_applicable(spec: EquationSpec, tag: str):
    if tag not in FAMILIES_BY_KIND[spec.kind]:
        raise ValueError(f"family {tag} does not apply to the {spec.kind} equation")


def structural_conditions(spec: EquationSpec, tag: str, chi: Optional[Character], policy: NumericPolicy) -> list[tuple[str, object]]:
    """Side conditions that depend only on the character, not the coefficients.

    Returns the violated conditions as ``(name, witness)`` pairs.
    """
    eps = policy.epsilon
    bad = []
    if tag in TRIVIAL or tag == "JEN":
        return bad
    chi_s = chi.star(spec.sigma)
    c = _chi_vec(chi)
    if tag in ("KW4", "W2", "W3", "SYM2") and chi.is_zero:
        bad.append(("chi != 0", None))
    if tag in ("KW3", "V2", "VV2") and chi_s == chi:
        bad.append(("chi != chi*", chi.render()))
    if tag in ("KW4", "W3") and chi_s != chi:
        bad.append(("chi = chi*", chi.render()))
    if tag in ("KW2", "KW3", "KW4", "VV2"):
        I = _integral(spec, c)
        if abs(I) <= eps:
            bad.append(("int chi dmu != 0", _cjson(I)))
        Is = _integral(spec, _chi_vec(chi_s))
        if tag == "KW3" and abs(I - Is) > eps:
            bad.append(("int chi dmu = int chi* dmu", [_cjson(I), _cjson(Is)]))
        if tag == "VV2" and abs(I + Is) > eps:
            bad.append(("int chi dmu = -int chi* dmu", [_cjson(I), _cjson(Is)]))
    if tag == "SYM2" and abs(c[spec.z0]) <= eps:
        bad.append(("chi(z0) != 0", _cjson(c[spec.z0])))
    return bad


def _cjson(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# -- construction ----------------------------------------------------------

def build_family(spec: EquationSpec, fam: SolutionFamily, policy: NumericPolicy = DEFAULT_POLICY) -> tuple[np.ndarray, np.ndarray]:
    """Realize ``fam`` as a pair ``(f, g)`` after checking its side conditions.

    Raises ``SideConditionViolated`` naming the first failed condition, and
    ``SelfCheckFailed`` if the realized pair does not solve the equation.
    """
    S = spec.semigroup
    n = S.n
    eps = policy.epsilon
    tag = fam.tag
    _check_applicable(spec, tag)
    k = fam.coeffs

    def need(cond, name, witness=None):
        if not cond:
            raise SideConditionViolated(name, witness)

    if tag in TRIVIAL:
        g = as_function(fam.g, n)
        need(max_abs(g) > eps, "g != 0")
        f = np.zeros(n, dtype=complex)
    elif tag == "JEN":
        A = np.zeros(n, dtype=complex) if fam.A is None else as_function(fam.A, n)
        if max_abs(A) > eps:
            need(is_additive(S, A, policy), "NoNonzeroAdditive", "finite semigroups carry no nonzero additive function")
            need(max_abs(star(A, spec.sigma) + A) <= eps, "A* = -A")
            need(abs(A[spec.z0]) <= eps, "A(z0) = 0")
        g = family_g(spec, tag, None)
        f = k.get("gamma1", 0) * np.ones(n, dtype=complex) + A
    else:
        for name, witness in structural_conditions(spec, tag, fam.chi, policy):
            raise SideConditionViolated(name, witness)
        c = _chi_vec(fam.chi)
        cs = star(c, spec.sigma)
        g = family_g(spec, tag, fam.chi)
        if tag in ("KW2", "SYM2"):
            need(abs(k["lambda2"]) > eps, "lambda2 != 0")
            f = k["lambda2"] * c
        elif tag == "V2":
            need(abs(k["lambda"]) > eps, "lambda != 0")
            f = k["lambda"] * c
        elif tag in ("KW3", "W2", "VV2"):
            a, b = (k[p] for p in PARAMS[tag])
            need(abs(a) > eps or abs(b) > eps, f"({', '.join(PARAMS[tag])}) != (0, 0)")
            f = a * c + b * cs
        elif tag in ("KW4", "W3"):
            phi = as_function(fam.phi, n)
            need(max_abs(phi) > eps, "phi != 0")
            need(sine_residual(S, c, phi) <= eps, "phi solves the sine addition law", sine_residual(S, c, phi))
            need(max_abs(star(phi, spec.sigma) + phi) <= eps, "phi* = -phi")
            if tag == "KW4":
                need(abs(_integral(spec, phi)) <= eps, "int phi dmu = 0", _cjson(_integral(spec, phi)))
                need(abs(k["lambda"]) > eps, "lambda != 0")
                f = k["lambda"] * (k.get("gamma1", 0) * c + phi)
            else:
                f = k.get("gamma1", 0) * c + phi
        else:  # pragma: no cover - guarded by _check_applicable
            raise ValueError(tag)
    res = residual_max(spec, f, g)
    if res > eps:
        raise SelfCheckFailed(res)
    return f, g


def admissible_families(
    spec: EquationSpec,
    characters: Sequence[Character],
    grid: Sequence[complex],
    policy: NumericPolicy = DEFAULT_POLICY,
) -> Iterable[SolutionFamily]:
    """Every family instance whose side conditions hold, over a coefficient grid.

    Coefficients that may vanish range over ``grid`` plus 0; the others over
    ``grid`` alone.  Pairs are never both zero.
    """
    S = spec.semigroup
    grid = list(grid)
    with_zero = [0j] + grid
    pairs = [(a, b) for a in with_zero for b in with_zero if a != 0 or b != 0]
    for tag in FAMILIES_BY_KIND[spec.kind]:
        if tag in TRIVIAL:
            for chi in characters:
                if not chi.is_zero:
                    yield SolutionFamily(tag, g=_chi_vec(chi).copy())
            continue
        if tag == "JEN":
            for gam in with_zero:
                yield SolutionFamily(tag, coeffs={"gamma1": gam})
            continue
        for chi in characters:
            if structural_conditions(spec, tag, chi, policy):
                continue
            if tag in ("KW2", "SYM2"):
                for lam in grid:
                    yield SolutionFamily(tag, chi, {"lambda2": lam})
            elif tag == "V2":
                for lam in grid:
                    yield SolutionFamily(tag, chi, {"lambda": lam})
            elif tag in ("KW3", "W2", "VV2"):
                a_name, b_name = PARAMS[tag]
                for a, b in pairs:
                    yield SolutionFamily(tag, chi, {a_name: a, b_name: b})
            elif tag in ("KW4", "W3"):
                measure = spec.measure if tag == "KW4" else None
                for phi in odd_sine_basis(S, chi, spec.sigma, measure, policy):
                    if tag == "KW4":
                        for lam in grid:
                            for gam in with_zero:
                                yield SolutionFamily(tag, chi, {"lambda": lam, "gamma1": gam}, phi=phi)
                    else:
                        for gam in with_zero:
                            yield SolutionFamily(tag, chi, {"gamma1": gam}, phi=phi)


# -- the family span for a fixed g -------------------------------------------

@dataclass
class FamilySpan:
    tags: set
    generators: list
    dimension: int


def _span_generators(spec, tag, chi, policy) -> list[np.ndarray]:
    S = spec.semigroup
    if tag == "JEN":
        return [np.ones(S.n, dtype=complex)]
    c = _chi_vec(chi)
    cs = star(c, spec.sigma)
    if tag in ("KW2", "V2", "SYM2"):
        return [c]
    if tag in ("KW3", "W2", "VV2"):
        return [c, cs]
    measure = spec.measure if tag == "KW4" else None
    odd = odd_sine_basis(S, chi, spec.sigma, measure, policy)
    return [c] + odd if odd else []


def family_span(
    spec: EquationSpec,
    g,
    characters: Sequence[Character],
    policy: NumericPolicy = DEFAULT_POLICY,
) -> FamilySpan:
    """All ``f`` the family list allows for this ``g``, as a spanning set.

    For ``g != 0`` the theorems say the solution space of the equation in
    ``f`` is exactly this span, so ``dimension`` predicts the nullspace
    dimension of the linearized system.
    """
    S = spec.semigroup
    g = as_function(g, S.n)
    tol = 10 * policy.epsilon
    tags, gens = set(), []
    for tag in FAMILIES_BY_KIND[spec.kind]:
        if tag in TRIVIAL:
            continue
        chis = [None] if tag == "JEN" else characters
        for chi in chis:
            if chi is not None and structural_conditions(spec, tag, chi, policy):
                continue
            if max_abs(family_g(spec, tag, chi) - g) > tol:
                continue
            vecs = _span_generators(spec, tag, chi, policy)
            if vecs:
                tags.add(tag)
                gens.extend(vecs)
    dim = int(np.linalg.matrix_rank(np.array(gens), tol=1e-8)) if gens else 0
    return FamilySpan(tags, gens, dim)


# -- classification ----------------------------------------------------------

def _fit(f, basis):
    B = np.array(basis).T
    coef, *_ = np.linalg.lstsq(B, f, rcond=None)
    return coef, max_abs(f - B @ coef)


def _try_family(spec, tag, chi, f, g, policy):
    """Fit ``f`` against one family member; return a SolutionFamily or None."""
    S = spec.semigroup
    tol = 10 * policy.epsilon
    if chi is not None and structural_conditions(spec, tag, chi, policy):
        return None
    if max_abs(family_g(spec, tag, chi) - g) > tol:
        return None
    if tag == "JEN":
        coef, res = _fit(f, [np.ones(S.n, dtype=complex)])
        return (SolutionFamily(tag, coeffs={"gamma1": complex(coef[0])}), res) if res <= tol else None
    c = _chi_vec(chi)
    cs = star(c, spec.sigma)
    if tag in ("KW2", "SYM2", "V2"):
        coef, res = _fit(f, [c])
        name = "lambda2" if tag != "V2" else "lambda"
        fam = SolutionFamily(tag, chi, {name: complex(coef[0])})
    elif tag in ("KW3", "W2", "VV2"):
        if chi.star(spec.sigma) == chi:
            coef, res = _fit(f, [c])
            coef = [coef[0], 0j]
        else:
            coef, res = _fit(f, [c, cs])
        a_name, b_name = PARAMS[tag]
        fam = SolutionFamily(tag, chi, {a_name: complex(coef[0]), b_name: complex(coef[1])})
    else:  # KW4, W3
        measure = spec.measure if tag == "KW4" else None
        odd = odd_sine_basis(S, chi, spec.sigma, measure, policy)
        if not odd:
            return None
        coef, res = _fit(f, [c] + odd)
        phi = np.array(odd).T @ coef[1:]
        if max_abs(phi) <= tol:
            return None
        if tag == "KW4":
            lam = complex(phi[int(np.argmax(np.abs(phi)))])
            fam = SolutionFamily(tag, chi, {"lambda": lam, "gamma1": complex(coef[0]) / lam}, phi=phi / lam)
        else:
            fam = SolutionFamily(tag, chi, {"gamma1": complex(coef[0])}, phi=phi)
    if res > tol:
        return None
    try:
        build_family(spec, fam, NumericPolicy(tol))
    except SideConditionViolated:
        return None
    return fam, res


def classify(
    spec: EquationSpec,
    f,
    g,
    characters: Sequence[Character],
    policy: NumericPolicy = DEFAULT_POLICY,
):
    """Match a solution pair to the first family in canonical order.

    Returns a ``FamilyMatch`` (whose ``all_tags`` lists every family that
    also fits) or ``Unclassified``.  Raises ``NotASolution`` when the pair
    does not solve the equation.
    """
    S = spec.semigroup
    f = as_function(f, S.n)
    g = as_function(g, S.n)
    eps = policy.epsilon
    res = residual_max(spec, f, g)
    if res > eps:
        raise NotASolution(res)
    if spec.fixed_g is not None and max_abs(g - spec.fixed_g) > eps:
        return Unclassified("jensen fixes g = 1")
    if max_abs(g) <= eps:
        return Unclassified("g = 0 is outside the classified range")
    matches = []
    order = FAMILIES_BY_KIND[spec.kind]
    if max_abs(f) <= eps and order[0] in TRIVIAL:
        matches.append((SolutionFamily(order[0], g=g), 0.0))
    for tag in order:
        if tag in TRIVIAL:
            continue
        for chi in ([None] if tag == "JEN" else characters):
            hit = _try_family(spec, tag, chi, f, g, policy)
            if hit is not None:
                matches.append(hit)
                break
    if not matches:
        return Unclassified("no family fits")
    fam, fit = matches[0]
    params = family_params(fam)
    tags = []
    for m, _ in matches:
        if m.tag not in tags:
            tags.append(m.tag)
    return FamilyMatch(fam.tag, params, fit, tags, fam)


def family_params(fam: SolutionFamily) -> dict:
    out = {}
    if fam.chi is not None:
        out["m" if fam.tag == "KW2" else "chi"] = fam.chi.render()
    for k, v in fam.coeffs.items():
        out[k] = _cjson(v)
    if fam.phi is not None:
        out["phi"] = [_cjson(z) for z in fam.phi]
    return out


# -- reductions ----------------------------------------------------------------

def _sigma_measure(spec: EquationSpec) -> DiracCombination:
    return DiracCombination(tuple((spec.sigma(z), c) for z, c in spec.measure.atoms))


def reduce(spec: EquationSpec, f, g, policy: NumericPolicy = DEFAULT_POLICY) -> ReductionResult:
    """Pass from a measured equation to the unmeasured Wilson equation.

    With ``I = int g dmu != 0`` this returns ``F = h / I`` and
    ``G = (int g(xt) dmu(t) +/- int g(x sigma(t)) dmu(t)) / (2I)`` (minus
    for the Van Vleck sign), where ``h`` is the smear of ``f``; then
    ``F(xy) + F(sigma(y)x) = 2 F(x) G(y)`` for both signs, and
    ``deviation`` records how well that holds.  With ``I = 0`` it returns
    the scalar ``lambda1`` with ``h = lambda1 f``.
    """
    S = spec.semigroup
    if spec.measure is None:
        raise ValueError("reduce needs an equation with a measure")
    f = as_function(f, S.n)
    g = as_function(g, S.n)
    eps = policy.epsilon
    if max_abs(f) <= eps or max_abs(g) <= eps:
        raise ZeroFunction("reduce needs f != 0 and g != 0")
    res = residual_max(spec, f, g)
    if res > eps:
        raise NotASolution(res)
    h = smear(S, spec.measure, f)
    I = integrate(spec.measure, g)
    if abs(I) > eps:
        F = h / I
        G = (smear(S, spec.measure, g) + spec.sign * smear(S, _sigma_measure(spec), g)) / (2 * I)
        wilson = make_spec("wilson", S, spec.sigma)
        return ReductionResult(h, "nondegenerate", F=F, G=G, deviation=residual_max(wilson, F, G))
    lam = complex(np.vdot(f, h) / np.vdot(f, f))
    dev = max_abs(h - lam * f)
    if dev > 10 * eps or abs(lam) <= eps:
        raise LambdaNotFound(dev)
    return ReductionResult(h, "degenerate", lambda1=lam, deviation=dev)


def product_identity_deviation(spec: EquationSpec, f, g) -> float:
    """Max deviation of the two-measure identity for the plus equation.

    ``h(x) [int g(ys) dmu(s) + int g(y sigma(s)) dmu(s)] = 2 f(x) g(y) int g dmu``
    """
    S = spec.semigroup
    h = smear(S, spec.measure, f)
    inner = smear(S, spec.measure, g) + smear(S, _sigma_measure(spec), g)
    I = integrate(spec.measure, g)
    return max_abs(np.outer(h, inner) - 2 * np.outer(f, g) * I)


def skew_system(S: Semigroup, G) -> np.ndarray:
    """Rows of ``F(xy) - F(x)G(y) + F(y)G(x) = 0`` in the unknown ``F``."""
    G = as_function(G, S.n)
    n = S.n
    M = np.zeros((n * n, n), dtype=complex)
    xs, ys = np.divmod(np.arange(n * n), n)
    rows = np.arange(n * n)
    np.add.at(M, (rows, S.table[xs, ys]), 1)
    np.add.at(M, (rows, xs), -G[ys])
    np.add.at(M, (rows, ys), G[xs])
    return M


def check_linear_dependence(S: Semigroup, F, G, policy: NumericPolicy = DEFAULT_POLICY, minor_tol: Optional[float] = None):
    """If ``F(xy) = F(x)G(y) - F(y)G(x)`` holds, check that F and G are dependent.

    Returns ``None`` when every 2x2 minor ``F(x)G(y) - F(y)G(x)`` is within
    ``minor_tol`` (default ``policy.epsilon``), else a counterexample dict.
    Raises ``HypothesisFails`` when the displayed equation itself fails.
    """
    F = as_function(F, S.n)
    G = as_function(G, S.n)
    minors = np.outer(F, G) - np.outer(G, F)
    dev = np.abs(F[S.table] - minors)
    if dev.max() > policy.epsilon:
        x, y = np.unravel_index(int(np.argmax(dev)), dev.shape)
        raise HypothesisFails(int(x), int(y), float(dev[x, y]))
    tol = policy.epsilon if minor_tol is None else minor_tol
    am = np.abs(minors)
    if am.max() <= tol:
        return None
    x, y = np.unravel_index(int(np.argmax(am)), am.shape)
    return {"x": int(x), "y": int(y), "minor": float(am[x, y])}


# -- JSON family specs ---------------------------------------------------------

def _coef(obj, name, default=None):
    if name not in obj:
        if default is None:
            raise ValueError(f"family spec needs {name!r}")
        return default
    v = obj[name]
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    return complex(v)


def family_from_obj(obj: dict, spec: EquationSpec, characters: Sequence[Character], policy: NumericPolicy = DEFAULT_POLICY) -> SolutionFamily:
    """Build a ``SolutionFamily`` from its JSON form.

    Characters are referenced by index into ``characters``; ``phi`` is an
    index into the admissible odd sine-addition basis or a list of values.
    """
    from .functions import parse_function

    tag = obj.get("family")
    _check_applicable(spec, tag)
    if tag in TRIVIAL:
        g = obj["g"]
        g = parse_function(g, spec.semigroup.n) if isinstance(g, str) else as_function([complex(v) for v in g])
        return SolutionFamily(tag, g=g)
    if tag == "JEN":
        A = obj.get("A")
        if isinstance(A, str):
            A = parse_function(A, spec.semigroup.n)
        return SolutionFamily(tag, coeffs={"gamma1": _coef(obj, "gamma1", 0j)}, A=A)
    key = "m" if tag == "KW2" else "chi"
    chi = characters[int(obj[key])]
    names = PARAMS[tag]
    defaults = {"gamma1": 0j, "beta1": 0j, "beta": 0j, "alpha2": 0j}
    coeffs = {p: _coef(obj, p, defaults.get(p, 1 + 0j)) for p in names}
    fam = SolutionFamily(tag, chi, coeffs)
    if tag in ("KW4", "W3"):
        measure = spec.measure if tag == "KW4" else None
        phi = obj.get("phi", 0)
        if isinstance(phi, int):
            odd = odd_sine_basis(spec.semigroup, chi, spec.sigma, measure, policy)
            if phi >= len(odd):
                raise SideConditionViolated("phi != 0", "no admissible sine addition solution")
            fam.phi = odd[phi]
        elif isinstance(phi, str):
            fam.phi = parse_function(phi, spec.semigroup.n)
        else:
            fam.phi = as_function([complex(v) for v in phi], spec.semigroup.n)
    return fam


def first_admissible(spec: EquationSpec, tag: str, characters: Sequence[Character], policy: NumericPolicy = DEFAULT_POLICY) -> Optional[int]:
    """Index of the first character meeting the family's structural conditions."""
    for i, chi in enumerate(characters):
        if structural_conditions(spec, tag, chi, policy):
            continue
        if tag in ("KW4", "W3"):
            measure = spec.measure if tag == "KW4" else None
            if not odd_sine_basis(spec.semigroup, chi, spec.sigma, measure, policy):
                continue
        return i
    return None

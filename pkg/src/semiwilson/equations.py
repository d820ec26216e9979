"""The Wilson-type equations handled by the package, in one uniform shape.

Every equation reads

    sum_i c_i f(x y z_i)  +/-  sum_i c_i f(sigma(y) x z_i)  =  2 f(x) g(y)

where the measure ``sum_i c_i delta_{z_i}`` may be absent (then the two
terms are ``f(xy)`` and ``f(sigma(y) x)``).  For a fixed ``g`` the equation
is linear and homogeneous in ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .functions import DEFAULT_POLICY, NumericPolicy, as_function, max_abs
from .linalg import nullspace as _nullspace
from .measures import DiracCombination, delta, validate_measure
from .morphisms import Automorphism, identity, validate_involutive_automorphism
from .semigroup import Semigroup

# kind -> (sign, weighting): weighting is "measure", "z0" or None
KINDS = {
    "kw": (+1, "measure"),
    "vvw": (-1, "measure"),
    "wilson": (+1, None),
    "van1": (-1, None),
    "kannappan": (+1, "z0"),
    "vanvleck": (-1, "z0"),
    "jensen": (+1, "z0"),
    "symmetrized": (+1, "z0"),
}


@dataclass(frozen=True)
class EquationSpec:
    kind: str
    sign: int
    measure: Optional[DiracCombination]
    sigma: Automorphism
    semigroup: Semigroup

    @property
    def z0(self) -> Optional[int]:
        if KINDS[self.kind][1] == "z0":
            return self.measure.atoms[0][0]
        return None

    @property
    def fixed_g(self) -> Optional[np.ndarray]:
        """Jensen's equation fixes ``g`` to the constant 1."""
        if self.kind == "jensen":
            return np.ones(self.semigroup.n, dtype=complex)
        return None

    def label(self) -> str:
        S = self.semigroup
        parts = [self.kind, f"sigma={self.sigma.spec()}"]
        if self.z0 is not None:
            parts.append(f"z0={S.name(self.z0)}")
        elif self.measure is not None:
            parts.append(f"mu={self.measure.label(S)}")
        return " ".join(parts)

    def witness(self) -> dict:
        from .measures import measure_to_obj

        out = {"kind": self.kind, "sigma": self.sigma.spec()}
        if self.measure is not None:
            out["measure"] = measure_to_obj(self.measure)
        return out


def make_spec(
    kind: str,
    S: Semigroup,
    sigma: Optional[Automorphism] = None,
    measure: Optional[DiracCombination] = None,
    z0: Optional[int] = None,
) -> EquationSpec:
    """Build and validate an ``EquationSpec`` for one of ``KINDS``."""
    if kind not in KINDS:
        raise ValueError(f"unknown equation {kind!r}; choose from {', '.join(KINDS)}")
    sign, weighting = KINDS[kind]
    sigma = identity(S) if sigma is None else validate_involutive_automorphism(S, sigma.perm)
    if kind == "symmetrized" and not sigma.is_identity():
        raise ValueError("the symmetrized equation uses sigma = id")
    if weighting == "measure":
        if measure is None or z0 is not None:
            raise ValueError(f"{kind} requires a measure")
        validate_measure(S, measure)
    elif weighting == "z0":
        if z0 is None or measure is not None:
            raise ValueError(f"{kind} requires z0")
        measure = validate_measure(S, delta(z0))
    else:
        if measure is not None or z0 is not None:
            raise ValueError(f"{kind} takes neither a measure nor z0")
    return EquationSpec(kind, sign, measure, sigma, S)


def _lhs_terms(spec: EquationSpec, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Matrices ``[x, y]`` of the two measured terms."""
    S = spec.semigroup
    t = S.table
    xy = t
    syx = t[spec.sigma.array][:, :].T  # [x, y] -> sigma(y) x
    if spec.measure is None:
        return f[xy], f[syx]
    z, c = spec.measure.points, spec.measure.weights
    return f[t[xy][..., z]] @ c, f[t[syx][..., z]] @ c


def residual(spec: EquationSpec, f, g, x: int, y: int) -> complex:
    """LHS(x, y) - 2 f(x) g(y), evaluated pointwise."""
    S = spec.semigroup
    f = as_function(f, S.n)
    g = as_function(g, S.n)
    xy = S.mul(x, y)
    syx = S.mul(spec.sigma(y), x)
    if spec.measure is None:
        lhs = f[xy] + spec.sign * f[syx]
    else:
        lhs = sum(c * (f[S.mul(xy, z)] + spec.sign * f[S.mul(syx, z)]) for z, c in spec.measure.atoms)
    return complex(lhs - 2 * f[x] * g[y])


def residual_matrix(spec: EquationSpec, f, g) -> np.ndarray:
    n = spec.semigroup.n
    f = as_function(f, n)
    g = as_function(g, n)
    a, b = _lhs_terms(spec, f)
    return a + spec.sign * b - 2 * np.outer(f, g)


def residual_max(spec: EquationSpec, f, g) -> float:
    return max_abs(residual_matrix(spec, f, g))


@dataclass(frozen=True)
class LinearSystem:
    """Coefficient rows of the equation in ``f``; row ``x*n + y`` is the pair (x, y)."""

    matrix: np.ndarray
    n: int

    def key(self, row: int) -> tuple[int, int]:
        return divmod(row, self.n)


def assemble_linear_system(spec: EquationSpec, g) -> LinearSystem:
    S = spec.semigroup
    n = S.n
    g = as_function(g, n)
    t = S.table
    M = np.zeros((n * n, n), dtype=complex)
    xs, ys = np.divmod(np.arange(n * n), n)
    rows = np.arange(n * n)
    xy = t[xs, ys]
    syx = t[spec.sigma.array[ys], xs]
    if spec.measure is None:
        np.add.at(M, (rows, xy), 1)
        np.add.at(M, (rows, syx), spec.sign)
    else:
        for z, c in spec.measure.atoms:
            np.add.at(M, (rows, t[xy, z]), c)
            np.add.at(M, (rows, t[syx, z]), spec.sign * c)
    np.add.at(M, (rows, xs), -2 * g[ys])
    return LinearSystem(M, n)


def nullspace(system: LinearSystem, policy: NumericPolicy = DEFAULT_POLICY) -> list[np.ndarray]:
    return _nullspace(system.matrix, policy.epsilon)


def solve_for_f(spec: EquationSpec, g, policy: NumericPolicy = DEFAULT_POLICY) -> list[np.ndarray]:
    """Basis of all ``f`` solving the equation for the given ``g``."""
    return nullspace(assemble_linear_system(spec, g), policy)

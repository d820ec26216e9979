"""Multiplicative functions on a finite semigroup, computed exactly.

On a finite semigroup every nonzero value ``chi(s)`` is a root of unity of
order dividing the period of ``s``, so a character is a tuple of values
each either zero or an angle ``k/m`` (the value ``exp(2 pi i k/m)``).
Products add angles modulo 1, which keeps the search exact.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from .functions import NumericPolicy, DEFAULT_POLICY
from .linalg import nullspace
from .morphisms import Automorphism
from .semigroup import Semigroup, power_profile

# None stands for the value 0; otherwise a Fraction in [0, 1).
RootOfUnityValue = Optional[Fraction]


def root_mul(a: RootOfUnityValue, b: RootOfUnityValue) -> RootOfUnityValue:
    if a is None or b is None:
        return None
    return (a + b) % 1


def root_value(a: RootOfUnityValue) -> complex:
    if a is None:
        return 0j
    # exact values at the quarter turns keep 1, i, -1, -i free of rounding noise
    quarter = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if a in quarter:
        return quarter[a]
    return cmath.exp(2j * cmath.pi * float(a))


def root_str(a: RootOfUnityValue) -> str:
    if a is None:
        return "0"
    if a == 0:
        return "1"
    if a.numerator == 1:
        return f"ζ{a.denominator}"
    return f"ζ{a.denominator}^{a.numerator}"


def _sort_key(values):
    return tuple((0, Fraction(0)) if v is None else (1, v) for v in values)


@dataclass(frozen=True)
class Character:
    """A multiplicative function stored exactly as root-of-unity angles."""

    values: tuple[RootOfUnityValue, ...]

    @cached_property
    def vector(self) -> np.ndarray:
        v = np.array([root_value(a) for a in self.values], dtype=complex)
        v.setflags(write=False)
        return v

    @property
    def is_zero(self) -> bool:
        return all(a is None for a in self.values)

    def star(self, sigma: Automorphism) -> "Character":
        return Character(tuple(self.values[sigma.perm[x]] for x in range(len(self.values))))

    def is_multiplicative_exact(self, S: Semigroup) -> bool:
        t = S.table
        return all(
            self.values[t[x, y]] == root_mul(self.values[x], self.values[y])
            for x in range(S.n)
            for y in range(S.n)
        )

    def render(self) -> str:
        return "(" + ", ".join(root_str(a) for a in self.values) + ")"


def candidate_values(S: Semigroup, x: int) -> list[RootOfUnityValue]:
    p = power_profile(S, x).period
    return [None] + [Fraction(k, p) for k in range(p)]


def enumerate_multiplicative(S: Semigroup) -> list[Character]:
    """All multiplicative ``S -> C`` (the zero function included), sorted.

    Backtracking over the per-element candidate sets; after every choice the
    products of assigned pairs are propagated, which both forces values and
    detects conflicts early.
    """
    n = S.n
    t = S.table.tolist()
    cands = [candidate_values(S, x) for x in range(n)]
    cand_sets = [set(c) for c in cands]
    unset = object()
    results = []

    def propagate(assign) -> bool:
        changed = True
        while changed:
            changed = False
            assigned = [x for x in range(n) if assign[x] is not unset]
            for x in assigned:
                ax = assign[x]
                row = t[x]
                for y in assigned:
                    z = row[y]
                    v = root_mul(ax, assign[y])
                    az = assign[z]
                    if az is unset:
                        if v not in cand_sets[z]:
                            return False
                        assign[z] = v
                        changed = True
                    elif az != v:
                        return False
        return True

    def rec(assign):
        try:
            k = next(x for x in range(n) if assign[x] is unset)
        except StopIteration:
            results.append(Character(tuple(assign)))
            return
        for v in cands[k]:
            trial = list(assign)
            trial[k] = v
            if propagate(trial):
                rec(trial)

    rec([unset] * n)
    results.sort(key=lambda c: _sort_key(c.values))
    return results


def sine_addition_system(S: Semigroup, chi) -> np.ndarray:
    """Rows ``e_{xy} - chi(y) e_x - chi(x) e_y`` for all (x, y), x-major."""
    chi = np.asarray(chi.vector if isinstance(chi, Character) else chi, dtype=complex)
    n = S.n
    M = np.zeros((n * n, n), dtype=complex)
    xs, ys = np.divmod(np.arange(n * n), n)
    rows = np.arange(n * n)
    np.add.at(M, (rows, S.table[xs, ys]), 1)
    np.add.at(M, (rows, xs), -chi[ys])
    np.add.at(M, (rows, ys), -chi[xs])
    return M


def sine_addition_basis(S: Semigroup, chi, policy: NumericPolicy = DEFAULT_POLICY) -> list[np.ndarray]:
    """Basis of the solutions of ``phi(xy) = phi(x)chi(y) + phi(y)chi(x)``."""
    return nullspace(sine_addition_system(S, chi), policy.epsilon)


def additive_basis(S: Semigroup, policy: NumericPolicy = DEFAULT_POLICY) -> list[np.ndarray]:
    """Basis of the solutions of ``A(xy) = A(x) + A(y)``."""
    return sine_addition_basis(S, np.ones(S.n, dtype=complex), policy)

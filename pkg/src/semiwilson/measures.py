"""Finite combinations of point masses at central elements."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateAtom, EmptyMeasure, FormatError, NonCentralAtom
from .semigroup import Semigroup, compute_center


@dataclass(frozen=True)
class DiracCombination:
    """``sum_i c_i * delta_{z_i}``; weights are unrestricted complex numbers."""

    atoms: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple((int(z), complex(c)) for z, c in self.atoms))

    @property
    def points(self) -> np.ndarray:
        return np.array([z for z, _ in self.atoms], dtype=np.int64)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c for _, c in self.atoms], dtype=complex)

    @property
    def is_unit_delta(self) -> bool:
        return len(self.atoms) == 1 and self.atoms[0][1] == 1

    def label(self, S: Semigroup | None = None) -> str:
        parts = []
        for z, c in self.atoms:
            name = S.name(z) if S is not None else str(z)
            parts.append(f"d{name}" if c == 1 else f"({c.real:g}{c.imag:+g}i)d{name}")
        return "+".join(parts)


def delta(z: int, c: complex = 1.0) -> DiracCombination:
    return DiracCombination(((z, c),))


def validate_measure(S: Semigroup, mu: DiracCombination) -> DiracCombination:
    if not mu.atoms:
        raise EmptyMeasure("a measure needs at least one atom")
    center = set(compute_center(S))
    seen = set()
    for z, _ in mu.atoms:
        if not 0 <= z < S.n:
            raise ValueError(f"atom {z} out of range")
        if z in seen:
            raise DuplicateAtom(z)
        seen.add(z)
        if z not in center:
            raise NonCentralAtom(z)
    return mu


def integrate(mu: DiracCombination, f) -> complex:
    f = np.asarray(f, dtype=complex)
    return complex(np.sum(mu.weights * f[mu.points]))


def smear(S: Semigroup, mu: DiracCombination, f) -> np.ndarray:
    """``h(x) = sum_i c_i f(x z_i)``."""
    f = np.asarray(f, dtype=complex)
    return f[S.table[:, mu.points]] @ mu.weights


def merged(atoms) -> DiracCombination:
    """Combine repeated atoms by summing their weights, keeping first-seen order."""
    acc: dict[int, complex] = {}
    for z, c in atoms:
        acc[int(z)] = acc.get(int(z), 0j) + complex(c)
    return DiracCombination(tuple(acc.items()))


def measure_from_obj(obj, S: Semigroup) -> DiracCombination:
    if not isinstance(obj, dict) or not isinstance(obj.get("atoms"), list):
        raise FormatError('measure must be an object with an "atoms" list', 1, 1)
    atoms = []
    for k, a in enumerate(obj["atoms"]):
        if not isinstance(a, dict) or "z" not in a:
            raise FormatError(f'atom {k} needs a "z" field', 1, 1)
        try:
            z = S.element(a["z"])
            c = complex(float(a.get("re", 0.0)), float(a.get("im", 0.0)))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"atom {k}: {exc}", 1, 1) from None
        atoms.append((z, c))
    mu = merged(atoms)
    return validate_measure(S, mu)


def parse_measure(text: str, S: Semigroup) -> DiracCombination:
    """Parse the measure JSON document; duplicate atoms are merged."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    return measure_from_obj(obj, S)


def measure_to_obj(mu: DiracCombination) -> dict:
    return {"atoms": [{"z": z, "re": c.real, "im": c.imag} for z, c in mu.atoms]}


def render_measure(mu: DiracCombination) -> str:
    return json.dumps(measure_to_obj(mu), indent=2) + "\n"

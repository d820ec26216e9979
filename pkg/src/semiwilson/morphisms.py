"""Automorphisms of finite semigroups, with the involutive ones singled out."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FormatError, NotBijective, NotInvolutive, NotMultiplicative
from .semigroup import Semigroup


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]
    involutive: bool

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.perm, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))

    def spec(self) -> str:
        """The CLI/config form: ``id`` or a comma-separated image list."""
        return "id" if self.is_identity() else ",".join(map(str, self.perm))


def apply(sigma: Automorphism, x: int) -> int:
    return sigma.perm[x]


def identity(S: Semigroup) -> Automorphism:
    return Automorphism(tuple(range(S.n)), True)


def _is_involution(perm) -> bool:
    return all(perm[perm[x]] == x for x in range(len(perm)))


def enumerate_automorphisms(S: Semigroup) -> list[Automorphism]:
    """All product-preserving permutations, in lexicographic order of ``perm``.

    Backtracking assigns images in element order and abandons a branch as
    soon as an assigned pair violates ``p(xy) = p(x)p(y)``.
    """
    n = S.n
    t = S.table.tolist()
    out = []
    perm = [-1] * n
    used = [False] * n

    def consistent(k: int) -> bool:
        # pairs that became fully assigned when k was assigned
        for a in range(k + 1):
            for b in range(k + 1):
                ab = t[a][b]
                if ab > k or k not in (a, b, ab):
                    continue
                if perm[ab] != t[perm[a]][perm[b]]:
                    return False
        return True

    def rec(k: int):
        if k == n:
            out.append(Automorphism(tuple(perm), _is_involution(perm)))
            return
        for v in range(n):
            if used[v]:
                continue
            perm[k] = v
            used[v] = True
            if consistent(k):
                rec(k + 1)
            used[v] = False
        perm[k] = -1

    rec(0)
    return out


def involutive_automorphisms(S: Semigroup) -> list[Automorphism]:
    return [a for a in enumerate_automorphisms(S) if a.involutive]


def validate_involutive_automorphism(S: Semigroup, perm) -> Automorphism:
    """Check that ``perm`` is a bijective, multiplicative, self-inverse map.

    Returns the validated ``Automorphism``; raises ``NotBijective``,
    ``NotMultiplicative`` or ``NotInvolutive`` for the first failure.
    """
    perm = tuple(int(p) for p in perm)
    n = S.n
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotBijective(f"{list(perm)} is not a permutation of 0..{n - 1}")
    t = S.table
    for x in range(n):
        for y in range(n):
            if perm[t[x, y]] != t[perm[x], perm[y]]:
                raise NotMultiplicative(x, y)
    for x in range(n):
        if perm[perm[x]] != x:
            raise NotInvolutive(x)
    return Automorphism(perm, True)


def parse_sigma(text: str, S: Semigroup) -> Automorphism:
    """Parse ``id`` or an image list such as ``0,3,2,1`` and validate it."""
    text = text.strip()
    if text == "id":
        return identity(S)
    parts = [p.strip() for p in text.split(",")]
    try:
        perm = [S.element(p) for p in parts]
    except ValueError as exc:
        raise FormatError(f"bad sigma {text!r}: {exc}", 1, 1) from None
    return validate_involutive_automorphism(S, perm)


def compose(a: Automorphism, b: Automorphism) -> tuple[int, ...]:
    """Permutation ``a o b`` (apply b first)."""
    return tuple(a.perm[b.perm[x]] for x in range(len(a.perm)))

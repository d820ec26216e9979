"""Finite semigroups given by Cayley tables.

Elements are the dense indices ``0 .. n-1``; ``table[x][y]`` is the product
``xy``.  Names are kept only for presentation and I/O.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FormatError, NotAssociative, OutOfRangeEntry, UnsupportedOrder


def validate_associativity(table) -> Optional[tuple[int, int, int]]:
    """Return ``None`` if ``table`` is associative, else the smallest failing triple.

    Raises ``OutOfRangeEntry`` if some entry is not an element index.
    """
    t = [list(map(int, row)) for row in table]
    n = len(t)
    for x, row in enumerate(t):
        if len(row) != n:
            raise OutOfRangeEntry(x, len(row), None)
        for y, v in enumerate(row):
            if not 0 <= v < n:
                raise OutOfRangeEntry(x, y, v)
    for x in range(n):
        tx = t[x]
        for y in range(n):
            txy = t[tx[y]]
            ty = t[y]
            for z in range(n):
                if txy[z] != tx[ty[z]]:
                    return (x, y, z)
    return None


class Semigroup:
    """An immutable finite semigroup.

    The constructor checks ranges and associativity; pass ``check=False``
    only for tables already known to be valid.
    """

    def __init__(self, table, names: Optional[Sequence[str]] = None, check: bool = True):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError("a Cayley table must be a nonempty square array")
        if check:
            bad = validate_associativity(arr)
            if bad is not None:
                raise NotAssociative(bad)
        arr.setflags(write=False)
        self.table = arr
        self.n = arr.shape[0]
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != self.n or len(set(names)) != self.n:
                raise ValueError("names must be n distinct strings")
        self.names = names

    @property
    def order(self) -> int:
        return self.n

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def product(self, *xs: int) -> int:
        """Left-to-right product of one or more elements."""
        acc = xs[0]
        for x in xs[1:]:
            acc = int(self.table[acc, x])
        return acc

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def element(self, token) -> int:
        """Resolve an element given by name or by index.

        Names take precedence, so in a semigroup named ``0,a,1`` the token
        ``"1"`` is the element called ``1`` (index 2).
        """
        if isinstance(token, (int, np.integer)):
            idx = int(token)
        else:
            token = str(token).strip()
            if self.names is not None and token in self.names:
                return self.names.index(token)
            try:
                idx = int(token)
            except ValueError:
                raise ValueError(f"unknown element {token!r}") from None
        if not 0 <= idx < self.n:
            raise ValueError(f"element index {idx} out of range for order {self.n}")
        return idx

    @property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def flat(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.table.ravel())

    def __eq__(self, other):
        return (
            isinstance(other, Semigroup)
            and self.n == other.n
            and np.array_equal(self.table, other.table)
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.flat(), self.names))

    def __repr__(self):
        return f"Semigroup(order={self.n}, table={self.table.tolist()})"


@dataclass(frozen=True)
class PowerProfile:
    element: int
    index: int
    period: int


def compute_center(S: Semigroup) -> list[int]:
    """Elements commuting with every element of ``S`` (possibly none)."""
    t = S.table
    return [s for s in range(S.n) if np.array_equal(t[:, s], t[s, :])]


def idempotents(S: Semigroup) -> list[int]:
    return [x for x in range(S.n) if S.table[x, x] == x]


def power_profile(S: Semigroup, x: int) -> PowerProfile:
    """Minimal index ``i`` and period ``p`` with ``x^i = x^(i+p)``."""
    seen = {}
    power, k = x, 1
    while power not in seen:
        seen[power] = k
        power = int(S.table[power, x])
        k += 1
    i = seen[power]
    return PowerProfile(x, i, k - i)


def find_neutral(S: Semigroup) -> Optional[int]:
    ident = np.arange(S.n)
    for e in range(S.n):
        if np.array_equal(S.table[e, :], ident) and np.array_equal(S.table[:, e], ident):
            return e
    return None


def relabel(table, perm) -> np.ndarray:
    """Table of the isomorphic copy obtained by renaming x -> perm[x]."""
    t = np.asarray(table)
    p = np.asarray(perm)
    out = np.empty_like(t)
    out[np.ix_(p, p)] = p[t]
    return out


def canonical_form(table) -> tuple[int, ...]:
    """Lexicographically least flattened table over all relabelings."""
    t = np.asarray(table)
    return min(tuple(relabel(t, p).ravel().tolist()) for p in itertools.permutations(range(len(t))))


def generate_semigroups(order: int, dedup: bool = False) -> list[Semigroup]:
    """All associative tables of the given order, in lexicographic order.

    With ``dedup`` one representative (the lexicographically least) is kept
    per isomorphism class.
    """
    if order not in (1, 2, 3):
        raise UnsupportedOrder(f"exhaustive generation supports orders 1..3, not {order}")
    n = order
    out = []
    seen = set()
    for flat in itertools.product(range(n), repeat=n * n):
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        if validate_associativity(rows) is not None:
            continue
        if dedup:
            key = canonical_form(rows)
            if key in seen:
                continue
            seen.add(key)
        out.append(Semigroup(rows, check=False))
    return out


# Standard constructions used by the corpus and the tests.

def cyclic_group(n: int) -> Semigroup:
    return Semigroup([[(x + y) % n for y in range(n)] for x in range(n)], names=[str(i) for i in range(n)])


def left_zero(n: int) -> Semigroup:
    return Semigroup([[x] * n for x in range(n)], names=[f"l{i}" for i in range(n)])


def null_semigroup(n: int) -> Semigroup:
    """Every product equals the element 0."""
    return Semigroup([[0] * n for _ in range(n)], names=["0"] + [f"a{i}" for i in range(1, n)])


def n3() -> Semigroup:
    """The monoid {0, a, 1} with a^2 = 0."""
    return Semigroup([[0, 0, 0], [0, 0, 1], [0, 1, 2]], names=["0", "a", "1"])


def adjoin_identity(S: Semigroup, name: str = "e") -> Semigroup:
    n = S.n
    t = [list(map(int, row)) + [x] for x, row in enumerate(S.table)]
    t.append(list(range(n + 1)))
    names = None if S.names is None else list(S.names) + [name]
    return Semigroup(t, names=names)


def direct_product(S: Semigroup, T: Semigroup) -> Semigroup:
    """Product semigroup with element (s, t) at index ``s * |T| + t``."""
    m = T.n
    pairs = [(s, t) for s in range(S.n) for t in range(m)]
    table = [[S.mul(a, c) * m + T.mul(b, d) for (c, d) in pairs] for (a, b) in pairs]
    names = None
    if S.names is not None and T.names is not None:
        names = [S.names[a] + T.names[b] for a, b in pairs]
    return Semigroup(table, names=names)


def symmetric_group3() -> Semigroup:
    """S3 acting on {0,1,2}; the product ``pq`` applies q first, then p."""
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    names = ["e", "r", "r2", "s01", "s12", "s02"]
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(p[q[k]] for k in range(3))] for q in perms] for p in perms]
    return Semigroup(table, names=names)


# ``.cayley`` text format.

def render_cayley(S: Semigroup) -> str:
    lines = [str(S.n)]
    lines += [" ".join(str(int(v)) for v in row) for row in S.table]
    if S.names is not None:
        lines.append("names: " + ",".join(S.names))
    return "\n".join(lines) + "\n"


def parse_cayley(text: str) -> Semigroup:
    """Parse the ``.cayley`` format; errors carry 1-based line and column."""
    content: list[tuple[int, str]] = []
    names = None
    names_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("names:"):
            if names is not None:
                raise FormatError("duplicate names line", lineno, 1)
            names = [s.strip() for s in stripped[len("names:"):].split(",")]
            names_line = lineno
            continue
        if names is not None:
            raise FormatError("table rows must precede the names line", lineno, 1)
        content.append((lineno, raw))
    if not content:
        raise FormatError("missing order line", 1, 1)
    lineno, raw = content[0]
    try:
        n = int(raw.strip())
    except ValueError:
        raise FormatError(f"expected the order as an integer, got {raw.strip()!r}", lineno, _col(raw, raw.strip())) from None
    if n <= 0:
        raise FormatError("order must be positive", lineno, _col(raw, raw.strip()))
    rows = content[1:]
    if len(rows) != n:
        where = rows[-1][0] + 1 if len(rows) > n else (rows[-1][0] if rows else lineno)
        raise FormatError(f"expected {n} table rows, found {len(rows)}", where, 1)
    table = []
    for lineno, raw in rows:
        row = []
        for col, tok in _tokens(raw):
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(f"not an integer: {tok!r}", lineno, col) from None
            if not 0 <= v < n:
                raise FormatError(f"entry {v} out of range [0, {n})", lineno, col)
            row.append(v)
        if len(row) != n:
            raise FormatError(f"expected {n} entries, found {len(row)}", lineno, len(raw) + 1)
        table.append(row)
    bad = validate_associativity(table)
    if bad is not None:
        x, y, z = bad
        raise FormatError(f"table is not associative at (x,y,z) = ({x},{y},{z})", rows[x][0], 1)
    if names is not None:
        if len(names) != n or len(set(names)) != n or any(not s for s in names):
            raise FormatError(f"names line must list {n} distinct nonempty names", names_line, 1)
    return Semigroup(table, names=names, check=False)


def _tokens(line: str) -> Iterable[tuple[int, str]]:
    col = 0
    for tok in line.split():
        col = line.index(tok, col)
        yield col + 1, tok
        col += len(tok)


def _col(line: str, tok: str) -> int:
    return line.index(tok) + 1 if tok else 1

"""Complex-valued functions on a finite semigroup.

A function is a length-``n`` complex numpy vector indexed by element.
Zero tests use the max-abs norm against ``NumericPolicy.epsilon``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import FormatError
from .morphisms import Automorphism
from .semigroup import Semigroup

DEFAULT_EPSILON = 1e-9


@dataclass(frozen=True)
class NumericPolicy:
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")

    def is_zero(self, v) -> bool:
        return max_abs(v) <= self.epsilon

    def close(self, a, b) -> bool:
        return max_abs(np.asarray(a) - np.asarray(b)) <= self.epsilon


DEFAULT_POLICY = NumericPolicy()


def as_function(values, n: int | None = None) -> np.ndarray:
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1 or (n is not None and v.shape[0] != n):
        raise ValueError(f"expected a function with {n} values, got shape {v.shape}")
    return v


def max_abs(v) -> float:
    v = np.asarray(v)
    return float(np.max(np.abs(v))) if v.size else 0.0


def constant(S: Semigroup, c: complex = 1.0) -> np.ndarray:
    return np.full(S.n, c, dtype=complex)


def indicator(S: Semigroup, x: int) -> np.ndarray:
    v = np.zeros(S.n, dtype=complex)
    v[x] = 1
    return v


def star(f, sigma: Automorphism) -> np.ndarray:
    """``f o sigma``."""
    return np.asarray(f, dtype=complex)[sigma.array]


def even_odd_parts(f, sigma: Automorphism) -> tuple[np.ndarray, np.ndarray]:
    f = np.asarray(f, dtype=complex)
    fs = star(f, sigma)
    return (f + fs) / 2, (f - fs) / 2


def is_multiplicative(S: Semigroup, f, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    f = as_function(f, S.n)
    return max_abs(f[S.table] - np.outer(f, f)) <= policy.epsilon


def is_additive(S: Semigroup, f, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    f = as_function(f, S.n)
    return max_abs(f[S.table] - (f[:, None] + f[None, :])) <= policy.epsilon


def is_central(S: Semigroup, f, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    f = as_function(f, S.n)
    return max_abs(f[S.table] - f[S.table.T]) <= policy.epsilon


def is_abelian(S: Semigroup, f, policy: NumericPolicy = DEFAULT_POLICY) -> bool:
    """Central, and ``f(xyz) = f(xzy)`` for all triples."""
    if not is_central(S, f, policy):
        return False
    f = as_function(f, S.n)
    t = S.table
    xyz = t[t[:, :, None], np.arange(S.n)[None, None, :]]  # (xy)z
    xzy = xyz.transpose(0, 2, 1)
    return max_abs(f[xyz] - f[xzy]) <= policy.epsilon


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX = re.compile(
    rf"^(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_im>{_NUM}|[+-])?i|(?P<only_re>{_NUM}))$"
)


def parse_complex(token: str) -> complex:
    """Parse ``1``, ``-0.5+0.866i``, ``2i``, ``-i`` and similar."""
    tok = token.strip().replace(" ", "")
    m = _COMPLEX.match(tok)
    if not m or tok == "":
        raise ValueError(f"not a complex number: {token!r}")
    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("re") is not None:
        im = m.group("im")
        im = im + "1" if im in ("+", "-") else im
        return complex(float(m.group("re")), float(im))
    im = m.group("only_im")
    if im in (None, "", "+"):
        return 1j
    if im == "-":
        return -1j
    return complex(0.0, float(im))


def parse_function(text: str, n: int | None = None) -> np.ndarray:
    """Parse a comma-separated function literal such as ``1, -0.5+0.866i, 0``."""
    values = []
    col = 1
    for part in text.split(","):
        try:
            values.append(parse_complex(part))
        except ValueError:
            lead = len(part) - len(part.lstrip())
            raise FormatError(f"bad complex value {part.strip()!r}", 1, col + lead) from None
        col += len(part) + 1
    if n is not None and len(values) != n:
        raise FormatError(f"expected {n} values, found {len(values)}", 1, 1)
    return np.array(values, dtype=complex)


def format_complex(z: complex, digits: int = 12) -> str:
    re_, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
    if im == 0:
        return f"{re_:g}"
    if re_ == 0:
        return f"{im:g}i"
    return f"{re_:g}{im:+g}i"


def format_function(f) -> str:
    return ", ".join(format_complex(complex(z)) for z in np.asarray(f))

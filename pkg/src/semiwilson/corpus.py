"""Bundled and user-supplied corpora of semigroups with their sigmas and measures.

Each entry is a ``.cayley`` file plus an optional JSON sidecar of the same
stem::

    {"id": "Z4", "sigmas": ["id", "0,3,2,1"],
     "measures": [{"atoms": [{"z": 1, "re": 1.0, "im": 0.0}]}]}

Without a sidecar an entry gets every involutive automorphism and the unit
point mass at every central element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .errors import CorpusEmpty, FormatError
from .measures import DiracCombination, delta, measure_from_obj, validate_measure
from .morphisms import Automorphism, involutive_automorphisms, parse_sigma
from .semigroup import Semigroup, compute_center, find_neutral, parse_cayley


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    semigroup: Semigroup
    sigmas: tuple[Automorphism, ...]
    measures: tuple[DiracCombination, ...]
    provenance: str  # "builtin" or "file"
    description: str = ""

    @property
    def is_monoid(self) -> bool:
        return find_neutral(self.semigroup) is not None


def _entry(cayley_text: str, sidecar: Optional[str], provenance: str, default_id: str) -> CorpusEntry:
    S = parse_cayley(cayley_text)
    if sidecar is None:
        return CorpusEntry(
            default_id,
            S,
            tuple(involutive_automorphisms(S)),
            tuple(delta(z) for z in compute_center(S)),
            provenance,
        )
    try:
        doc = json.loads(sidecar)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    sigmas = tuple(parse_sigma(s, S) for s in doc.get("sigmas", ["id"]))
    measures = tuple(validate_measure(S, measure_from_obj(m, S)) for m in doc.get("measures", []))
    return CorpusEntry(doc.get("id", default_id), S, sigmas, measures, provenance, doc.get("description", ""))


def builtin_corpus() -> list[CorpusEntry]:
    root = resources.files("semiwilson") / "corpus"
    index = json.loads((root / "index.json").read_text())
    out = []
    for stem in index["entries"]:
        side = root / f"{stem}.json"
        doc = json.loads(side.read_text())
        out.append(_entry((root / doc["cayley"]).read_text(), side.read_text(), "builtin", stem.upper()))
    return out


def load_corpus_dir(path) -> list[CorpusEntry]:
    """Load every ``*.cayley`` file in ``path`` (sorted by name)."""
    path = Path(path)
    out = []
    for cay in sorted(path.glob("*.cayley")):
        side = cay.with_suffix(".json")
        try:
            out.append(_entry(cay.read_text(), side.read_text() if side.exists() else None, "file", cay.stem))
        except FormatError as exc:
            raise FormatError(f"{cay.name}: {exc}") from None
    return out


def load_corpus(source: str = "builtin") -> list[CorpusEntry]:
    return builtin_corpus() if source == "builtin" else load_corpus_dir(source)


def filter_corpus(
    entries: Sequence[CorpusEntry],
    ids: Optional[Iterable[str]] = None,
    monoids_only: bool = False,
    predicate: Optional[Callable[[CorpusEntry], bool]] = None,
) -> list[CorpusEntry]:
    wanted = None if ids is None else {i.strip() for i in ids}
    out = [
        e
        for e in entries
        if (wanted is None or e.id in wanted)
        and (not monoids_only or e.is_monoid)
        and (predicate is None or predicate(e))
    ]
    if not out:
        raise CorpusEmpty("no corpus entries left after filtering")
    return out

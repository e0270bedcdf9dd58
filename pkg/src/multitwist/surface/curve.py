"""Closed curves drawn on a polygon schema as cyclic edge-crossing words."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .schema import SurfaceSchema


class CurveError(ValueError):
    pass


class NotGeneralPosition(CurveError):
    pass


class NotSimple(CurveError):
    pass


class NotEssential(CurveError):
    pass


Crossing = tuple  # (edge label, direction +-1, slot)


@dataclass(frozen=True, eq=False)
class EmbeddedCurve:
    """A closed curve as the cyclic sequence of its edge crossings.

    Each entry is ``(label, direction, slot)``: the curve crosses edge
    ``label`` going from the forward side's polygon to the reverse side's
    polygon when ``direction == +1``.  ``slot`` ranks the crossing among this
    curve's crossings of the same edge, counted along the edge direction.
    Between consecutive crossings the curve runs as a chord of one polygon.
    """

    schema: SurfaceSchema
    word: tuple[Crossing, ...]
    name: str = ""

    def __post_init__(self):
        word = tuple((str(l), int(d), int(s)) for l, d, s in self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise CurveError("a curve must cross at least one edge")
        seen = set()
        for label, d, slot in word:
            if label not in self.schema.edges:
                raise CurveError(f"unknown edge {label!r}")
            if d not in (1, -1):
                raise CurveError("direction must be +1 or -1")
            if (label, slot) in seen:
                raise NotGeneralPosition(f"two crossings share slot {slot} on edge {label}")
            seen.add((label, slot))
        n = len(word)
        for k in range(n):
            here = self.schema.entry_side(word[k][0], word[k][1])
            there = self.schema.exit_side(word[(k + 1) % n][0], word[(k + 1) % n][1])
            if here.polygon != there.polygon:
                raise CurveError(
                    f"crossing {k} lands in polygon {here.polygon} but crossing {(k + 1) % n} "
                    f"leaves polygon {there.polygon}"
                )

    def __len__(self) -> int:
        return len(self.word)

    def canonical(self) -> EmbeddedCurve:
        """Same curve with slots renumbered densely ``0..m-1`` per edge."""
        by_edge: dict[str, list[int]] = {}
        for label, _, slot in self.word:
            by_edge.setdefault(label, []).append(slot)
        rank = {l: {s: r for r, s in enumerate(sorted(v))} for l, v in by_edge.items()}
        return EmbeddedCurve(self.schema, tuple((l, d, rank[l][s]) for l, d, s in self.word), self.name)

    def reversed(self) -> EmbeddedCurve:
        return EmbeddedCurve(self.schema, tuple((l, -d, s) for l, d, s in reversed(self.word)), self.name)

    def renamed(self, name: str) -> EmbeddedCurve:
        return EmbeddedCurve(self.schema, self.word, name)

    def cocycle(self) -> dict[str, int]:
        """Signed crossing count per edge."""
        out = {label: 0 for label in self.schema.edges}
        for label, d, _ in self.word:
            out[label] += d
        return out

    def key(self) -> tuple:
        return tuple(self.canonical().word)

    def to_json(self) -> dict:
        out = {"word": [[l, d, s] for l, d, s in self.word]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, schema: SurfaceSchema, obj: Mapping | Sequence) -> EmbeddedCurve:
        if isinstance(obj, Mapping):
            return cls(schema, tuple(tuple(c) for c in obj["word"]), obj.get("name", ""))
        return cls(schema, tuple(tuple(c) for c in obj))

    @classmethod
    def from_labels(cls, schema: SurfaceSchema, tokens: Iterable[str], name: str = "") -> EmbeddedCurve:
        """Build from tokens like ``"y"`` / ``"x-"`` / ``"x@2"``; slots default to order of appearance."""
        word = []
        counts: dict[str, int] = {}
        for tok in tokens:
            slot = None
            if "@" in tok:
                tok, s = tok.split("@")
                slot = int(s)
            d = -1 if tok.endswith("-") else 1
            label = tok.rstrip("-")
            if slot is None:
                slot = counts.get(label, 0)
            counts[label] = max(counts.get(label, 0), slot + 1)
            word.append((label, d, slot))
        return cls(schema, tuple(word), name)

    def __repr__(self) -> str:
        body = " ".join(f"{l}{'' if d > 0 else '-'}@{s}" for l, d, s in self.word)
        return f"EmbeddedCurve({self.name or '?'}: {body})"

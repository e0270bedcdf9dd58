"""Shipped configurations: schemas with named curves, multitwists and filling test sets."""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .core import CurveRef, MultiTwist
from .surface.curve import EmbeddedCurve
from .surface.schema import SurfaceSchema, load_schema

ENV_VAR = "MULTITWIST_CORPUS"


class CorpusMissing(FileNotFoundError):
    pass


def corpus_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).with_name("corpus")


def available() -> list[str]:
    d = corpus_dir()
    if not d.is_dir():
        raise CorpusMissing(f"corpus directory {d} does not exist")
    return sorted(p.stem for p in d.glob("*.json"))


@dataclass(frozen=True)
class Corpus:
    name: str
    schema: SurfaceSchema
    curves: dict[str, EmbeddedCurve]
    test_set: tuple[str, ...] = ()
    basis: tuple[str, ...] = ()
    multitwists: dict[str, MultiTwist] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)

    def curve(self, cid: str) -> EmbeddedCurve:
        return self.curves[cid]

    def ref(self, cid: str) -> CurveRef:
        return CurveRef(cid, self.curves[cid])

    def twist(self, name: str) -> MultiTwist:
        return self.multitwists[name]

    def tests(self) -> list[EmbeddedCurve]:
        return [self.curves[k] for k in self.test_set]

    def basis_curves(self) -> list[EmbeddedCurve] | None:
        return [self.curves[k] for k in self.basis] if self.basis else None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "schema": self.schema.to_json(),
            "curves": {k: c.to_json()["word"] for k, c in self.curves.items()},
            "test_set": list(self.test_set),
        }
        if self.basis:
            out["basis"] = list(self.basis)
        if self.multitwists:
            out["multitwists"] = {k: t.to_json()["components"] for k, t in self.multitwists.items()}
        out.update(self.extra)
        return out


def from_json(obj: Mapping) -> Corpus:
    schema = load_schema(obj["schema"])
    curves = {k: EmbeddedCurve.from_json(schema, w).renamed(k) for k, w in obj.get("curves", {}).items()}
    twists = {k: MultiTwist.of(*((c, n) for c, n in comps)) for k, comps in obj.get("multitwists", {}).items()}
    known = {"name", "schema", "curves", "test_set", "basis", "multitwists"}
    return Corpus(
        obj.get("name", schema.name),
        schema,
        curves,
        tuple(obj.get("test_set", ())),
        tuple(obj.get("basis", ())),
        twists,
        {k: v for k, v in obj.items() if k not in known},
    )


def load(name_or_path: str | os.PathLike) -> Corpus:
    """Load a corpus entry by name (``"torus"``) or by file path."""
    p = Path(name_or_path)
    if not p.suffix:
        p = corpus_dir() / f"{name_or_path}.json"
    if not p.is_file():
        raise CorpusMissing(f"no corpus file {p}")
    with open(p) as fh:
        return from_json(json.load(fh))


_FLAT = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dump(corpus: Corpus) -> str:
    """Indented JSON with innermost lists kept on one line."""
    text = json.dumps(corpus.to_json(), indent=1)
    return _FLAT.sub(lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text) + "\n"

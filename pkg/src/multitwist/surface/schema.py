"""Polygon schemas: polygons with paired directed edges and marked punctures.

Each polygon is a cyclic list of side labels read counterclockwise.  ``"x"``
traverses edge ``x`` along its direction, ``"x-"`` against it.  A surface is
orientable exactly when every label occurs once in each direction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence


class SchemaError(ValueError):
    pass


class BadPairing(SchemaError):
    pass


class NonOrientable(SchemaError):
    pass


class Disconnected(SchemaError):
    pass


def parse_side(token: str) -> tuple[str, bool]:
    """``"x"`` -> ``("x", True)``, ``"x-"`` -> ``("x", False)``."""
    if not isinstance(token, str) or not token or token == "-":
        raise BadPairing(f"bad side label {token!r}")
    if token.endswith("-"):
        return token[:-1], False
    return token, True


@dataclass(frozen=True)
class Side:
    polygon: int
    index: int
    label: str
    forward: bool


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class SurfaceSchema:
    polygons: tuple[tuple[str, ...], ...]
    punctures: tuple[tuple[int, int], ...] = ()
    name: str = ""
    declared_genus: int | None = None
    # derived
    sides: tuple[tuple[Side, ...], ...] = field(init=False, repr=False)
    edges: dict = field(init=False, repr=False)
    corner_vertex: dict = field(init=False, repr=False)
    n_vertices: int = field(init=False)
    punctured_vertices: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        polys = tuple(tuple(p) for p in self.polygons)
        object.__setattr__(self, "polygons", polys)
        if not polys or any(len(p) == 0 for p in polys):
            raise BadPairing("schema needs at least one nonempty polygon")
        sides = []
        occurrences: dict[str, list[Side]] = {}
        for pi, poly in enumerate(polys):
            row = []
            for k, tok in enumerate(poly):
                label, fwd = parse_side(tok)
                s = Side(pi, k, label, fwd)
                row.append(s)
                occurrences.setdefault(label, []).append(s)
            sides.append(tuple(row))
        edges = {}
        for label, occ in occurrences.items():
            if len(occ) != 2:
                raise BadPairing(f"edge {label} occurs {len(occ)} times, expected 2")
            if occ[0].forward == occ[1].forward:
                raise NonOrientable(f"edge {label} is glued with a flip")
            fwd = occ[0] if occ[0].forward else occ[1]
            rev = occ[1] if occ[0].forward else occ[0]
            edges[label] = (fwd, rev)
        object.__setattr__(self, "sides", tuple(sides))
        object.__setattr__(self, "edges", edges)

        # connectivity through shared edges
        uf = _UnionFind()
        for pi in range(len(polys)):
            uf.find(pi)
        for fwd, rev in edges.values():
            uf.union(fwd.polygon, rev.polygon)
        if len({uf.find(pi) for pi in range(len(polys))}) != 1:
            raise Disconnected("polygons do not form a connected surface")

        # vertices: corner k of polygon p is the start point of side k
        vf = _UnionFind()

        def start(s: Side):
            return (s.label, "tail") if s.forward else (s.label, "head")

        def end(s: Side):
            return (s.label, "head") if s.forward else (s.label, "tail")

        for row in sides:
            n = len(row)
            for k in range(n):
                vf.union(end(row[k - 1]), start(row[k]))
        roots = {}
        corner_vertex = {}
        for pi, row in enumerate(sides):
            for k, s in enumerate(row):
                r = vf.find(start(s))
                corner_vertex[(pi, k)] = roots.setdefault(r, len(roots))
        object.__setattr__(self, "corner_vertex", corner_vertex)
        object.__setattr__(self, "n_vertices", len(roots))
        punct = set()
        for p in self.punctures:
            p = tuple(p)
            if p not in corner_vertex:
                raise SchemaError(f"puncture at unknown corner {p}")
            punct.add(corner_vertex[p])
        object.__setattr__(self, "punctures", tuple(tuple(p) for p in self.punctures))
        object.__setattr__(self, "punctured_vertices", frozenset(punct))
        if self.declared_genus is not None and self.declared_genus != self.genus:
            raise SchemaError(f"declared genus {self.declared_genus} but the gluing gives {self.genus}")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.polygons)

    @property
    def n_punctures(self) -> int:
        return len(self.punctured_vertices)

    @property
    def closed_euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def euler_characteristic(self) -> int:
        return self.closed_euler_characteristic - self.n_punctures

    @property
    def genus(self) -> int:
        chi = self.closed_euler_characteristic
        if chi % 2:
            raise SchemaError("odd Euler characteristic for an orientable closed surface")
        return (2 - chi) // 2

    def side(self, polygon: int, index: int) -> Side:
        return self.sides[polygon][index]

    def exit_side(self, label: str, direction: int) -> Side:
        """Side through which a strand crossing ``label`` in ``direction`` leaves its polygon.

        Direction ``+1`` goes from the polygon holding the forward side into the
        one holding the reverse side.
        """
        fwd, rev = self.edges[label]
        return fwd if direction > 0 else rev

    def entry_side(self, label: str, direction: int) -> Side:
        fwd, rev = self.edges[label]
        return rev if direction > 0 else fwd

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "polygons": [list(p) for p in self.polygons]}
        out["punctures"] = [list(p) for p in self.punctures]
        if self.declared_genus is not None:
            out["genus"] = self.declared_genus
        return out

    def __repr__(self) -> str:
        return f"SurfaceSchema({self.name!r}, genus={self.genus}, punctures={self.n_punctures})"


def load_schema(description: Mapping) -> SurfaceSchema:
    """Build and validate a schema from its JSON description."""
    if "polygons" not in description:
        raise BadPairing("schema description needs 'polygons'")
    punctures = []
    for p in description.get("punctures", []):
        if isinstance(p, Mapping):
            p = p["corner"]
        punctures.append(tuple(p))
    schema = SurfaceSchema(
        tuple(tuple(p) for p in description["polygons"]),
        tuple(punctures),
        description.get("name", ""),
        description.get("genus"),
    )
    declared_p = description.get("n_punctures")
    if declared_p is not None and declared_p != schema.n_punctures:
        raise SchemaError(f"declared {declared_p} punctures, found {schema.n_punctures}")
    return schema


def standard_schema(genus: int, name: str | None = None, punctures: Sequence[tuple[int, int]] = ()) -> SurfaceSchema:
    """The 4g-gon with side word x1 y1 x1- y1- ... xg yg xg- yg-."""
    if genus < 1:
        raise SchemaError("standard schemas need genus >= 1")
    word = []
    for i in range(1, genus + 1):
        if genus == 1:
            word += ["x", "y", "x-", "y-"]
        else:
            word += [f"x{i}", f"y{i}", f"x{i}-", f"y{i}-"]
    return SurfaceSchema((tuple(word),), tuple(punctures), name or f"genus{genus}", genus)

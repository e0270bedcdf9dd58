"""Domain vocabulary: curves, multitwists, intersection tables, crossing profiles.

Everything here is immutable and purely combinatorial.  Curves are opaque
identifiers; whatever geometry stands behind them lives in
:mod:`multitwist.surface`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence


class MissingIntersectionEntry(KeyError):
    """Raised when an intersection table lacks a pair that an operation needs."""

    def __init__(self, a: str, b: str):
        super().__init__(f"no intersection entry for ({a}, {b})")
        self.pair = (a, b)


@dataclass(frozen=True, order=True)
class CurveRef:
    """Isotopy class of an essential simple closed curve, named by ``id``.

    ``embedding`` optionally points at a concrete representative (an
    :class:`~multitwist.surface.curve.EmbeddedCurve`); it does not take part in
    equality or hashing.
    """

    id: str
    embedding: Any = field(default=None, compare=False, hash=False, repr=False)

    def __str__(self) -> str:
        return self.id


def as_ref(c: CurveRef | str) -> CurveRef:
    return c if isinstance(c, CurveRef) else CurveRef(str(c))


@dataclass(frozen=True)
class OrientedCurve:
    curve: CurveRef
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("orientation sign must be +1 or -1")

    def reversed(self) -> OrientedCurve:
        return OrientedCurve(self.curve, -self.sign)


@dataclass(frozen=True)
class MultiTwist:
    """Product of powers of Dehn twists along distinct curves.

    Zero exponents are dropped.  Disjointness of the curves is a property of
    the surface, so it is checked separately by :func:`validate_multitwist`.
    """

    components: tuple[tuple[CurveRef, int], ...] = ()

    def __post_init__(self):
        comps = []
        seen = set()
        for c, n in self.components:
            c = as_ref(c)
            n = int(n)
            if c in seen:
                raise ValueError(f"curve {c.id} appears twice in a multitwist")
            seen.add(c)
            if n != 0:
                comps.append((c, n))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def of(cls, *pairs: tuple[CurveRef | str, int]) -> MultiTwist:
        return cls(tuple((as_ref(c), n) for c, n in pairs))

    @property
    def curves(self) -> tuple[CurveRef, ...]:
        return tuple(c for c, _ in self.components)

    @property
    def exponents(self) -> dict[CurveRef, int]:
        return dict(self.components)

    def exponent(self, c: CurveRef | str) -> int:
        return self.exponents.get(as_ref(c), 0)

    def __contains__(self, c) -> bool:
        return as_ref(c) in self.exponents

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def inverse(self) -> MultiTwist:
        return MultiTwist(tuple((c, -n) for c, n in self.components))

    def without(self, *curves) -> MultiTwist:
        drop = {as_ref(c) for c in curves}
        return MultiTwist(tuple((c, n) for c, n in self.components if c not in drop))

    def same_as(self, other: MultiTwist) -> bool:
        """Equality as a set of (curve, exponent) pairs, ignoring order."""
        return self.exponents == other.exponents

    def to_json(self) -> dict:
        return {"components": [[c.id, n] for c, n in self.components]}

    @classmethod
    def from_json(cls, obj: Mapping) -> MultiTwist:
        return cls.of(*((c, n) for c, n in obj["components"]))

    def __str__(self) -> str:
        if not self.components:
            return "1"
        return " ".join(f"d_{c.id}^{n}" for c, n in self.components)


def _key(a: CurveRef | str, b: CurveRef | str) -> tuple[str, str]:
    a, b = as_ref(a).id, as_ref(b).id
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class IntersectionData:
    """Geometric (symmetric) and partial algebraic (antisymmetric) tables.

    ``algebraic`` is keyed by ordered id pairs and refers to the stored
    reference orientations; :meth:`alg` handles orientation flips.
    """

    geometric: Mapping[tuple[str, str], int] = field(default_factory=dict)
    algebraic: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        geo = {}
        for (a, b), v in dict(self.geometric).items():
            if v < 0:
                raise ValueError("geometric intersection numbers are nonnegative")
            k = _key(a, b)
            if a == b and v != 0:
                raise ValueError(f"i({a},{a}) must be 0")
            if geo.get(k, v) != v:
                raise ValueError(f"conflicting entries for {k}")
            geo[k] = int(v)
        alg = {}
        for (a, b), v in dict(self.algebraic).items():
            a, b = as_ref(a).id, as_ref(b).id
            if alg.get((b, a), -v) != -v or alg.get((a, b), v) != v:
                raise ValueError(f"algebraic table not antisymmetric at ({a},{b})")
            alg[(a, b)] = int(v)
            alg[(b, a)] = -int(v)
        for (a, b), v in alg.items():
            g = geo.get(_key(a, b))
            if g is not None and abs(v) > g:
                raise ValueError(f"|alg({a},{b})| exceeds i({a},{b})")
        object.__setattr__(self, "geometric", geo)
        object.__setattr__(self, "algebraic", alg)

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence], algebraic: Iterable[Sequence] = ()) -> IntersectionData:
        return cls({(a, b): v for a, b, v in triples}, {(a, b): v for a, b, v in algebraic})

    def i(self, a: CurveRef | str, b: CurveRef | str) -> int:
        a, b = as_ref(a), as_ref(b)
        if a == b:
            return 0
        try:
            return self.geometric[_key(a, b)]
        except KeyError:
            raise MissingIntersectionEntry(a.id, b.id) from None

    def has(self, a, b) -> bool:
        return as_ref(a) == as_ref(b) or _key(a, b) in self.geometric

    def alg(self, x: OrientedCurve, y: OrientedCurve) -> int:
        if x.curve == y.curve:
            return 0
        try:
            v = self.algebraic[(x.curve.id, y.curve.id)]
        except KeyError:
            raise MissingIntersectionEntry(x.curve.id, y.curve.id) from None
        return v * x.sign * y.sign

    def relabel(self, mapping: Mapping[str, str]) -> IntersectionData:
        m = lambda s: mapping.get(s, s)  # noqa: E731
        return IntersectionData(
            {(m(a), m(b)): v for (a, b), v in self.geometric.items()},
            {(m(a), m(b)): v for (a, b), v in self.algebraic.items()},
        )

    def to_json(self) -> dict:
        return {
            "geometric": [[a, b, v] for (a, b), v in sorted(self.geometric.items())],
            "algebraic": [[a, b, v] for (a, b), v in sorted(self.algebraic.items()) if a < b],
        }

    @classmethod
    def from_json(cls, obj) -> IntersectionData:
        if isinstance(obj, list):
            return cls.from_triples(obj)
        return cls.from_triples(obj.get("geometric", []), obj.get("algebraic", []))


@dataclass(frozen=True)
class CrossingProfile:
    """Cyclic sequence of crossings of ``base`` with the curves of ``against``.

    Arc ``k`` runs from crossing ``k`` to crossing ``k + 1`` (cyclically), so
    there are as many arcs as crossings.
    """

    base: CurveRef
    against: MultiTwist
    sequence: tuple[CurveRef, ...]

    def __post_init__(self):
        seq = tuple(as_ref(c) for c in self.sequence)
        for c in seq:
            if c not in self.against:
                raise ValueError(f"crossing with {c.id}, which is not a curve of the multitwist")
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "base", as_ref(self.base))

    @property
    def arc_flags(self) -> tuple[int, ...]:
        n = self.against.exponents
        seq = self.sequence
        return tuple(
            int(n[seq[k]] * n[seq[(k + 1) % len(seq)]] > 0) for k in range(len(seq))
        )

    def multiplicities(self) -> dict[CurveRef, int]:
        out: dict[CurveRef, int] = {}
        for c in self.sequence:
            out[c] = out.get(c, 0) + 1
        return out

    def check(self, data: IntersectionData) -> None:
        """Compare crossing multiplicities with a geometric table."""
        mult = self.multiplicities()
        for c in self.against.curves:
            if mult.get(c, 0) != data.i(self.base, c):
                raise ValueError(
                    f"profile crosses {c.id} {mult.get(c, 0)} times, table says {data.i(self.base, c)}"
                )

    def to_json(self) -> dict:
        return {
            "base": self.base.id,
            "against": self.against.to_json(),
            "sequence": [c.id for c in self.sequence],
            "arc_flags": list(self.arc_flags),
        }

    @classmethod
    def from_json(cls, obj) -> CrossingProfile:
        return cls(CurveRef(obj["base"]), MultiTwist.from_json(obj["against"]), tuple(obj["sequence"]))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    intersecting: tuple[tuple[str, str, int], ...] = ()
    zero_exponents: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate_multitwist(t: MultiTwist, data: IntersectionData) -> ValidationReport:
    bad = []
    curves = t.curves
    for i, a in enumerate(curves):
        for b in curves[i + 1:]:
            v = data.i(a, b)
            if v:
                bad.append((a.id, b.id, v))
    zeros = tuple(c.id for c, n in t.components if n == 0)
    return ValidationReport(not bad and not zeros, tuple(bad), zeros)


def x_value(profile: CrossingProfile) -> int:
    """Number of arcs whose two bounding curves carry same-sign exponents."""
    return sum(profile.arc_flags)

"""Brute-force oracle on embedded curves: intersection numbers, twists, isotopy."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from ..core import CrossingProfile, CurveRef, MultiTwist
from ..formulas import HomologyClass
from .curve import CurveError, EmbeddedCurve, NotEssential
from .layout import Layout, check_essential, twist_image
from .schema import SurfaceSchema


class NotDisjoint(CurveError):
    pass


class TestSetNotFilling(ValueError):
    pass


Twist = Sequence[tuple[EmbeddedCurve, int]]


def resolve(t: MultiTwist | Twist, curves: Mapping[str, EmbeddedCurve] | None = None) -> list[tuple[EmbeddedCurve, int]]:
    """Turn a multitwist into ``(embedded curve, exponent)`` pairs."""
    if not isinstance(t, MultiTwist):
        return [(c, int(n)) for c, n in t if n]
    out = []
    for ref, n in t.components:
        emb = ref.embedding
        if emb is None:
            if curves is None or ref.id not in curves:
                raise KeyError(f"curve {ref.id} has no embedding")
            emb = curves[ref.id]
        out.append((emb, n))
    return out


def tighten(curve: EmbeddedCurve) -> EmbeddedCurve:
    """Canonical copy with edge backtracks removed."""
    lay = Layout.of([curve])
    lay.normalize(0)
    return lay.extract(0)


def multicurve_layout(curves: Sequence[EmbeddedCurve], rng=None) -> Layout:
    """Draw pairwise disjoint curves without crossings, or raise :class:`NotDisjoint`."""
    lay = Layout(curves[0].schema)
    for c in curves:
        k = lay.add_curve(c)
        lay.reduce(k, rng)
        hits = lay.intersections_with(k)
        if hits:
            other = lay.names[next(iter(hits))]
            raise NotDisjoint(f"{c.name or 'curve'} meets {other or 'another curve'} {sum(hits.values())} times")
    return lay


@dataclass
class Arrangement:
    """Curves drawn jointly, with the fixed family first and the moving curve last."""

    layout: Layout
    curves: list[EmbeddedCurve]

    @property
    def crossings(self) -> list[tuple[int, int, int]]:
        return [(X.chords[0][0], X.chords[1][0], X.sign) for X in self.layout.crossings()]

    def count(self, a: int, b: int) -> int:
        return len(self.layout.crossings_between(a, b))

    def faces(self):
        return self.layout.faces()

    def bigons(self) -> int:
        return len(self.layout.bigons(len(self.curves) - 1))


def minimal_position(curves: Sequence[EmbeddedCurve], rng=None) -> Arrangement:
    """Put ``curves`` in minimal position.

    All curves but the last must be pairwise disjoint; the last one may cross
    them arbitrarily.  Every other configuration raises :class:`NotDisjoint`.
    """
    curves = list(curves)
    lay = multicurve_layout(curves[:-1], rng) if len(curves) > 1 else Layout(curves[0].schema)
    k = lay.add_curve(curves[-1])
    lay.reduce(k, rng)
    return Arrangement(lay, curves)


def geometric_intersection(x: EmbeddedCurve, y: EmbeddedCurve, rng=None) -> int:
    lay = Layout.of([y, x])
    lay.reduce(1, rng)
    return len(lay.crossings())


def algebraic_intersection(x: EmbeddedCurve, y: EmbeddedCurve) -> int:
    """Signed count of crossings; +1 where ``y`` passes from the right of ``x`` to its left."""
    return Layout.of([x, y]).algebraic(0, 1)


def isotopic(x: EmbeddedCurve, y: EmbeddedCurve, oriented: bool = False) -> bool:
    """Whether ``x`` and ``y`` are isotopic: disjoint and cobounding an annulus."""
    lay = Layout.of([y, x])
    lay.reduce(1)
    if lay.crossings():
        return False
    for f in lay.faces():
        if f.chi != 0 or f.punctures:
            continue
        sides = f.curve_sides()
        if len(sides) == 2 and {c for c, _ in sides} == {0, 1}:
            if not oriented:
                return True
            s = dict(sides)
            return s[0] != s[1]
    return False


def apply_multitwist(t: MultiTwist | Twist, x: EmbeddedCurve, curves: Mapping | None = None, rng=None) -> EmbeddedCurve:
    """Image of ``x`` under the multitwist (right-handed for positive exponents)."""
    pairs = resolve(t, curves)
    if not pairs:
        return x
    lay = multicurve_layout([c for c, _ in pairs], rng)
    k = lay.add_curve(x)
    lay.reduce(k, rng)
    img = twist_image(lay, k, {i: n for i, (_, n) in enumerate(pairs)}, x.name)
    return tighten(img)


def apply_sequence(f: Sequence, x: EmbeddedCurve, curves: Mapping | None = None) -> EmbeddedCurve:
    """Apply the product ``f[0] f[1] ... f[-1]`` (rightmost factor acts first)."""
    for t in reversed(list(f)):
        x = apply_multitwist(t, x, curves)
    return x


def crossing_profile(x: EmbeddedCurve, t: MultiTwist | Twist, curves: Mapping | None = None, rng=None) -> CrossingProfile:
    pairs = resolve(t, curves)
    names = [c.name or f"c{i}" for i, (c, _) in enumerate(pairs)]
    mt = MultiTwist.of(*((nm, n) for nm, (_, n) in zip(names, pairs)))
    base = CurveRef(x.name or "a")
    if not pairs:
        return CrossingProfile(base, mt, ())
    lay = multicurve_layout([c for c, _ in pairs], rng)
    k = lay.add_curve(x)
    lay.reduce(k, rng)
    seq = tuple(names[X.other(k)] for X in lay.crossings_along(k))
    return CrossingProfile(base, mt, seq)


def validate_curve(curve: EmbeddedCurve) -> EmbeddedCurve:
    """Raise unless ``curve`` is simple and essential."""
    check_essential(curve)
    return curve


# homology --------------------------------------------------------------------


def _fan_cup(schema: SurfaceSchema, phi: Sequence[int], psi: Sequence[int], index: Mapping[str, int]) -> int:
    total = 0
    for row in schema.sides:
        acc = 0
        for side in row[:-1]:
            s = 1 if side.forward else -1
            total += acc * s * psi[index[side.label]]
            acc += s * phi[index[side.label]]
    return total


def _cup(schema: SurfaceSchema, phi, psi, index) -> int:
    # The fan is not an ordered simplicial structure, so the cochain-level
    # product carries a symmetric error; antisymmetrizing removes it.
    twice = _fan_cup(schema, phi, psi, index) - _fan_cup(schema, psi, phi, index)
    assert twice % 2 == 0
    return twice // 2


@dataclass(frozen=True)
class HomologyBasis:
    schema: SurfaceSchema
    edges: tuple[str, ...]
    to_coords: Matrix  # cocycle -> coordinates
    representatives: tuple[tuple[int, ...], ...]  # cocycle per basis vector
    form: tuple[tuple[int, ...], ...]

    def coords(self, cocycle: Mapping[str, int]) -> tuple[int, ...]:
        v = Matrix([cocycle[e] for e in self.edges])
        out = self.to_coords * v
        return tuple(int(a) for a in out)

    def class_of(self, curve: EmbeddedCurve) -> HomologyClass:
        return HomologyClass(self.coords(curve.cocycle()), self.form)


def homology_basis(schema: SurfaceSchema, basis_curves: Sequence[EmbeddedCurve] | None = None) -> HomologyBasis:
    """Basis of first homology of the punctured surface, via edge cocycles.

    A curve's class is its signed edge-crossing vector, read modulo
    coboundaries of vertex functions vanishing at punctures.  When
    ``basis_curves`` is given, coordinates are taken relative to those curves.
    """
    edges = tuple(schema.edges)
    index = {e: i for i, e in enumerate(edges)}
    E = len(edges)
    D1 = Matrix.zeros(len(schema.sides), E)
    for p, row in enumerate(schema.sides):
        for side in row:
            D1[p, index[side.label]] += 1 if side.forward else -1
    free_vertices = [v for v in range(schema.n_vertices) if v not in schema.punctured_vertices]
    D0 = Matrix.zeros(E, len(free_vertices))
    vcol = {v: k for k, v in enumerate(free_vertices)}
    for label, (fwd, _) in schema.edges.items():
        # the forward side starts at the tail of the edge
        tail = schema.corner_vertex[(fwd.polygon, fwd.index)]
        head = schema.corner_vertex[(fwd.polygon, (fwd.index + 1) % len(schema.sides[fwd.polygon]))]
        if head in vcol:
            D0[index[label], vcol[head]] += 1
        if tail in vcol:
            D0[index[label], vcol[tail]] -= 1

    def snf(M):
        if M.rows == 0 or M.cols == 0 or M.is_zero_matrix:
            return 0, Matrix.eye(M.rows), Matrix.eye(M.cols)
        S, U, V = smith_normal_decomp(M)
        rank = sum(1 for i in range(min(S.shape)) if S[i, i] != 0)
        return rank, U, V

    r1, _, V1 = snf(D1)
    K = V1[:, r1:]  # kernel basis, E x k
    Kinv = V1.inv()[r1:, :]
    Y = Kinv * D0 if D0.cols else Matrix.zeros(K.cols, 0)
    r2, U2, _ = snf(Y) if Y.cols else (0, Matrix.eye(K.cols), None)
    to_coords = U2[r2:, :] * Kinv
    reps_m = K * U2.inv()[:, r2:]
    if basis_curves is not None:
        B = Matrix([list(to_coords * Matrix([c.cocycle()[e] for e in edges])) for c in basis_curves]).T
        if B.rows != B.cols or abs(B.det()) != 1:
            raise ValueError("basis curves do not form a basis of homology")
        to_coords = B.inv() * to_coords
        reps_m = Matrix.hstack(*[Matrix([c.cocycle()[e] for e in edges]) for c in basis_curves])
    reps = tuple(tuple(int(a) for a in reps_m[:, i]) for i in range(reps_m.cols))
    form = tuple(tuple(_cup(schema, reps[i], reps[j], index) for j in range(len(reps))) for i in range(len(reps)))
    return HomologyBasis(schema, edges, to_coords, reps, form)


def classes_and_pairing(schema: SurfaceSchema, curves: Iterable[EmbeddedCurve], basis_curves=None, check: bool = True):
    """Homology classes of ``curves`` and the intersection form of the basis.

    With ``check`` the form is compared against the engine's algebraic
    intersection numbers on every pair.
    """
    hb = homology_basis(schema, basis_curves)
    curves = list(curves)
    classes = {c.name or str(i): hb.class_of(c) for i, c in enumerate(curves)}
    if check:
        for i, a in enumerate(curves):
            for b in curves[i + 1:]:
                measured = algebraic_intersection(a, b)
                predicted = hb.class_of(a).pairing(hb.class_of(b))
                if measured != predicted:
                    raise AssertionError(f"pairing {predicted} != measured {measured} for {a.name}, {b.name}")
    return hb, classes, hb.form


# mapping classes ---------------------------------------------------------------


def fills(curves: Sequence[EmbeddedCurve]) -> bool:
    """Whether every complementary face is a disk or a once-punctured disk."""
    lay = Layout.of(list(curves))
    return all(f.chi == 1 and f.punctures <= 1 for f in lay.faces())


def mapping_classes_equal(f: Sequence, g: Sequence, test_curves: Sequence[EmbeddedCurve], curves: Mapping | None = None, check_filling: bool = True) -> bool:
    """Compare two products of multitwists by their action on a filling test set.

    Images are compared as oriented curves up to isotopy.
    """
    if check_filling and not fills(test_curves):
        raise TestSetNotFilling("test curves do not fill the surface")
    # f t = g t  iff  g[:k]^-1 f t = g[k:] t for any k. Peel factors of g off the
    # left while that shortens the curve: equal maps collapse back to short
    # words, unequal ones stop early instead of compounding growth.
    g = list(g)
    inv = inverse_sequence(g)[::-1]
    for t in test_curves:
        x = apply_sequence(f, t, curves)
        k = 0
        while k < len(g):
            y = apply_multitwist(inv[k], x, curves)
            if len(y) > len(x):
                break
            x, k = y, k + 1
        if not isotopic(x, apply_sequence(g[k:], t, curves), oriented=True):
            return False
    return True


def inverse_sequence(f: Sequence) -> list:
    """Factors of ``f^-1``, each a multitwist with negated exponents."""
    out = []
    for t in reversed(list(f)):
        out.append(t.inverse() if isinstance(t, MultiTwist) else [(c, -n) for c, n in t])
    return out


def orbit_sizes(f: Sequence, curves_in: Iterable[EmbeddedCurve], cap: int = 32, curves: Mapping | None = None) -> dict[str, int | None]:
    """Size of ``{f^k c}`` up to isotopy for each curve, or ``None`` past ``cap``."""
    out = {}
    for c in curves_in:
        x = c
        size = None
        for k in range(1, cap + 1):
            x = apply_sequence(f, x, curves)
            if isotopic(x, c):
                size = k
                break
        out[c.name] = size
    return out


def intersection_table(curves: Sequence[EmbeddedCurve], algebraic: bool = True):
    """All pairwise intersection numbers, as an :class:`~multitwist.core.IntersectionData`."""
    from ..core import IntersectionData

    geo, alg = {}, {}
    for i, a in enumerate(curves):
        for b in curves[i + 1:]:
            geo[(a.name, b.name)] = geometric_intersection(a, b)
            if algebraic:
                alg[(a.name, b.name)] = algebraic_intersection(a, b)
    return IntersectionData(geo, alg)


def random_rng(seed) -> random.Random:
    return random.Random(seed)

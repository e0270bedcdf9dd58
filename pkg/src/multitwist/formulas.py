"""Intersection-number formulas for multitwists, in exact integer arithmetic.

None of these functions look at a surface.  They take intersection numbers,
exponents and crossing profiles as plain data, which keeps the comparison
with :mod:`multitwist.surface` two-sided.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import CrossingProfile, CurveRef, MultiTwist, as_ref, x_value


class InconsistentProfile(ValueError):
    pass


class MissingClass(KeyError):
    pass


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    slack: int

    def __bool__(self) -> bool:
        return self.holds


def positive_bound_check(i_ab: int, i_a_tb: int, terms: Sequence[tuple[int, int, int]]) -> BoundCheck:
    """``i(a,b) >= |i(a, t.b) - sum |n| i(a,c) i(b,c)|`` for a same-sign multitwist ``t``.

    ``terms`` holds one ``(|n|, i(a,c), i(b,c))`` triple per twist curve.
    """
    total = sum(abs(n) * iac * ibc for n, iac, ibc in terms)
    slack = i_ab - abs(i_a_tb - total)
    return BoundCheck(slack >= 0, slack)


def reduced_exponent(n: int) -> int:
    return max(abs(n) - 2, 0)


def ivanov_bound_check(i_ab: int, i_a_tb: int, terms: Sequence[tuple[int, int, int]]) -> BoundCheck:
    """``i(a,b) >= -i(a, t.b) + sum max(|n|-2, 0) i(a,c) i(b,c)``, any signs.

    ``terms`` holds ``(n, i(a,c), i(b,c))`` with signed ``n``.
    """
    rhs = -i_a_tb + sum(reduced_exponent(n) * iac * ibc for n, iac, ibc in terms)
    slack = i_ab - rhs
    return BoundCheck(slack >= 0, slack)


def hidden_formula(profile: CrossingProfile, per_curve: Sequence[tuple[int, int]] | None = None) -> int:
    """Predicted ``i(a, t.a)`` from a crossing profile of ``a`` against ``t``.

    ``per_curve`` lists ``(|n_j|, i(a, c_j))`` in the order of the
    multitwist's components; when omitted it is read off the profile.
    """
    mult = profile.multiplicities()
    expected = [(abs(n), mult.get(c, 0)) for c, n in profile.against.components]
    if per_curve is None:
        per_curve = expected
    per_curve = [(abs(n), i) for n, i in per_curve]
    if per_curve != expected:
        raise InconsistentProfile(f"per-curve data {per_curve} disagrees with profile {expected}")
    return sum((n * i - 1) * i for n, i in per_curve) + x_value(profile)


def hidden_formula_value(per_curve: Sequence[tuple[int, int]], x: int) -> int:
    """The same sum from bare numbers: ``sum (|n| i - 1) i + X``."""
    return sum((abs(n) * i - 1) * i for n, i in per_curve) + x


@dataclass(frozen=True)
class HomologyClass:
    """Integer coordinates plus the intersection form of the ambient basis."""

    coords: tuple[int, ...]
    form: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        coords = tuple(int(v) for v in self.coords)
        form = tuple(tuple(int(v) for v in row) for row in self.form)
        d = len(coords)
        if len(form) != d or any(len(r) != d for r in form):
            raise ValueError("form must be a square matrix matching the coordinates")
        for i in range(d):
            for j in range(d):
                if form[i][j] != -form[j][i]:
                    raise ValueError("intersection form must be antisymmetric")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "form", form)

    def _like(self, coords) -> HomologyClass:
        return HomologyClass(tuple(coords), self.form)

    def __add__(self, other: HomologyClass) -> HomologyClass:
        self._same_space(other)
        return self._like(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: HomologyClass) -> HomologyClass:
        self._same_space(other)
        return self._like(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> HomologyClass:
        return self._like(-a for a in self.coords)

    def __rmul__(self, k: int) -> HomologyClass:
        return self._like(k * a for a in self.coords)

    def _same_space(self, other):
        if self.form != other.form:
            raise ValueError("homology classes live in different bases")

    def pairing(self, other: HomologyClass) -> int:
        self._same_space(other)
        return sum(
            a * f * b
            for a, row in zip(self.coords, self.form)
            for f, b in zip(row, other.coords)
        )

    def is_zero(self) -> bool:
        return not any(self.coords)


def _class_of(curve_classes: Mapping, c: CurveRef) -> HomologyClass:
    for key in (c, c.id):
        if key in curve_classes:
            return curve_classes[key]
    raise MissingClass(c.id)


def twist_homology(t: MultiTwist, v: HomologyClass, curve_classes: Mapping) -> HomologyClass:
    """Action of ``t`` on homology: ``v + sum n_k <v, c_k> c_k``."""
    out = v
    for c, n in t.components:
        cls = _class_of(curve_classes, c)
        out = out + (n * v.pairing(cls)) * cls
    return out


def algebraic_pair_after_twist(t: MultiTwist, v: HomologyClass, w: HomologyClass, curve_classes: Mapping) -> int:
    total = v.pairing(w)
    for c, n in t.components:
        cls = _class_of(curve_classes, c)
        total += n * v.pairing(cls) * cls.pairing(w)
    return total


def terms_for(t: MultiTwist, i_a, i_b, signed: bool = True) -> list[tuple[int, int, int]]:
    """Build ``(n, i(a,c), i(b,c))`` triples from two lookups ``c -> int``."""
    return [(n if signed else abs(n), i_a(c), i_b(c)) for c, n in t.components]


def same_sign(t: MultiTwist) -> bool:
    signs = {n > 0 for _, n in t.components}
    return len(signs) <= 1


__all__ = [
    "BoundCheck",
    "HomologyClass",
    "InconsistentProfile",
    "MissingClass",
    "algebraic_pair_after_twist",
    "as_ref",
    "hidden_formula",
    "hidden_formula_value",
    "ivanov_bound_check",
    "positive_bound_check",
    "reduced_exponent",
    "same_sign",
    "terms_for",
    "twist_homology",
]

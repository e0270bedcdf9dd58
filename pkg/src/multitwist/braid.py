"""Deciding the braid relation between multitwists and building the canonical decomposition.

A pair of multitwists is braided exactly when, after splitting off the
common components, the rest pairs up as ``a_i, b_i`` with ``i(a_i, b_i) = 1``,
equal exponents ``n_i = ±1`` and no other intersections.  The decision only
needs an intersection table.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .core import (
    CrossingProfile,
    CurveRef,
    IntersectionData,
    MultiTwist,
    as_ref,
    validate_multitwist,
    x_value,
)


class CommonCurveExponentClash(ValueError):
    def __init__(self, curve: CurveRef, n_a: int, n_b: int):
        super().__init__(f"curve {curve.id} has exponent {n_a} in the first multitwist and {n_b} in the second")
        self.curve, self.n_a, self.n_b = curve, n_a, n_b


class PreconditionViolated(ValueError):
    pass


class ProfileMismatch(ValueError):
    pass


class InvalidMultitwist(ValueError):
    pass


# -- pair types T1-T5 ----------------------------------------------------------

TYPE_ROWS = {
    # tag: (i(a_i, b_i), |n_i| or None for any, X)
    "T1": (0, None, 0),
    "T2": (1, 2, 0),
    "T3": (1, 1, 1),
    "T4": (1, 1, 0),
    "T5": (2, 1, 0),
}


@dataclass(frozen=True)
class CurveType:
    tag: str
    evidence: tuple[int, int, int]  # (i(a_i, b_i), |n_i|, X)

    @property
    def valid(self) -> bool:
        return self.tag != "Invalid"


def _partner_budget(i_ab: int, abs_n: int, x: int) -> int:
    # What is left for the partners b_j, j != i, once the b_i term and X are paid.
    return i_ab - (abs_n * i_ab - 1) * i_ab - x


def enumerate_table(max_i: int = 4, max_n: int = 4, max_x: int = 4) -> list[tuple[str, tuple]]:
    """Solve ``i_ab = sum_j (|n_j| i_j - 1) i_j + X`` over the search box.

    Each partner term ``(|n_j| i_j - 1) i_j`` is a nonnegative integer, and
    any nonnegative value is reachable, so a triple is feasible iff the
    budget left for partners is nonnegative.  Triples with ``i_ab = 0`` do not
    constrain ``|n|`` and collapse into one row.
    """
    feasible = []
    for i_ab in range(max_i + 1):
        for n in range(1, max_n + 1):
            for x in range(max_x + 1):
                if _partner_budget(i_ab, n, x) >= 0:
                    feasible.append((i_ab, n, x))
    rows = []
    free_n = {(i, x) for i, _, x in feasible if all((i, m, x) in feasible for m in range(1, max_n + 1))}
    emitted = set()
    for i_ab, n, x in feasible:
        key = (i_ab, None, x) if (i_ab, x) in free_n else (i_ab, n, x)
        if key in emitted:
            continue
        emitted.add(key)
        rows.append(key)
    named = {v: k for k, v in TYPE_ROWS.items()}
    out = [(named.get(r, "Unnamed"), r) for r in rows]
    return sorted(out, key=lambda t: (t[0] == "Unnamed", t[0], str(t[1])))


def _row_tag(i_ab: int, abs_n: int, x: int) -> str:
    for tag, (ri, rn, rx) in TYPE_ROWS.items():
        if ri == i_ab and rx == x and (rn is None or rn == abs_n):
            return tag
    return "Invalid"


def classify_curve(
    a: CurveRef | str,
    tB: MultiTwist,
    data: IntersectionData,
    profile: CrossingProfile,
    partner: CurveRef | str,
) -> CurveType:
    """Pair type (T1-T5) of ``a`` paired with ``partner`` (its image ``b_i`` in ``tB``).

    ``profile`` is the crossing profile of ``a`` against ``tB``.
    """
    a, partner = as_ref(a), as_ref(partner)
    if profile.base != a or not profile.against.same_as(tB):
        raise ProfileMismatch("profile does not belong to this curve and multitwist")
    try:
        profile.check(data)
    except ValueError as e:
        raise ProfileMismatch(str(e)) from None
    if partner not in tB:
        raise ProfileMismatch(f"{partner.id} is not a curve of the second multitwist")
    i_ab = data.i(a, partner)
    abs_n = abs(tB.exponent(partner))
    x = x_value(profile)
    evidence = (i_ab, abs_n, x)
    partners = [(abs(n), data.i(a, b)) for b, n in tB.components if b != partner and data.i(a, b)]
    budget = sum((m * i - 1) * i for m, i in partners)
    if _partner_budget(i_ab, abs_n, x) != budget:
        return CurveType("Invalid", evidence)
    tag = _row_tag(*evidence)
    if tag == "T4":
        # exactly one partner with |n| = 2, everything else (1, 1)
        if sorted(partners).count((2, 1)) != 1 or any(p not in ((1, 1), (2, 1)) for p in partners):
            return CurveType("Invalid", evidence)
    elif tag != "Invalid" and any(p != (1, 1) for p in partners):
        return CurveType("Invalid", evidence)
    return CurveType(tag, evidence)


# -- decomposition ---------------------------------------------------------------


@dataclass(frozen=True)
class BraidDecomposition:
    common: MultiTwist
    pairs: tuple[tuple[CurveRef, CurveRef, int], ...]

    @property
    def pairing_map(self) -> dict[CurveRef, CurveRef]:
        return {a: b for a, b, _ in self.pairs}

    def check(self, data: IntersectionData) -> None:
        """Re-validate the decomposition's invariants against ``data``."""
        curves = [a for a, _, _ in self.pairs] + [b for _, b, _ in self.pairs]
        partner = {a: b for a, b, _ in self.pairs} | {b: a for a, b, _ in self.pairs}
        for a, b, n in self.pairs:
            if n not in (1, -1):
                raise ValueError(f"pair ({a.id}, {b.id}) has exponent {n}")
        for k, x in enumerate(curves):
            for y in curves[k + 1:]:
                want = 1 if partner[x] == y else 0
                if data.i(x, y) != want:
                    raise ValueError(f"i({x.id}, {y.id}) = {data.i(x, y)}, expected {want}")
            for c in self.common.curves:
                if data.i(x, c):
                    raise ValueError(f"common curve {c.id} meets {x.id}")

    def multitwists(self) -> tuple[MultiTwist, MultiTwist]:
        tA = MultiTwist(tuple(self.common.components) + tuple((a, n) for a, _, n in self.pairs))
        tB = MultiTwist(tuple(self.common.components) + tuple((b, n) for _, b, n in self.pairs))
        return tA, tB

    def to_json(self) -> dict:
        return {
            "common": self.common.to_json(),
            "pairs": [[a.id, b.id, n] for a, b, n in self.pairs],
        }


@dataclass(frozen=True)
class NotBraided:
    """Refutation: what is left after every deletable pair is gone."""

    residue_a: MultiTwist
    residue_b: MultiTwist
    reason: str
    common: MultiTwist = field(default_factory=MultiTwist)

    def to_json(self) -> dict:
        return {
            "reason": self.reason,
            "residue": [self.residue_a.to_json(), self.residue_b.to_json()],
            "common": self.common.to_json(),
        }


def split_common(tA: MultiTwist, tB: MultiTwist, data: IntersectionData | None = None):
    """``(tA', tB', tC)`` with ``tA = tA' tC`` and ``tB = tB' tC``."""
    eb = tB.exponents
    common, clash = [], None
    for c, n in tA.components:
        if c in eb:
            if eb[c] != n:
                clash = clash or CommonCurveExponentClash(c, n, eb[c])
            common.append((c, n))
    if clash:
        raise clash
    tC = MultiTwist(tuple(common))
    return tA.without(*tC.curves), tB.without(*tC.curves), tC


@dataclass(frozen=True)
class Pairing:
    ok: bool
    pairs: tuple[tuple[CurveRef, CurveRef, int], ...] = ()
    failure: str = ""
    detail: tuple = ()


def pair_and_reindex(tA: MultiTwist, tB: MultiTwist, data: IntersectionData) -> Pairing:
    """Match the non-common components one-to-one as the canonical form requires."""
    try:
        a_rest, b_rest, _ = split_common(tA, tB)
    except CommonCurveExponentClash as e:
        return Pairing(False, failure="exponent clash", detail=(e.curve.id, e.n_a, e.n_b))
    if sorted(n for _, n in a_rest) != sorted(n for _, n in b_rest):
        return Pairing(False, failure="exponent multiset mismatch",
                       detail=(tuple(sorted(n for _, n in a_rest)), tuple(sorted(n for _, n in b_rest))))
    pairs = []
    used = set()
    for a, n in sorted(a_rest.components):
        hits = [(b, m) for b, m in sorted(b_rest.components) if data.i(a, b)]
        if len(hits) != 1:
            return Pairing(False, failure="no matching", detail=(a.id, tuple(b.id for b, _ in hits)))
        b, m = hits[0]
        if data.i(a, b) != 1 or m != n or abs(n) != 1 or b in used:
            return Pairing(False, failure="residual intersection", detail=(a.id, b.id, data.i(a, b)))
        used.add(b)
        pairs.append((a, b, n))
    if len(used) != len(b_rest):
        return Pairing(False, failure="no matching", detail=tuple(b.id for b in b_rest.curves if b not in used))
    return Pairing(True, tuple(pairs))


def _deletable(a: CurveRef, n: int, a_rest: MultiTwist, b_rest: MultiTwist, data: IntersectionData):
    """The unique partner ``b`` if the pair ``(a, b)`` can be deleted, else a reason string."""
    hits = [b for b in b_rest.curves if data.i(a, b)]
    if len(hits) != 1:
        return f"{a.id} meets {len(hits)} curves of the second multitwist"
    b = hits[0]
    if data.i(a, b) != 1:
        return f"i({a.id}, {b.id}) = {data.i(a, b)}"
    if abs(n) != 1 or b_rest.exponent(b) != n:
        return f"exponents {n} and {b_rest.exponent(b)} on {a.id}, {b.id}"
    others = [x for x in a_rest.curves if x != a and data.i(x, b)]
    if others:
        return f"{b.id} also meets {others[0].id}"
    return b


def delete_braided_pair(tA: MultiTwist, tB: MultiTwist, pair: tuple, data: IntersectionData):
    """Remove a pair ``(a, b)`` where ``a`` meets only ``b`` once and ``b`` meets only ``a``."""
    a, b = as_ref(pair[0]), as_ref(pair[1])
    if a not in tA or b not in tB:
        raise PreconditionViolated(f"({a.id}, {b.id}) is not a pair of components")
    got = _deletable(a, tA.exponent(a), tA, tB, data)
    if isinstance(got, str):
        raise PreconditionViolated(got)
    if got != b:
        raise PreconditionViolated(f"{a.id} meets {got.id}, not {b.id}")
    return tA.without(a), tB.without(b)


def decide_braided(tA: MultiTwist, tB: MultiTwist, data: IntersectionData) -> BraidDecomposition | NotBraided:
    """Braided pairs get their canonical decomposition, others the residue.

    Pairs are deleted in lexicographic order of the first curve's id; the
    verdict does not depend on that order.
    """
    for t in (tA, tB):
        report = validate_multitwist(t, data)
        if not report:
            raise InvalidMultitwist(f"curves are not disjoint: {report.intersecting}")
    try:
        a_rest, b_rest, common = split_common(tA, tB)
    except CommonCurveExponentClash as e:
        return NotBraided(MultiTwist.of((e.curve, e.n_a)), MultiTwist.of((e.curve, e.n_b)), str(e))
    for a in a_rest.curves:
        for c in common.curves:
            data.i(a, c)  # coverage check; raises MissingIntersectionEntry
    pairs = []
    progress = True
    while progress and a_rest:
        progress = False
        for a, n in sorted(a_rest.components):
            got = _deletable(a, n, a_rest, b_rest, data)
            if not isinstance(got, str):
                pairs.append((a, got, n))
                a_rest, b_rest = a_rest.without(a), b_rest.without(got)
                progress = True
                break
    if a_rest or b_rest:
        reasons = []
        for a, n in sorted(a_rest.components):
            got = _deletable(a, n, a_rest, b_rest, data)
            reasons.append(got if isinstance(got, str) else f"{a.id} deletable")
        if not a_rest:
            reasons.append("second multitwist has unmatched curves")
        return NotBraided(a_rest, b_rest, "; ".join(reasons), common)
    # common curves must avoid the chains
    for a, b, _ in pairs:
        for c in common.curves:
            if data.i(a, c) or data.i(b, c):
                return NotBraided(a_rest, b_rest, f"common curve {c.id} meets a pair", common)
    return BraidDecomposition(common, tuple(sorted(pairs)))


def is_braided(tA: MultiTwist, tB: MultiTwist, data: IntersectionData) -> bool:
    return isinstance(decide_braided(tA, tB, data), BraidDecomposition)


# -- braid group homomorphisms ------------------------------------------------------


class Rejection(ValueError):
    flag = ""


class RelationFails(Rejection):
    def __init__(self, i: int, why: str):
        super().__init__(f"braid relation fails between generators {i} and {i + 1}: {why}")
        self.index = i


class CommutationFails(Rejection):
    flag = "support-overlap"

    def __init__(self, i: int, j: int, why: str):
        super().__init__(f"images of generators {i} and {j} do not have disjoint supports: {why}")
        self.index = (i, j)


class ChainInconsistent(Rejection):
    def __init__(self, j: int, why: str):
        super().__init__(f"chain {j} is inconsistent: {why}")
        self.index = j


@dataclass(frozen=True)
class BraidHomSpec:
    """Images of the standard generators ``s_1 .. s_{n-1}`` of the braid group on ``n`` strands."""

    n: int
    images: tuple[MultiTwist, ...]

    def __post_init__(self):
        if self.n < 2 or len(self.images) != self.n - 1:
            raise ValueError("need n >= 2 and exactly n - 1 generator images")

    @classmethod
    def from_json(cls, obj: Mapping) -> BraidHomSpec:
        return cls(int(obj["n"]), tuple(MultiTwist.from_json(t) for t in obj["images"]))


@dataclass(frozen=True)
class Chain:
    curves: tuple[CurveRef, ...]
    sign: int


@dataclass(frozen=True)
class Factorization:
    chains: tuple[Chain, ...]
    cyclic: MultiTwist

    def reassemble(self, n_generators: int) -> list[MultiTwist]:
        out = []
        for k in range(n_generators):
            comps = list(self.cyclic.components) + [(ch.curves[k], ch.sign) for ch in self.chains]
            out.append(MultiTwist(tuple(comps)))
        return out

    def to_json(self) -> dict:
        return {
            "chains": [{"curves": [c.id for c in ch.curves], "sign": ch.sign} for ch in self.chains],
            "cyclic": self.cyclic.to_json(),
        }


def factor_braid_hom(spec: BraidHomSpec, data: IntersectionData) -> Factorization:
    """Split a multitwist representation of the braid group into chains and a shared cyclic part.

    Commutation of far-apart generators is checked by support disjointness,
    which is sufficient; an overlap raises :class:`CommutationFails` with
    ``flag == "support-overlap"`` instead of claiming the relation fails.
    """
    images = spec.images
    m = len(images)
    if m == 1:
        return Factorization((), images[0])
    decomps = []
    for i in range(m - 1):
        d = decide_braided(images[i], images[i + 1], data)
        if isinstance(d, NotBraided):
            raise RelationFails(i + 1, d.reason)
        decomps.append(d)
    common = decomps[0].common
    for i, d in enumerate(decomps[1:], start=1):
        if not d.common.same_as(common):
            raise RelationFails(i + 1, "common part differs from the first relation's")
    residues = [t.without(*common.curves) for t in images]
    for i in range(m):
        for j in range(i + 2, m):
            for a in residues[i].curves:
                for b in residues[j].curves:
                    if a == b or data.i(a, b):
                        raise CommutationFails(i + 1, j + 1, f"{a.id} and {b.id}")
    chains = []
    for start in sorted(residues[0].curves):
        seq, sign = [start], residues[0].exponent(start)
        for k, d in enumerate(decomps):
            nxt = d.pairing_map.get(seq[-1])
            if nxt is None:
                raise ChainInconsistent(len(chains), f"{seq[-1].id} is not paired in relation {k + 1}")
            if residues[k + 1].exponent(nxt) != sign:
                raise ChainInconsistent(len(chains), "sign changes along the chain")
            seq.append(nxt)
        for p in range(len(seq)):
            for q in range(p + 1, len(seq)):
                want = 1 if q == p + 1 else 0
                if data.i(seq[p], seq[q]) != want:
                    raise ChainInconsistent(len(chains), f"i({seq[p].id}, {seq[q].id}) != {want}")
        chains.append(Chain(tuple(seq), sign))
    fact = Factorization(tuple(chains), common)
    for k, (got, want) in enumerate(zip(fact.reassemble(m), images)):
        if not got.same_as(want):
            raise ChainInconsistent(k, "reassembly does not reproduce the image")
    return fact


# -- oracle ------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    verdict: bool
    oracle: bool
    decomposition: BraidDecomposition | NotBraided
    types: Mapping[str, CurveType] = field(default_factory=dict)
    pairs_mapped: Mapping[str, bool] = field(default_factory=dict)
    orbits: Mapping[str, int | None] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.verdict == self.oracle


def certify_with_oracle(
    tA: MultiTwist,
    tB: MultiTwist,
    curves: Mapping,
    test_curves: Sequence,
    data: IntersectionData | None = None,
    orbit_cap: int | None = None,
) -> Certificate:
    """Compare :func:`decide_braided` with the Alexander-method check on a realization.

    ``curves`` maps curve ids to embedded curves.  Without ``data`` the
    intersection table is measured by the engine.
    """
    from .surface import engine

    ids = sorted({c.id for c in tA.curves} | {c.id for c in tB.curves})
    if data is None:
        data = engine.intersection_table([curves[k].renamed(k) for k in ids], algebraic=False)
    result = decide_braided(tA, tB, data)
    verdict = isinstance(result, BraidDecomposition)
    oracle = engine.mapping_classes_equal([tA, tB, tA], [tB, tA, tB], test_curves, curves)
    types, mapped = {}, {}
    if verdict:
        for a, b, _ in result.pairs:
            prof = engine.crossing_profile(curves[a.id].renamed(a.id), tB, curves)
            types[a.id] = classify_curve(a, tB, data, prof, b)
            img = engine.apply_sequence([tA, tB], curves[a.id], curves)
            mapped[a.id] = engine.isotopic(img, curves[b.id])
    orbits = {}
    if orbit_cap:
        orbits = engine.orbit_sizes([tA, tB, tA], [curves[k].renamed(k) for k in ids], orbit_cap, curves)
    return Certificate(verdict, oracle, result, types, mapped, orbits)


__all__ = [
    "BraidDecomposition",
    "BraidHomSpec",
    "Certificate",
    "Chain",
    "ChainInconsistent",
    "CommonCurveExponentClash",
    "CommutationFails",
    "CurveType",
    "Factorization",
    "NotBraided",
    "Pairing",
    "PreconditionViolated",
    "ProfileMismatch",
    "Rejection",
    "RelationFails",
    "certify_with_oracle",
    "classify_curve",
    "decide_braided",
    "delete_braided_pair",
    "enumerate_table",
    "factor_braid_hom",
    "is_braided",
    "pair_and_reindex",
    "split_common",
]

"""Joint drawings of curves on a schema, their overlay faces, and bigon removal.

A :class:`Layout` keeps, for every schema edge, the order in which the strands
of all its curves cross that edge.  Inside a polygon each curve segment is a
straight chord between two boundary positions; boundary positions are placed
on the parabola ``(k, k**2)`` so every coordinate is an exact rational and
chords cross iff their endpoints interleave.

Only one curve is ever moved at a time (the *moving* curve), against a family
of pairwise disjoint *fixed* curves.  In that setting every face with two
corners is an empty bigon, and removing bigons one at a time reaches minimal
position.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .curve import EmbeddedCurve, NotEssential, NotSimple
from .schema import SurfaceSchema, _UnionFind


@dataclass
class CrossingPoint:
    id: int
    polygon: int
    chords: tuple[tuple[int, int], tuple[int, int]]  # ((curve, chord), (curve, chord))
    params: tuple[Fraction, Fraction]
    sign: int  # +1 when the second chord passes from right to left of the first
    xy: tuple[Fraction, Fraction]

    def param_on(self, curve: int) -> Fraction:
        return self.params[0] if self.chords[0][0] == curve else self.params[1]

    def chord_of(self, curve: int) -> int:
        return self.chords[0][1] if self.chords[0][0] == curve else self.chords[1][1]

    def other(self, curve: int) -> int:
        return self.chords[1][0] if self.chords[0][0] == curve else self.chords[0][0]

    def sign_for(self, first: int) -> int:
        return self.sign if self.chords[0][0] == first else -self.sign


@dataclass
class Face:
    regions: list
    chi: int  # Euler characteristic with every schema vertex filled in
    punctures: int
    corners: list  # crossing ids, one entry per visit
    pieces: list  # (curve, chord, piece, forward) per bounding half-edge
    vertices: set = field(default_factory=set)

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and self.punctures == 0

    def curve_sides(self) -> set:
        """``(curve, 'L'|'R')`` for every curve side running along this face."""
        return {(c, "L" if fwd else "R") for c, _, _, fwd in self.pieces}


def _angle_cmp(u, v) -> int:
    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return hu - hv
    cr = u[0] * v[1] - u[1] * v[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


class Layout:
    """Mutable working drawing of several curves on one schema."""

    angle_sort = False  # exact-angle rotation at crossings, kept as a cross-check

    def __init__(self, schema: SurfaceSchema):
        self.schema = schema
        self.routes: list[list[int]] = []
        self.names: list[str] = []
        self.edge_of: dict[int, str] = {}
        self.dir_of: dict[int, int] = {}
        self.curve_of: dict[int, int] = {}
        self.edge_order: dict[str, list[int]] = {label: [] for label in schema.edges}
        self._next = 0
        self._geom = None

    # construction ---------------------------------------------------------

    @classmethod
    def of(cls, curves: Sequence[EmbeddedCurve]) -> Layout:
        if not curves:
            raise ValueError("need at least one curve")
        lay = cls(curves[0].schema)
        for c in curves:
            lay.add_curve(c)
        return lay

    def _new_point(self, curve: int, label: str, direction: int) -> int:
        pid = self._next
        self._next += 1
        self.edge_of[pid] = label
        self.dir_of[pid] = direction
        self.curve_of[pid] = curve
        return pid

    def add_curve(self, curve: EmbeddedCurve, first: bool = False) -> int:
        """Add ``curve``; its strands go after (or before) existing strands on each edge."""
        if curve.schema is not self.schema:
            raise ValueError("curve lives on a different schema")
        ci = len(self.routes)
        route = []
        per_edge: dict[str, list[tuple[int, int]]] = {}
        for label, d, slot in curve.word:
            pid = self._new_point(ci, label, d)
            route.append(pid)
            per_edge.setdefault(label, []).append((slot, pid))
        for label, pts in per_edge.items():
            ids = [pid for _, pid in sorted(pts)]
            if first:
                self.edge_order[label] = ids + self.edge_order[label]
            else:
                self.edge_order[label].extend(ids)
        self.routes.append(route)
        self.names.append(curve.name)
        self._geom = None
        return ci

    def extract(self, ci: int, name: str | None = None) -> EmbeddedCurve:
        rank = {}
        for label, order in self.edge_order.items():
            k = 0
            for pid in order:
                if self.curve_of[pid] == ci:
                    rank[pid] = k
                    k += 1
        word = tuple((self.edge_of[p], self.dir_of[p], rank[p]) for p in self.routes[ci])
        return EmbeddedCurve(self.schema, word, self.names[ci] if name is None else name)

    # geometry -------------------------------------------------------------

    def _build(self):
        if self._geom is not None:
            return self._geom
        schema = self.schema
        boundary = []  # per polygon: list of nodes ('c', k) or ('e', pid)
        end_pos = {}  # (pid, 'f'|'r') -> (polygon, index)
        seg_key = []  # per polygon: list of (label, segment index) for segment i -> i+1
        for pi, row in enumerate(schema.sides):
            nodes = []
            keys = []
            for side in row:
                order = self.edge_order[side.label]
                pts = order if side.forward else order[::-1]
                tag = "f" if side.forward else "r"
                n = len(order)
                nodes.append(("c", side.index))
                keys.append((side.label, 0 if side.forward else n))
                for m, pid in enumerate(pts, start=1):
                    end_pos[(pid, tag)] = (pi, len(nodes))
                    nodes.append(("e", pid))
                    keys.append((side.label, m if side.forward else n - m))
            boundary.append(nodes)
            seg_key.append(keys)

        chords = {}  # (curve, j) -> (polygon, a_index, b_index)
        per_poly: list[list[tuple[int, int]]] = [[] for _ in schema.sides]
        for ci, route in enumerate(self.routes):
            L = len(route)
            for j in range(L):
                a, b = route[j], route[(j + 1) % L]
                pa = end_pos[(a, "r" if self.dir_of[a] > 0 else "f")]
                pb = end_pos[(b, "f" if self.dir_of[b] > 0 else "r")]
                assert pa[0] == pb[0], "route leaves its polygon"
                chords[(ci, j)] = (pa[0], pa[1], pb[1])
                per_poly[pa[0]].append((ci, j))

        crossings: list[CrossingPoint] = []
        on_chord: dict[tuple[int, int], list[CrossingPoint]] = {k: [] for k in chords}
        self_cross = []
        for pi, members in enumerate(per_poly):
            M = len(boundary[pi])
            spans = [(key, chords[key][1], chords[key][2]) for key in members]
            for i in range(len(spans)):
                k1, a1, b1 = spans[i]
                lo, hi = min(a1, b1), max(a1, b1)
                for k2, a2, b2 in spans[i + 1:]:
                    if (lo < a2 < hi) == (lo < b2 < hi):
                        continue
                    if k1[0] == k2[0]:
                        self_cross.append((k1, k2))
                        continue
                    X = self._intersect(pi, M, k1, a1, b1, k2, a2, b2, len(crossings))
                    crossings.append(X)
                    on_chord[k1].append(X)
                    on_chord[k2].append(X)
        for key, lst in on_chord.items():
            lst.sort(key=lambda X, key=key: X.params[0] if X.chords[0] == key else X.params[1])
        self._geom = dict(
            boundary=boundary, end_pos=end_pos, seg_key=seg_key, chords=chords,
            per_poly=per_poly, crossings=crossings, on_chord=on_chord, self_cross=self_cross,
        )
        return self._geom

    @staticmethod
    def _pt(i):
        return (i, i * i)

    def _intersect(self, pi, M, k1, a1, b1, k2, a2, b2, cid) -> CrossingPoint:
        A, B, C, D = self._pt(a1), self._pt(b1), self._pt(a2), self._pt(b2)
        r = (B[0] - A[0], B[1] - A[1])
        s = (D[0] - C[0], D[1] - C[1])
        den = r[0] * s[1] - r[1] * s[0]
        q = (C[0] - A[0], C[1] - A[1])
        t = Fraction(q[0] * s[1] - q[1] * s[0], den)
        u = Fraction(q[0] * r[1] - q[1] * r[0], den)
        xy = (A[0] + t * r[0], A[1] + t * r[1])
        # right of a1->b1 is the ccw boundary arc from a1 to b1
        right = (a1 < a2 < b1) if a1 < b1 else not (b1 <= a2 <= a1)
        sign = 1 if right else -1
        return CrossingPoint(cid, pi, (k1, k2), (t, u), sign, xy)

    # queries --------------------------------------------------------------

    def crossings(self) -> list[CrossingPoint]:
        return self._build()["crossings"]

    def crossings_between(self, c1: int, c2: int) -> list[CrossingPoint]:
        return [X for X in self.crossings() if {X.chords[0][0], X.chords[1][0]} == {c1, c2}]

    def is_simple(self, ci: int | None = None) -> bool:
        bad = self._build()["self_cross"]
        return not any(ci is None or k1[0] == ci for k1, _ in bad)

    def crossings_along(self, ci: int) -> list[CrossingPoint]:
        """Crossings met by curve ``ci`` in order, starting from its first chord."""
        g = self._build()
        out = []
        for j in range(len(self.routes[ci])):
            out.extend(g["on_chord"][(ci, j)])
        return out

    def algebraic(self, c1: int, c2: int) -> int:
        return sum(X.sign_for(c1) for X in self.crossings_between(c1, c2))

    # faces ----------------------------------------------------------------

    def faces(self) -> list[Face]:
        g = self._build()
        schema = self.schema
        regions = []  # (polygon, data)
        for pi, nodes in enumerate(g["boundary"]):
            regions.extend((pi, r) for r in self._polygon_regions(pi, g))
        uf = _UnionFind()
        seg_owner: dict = {}
        vert_owner: dict = {}
        for ri, (pi, r) in enumerate(regions):
            uf.find(ri)
            for key in r["segs"]:
                if key in seg_owner:
                    uf.union(seg_owner[key], ri)
                else:
                    seg_owner[key] = ri
            for v in r["vertices"]:
                if v in vert_owner:
                    uf.union(vert_owner[v], ri)
                else:
                    vert_owner[v] = ri
        groups: dict[int, list[int]] = {}
        for ri in range(len(regions)):
            groups.setdefault(uf.find(ri), []).append(ri)
        faces = []
        for members in groups.values():
            segs, verts, corners, pieces = set(), set(), [], []
            for ri in members:
                r = regions[ri][1]
                segs |= set(r["segs"])
                verts |= set(r["vertices"])
                corners += r["corners"]
                pieces += r["pieces"]
            chi = len(members) - len(segs) + len(verts)
            punct = len(verts & schema.punctured_vertices)
            faces.append(Face([regions[ri] for ri in members], chi, punct, corners, pieces, verts))
        return faces

    def _polygon_regions(self, pi: int, g) -> list[dict]:
        nodes = g["boundary"][pi]
        M = len(nodes)
        schema = self.schema
        # half-edges are (edge id, forward); edges: ('s', i) boundary segment i -> i+1,
        # ('p', curve, chord, piece) chord piece
        ends: dict = {}
        rot: dict = {}

        def bnode(i):
            return ("b", i % M)

        for i in range(M):
            ends[("s", i)] = (bnode(i), bnode(i + 1))
        chord_at: dict[int, tuple] = {}
        for key in g["per_poly"][pi]:
            _, a, b = g["chords"][key]
            seq = [bnode(a)] + [("x", X.id) for X in g["on_chord"][key]] + [bnode(b)]
            for m in range(len(seq) - 1):
                ends[("p",) + key + (m,)] = (seq[m], seq[m + 1])
            chord_at[a] = (("p",) + key + (0,), True)
            chord_at[b] = (("p",) + key + (len(seq) - 2,), False)
        # rotation at boundary nodes: next segment, chord, previous segment (ccw)
        for i in range(M):
            out = [(("s", i), True)]
            if i in chord_at:
                out.append(chord_at[i])
            out.append((("s", (i - 1) % M), False))
            rot[bnode(i)] = out
        # rotation at crossings from chord directions
        xy = {X.id: X.xy for X in g["crossings"] if X.polygon == pi}
        around: dict = {}
        for eid, (u, v) in ends.items():
            if eid[0] != "p":
                continue
            if u[0] == "x":
                around.setdefault(u, []).append(((eid, True), v))
            if v[0] == "x":
                around.setdefault(v, []).append(((eid, False), u))

        def coord(node):
            return self._pt(node[1]) if node[0] == "b" else xy[node[1]]

        if self.angle_sort:
            for node, lst in around.items():
                here = coord(node)

                def key_of(item):
                    there = coord(item[1])
                    return (there[0] - here[0], there[1] - here[1])

                lst.sort(key=lambda it: functools.cmp_to_key(_angle_cmp)(key_of(it)))
                rot[node] = [h for h, _ in lst]
        else:
            # Counterclockwise from the first chord's outgoing piece, the second
            # chord's outgoing piece comes next exactly when it points left.
            by_id = {X.id: X for X in g["crossings"] if X.polygon == pi}
            for node, lst in around.items():
                X = by_id[node[1]]
                slot = {}
                for h, _ in lst:
                    (_, c, j, _), fwd = h
                    slot[((c, j) == X.chords[1], fwd)] = h
                if X.sign > 0:
                    order = [(False, True), (True, True), (False, False), (True, False)]
                else:
                    order = [(False, True), (True, False), (False, False), (True, True)]
                rot[node] = [slot[k] for k in order]

        def head(h):
            u, v = ends[h[0]]
            return v if h[1] else u

        def twin(h):
            return (h[0], not h[1])

        def nxt(h):
            v = head(h)
            r = rot[v]
            return r[r.index(twin(h)) - 1]

        seen = set()
        out = []
        for eid in ends:
            for fwd in (True, False):
                h = (eid, fwd)
                if h in seen or (eid[0] == "s" and not fwd):
                    continue
                segs, verts, corners, pieces = [], [], [], []
                cur = h
                while cur not in seen:
                    seen.add(cur)
                    e, f = cur
                    if e[0] == "s":
                        segs.append(g["seg_key"][pi][e[1]])
                    else:
                        pieces.append((e[1], e[2], e[3], f))
                    node = head(cur)
                    if node[0] == "x":
                        corners.append(node[1])
                    elif nodes[node[1]][0] == "c":
                        verts.append(schema.corner_vertex[(pi, nodes[node[1]][1])])
                    cur = nxt(cur)
                out.append(dict(segs=segs, vertices=verts, corners=corners, pieces=pieces))
        return out

    # moves ----------------------------------------------------------------

    def _remove_points(self, pids: Iterable[int]):
        pids = set(pids)
        for label in {self.edge_of[p] for p in pids}:
            self.edge_order[label] = [p for p in self.edge_order[label] if p not in pids]
        for p in pids:
            del self.edge_of[p], self.dir_of[p], self.curve_of[p]

    def normalize(self, ci: int) -> int:
        """Pull curve ``ci`` back across edges it touches and leaves on the same side.

        Only pairs adjacent among all strands on the edge are pulled, so the
        move never sweeps across another strand.  Returns the number of pairs
        removed.
        """
        removed = 0
        route = self.routes[ci]
        changed = True
        while changed and route:
            changed = False
            L = len(route)
            for k in range(L):
                a, b = route[k], route[(k + 1) % L]
                if a == b or self.edge_of[a] != self.edge_of[b] or self.dir_of[a] != -self.dir_of[b]:
                    continue
                order = self.edge_order[self.edge_of[a]]
                ia, ib = order.index(a), order.index(b)
                if abs(ia - ib) != 1:
                    continue
                if k + 1 < L:
                    del route[k:k + 2]
                else:
                    del route[k]
                    del route[0]
                self._remove_points([a, b])
                removed += 1
                changed = True
                break
        self._geom = None
        if not route:
            raise NotEssential(f"curve {self.names[ci] or ci} is contractible")
        return removed

    def bigons(self, moving: int) -> list[Face]:
        out = []
        for f in self.faces():
            if not f.is_disk or len(f.corners) != 2:
                continue
            curves = {p[0] for p in f.pieces}
            if moving in curves and len(curves) == 2:
                out.append(f)
        return out

    def _arc_points(self, ci: int, along: list, start: int, stop_id: int):
        """Route indices strictly between crossing ``along[start]`` and the next crossing."""
        X1 = along[start]
        X2 = along[(start + 1) % len(along)]
        assert X2.id == stop_id
        L = len(self.routes[ci])
        j1, j2 = X1.chord_of(ci), X2.chord_of(ci)
        if j1 == j2 and X2.param_on(ci) > X1.param_on(ci) and len(along) > 1:
            count = 0
        else:
            count = (j2 - j1) % L or L
        return j1, [(j1 + k) % L for k in range(1, count + 1)]

    def _arc_index(self, ci: int, along: list, chord: int, piece: int) -> int:
        base = sum(1 for X in along if X.chord_of(ci) < chord)
        return (base + piece - 1) % len(along)

    def _plan_bigon(self, moving: int, face: Face) -> dict:
        """Describe the push across ``face`` by point ids, which later moves keep valid."""
        xp = next(p for p in face.pieces if p[0] == moving)
        cp = next(p for p in face.pieces if p[0] != moving)
        c = cp[0]
        along_x = self.crossings_along(moving)
        along_c = self.crossings_along(c)
        gx = self._arc_index(moving, along_x, xp[1], xp[2])
        P1, P2 = along_x[gx], along_x[(gx + 1) % len(along_x)]
        _, x_inner = self._arc_points(moving, along_x, gx, P2.id)
        gc = self._arc_index(c, along_c, cp[1], cp[2])
        Q1, Q2 = along_c[gc], along_c[(gc + 1) % len(along_c)]
        assert {Q1.id, Q2.id} == {P1.id, P2.id}, "bigon corners disagree"
        _, c_inner = self._arc_points(c, along_c, gc, Q2.id)
        croute = self.routes[c]
        c_pts = [croute[k] for k in c_inner]
        forward = Q1.id == P1.id
        if not forward:
            c_pts.reverse()
        route = self.routes[moving]
        return dict(
            anchor=route[P1.chord_of(moving)],
            old=[route[k] for k in x_inner],
            c_pts=c_pts,
            forward=forward,
            left=cp[3],
            corners=frozenset((P1.id, P2.id)),
        )

    def _apply_plan(self, moving: int, plan: dict, alias: dict | None = None) -> None:
        """Carry out a planned push.  ``alias`` maps route points removed by
        earlier pushes in the same batch to the point that now precedes them."""
        alias = {} if alias is None else alias
        new_ids = []
        for e in plan["c_pts"]:
            d = self.dir_of[e] if plan["forward"] else -self.dir_of[e]
            label = self.edge_of[e]
            pid = self._new_point(moving, label, d)
            new_ids.append(pid)
            order = self.edge_order[label]
            i = order.index(e)
            # outside of the bigon is the right of c when the face is on its left;
            # right of c is earlier in edge order when c crosses forward
            before = plan["left"] == (self.dir_of[e] > 0)
            order.insert(i if before else i + 1, pid)
        route = self.routes[moving]
        L = len(route)
        anchor = plan["anchor"]
        while anchor in alias:
            anchor = alias[anchor]
        j = route.index(anchor)
        rotated = [route[(j + 1 + k) % L] for k in range(L)]
        old = plan["old"]
        assert rotated[:len(old)] == old, "bigon arc changed under an earlier move"
        self._remove_points(old)
        self.routes[moving] = new_ids + rotated[len(old):]
        if old:
            alias[old[-1]] = new_ids[-1] if new_ids else anchor
        self._geom = None

    def remove_bigon(self, moving: int, face: Face) -> None:
        """Push ``moving`` across the bigon ``face``, removing its two corners."""
        self._apply_plan(moving, self._plan_bigon(moving, face))

    def reduce(self, moving: int, rng=None, check: bool = True) -> int:
        """Remove bigons between ``moving`` and the other curves until none remain.

        With ``rng`` (a :class:`random.Random`) one randomly chosen bigon is
        removed per round.  Without it, every round removes a batch of bigons
        with pairwise disjoint corners, which is much faster on long curves.
        Returns the number of bigons removed.
        """
        self.normalize(moving)
        count = 0
        total = len(self.crossings())
        while True:
            bigons = self.bigons(moving)
            if not bigons:
                return count
            if rng is not None:
                plans = [self._plan_bigon(moving, rng.choice(bigons))]
            else:
                plans, used = [], set()
                for f in bigons:
                    plan = self._plan_bigon(moving, f)
                    if plan["corners"] & used:
                        continue
                    used |= plan["corners"]
                    plans.append(plan)
            alias: dict = {}
            for plan in plans:
                self._apply_plan(moving, plan, alias)
            self.normalize(moving)
            count += len(plans)
            if check:
                now = len(self.crossings())
                if now > total - 2 * len(plans):
                    raise AssertionError("bigon removal did not lower the crossing count")
                total = now

    def intersections_with(self, moving: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for X in self.crossings():
            cs = (X.chords[0][0], X.chords[1][0])
            if moving in cs:
                other = cs[1] if cs[0] == moving else cs[0]
                out[other] = out.get(other, 0) + 1
        return out


def check_simple(curve: EmbeddedCurve) -> None:
    lay = Layout.of([curve])
    if not lay.is_simple():
        raise NotSimple(f"{curve!r} crosses itself")


def check_essential(curve: EmbeddedCurve) -> None:
    lay = Layout.of([curve])
    if not lay.is_simple():
        raise NotSimple(f"{curve!r} crosses itself")
    lay.normalize(0)
    for f in lay.faces():
        if f.chi == 1 and f.punctures <= 1:
            kind = "a disk" if f.punctures == 0 else "a once-punctured disk"
            raise NotEssential(f"{curve.name or 'curve'} bounds {kind}")


def twist_image(lay: Layout, moving: int, exponents: dict[int, int], name: str = "") -> EmbeddedCurve:
    """Image of curve ``moving`` under the multitwist with the given fixed curves.

    Each fixed curve ``c`` is parametrised by ``theta`` in ``[0, 1)`` along its
    orientation and by ``h`` in ``[0, 1]`` across a thin band, ``h = 0`` on its
    right.  The strand of ``moving`` through a crossing at ``theta_X`` is
    replaced by the spiral ``theta = theta_X - n h``; where the spiral meets one
    of ``c``'s edge crossings it contributes a strand of the image, stacked in
    the band by ``h``.
    """
    along_x = lay.crossings_along(moving)
    # position of every event along each twisted curve
    theta: dict = {}
    for c, n in exponents.items():
        if n == 0:
            continue
        route = lay.routes[c]
        events = []
        for j, pid in enumerate(route):
            events.append(("p", pid))
            events.extend(("x", X.id) for X in lay._build()["on_chord"][(c, j)] if X.other(c) == moving)
        N = len(events)
        for k, ev in enumerate(events):
            theta[(c,) + ev] = Fraction(k, N)

    passes: dict[int, list] = {}  # crossing id -> ordered list of new point ids
    stacks: dict[int, list] = {}  # point of c -> list of (h, new point id)
    for X in along_x:
        c = X.other(moving)
        n = exponents.get(c, 0)
        if n == 0:
            continue
        tx = theta[(c, "x", X.id)]
        from_right = X.sign_for(moving) < 0  # moving enters the band at h = 0
        dh = 1 if from_right else -1
        along_c = (-n * dh) > 0
        items = []
        for pid in lay.routes[c]:
            te = theta[(c, "p", pid)]
            if n > 0:
                delta = (tx - te) % 1
            else:
                delta = (te - tx) % 1
            for k in range(abs(n)):
                h = (delta + k) / abs(n)
                d = lay.dir_of[pid] if along_c else -lay.dir_of[pid]
                new = lay._new_point(moving, lay.edge_of[pid], d)
                items.append((h, new))
                stacks.setdefault(pid, []).append((h, new))
        items.sort(reverse=not from_right)
        passes[X.id] = [new for _, new in items]

    route = []
    for j, pid in enumerate(lay.routes[moving]):
        route.append(pid)
        for X in lay._build()["on_chord"][(moving, j)]:
            route.extend(passes.get(X.id, []))
    pos_in_route = set(route)
    rank: dict[int, int] = {}
    for label, order in lay.edge_order.items():
        k = 0
        for pid in order:
            if pid in stacks:
                stack = sorted(stacks[pid], reverse=lay.dir_of[pid] < 0)
                for _, new in stack:
                    rank[new] = k
                    k += 1
            elif pid in pos_in_route:
                rank[pid] = k
                k += 1
    word = tuple((lay.edge_of[p], lay.dir_of[p], rank[p]) for p in route)
    for p in route:
        if p not in lay.routes[moving]:
            del lay.edge_of[p], lay.dir_of[p], lay.curve_of[p]
    return EmbeddedCurve(lay.schema, word, name)

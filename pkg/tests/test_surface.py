import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multitwist.surface import engine
from multitwist.surface.curve import CurveError, EmbeddedCurve, NotEssential, NotGeneralPosition, NotSimple
from multitwist.surface.layout import Layout, check_essential
from multitwist.surface.schema import BadPairing, NonOrientable, SchemaError, load_schema, standard_schema

# -- schemas ---------------------------------------------------------------------------


def test_standard_schemas_euler():
    t = load_schema({"polygons": [["x", "y", "x-", "y-"]]})
    assert (t.genus, t.n_punctures, t.euler_characteristic) == (1, 0, 0)
    assert standard_schema(5).euler_characteristic == -8


def test_marked_point_and_declared_genus():
    s = standard_schema(2, punctures=[(0, 0)])
    assert (s.genus, s.n_punctures, s.euler_characteristic) == (2, 1, -3)
    with pytest.raises(SchemaError):
        load_schema({"polygons": [["x", "y", "x-", "y-"]], "genus": 2})
    with pytest.raises(SchemaError):
        load_schema({"polygons": [["x", "y", "x-", "y-"]], "punctures": [[0, 0]], "n_punctures": 2})


def test_bad_gluings():
    with pytest.raises(BadPairing):
        load_schema({"polygons": [["x", "y", "x-"]]})
    with pytest.raises(NonOrientable):
        load_schema({"polygons": [["x", "x"]]})


def test_schema_json_roundtrip():
    s = standard_schema(2, "g2", punctures=[(0, 1)])
    t = load_schema(s.to_json())
    assert t.polygons == s.polygons and t.n_punctures == 1 and t.genus == 2


# -- curves ----------------------------------------------------------------------------


def test_curve_validation(genus2):
    s = genus2.schema
    with pytest.raises(CurveError):
        EmbeddedCurve.from_labels(s, ["zz"])
    with pytest.raises(NotGeneralPosition):
        EmbeddedCurve(s, (("x1", 1, 0), ("x1", 1, 0)))
    with pytest.raises(CurveError):
        EmbeddedCurve(s, ())


def test_inessential_and_nonsimple_detected(torus):
    s = torus.schema
    with pytest.raises(NotEssential):
        check_essential(EmbeddedCurve.from_labels(s, ["y", "y-"]))
    with pytest.raises(NotSimple):
        # (2, 0) drawn as a doubled loop crosses itself
        check_essential(EmbeddedCurve.from_labels(s, ["y@0", "y@1"]).canonical())


def test_canonical_and_reverse(genus2):
    c = genus2.curve("s")
    assert c.reversed().reversed().word == c.word
    assert c.canonical().key() == c.key()
    assert EmbeddedCurve.from_json(genus2.schema, c.to_json()).word == c.word


# -- intersection numbers ------------------------------------------------------------------


def test_torus_table(torus):
    c = torus.curves
    assert engine.geometric_intersection(c["h"], c["v"]) == 1
    assert engine.geometric_intersection(c["h2v"], c["v"]) == 2
    assert engine.geometric_intersection(c["h2v"], c["d"]) == 1
    assert engine.geometric_intersection(c["d"], c["e"]) == 2
    assert engine.algebraic_intersection(c["h"], c["v"]) == 1
    assert engine.algebraic_intersection(c["h"], c["v"].reversed()) == -1
    assert engine.algebraic_intersection(c["d"], c["d"]) == 0


def test_pushed_off_copy_reduces_to_zero(genus2):
    a = genus2.curve("g1")
    wiggly = engine.apply_multitwist([(genus2.curve("a1"), 1), ], engine.apply_multitwist([(genus2.curve("a1"), -1)], a))
    assert len(wiggly) >= len(a)
    assert engine.geometric_intersection(a, wiggly) == 0
    assert engine.isotopic(a, wiggly)


def test_figure1_table(figure1):
    names = figure1.extra["figure_curves"]
    data = engine.intersection_table([figure1.curve(k) for k in names], algebraic=False)
    for x in names:
        for y in names:
            if x < y:
                want = int(x[0] != y[0] and "d" not in (x, y) and x[1:] == y[1:])
                assert data.i(x, y) == want, (x, y)


torus_moves = st.lists(st.tuples(st.sampled_from(["h", "v"]), st.sampled_from([-1, 1])), max_size=4)


@given(w1=torus_moves, w2=torus_moves)
def test_torus_slopes_match_determinant(w1, w2, torus):
    c = torus.curves
    x = engine.apply_sequence([[(c[k], n)] for k, n in w1], c["h"])
    y = engine.apply_sequence([[(c[k], n)] for k, n in w2], c["v"])
    assert engine.geometric_intersection(x, y) == abs(engine.algebraic_intersection(x, y))


def random_genus2_curve(c, rng, steps=3):
    gens = [c.curves[k] for k in c.extra["generators"]]
    word = [[(rng.choice(gens), rng.choice((-1, 1)))] for _ in range(steps)]
    return engine.apply_sequence(word, rng.choice(gens))


@pytest.mark.parametrize("seed", range(4))
def test_bigon_removal_order_independent(genus2, seed):
    rng = random.Random(seed)
    x, y = random_genus2_curve(genus2, rng), random_genus2_curve(genus2, rng)
    base = engine.geometric_intersection(x, y)
    assert {engine.geometric_intersection(x, y, rng=random.Random(s)) for s in range(6)} == {base}
    assert engine.geometric_intersection(y, x) == base
    assert base >= abs(engine.algebraic_intersection(x, y))


def test_angle_sort_path_agrees(genus2):
    rng = random.Random(5)
    x, y = random_genus2_curve(genus2, rng), random_genus2_curve(genus2, rng)
    fast = engine.geometric_intersection(x, y)
    Layout.angle_sort = True
    try:
        assert engine.geometric_intersection(x, y) == fast
    finally:
        Layout.angle_sort = False


# -- twists --------------------------------------------------------------------------------


def test_twist_convention_pin(torus):
    c = torus.curves
    assert engine.isotopic(engine.apply_multitwist([(c["v"], 1)], c["h"]), c["d"])
    assert engine.isotopic(engine.apply_multitwist([(c["v"], -1)], c["h"]), c["e"])
    assert engine.isotopic(engine.apply_multitwist([(c["h"], 3)], c["h"]), c["h"])


@pytest.mark.parametrize("n", [-2, -1, 1, 3])
def test_twist_intersection_growth(torus, genus2, n):
    c = torus.curves
    img = engine.apply_multitwist([(c["v"], n)], c["h"])
    assert engine.geometric_intersection(img, c["h"]) == abs(n)
    g = genus2.curves
    img = engine.apply_multitwist([(g["y12"], n)], g["g1"])
    assert engine.geometric_intersection(img, g["g1"]) == abs(n) * 4


def test_multitwist_equals_sequential_product(genus2):
    g = genus2.curves
    a = g["s"]
    pair = [(g["b1"], 2), (g["b2"], -1)]
    joint = engine.apply_multitwist(pair, a)
    seq = engine.apply_sequence([[pair[0]], [pair[1]]], a)
    assert engine.isotopic(joint, seq, oriented=True)


def test_disjoint_family_required(genus2):
    g = genus2.curves
    with pytest.raises(engine.NotDisjoint):
        engine.apply_multitwist([(g["a1"], 1), (g["b1"], 1)], g["g1"])


def test_crossing_profile_examples(example23, torus):
    c = example23.curves
    p = engine.crossing_profile(c["a"], example23.twist("tC"), c)
    assert {r.id: m for r, m in p.multiplicities().items()} == {"c1": 2, "c2": 1, "c3": 1}
    assert sum(p.arc_flags) == 2
    t = torus.curves
    assert engine.crossing_profile(t["h"], [(t["h"], 1)]).sequence == ()
    p = engine.crossing_profile(t["h"], [(t["v"], -2)])
    assert p.arc_flags == (1,)


# -- homology ------------------------------------------------------------------------------


def test_homology_pairing_matches_engine(genus2):
    rng = random.Random(11)
    curves = [random_genus2_curve(genus2, rng, 2).renamed(f"r{k}") for k in range(5)]
    hb, classes, form = engine.classes_and_pairing(genus2.schema, curves + list(genus2.curves.values()))
    assert len(form) == 4
    assert classes["s"].is_zero()
    assert not classes["a1"].is_zero()


def test_homology_with_punctures():
    s = standard_schema(1, punctures=[(0, 0)])
    hb = engine.homology_basis(s)
    assert len(hb.form) == 2


def test_twist_homology_matches_engine(genus2):
    from multitwist.core import MultiTwist
    from multitwist.formulas import twist_homology

    g = genus2.curves
    hb = engine.homology_basis(genus2.schema)
    for fam, exps in ((["b1", "g1", "b2"], (1, -2, 3)), (["a1", "a2", "s"], (2, 1, -1))):
        t = MultiTwist.of(*zip(fam, exps))
        classes = {k: hb.class_of(g[k]) for k in fam}
        for x in ("a1", "b1", "g1", "y12"):
            img = engine.apply_multitwist(t, g[x], g)
            assert twist_homology(t, hb.class_of(g[x]), classes) == hb.class_of(img)


# -- mapping classes -----------------------------------------------------------------------


def test_filling_and_alexander(torus, genus2):
    t = torus.curves
    assert engine.fills(torus.tests())
    assert not engine.fills([genus2.curve("a1"), genus2.curve("b1")])
    assert engine.mapping_classes_equal([[(t["h"], 1)], [(t["v"], 1)], [(t["h"], 1)]],
                                        [[(t["v"], 1)], [(t["h"], 1)], [(t["v"], 1)]], torus.tests())
    assert not engine.mapping_classes_equal([[(t["h"], 1)]], [[(t["v"], 1)]], torus.tests())
    with pytest.raises(engine.TestSetNotFilling):
        engine.mapping_classes_equal([], [], [genus2.curve("a1")])
    g = genus2.curves
    assert not engine.mapping_classes_equal([[(g["a1"], 1)]], [[(g["a2"], 1)]], genus2.tests())


def test_orbit_sizes(torus):
    t = torus.curves
    assert engine.orbit_sizes([], [t["h"], t["v"]]) == {"h": 1, "v": 1}
    assert engine.orbit_sizes([[(t["v"], 1)]], [t["h"]], cap=6) == {"h": None}
    # the order-six rotation of the torus
    f = [[(t["h"], 1)], [(t["v"], 1)]]
    assert engine.orbit_sizes(f, [t["h"]], cap=8) == {"h": 3}

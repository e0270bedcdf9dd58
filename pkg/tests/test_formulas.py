import pytest
from hypothesis import given
from hypothesis import strategies as st

from multitwist.core import CrossingProfile, MultiTwist
from multitwist.formulas import (
    HomologyClass,
    InconsistentProfile,
    MissingClass,
    algebraic_pair_after_twist,
    hidden_formula,
    hidden_formula_value,
    ivanov_bound_check,
    positive_bound_check,
    reduced_exponent,
    same_sign,
    twist_homology,
)

TORUS_FORM = ((0, 1), (-1, 0))
x = HomologyClass((1, 0), TORUS_FORM)
y = HomologyClass((0, 1), TORUS_FORM)


def test_positive_bound_torus_example():
    r = positive_bound_check(1, 2, [(1, 1, 1)])
    assert r.holds and r.slack == 0
    assert positive_bound_check(3, 3, []).slack == 0


def test_ivanov_bound_examples():
    # the three-curve example with b = a: 0 >= -8 + 0
    assert ivanov_bound_check(0, 8, [(2, 2, 2), (-1, 1, 1), (1, 1, 1)]).slack == 8
    assert ivanov_bound_check(0, 10, [(3, 2, 2)]).slack == 6
    assert ivanov_bound_check(2, 2, []).holds
    assert not ivanov_bound_check(0, 0, [(3, 1, 1)])
    assert [reduced_exponent(n) for n in (-4, -2, 0, 1, 3)] == [2, 0, 0, 0, 1]


def test_hidden_formula_example23():
    t = MultiTwist.of(("c1", 2), ("c2", -1), ("c3", 1))
    p = CrossingProfile("a", t, ("c1", "c1", "c2", "c3"))
    assert hidden_formula(p) == 8
    assert hidden_formula(p, [(2, 2), (-1, 1), (1, 1)]) == 8
    with pytest.raises(InconsistentProfile):
        hidden_formula(p, [(2, 1), (1, 1), (1, 1)])
    assert hidden_formula(CrossingProfile("a", MultiTwist(), ())) == 0
    assert hidden_formula(CrossingProfile("a", MultiTwist.of(("c", 1)), ("c",))) == 1
    assert hidden_formula_value([(3, 2)], 2) == 12


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(0, 4)), min_size=1, max_size=4))
def test_same_sign_hidden_formula_is_quadratic_sum(per_curve):
    # for one sign every arc counts, so the sum collapses to sum |n| i^2
    names = [f"c{k}" for k in range(len(per_curve))]
    t = MultiTwist.of(*((nm, n) for nm, (n, _) in zip(names, per_curve)))
    seq = tuple(nm for nm, (_, i) in zip(names, per_curve) for _ in range(i))
    p = CrossingProfile("a", t, seq)
    assert hidden_formula(p) == sum(n * i * i for n, i in per_curve)


def test_homology_class_arithmetic():
    assert (x + y).coords == (1, 1) and (x - y).coords == (1, -1) and (-x).coords == (-1, 0)
    assert (3 * y).coords == (0, 3)
    assert x.pairing(y) == 1 and y.pairing(x) == -1 and x.pairing(x) == 0
    assert HomologyClass((0, 0), TORUS_FORM).is_zero()
    with pytest.raises(ValueError):
        HomologyClass((1, 0), ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        x + HomologyClass((1, 0, 0, 0), tuple(tuple(0 for _ in range(4)) for _ in range(4)))


def test_twist_homology_torus():
    t = MultiTwist.of(("y", 1))
    classes = {"y": y}
    assert twist_homology(t, x, classes) == x + y
    assert twist_homology(MultiTwist.of(("y", 2)), x, classes) == x + 2 * y
    assert twist_homology(t, y, classes) == y
    assert algebraic_pair_after_twist(t, x, y, classes) == 1
    assert algebraic_pair_after_twist(MultiTwist(), x, y, classes) == x.pairing(y)
    with pytest.raises(MissingClass):
        twist_homology(MultiTwist.of(("z", 1)), x, classes)


vec = st.tuples(*[st.integers(-3, 3)] * 4)
G2 = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


@given(vec, vec, st.lists(st.tuples(vec, st.integers(-3, 3)), max_size=3))
def test_pairing_after_twist_matches_action(v, w, comps):
    v, w = HomologyClass(v, G2), HomologyClass(w, G2)
    classes = {f"c{k}": HomologyClass(c, G2) for k, (c, _) in enumerate(comps)}
    t = MultiTwist.of(*((f"c{k}", n) for k, (_, n) in enumerate(comps)))
    if len(t) == 1:
        # a single twist acts symplectically
        tv, tw = twist_homology(t, v, classes), twist_homology(t, w, classes)
        assert tv.pairing(tw) == v.pairing(w)
    assert algebraic_pair_after_twist(t, v, w, classes) == twist_homology(t, v, classes).pairing(w)
    assert algebraic_pair_after_twist(t, v, v, classes) == -sum(
        n * v.pairing(classes[c.id]) ** 2 for c, n in t.components
    )


def test_same_sign():
    assert same_sign(MultiTwist.of(("a", 1), ("b", 3)))
    assert same_sign(MultiTwist.of(("a", -1)))
    assert same_sign(MultiTwist())
    assert not same_sign(MultiTwist.of(("a", 1), ("b", -1)))

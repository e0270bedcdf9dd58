import pytest
from hypothesis import given
from hypothesis import strategies as st

from multitwist.braid import (
    BraidDecomposition,
    BraidHomSpec,
    ChainInconsistent,
    CommonCurveExponentClash,
    CommutationFails,
    InvalidMultitwist,
    NotBraided,
    PreconditionViolated,
    ProfileMismatch,
    RelationFails,
    certify_with_oracle,
    classify_curve,
    decide_braided,
    delete_braided_pair,
    enumerate_table,
    factor_braid_hom,
    is_braided,
    pair_and_reindex,
    split_common,
)
from multitwist.core import CrossingProfile, IntersectionData, MultiTwist
from multitwist.surface import engine


def figure1_data(figure1):
    names = figure1.extra["figure_curves"]
    return engine.intersection_table([figure1.curve(k) for k in names], algebraic=False)


def with_common(t, m):
    return MultiTwist(t.components + ((MultiTwist.of(("d", m)).curves[0], m),))


# -- pair types T1-T5 ----------------------------------------------------------


def test_table_has_exactly_five_rows():
    rows = enumerate_table()
    assert rows == [("T1", (0, None, 0)), ("T2", (1, 2, 0)), ("T3", (1, 1, 1)), ("T4", (1, 1, 0)), ("T5", (2, 1, 0))]
    assert enumerate_table(6, 6, 6) == rows


def test_classify_examples():
    tB = MultiTwist.of(("b1", 1), ("b2", 1))
    data = IntersectionData.from_triples([("a", "b1", 1), ("a", "b2", 0), ("b1", "b2", 0)])
    prof = CrossingProfile("a", tB, ("b1",))
    assert classify_curve("a", tB, data, prof, "b1").tag == "T3"
    # i_ab = 2 with |n| = 2: the b_i term alone is 6
    tB2 = MultiTwist.of(("b", 2))
    d2 = IntersectionData.from_triples([("a", "b", 2)])
    assert classify_curve("a", tB2, d2, CrossingProfile("a", tB2, ("b", "b")), "b").tag == "Invalid"
    # type 1: disjoint from its partner, crosses two others with opposite signs
    tB3 = MultiTwist.of(("b", 3), ("p", 1), ("q", -1))
    d3 = IntersectionData.from_triples([("a", "b", 0), ("a", "p", 1), ("a", "q", 1), ("b", "p", 0), ("b", "q", 0), ("p", "q", 0)])
    t = classify_curve("a", tB3, d3, CrossingProfile("a", tB3, ("p", "q")), "b")
    assert (t.tag, t.evidence) == ("T1", (0, 3, 0))
    with pytest.raises(ProfileMismatch):
        classify_curve("a", tB3, d3, CrossingProfile("a", tB3, ("p",)), "b")
    with pytest.raises(ProfileMismatch):
        classify_curve("z", tB3, d3, CrossingProfile("a", tB3, ("p", "q")), "b")


def test_classify_type4_needs_one_double_partner():
    tB = MultiTwist.of(("b", 1), ("p", -2), ("q", -1))
    d = IntersectionData.from_triples([("a", "b", 1), ("a", "p", 1), ("a", "q", 0)])
    assert classify_curve("a", tB, d, CrossingProfile("a", tB, ("b", "p")), "b").tag == "T4"
    tB = MultiTwist.of(("b", 1), ("p", -1))
    d = IntersectionData.from_triples([("a", "b", 1), ("a", "p", 1)])
    assert classify_curve("a", tB, d, CrossingProfile("a", tB, ("b", "p")), "b").tag == "Invalid"


# -- decomposition ----------------------------------------------------------------------


def test_pairing_examples(figure1):
    data = figure1_data(figure1)
    tA, tB = figure1.twist("tA"), figure1.twist("tB")
    p = pair_and_reindex(tA, tB, data)
    assert p.ok and [(a.id, b.id) for a, b, _ in p.pairs] == [("a1", "b1"), ("a2", "b2"), ("a3", "b3"), ("a4", "b4")]
    assert pair_and_reindex(tA, tA, data) == pair_and_reindex(tA, tA, data) and pair_and_reindex(tA, tA, data).pairs == ()
    d = IntersectionData.from_triples([("a", "b", 1)])
    bad = pair_and_reindex(MultiTwist.of(("a", 1)), MultiTwist.of(("b", 2)), d)
    assert not bad.ok and bad.failure == "exponent multiset mismatch"


def test_split_common():
    tA = MultiTwist.of(("a", 1), ("d", -2))
    tB = MultiTwist.of(("b", 1), ("d", -2))
    a, b, c = split_common(tA, tB)
    assert (a, b, c) == (MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1)), MultiTwist.of(("d", -2)))
    assert split_common(MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1)))[2] == MultiTwist()
    with pytest.raises(CommonCurveExponentClash):
        split_common(MultiTwist.of(("d", 2)), MultiTwist.of(("d", 3)))


def test_delete_pair():
    d = IntersectionData.from_triples([("a", "b", 1), ("a", "c", 1), ("b", "c", 0)])
    assert delete_braided_pair(MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1)), ("a", "b"), d) == (MultiTwist(), MultiTwist())
    with pytest.raises(PreconditionViolated):
        delete_braided_pair(MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1), ("c", 1)), ("a", "b"), d)


@pytest.mark.parametrize("m", [-2, -1, 0, 1, 2])
def test_decide_figure1_and_example13(figure1, m):
    data = figure1_data(figure1)
    tA, tB = figure1.twist("tA"), figure1.twist("tB")
    if m:
        tA, tB = with_common(tA, m), with_common(tB, m)
    r = decide_braided(tA, tB, data)
    assert isinstance(r, BraidDecomposition)
    assert len(r.pairs) == 4 and r.common == (MultiTwist.of(("d", m)) if m else MultiTwist())
    r.check(data)
    a, b = r.multitwists()
    assert a.same_as(tA) and b.same_as(tB)


def test_decide_negative_cases():
    d = IntersectionData.from_triples([("a", "b", 2)])
    r = decide_braided(MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1)), d)
    assert isinstance(r, NotBraided)
    assert r.residue_a == MultiTwist.of(("a", 1)) and r.residue_b == MultiTwist.of(("b", 1))
    clash = decide_braided(MultiTwist.of(("d", 2)), MultiTwist.of(("d", 3)), IntersectionData())
    assert isinstance(clash, NotBraided) and "exponent" in clash.reason
    with pytest.raises(InvalidMultitwist):
        decide_braided(MultiTwist.of(("a", 1), ("b", 1)), MultiTwist(), d)
    assert is_braided(MultiTwist(), MultiTwist(), d)


# -- invariance properties on random abstract tables --------------------------------------

A_IDS = ["a1", "a2", "a3"]
B_IDS = ["b1", "b2", "b3"]


@st.composite
def abstract_instance(draw):
    na, nb = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    a_ids, b_ids = A_IDS[:na], B_IDS[:nb]
    exps = st.sampled_from([-2, -1, 1, 2])
    tA = MultiTwist.of(*((k, draw(exps)) for k in a_ids))
    tB = MultiTwist.of(*((k, draw(exps)) for k in b_ids))
    if draw(st.booleans()):
        tB = MultiTwist.of(*((k, tA.exponent(a)) for k, a in zip(b_ids, a_ids)), *((k, draw(exps)) for k in b_ids[na:]))
    triples = [(x, y, 0) for i, x in enumerate(a_ids) for y in a_ids[i + 1:]]
    triples += [(x, y, 0) for i, x in enumerate(b_ids) for y in b_ids[i + 1:]]
    diag = draw(st.booleans())
    for i, x in enumerate(a_ids):
        for j, y in enumerate(b_ids):
            v = (1 if i == j else 0) if diag and draw(st.integers(0, 4)) else draw(st.integers(0, 2))
            triples.append((x, y, v))
    return tA, tB, IntersectionData.from_triples(triples)


def reference_braided(tA, tB, data):
    # the canonical form read off directly: a perfect matching by single crossings
    if sorted(tA.exponents.values()) != sorted(tB.exponents.values()):
        return False
    for a, n in tA.components:
        hits = [(b, m) for b, m in tB.components if data.i(a, b)]
        if len(hits) != 1 or data.i(a, hits[0][0]) != 1 or hits[0][1] != n or abs(n) != 1:
            return False
    for b, _ in tB.components:
        if sum(1 for a in tA.curves if data.i(a, b)) != 1:
            return False
    return True


@given(abstract_instance(), st.randoms(use_true_random=False))
def test_verdict_invariances(inst, rnd):
    tA, tB, data = inst
    verdict = is_braided(tA, tB, data)
    assert verdict == reference_braided(tA, tB, data)
    assert is_braided(tB, tA, data) == verdict
    ca, cb = list(tA.components), list(tB.components)
    rnd.shuffle(ca)
    rnd.shuffle(cb)
    assert is_braided(MultiTwist(tuple(ca)), MultiTwist(tuple(cb)), data) == verdict
    names = A_IDS + B_IDS
    perm = names[:]
    rnd.shuffle(perm)
    ren = dict(zip(names, perm))
    rA = MultiTwist.of(*((ren[c.id], n) for c, n in tA.components))
    rB = MultiTwist.of(*((ren[c.id], n) for c, n in tB.components))
    assert is_braided(rA, rB, data.relabel(ren)) == verdict
    assert is_braided(tA.inverse(), tB.inverse(), data) == verdict
    r = decide_braided(tA, tB, data)
    if verdict:
        r.check(data)
        # confluence: the decomposition does not depend on component order
        assert decide_braided(MultiTwist(tuple(ca)), MultiTwist(tuple(cb)), data) == r


# -- factorization ------------------------------------------------------------------------


B3_DATA = IntersectionData.from_triples([("a1", "b1", 1), ("a1", "d", 0), ("b1", "d", 0)])


def test_factor_b3_chain():
    images = (MultiTwist.of(("a1", 1), ("d", 1)), MultiTwist.of(("b1", 1), ("d", 1)))
    f = factor_braid_hom(BraidHomSpec(3, images), B3_DATA)
    assert [[c.id for c in ch.curves] for ch in f.chains] == [["a1", "b1"]]
    assert f.cyclic == MultiTwist.of(("d", 1))
    assert all(g.same_as(w) for g, w in zip(f.reassemble(2), images))


def test_factor_trivial_and_figure1(figure1):
    f = factor_braid_hom(BraidHomSpec(3, (MultiTwist(), MultiTwist())), IntersectionData())
    assert f.chains == () and f.cyclic == MultiTwist()
    data = figure1_data(figure1)
    spec = BraidHomSpec(3, (MultiTwist.of(("a1", 1), ("a2", 1)), MultiTwist.of(("b1", 1), ("b2", 1))))
    f = factor_braid_hom(spec, data)
    assert len(f.chains) == 2 and f.cyclic == MultiTwist()


def test_factor_rejections():
    with pytest.raises(ValueError):
        BraidHomSpec(3, (MultiTwist(),))
    bad = IntersectionData.from_triples([("a1", "b1", 2)])
    with pytest.raises(RelationFails):
        factor_braid_hom(BraidHomSpec(3, (MultiTwist.of(("a1", 1)), MultiTwist.of(("b1", 1)))), bad)
    # s1 and s3 share support: the commutation check refuses rather than guesses
    chain = IntersectionData.from_triples(
        [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)]
    )
    with pytest.raises(CommutationFails) as e:
        factor_braid_hom(BraidHomSpec(4, (MultiTwist.of(("a", 1)), MultiTwist.of(("b", 1)), MultiTwist.of(("c", 1)))), chain)
    assert e.value.flag == "support-overlap"
    assert issubclass(ChainInconsistent, ValueError)


def test_factor_json_spec():
    spec = BraidHomSpec.from_json({"n": 3, "images": [{"components": [["a1", 1]]}, {"components": [["b1", 1]]}]})
    f = factor_braid_hom(spec, B3_DATA)
    assert f.to_json() == {"chains": [{"curves": ["a1", "b1"], "sign": 1}], "cyclic": {"components": []}}


# -- oracle -------------------------------------------------------------------------------


def test_oracle_figure1(figure1):
    cert = certify_with_oracle(figure1.twist("tA"), figure1.twist("tB"), figure1.curves, figure1.tests(), orbit_cap=3)
    assert cert.verdict and cert.oracle and cert.agree
    assert {t.tag for t in cert.types.values()} == {"T3"}
    assert all(cert.pairs_mapped.values())
    assert set(cert.orbits.values()) == {2}


def test_oracle_genus2_double_crossing(genus2):
    # i(y12, g1) = 2: Not braided, and the Alexander check agrees
    cert = certify_with_oracle(MultiTwist.of(("y12", 1)), MultiTwist.of(("g1", 1)), genus2.curves, genus2.tests())
    assert not cert.verdict and cert.agree

import random
from itertools import product

import pytest

from catoids import (Quantale, Sampling, build_lattice, chain, check_quantale, derived_laws_quantale,
                     diamonds_boxes, kleene_star, load_fixture, pair_groupoid, path_catoid,
                     powerset_quantale, with_explicit_modal)
from catoids.errors import MalformedStructure, MissingDecoration
from catoids.quantale import modular_law, q0, strong_gelfand

from oracles import digraph_paths, rel_closure, relcomp

TIERS = ("plain", "modal", "involutive", "dedekind", "boolean")


def pairs_of(P, i):
    return {tuple(int(v) for v in lab.strip("()").split(",")) for lab in P.lattice.members(i)}


def idx_of(P, R):
    return P.lattice.mask(f"({a},{b})" for a, b in R)


@pytest.fixture(scope="module")
def rel2():
    return powerset_quantale(pair_groupoid([0, 1]), "dedekind")


@pytest.fixture(scope="module")
def rel3():
    return powerset_quantale(pair_groupoid([0, 1, 2]), "dedekind")


def test_two_element_quantale_all_tiers():
    Q = load_fixture("bool2q")
    for t in TIERS:
        assert check_quantale(Q, t).ok
    assert kleene_star(Q, Q.lattice.bot) == Q.unit and kleene_star(Q, Q.unit) == Q.unit
    assert derived_laws_quantale(Q).ok


def test_relation_algebra_all_tiers(rel2):
    assert rel2.n == 16
    for t in TIERS:
        assert check_quantale(rel2, t).ok, t
    assert derived_laws_quantale(rel2).ok


def test_relation_operations_match_oracle(rel3):
    rng = random.Random(7)
    for _ in range(300):
        a, b = rng.randrange(rel3.n), rng.randrange(rel3.n)
        R, S = pairs_of(rel3, a), pairs_of(rel3, b)
        assert pairs_of(rel3, rel3.mul(a, b)) == relcomp(R, S)
        assert pairs_of(rel3, rel3.dom(a)) == {(x, x) for x, _ in R}
        assert pairs_of(rel3, rel3.cod(a)) == {(y, y) for _, y in R}
        assert pairs_of(rel3, rel3.conv(a)) == {(y, x) for x, y in R}
    assert pairs_of(rel3, rel3.unit) == {(x, x) for x in range(3)}


def test_star_is_reflexive_transitive_closure(rel3):
    R = {(0, 1), (1, 2)}
    star = kleene_star(rel3, idx_of(rel3, R))
    assert pairs_of(rel3, star) == rel_closure(R, range(3)) == {(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)}
    rng = random.Random(3)
    for _ in range(40):
        a = rng.randrange(rel3.n)
        assert pairs_of(rel3, kleene_star(rel3, a, verify=False)) == rel_closure(pairs_of(rel3, a), range(3))


def test_star_of_edges_is_all_paths():
    verts = ["v1", "v2", "v3", "v4"]
    edges = [("e1", "v2", "v1"), ("e2", "v2", "v3"), ("e3", "v3", "v4")]
    C = path_catoid(verts, edges)
    P = powerset_quantale(C)
    E = P.lattice.mask(["(v2,e1,v1)", "(v2,e2,v3)", "(v3,e3,v4)"])
    got = P.lattice.members(kleene_star(P, E))
    want = {p[0] if len(p) == 1 else "(" + ",".join(p) + ")" for p in digraph_paths(verts, edges)}
    assert got == want


def test_diamond_is_preimage_and_galois(rel2):
    ops, rep = diamonds_boxes(rel2)
    assert rep.ok, [c.name for c in rep.failures()]
    tests = q0(rel2)
    assert len(tests) == 4
    for a in range(rel2.n):
        R = pairs_of(rel2, a)
        assert ops.fdia(a, rel2.lattice.bot) == rel2.lattice.bot
        for p in tests:
            P = {x for x, _ in pairs_of(rel2, p)}
            pre = {x for x, y in R if y in P}
            assert pairs_of(rel2, ops.fdia(a, p)) == {(x, x) for x in pre}
            assert ops.fdia(rel2.unit, p) == p
            # box right adjoint to the forward diamond, computed by hand
            box = {y for y in range(2) if all(x in P for x, y2 in R if y2 == y)}
            assert pairs_of(rel2, ops.bbox(a, p)) == {(y, y) for y in box}
            for q in tests:
                assert rel2.lattice.leq(ops.fdia(a, p), q) == rel2.lattice.leq(p, ops.bbox(a, q))


def test_boxes_need_boolean():
    Q = load_fixture("domnotunique")
    ops, rep = diamonds_boxes(Q)
    with pytest.raises(MissingDecoration):
        ops.fbox(0, 0)
    assert "box laws" in rep


def test_diamonds_need_modal():
    with pytest.raises(MissingDecoration):
        diamonds_boxes(load_fixture("aabot"))


def test_aabot_fixture():
    Q = load_fixture("aabot")
    a = Q.idx("a")
    assert check_quantale(Q, "involutive").ok
    assert not strong_gelfand(Q, a)
    r = check_quantale(Q, "dedekind")
    assert r["modular law"].failed and r["Dedekind law"].failed


def test_diamond_fixture():
    Q = load_fixture("diamond")
    assert check_quantale(Q, "involutive").ok
    assert all(strong_gelfand(Q, x) for x in range(Q.n))
    one, a, top = Q.idx("1"), Q.idx("a"), Q.idx("top")
    assert not modular_law(Q, one, a, top)
    assert check_quantale(Q, "dedekind")["modular law"].failed


def test_non_unique_decoration():
    Q = load_fixture("domnotunique")
    assert check_quantale(Q, "modal").ok and check_quantale(Q, "dedekind").ok
    E = with_explicit_modal(Q)
    assert check_quantale(E, "modal").ok
    a = Q.idx("a")
    assert Q.dom(a) == Q.lattice.top and E.dom(a) == a
    r = derived_laws_quantale(Q)
    assert r.ok and r.facts["installed decoration is explicit"] is False


def test_boolean_dedekind_decoration_is_unique(rel2):
    r = derived_laws_quantale(rel2)
    assert r["boolean: installed decoration is explicit"].passed


def test_forced_converse_failure():
    Q = load_fixture("bool2q")
    L = Q.lattice
    bad = Q.with_decorations(conv=[L.top, L.bot])
    r = check_quantale(bad, "involutive")
    assert not r.ok and r.failures()[0].witness is not None


def test_missing_decorations():
    Q = load_fixture("aabot")
    with pytest.raises(MissingDecoration):
        check_quantale(Q, "modal")
    P = Quantale(Q.lattice, Q.table(), Q.unit)
    with pytest.raises(MissingDecoration):
        check_quantale(P, "involutive")
    with pytest.raises(ValueError):
        check_quantale(P, "lax")


def test_malformed_tables():
    L = chain(["0", "1"])
    with pytest.raises(MalformedStructure):
        Quantale.from_labels(L, {("0", "0"): "0"}, "1")
    with pytest.raises(MalformedStructure):
        Quantale(L, [[0]], 1)


def test_non_distributive_composition_caught():
    L = chain(["0", "a", "1"])
    # meet is a quantale on a chain; a constant-top product is not
    comp = {(x, y): ("0" if "0" in (x, y) else "1") for x in "0a1" for y in "0a1"}
    Q = Quantale.from_labels(L, comp, "1")
    assert not check_quantale(Q).ok


def test_chain_meet_quantale():
    L = chain(["0", "a", "1"])
    comp = {(x, y): min(x, y, key="0a1".index) for x in "0a1" for y in "0a1"}
    Q = Quantale.from_labels(L, comp, "1", dom={x: x for x in "0a1"}, cod={x: x for x in "0a1"},
                             conv={x: x for x in "0a1"})
    for t in ("plain", "modal", "involutive", "dedekind"):
        assert check_quantale(Q, t).ok
    assert not check_quantale(Q, "boolean").ok
    # Q_dom = Q: composition is meet
    r = derived_laws_quantale(Q)
    assert r.ok


def test_sampled_regime_reports_itself(rel3):
    r = check_quantale(rel3, "plain", Sampling(limit=1000, samples=200, seed=1))
    assert r.ok and r.facts["regime"].startswith("sampled")
    assert check_quantale(load_fixture("bool2q")).facts["regime"] == "exhaustive"


def test_sampling_is_deterministic(rel3):
    sm = Sampling(limit=10, samples=50, seed=5)
    assert list(sm.tuples(range(rel3.n), 3, "x")) == list(sm.tuples(range(rel3.n), 3, "x"))

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from catoids import (FiniteCatoid, FiniteGroupoid, check_catoid, check_groupoid, check_lazy,
                     check_morphism, concat_lazy, derived_laws_catoid, discrete_catoid,
                     load_fixture, monoid_catoid, opposite, pair_groupoid, path_catoid, shuffle_lazy)
from catoids.catoid import shuffle
from catoids.errors import CyclicDigraph, MalformedStructure
from catoids.search import SearchSpec, catoid_of, search

from oracles import catoid_laws, digraph_paths

EDGES = [("e1", "v2", "v1"), ("e2", "v2", "v3"), ("e3", "v3", "v4")]
VERTS = ["v1", "v2", "v3", "v4"]


def one_point():
    return FiniteCatoid.from_labels(["e"], {("e", "e"): ["e"]}, {"e": "e"}, {"e": "e"})


def labelled(C):
    comp = {(C.label(x), C.label(y)): set(C.members(C.comp[x][y]))
            for x in range(C.n) for y in range(C.n)}
    s = {C.label(x): C.label(C.src[x]) for x in range(C.n)}
    t = {C.label(x): C.label(C.tgt[x]) for x in range(C.n)}
    return C.carrier, comp, s, t


def test_discrete():
    r = check_catoid(discrete_catoid(["a", "b"]))
    assert r.ok and r.facts["is_local"] and r.facts["is_functional"] and not r.facts["is_total"]


def test_one_point():
    r = check_catoid(one_point())
    assert r.ok and r.facts["is_local"] and r.facts["is_functional"] and r.facts["is_total"]
    assert derived_laws_catoid(one_point()).ok


def test_broken_left_unit_has_witness():
    C = FiniteCatoid.from_labels(["e", "a"], {("e", "e"): ["e"], ("a", "e"): ["a"]},
                                 {"e": "e", "a": "e"}, {"e": "e", "a": "e"})
    r = check_catoid(C)
    law = r["left unit"]
    assert law.failed and law.witness["args"] == ["a"]
    assert r["right unit"].passed


def test_malformed_labels():
    with pytest.raises(MalformedStructure):
        FiniteCatoid.from_labels(["a"], {("a", "a"): ["z"]}, {"a": "a"}, {"a": "a"})
    with pytest.raises(MalformedStructure):
        FiniteCatoid.from_labels(["a", "b"], {}, {"a": "a"}, {"a": "a", "b": "b"})


def test_pair_groupoid():
    G = pair_groupoid([0, 1])
    assert G.n == 4 and [G.label(u) for u in G.units()] == ["(0,0)", "(1,1)"]
    assert check_groupoid(G).ok
    assert derived_laws_catoid(G).ok
    for (a, b), (c, d) in product(product(range(2), repeat=2), repeat=2):
        assert G.compose(f"({a},{b})", f"({c},{d})") == ({f"({a},{d})"} if b == c else set())


def test_groupoid_identity_inverse_fails():
    G = pair_groupoid([0, 1])
    bad = FiniteGroupoid(G.carrier, G.comp, G.src, G.tgt, list(range(4)))
    r = check_groupoid(bad)
    law = r["x x^- = {s(x)}"]
    assert law.failed and law.witness["args"] == ["(0,1)"]


def test_one_point_groupoid():
    G = FiniteGroupoid(["e"], [[1]], [0], [0], [0])
    assert check_groupoid(G).ok


def test_path_catoid_matches_enumeration():
    C = path_catoid(VERTS, EDGES)
    paths = digraph_paths(VERTS, EDGES)
    assert C.n == len(paths) == 8
    r = check_catoid(C)
    assert r.ok and r.facts["is_local"]
    assert derived_laws_catoid(C).ok


def test_path_catoid_rejects_cycles():
    with pytest.raises(CyclicDigraph):
        path_catoid(["a", "b"], [("f", "a", "b"), ("g", "b", "a")])


def test_opposite():
    C = path_catoid(VERTS, EDGES)
    O = opposite(C)
    assert opposite(O) == C
    r = check_catoid(O)
    assert r.ok and r.facts["is_local"]
    # the source of a path in the opposite is its old target
    p = C.idx("(v2,e2,v3,e3,v4)")
    assert O.label(O.src[p]) == "v4" and O.label(O.tgt[p]) == "v2"
    X = load_fixture("local2catoid").dimension(0)
    assert opposite(opposite(X)) == X


def test_identity_and_constant_morphisms():
    C = discrete_catoid(["a", "b"])
    assert check_morphism(lambda x: x, C, C, bounded=True).ok
    m = check_morphism({"a": "b", "b": "b"}, C, C, bounded=True)
    assert m.ok
    exact = m["f(xy) = f(x)f(y)"]
    assert exact.failed


def test_morphism_breaking_source():
    G = pair_groupoid([0, 1])
    f = {"(0,0)": "(0,1)", "(0,1)": "(0,1)", "(1,0)": "(1,0)", "(1,1)": "(1,1)"}
    r = check_morphism(f, G, G)
    assert r["f.s = s.f"].failed and r["f.s = s.f"].witness is not None


def test_monoid_catoid():
    table = {(x, y): (x + y) % 3 for x in range(3) for y in range(3)}
    C = monoid_catoid(table)
    r = check_catoid(C)
    assert r.ok and r.facts["is_total"] and r.facts["units"] == [0]


def test_shuffle_fibre():
    L = shuffle_lazy("ab")
    assert "ab" in shuffle("a", "b") and "ba" in shuffle("a", "b")
    assert L.fibre("ab") == {("", "ab"), ("a", "b"), ("b", "a"), ("ab", "")}
    for y, z in L.fibre("aab"):
        assert "aab" in shuffle(y, z)
    assert check_lazy(L).ok
    assert check_lazy(concat_lazy("ab")).ok


def test_shuffle_recursion_by_hand():
    # shuffles of v and w are exactly the interleavings, counted by a binomial
    from math import comb
    for v, w in [("ab", "c"), ("ab", "cd"), ("a", "")]:
        assert len(shuffle(v, w)) == comb(len(v) + len(w), len(v))


@pytest.mark.parametrize("C", [discrete_catoid("ab"), pair_groupoid([0, 1]),
                               path_catoid(VERTS, EDGES), one_point()],
                         ids=["discrete", "pair", "path", "one"])
def test_checker_matches_oracle_on_constructors(C):
    ref = catoid_laws(*labelled(C))
    r = check_catoid(C)
    assert all(ref.values())
    assert {k: r[k].passed for k in ref} == ref
    assert set(r.facts["units"]) == {C.label(C.src[x]) for x in range(C.n)}


@st.composite
def random_structure(draw):
    n = draw(st.integers(1, 3))
    full = (1 << n) - 1
    comp = [[draw(st.integers(0, full)) for _ in range(n)] for _ in range(n)]
    s = [draw(st.integers(0, n - 1)) for _ in range(n)]
    t = [draw(st.integers(0, n - 1)) for _ in range(n)]
    return FiniteCatoid([f"x{i}" for i in range(n)], comp, s, t)


@settings(max_examples=300, deadline=None)
@given(random_structure())
def test_checker_matches_oracle_random(C):
    ref = catoid_laws(*labelled(C))
    r = check_catoid(C)
    assert {k: r[k].passed for k in ref} == ref


@settings(max_examples=100, deadline=None)
@given(random_structure())
def test_opposite_preserves_axioms(C):
    assert check_catoid(opposite(C)).ok == check_catoid(C).ok


def all_catoids(n):
    res = search(SearchSpec("catoid", size=n, constraints=("catoid",), prune_isomorphs=True))
    return [catoid_of(X) for X in res.found]


def test_derived_laws_hold_on_every_small_catoid():
    count = 0
    for n in (1, 2, 3):
        for C in all_catoids(n):
            assert check_catoid(C).ok
            r = derived_laws_catoid(C)
            assert r.ok, r.failures()
            count += 1
    assert count > 10

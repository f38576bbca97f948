import pytest
from hypothesis import given, settings, strategies as st

from catoids import (NCatoid, cells, check_ncatoid, check_npcatoid, derived_laws_ncatoid,
                     globular_laws, is_strong, load_fixture, pair_groupoid, reduced_implies_full)
from catoids.errors import BoundExceeded, MalformedStructure, MissingInverseMap
from catoids.ncatoid import interchange_sides
from catoids.search import St2, SearchSpec, search

from oracles import two_catoid_full

TWO_DIM = ["local2catoid", "functional2catoid", "twocategory"]


def trivial():
    return NCatoid(["e"], [[[1]], [[1]]], [[0], [0]], [[0], [0]], {1: [0], 2: [0]}, p=0)


def oracle(X):
    lab = X.label
    blocks = []
    for k in range(2):
        comp = {(lab(x), lab(y)): {lab(i) for i in range(X.n) if X.comps[k][x][y] >> i & 1}
                for x in range(X.n) for y in range(X.n)}
        s = {lab(x): lab(X.srcs[k][x]) for x in range(X.n)}
        t = {lab(x): lab(X.tgts[k][x]) for x in range(X.n)}
        blocks.append((comp, s, t))
    (c0, s0, t0), (c1, s1, t1) = blocks
    return two_catoid_full(X.carrier, c0, c1, s0, t0, s1, t1)


@pytest.mark.parametrize("name", TWO_DIM)
def test_fixtures_pass_full_and_reduced(name):
    X = load_fixture(name)
    assert check_ncatoid(X).ok and check_ncatoid(X, "reduced").ok
    assert reduced_implies_full(X).ok
    assert oracle(X)
    assert globular_laws(X).ok
    assert derived_laws_ncatoid(X).ok


def test_local_2catoid_facts():
    X = load_fixture("local2catoid")
    r = check_ncatoid(X)
    assert r.facts["is_local"] and r.facts["functional_by_dim"] == [False, True]
    law = is_strong(X)["s1(x *0 y) = s1(x) *0 s1(y)"]
    assert law.failed and law.witness["args"] == ["a", "c"]
    assert cells(X, 0) == {"b"} and cells(X, 1) == {"a", "b"} and cells(X, 2) == {"a", "b", "c"}


def test_functional_2catoid_not_strong():
    X = load_fixture("functional2catoid")
    law = is_strong(X)["s1(x *0 y) = s1(x) *0 s1(y)"]
    assert law.failed and law.witness["args"] == ["a", "a"]


def test_two_category_strong_and_cells():
    X = load_fixture("twocategory")
    r = check_ncatoid(X)
    assert r.facts["is_category"] and is_strong(X).ok
    # s1 is the identity, so every element is a 1-cell
    assert cells(X, 0) == {"b"} and cells(X, 1) == {"a", "b"}
    lhs, rhs = interchange_sides(X, 0, 1, "b", "a", "b", "a")
    assert lhs == frozenset() and rhs == frozenset({"b"})


def test_one_dimensional_cells_are_units():
    G = pair_groupoid([0, 1])
    X = NCatoid.from_catoid(G)
    assert cells(X, 0) == {G.label(u) for u in G.units()}
    assert check_npcatoid(X).ok


def test_trivial_two_catoid():
    X = trivial()
    assert check_ncatoid(X).ok and check_npcatoid(X).ok and is_strong(X).ok


def test_identity_inverse_fails():
    X = load_fixture("local2catoid")
    Y = NCatoid(X.carrier, X.comps, X.srcs, X.tgts, {2: list(range(X.n))}, p=1)
    r = check_npcatoid(Y)
    assert not r.ok
    # c has distinct 1-source and 1-target
    assert any(c.witness and c.witness["args"] == ["c"] for c in r.failures())


def test_missing_inverse():
    X = load_fixture("local2catoid")
    with pytest.raises(MissingInverseMap):
        check_npcatoid(X)
    Y = NCatoid(X.carrier, X.comps, X.srcs, X.tgts, {}, p=0)
    with pytest.raises(MissingInverseMap):
        check_npcatoid(Y)


def test_carrier_cap():
    G = pair_groupoid(range(4))
    X = NCatoid.from_catoid(G)
    with pytest.raises(BoundExceeded):
        check_ncatoid(X, cap=12)
    assert check_ncatoid(X, cap=16).ok


def test_bad_shapes():
    with pytest.raises(MalformedStructure):
        NCatoid(["e"], [], [], [])
    with pytest.raises(MalformedStructure):
        NCatoid(["e"], [[[1]]], [[0]], [[0]], {3: [0]})


def test_mode_validation():
    with pytest.raises(ValueError):
        check_ncatoid(trivial(), "partial")


def all_two_catoids(n):
    res = search(SearchSpec("st2", size=n, constraints=("2-catoid",)))
    return [X.to_ncatoid() for X in res.found]


def test_category_instances_are_strong():
    for n in (1, 2):
        for X in all_two_catoids(n):
            if check_ncatoid(X).facts["is_category"]:
                assert is_strong(X).ok


def test_derived_laws_hold_on_small_two_catoids():
    found = all_two_catoids(2)
    assert found
    for X in found:
        assert derived_laws_ncatoid(X).ok, [c.name for c in derived_laws_ncatoid(X).failures()]


@st.composite
def random_st2(draw):
    n = 2
    f = lambda: tuple(draw(st.integers(0, n - 1)) for _ in range(n))
    c = lambda: tuple(draw(st.integers(0, 3)) for _ in range(n * n))
    return St2(n, f(), f(), f(), f(), c(), c())


@settings(max_examples=300, deadline=None)
@given(random_st2())
def test_full_checker_matches_oracle(S):
    X = S.to_ncatoid()
    assert check_ncatoid(X).ok == oracle(X)
    r = reduced_implies_full(X)
    assert r.ok


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(TWO_DIM), st.integers(0, 1), st.integers(0, 8), st.integers(0, 8), st.integers(0, 2))
def test_full_checker_matches_oracle_near_fixtures(name, k, x, y, bit):
    # flip one bit of one composition entry of a valid fixture
    X = load_fixture(name)
    n = X.n
    comps = [[list(r) for r in c] for c in X.comps]
    comps[k][x % n][y % n] ^= 1 << (bit % n)
    Y = NCatoid(X.carrier, comps, X.srcs, X.tgts)
    assert check_ncatoid(Y).ok == oracle(Y)
    assert reduced_implies_full(Y).ok

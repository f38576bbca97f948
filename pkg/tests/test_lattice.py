from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from catoids import build_lattice, chain, classify, powerset_lattice
from catoids.errors import BoundExceeded, NotALattice, NotAPartialOrder, MalformedStructure


def diamond():
    return build_lattice(["bot", "1", "a", "top"],
                         [("bot", "1"), ("bot", "a"), ("1", "top"), ("a", "top")])


def test_two_chain():
    L = chain(["0", "1"])
    assert L.label(L.bot) == "0" and L.label(L.top) == "1"
    c = classify(L)
    assert c.distributive and c.boolean and c.frame


def test_singleton():
    L = build_lattice(["b"], [])
    assert L.bot == L.top


def test_diamond_meet_and_distributive():
    L = diamond()
    assert L.meet(L.idx("1"), L.idx("a")) == L.idx("bot")
    J, M = L.join, L.meet
    brute = all(M(x, J(y, z)) == J(M(x, y), M(x, z)) for x, y, z in product(range(4), repeat=3))
    assert brute and classify(L).distributive and classify(L).boolean


def test_closure_of_covers():
    L = chain(list("abcd"))
    assert L.leq(L.idx("a"), L.idx("d"))
    assert not L.leq(L.idx("d"), L.idx("a"))


def test_cycle_rejected():
    with pytest.raises(NotAPartialOrder):
        build_lattice(["x", "y"], [("x", "y"), ("y", "x")])


def test_missing_join_rejected():
    with pytest.raises(NotALattice):
        build_lattice(["bot", "x", "y"], [("bot", "x"), ("bot", "y")])


def test_bad_input():
    with pytest.raises(MalformedStructure):
        build_lattice([], [])
    with pytest.raises(MalformedStructure):
        build_lattice(["x"], [("x", "z")])


def test_pentagon_and_m3_not_distributive():
    n5 = build_lattice(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])
    m3 = build_lattice(["0", "a", "b", "c", "1"], [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    for L in (n5, m3):
        c = classify(L)
        assert not c.distributive and not c.boolean and not c.frame


def test_three_chain_not_boolean():
    c = classify(chain(["0", "1", "2"]))
    assert c.distributive and c.frame and not c.boolean


def test_powerset_sizes():
    assert len(powerset_lattice(["a"])) == 2
    P = powerset_lattice(["a", "b"])
    assert len(P) == 4 and classify(P).boolean
    P4 = powerset_lattice(list("abcd"))
    assert len(P4) == 16 and classify(P4).frame


def test_powerset_bound():
    with pytest.raises(BoundExceeded):
        powerset_lattice([str(i) for i in range(17)])


def test_powerset_frame_exhaustive():
    # every subset of the 8-element powerset, by brute force
    P = powerset_lattice(list("abc"))
    n = P.n
    for x in range(n):
        for S in range(1 << n):
            members = [i for i in range(n) if S >> i & 1]
            assert P.meet(x, P.join_all(members)) == P.join_all(P.meet(x, s) for s in members)


def test_empty_sup_inf():
    L = diamond()
    assert L.join_all([]) == L.bot and L.meet_all([]) == L.top


@st.composite
def random_lattice(draw):
    # the ideal lattice of a random poset: always a lattice
    n = draw(st.integers(1, 4))
    order = {(i, j) for i in range(n) for j in range(n) if i < j and draw(st.booleans())}
    ideals = []
    for S in range(1 << n):
        if all(not (S >> j & 1) or (S >> i & 1) for i, j in order):
            ideals.append(S)
    labels = [format(S, "b") for S in ideals]
    leq = [(labels[a], labels[b]) for a, A in enumerate(ideals) for b, B in enumerate(ideals) if A & ~B == 0]
    return build_lattice(labels, leq), ideals


@settings(max_examples=60, deadline=None)
@given(random_lattice())
def test_lattice_laws(data):
    L, ideals = data
    n = L.n
    for x, y in product(range(n), repeat=2):
        assert L.join(x, y) == L.join(y, x) and L.meet(x, y) == L.meet(y, x)
        assert L.join(x, L.meet(x, y)) == x
        assert L.leq(x, y) == (L.join(x, y) == y)
        # joins of ideals are unions
        assert ideals[L.join(x, y)] == ideals[x] | ideals[y]
    # ideal lattices are distributive
    assert classify(L).distributive and classify(L).frame

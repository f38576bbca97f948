from itertools import product

import pytest

from catoids import (NQuantale, check_kleene_layer, check_npquantale, check_nquantale,
                     derived_laws_nquantale, derived_laws_quantale, is_strong_nquantale, load_fixture,
                     pair_groupoid, powerset_nquantale, powerset_quantale)
from catoids.errors import BoundExceeded, MalformedStructure, MissingDecoration
from catoids.nquantale import globular_ka_bundle
from catoids.suite import bool_quantale


@pytest.fixture(scope="module")
def local2():
    return powerset_nquantale(load_fixture("local2catoid"))


def test_powerset_local_two_catoid(local2):
    assert local2.n == 8 and local2.dims == 2
    assert check_nquantale(local2).ok
    assert not is_strong_nquantale(local2)
    r = derived_laws_nquantale(local2)
    assert r.ok and r.facts["strong"] is False
    assert any(c.status == "n/a" for c in r.checks)
    assert check_kleene_layer(local2).ok


def test_powerset_operations_match_sets(local2):
    X = load_fixture("local2catoid")
    L = local2.lattice
    for k in range(2):
        for A, B in product(range(local2.n), repeat=2):
            want = set()
            for x, y in product(L.members(A), L.members(B)):
                want |= X.compose(k, x, y)
            assert L.members(local2.mul(k, A, B)) == want
        for A in range(local2.n):
            assert L.members(local2.dom(k, A)) == {X.s(k, x) for x in L.members(A)}


def test_two_category_gives_strong(tmp_path):
    Q = powerset_nquantale(load_fixture("twocategory"))
    assert check_nquantale(Q, "strong").ok and is_strong_nquantale(Q)
    assert derived_laws_nquantale(Q).ok
    assert globular_ka_bundle(Q).ok


def test_two_dimensional_two():
    Q = bool_quantale(2)
    assert check_nquantale(Q, "strong").ok
    assert check_kleene_layer(Q).ok and derived_laws_nquantale(Q).ok


def test_one_dimensional_reduces_to_quantale():
    P = powerset_quantale(pair_groupoid([0, 1]), "dedekind")
    Q = NQuantale.from_quantale(P)
    assert Q.dims == 1
    assert check_nquantale(Q).ok
    assert derived_laws_nquantale(Q).ok and derived_laws_quantale(P).ok
    assert check_npquantale(Q).ok


def test_d10_weak_instance():
    Q = load_fixture("d10")
    r = check_nquantale(Q)
    assert [c.name for c in r.failures()] == ["dom1.dom0 = dom0"]
    assert r["dom1.dom0 = dom0"].witness["args"] == ["a"]


def test_idid_strong_and_units_differ():
    Q = load_fixture("idid")
    assert check_nquantale(Q, "strong").ok
    assert Q.lattice.lt(Q.units[0], Q.units[1])
    r = derived_laws_nquantale(Q)
    assert r.ok


def test_derived_laws_gate_strong_only():
    Q = powerset_nquantale(load_fixture("local2catoid"))
    weak = derived_laws_nquantale(Q, strong=False)
    gated = [c for c in weak.checks if c.status == "n/a"]
    assert gated and all("strong" in c.name for c in gated)


def test_forced_converse_failure():
    P = powerset_quantale(pair_groupoid([0, 1]), "dedekind")
    Q = NQuantale.from_quantale(P)
    # swap the converse of two relations so that (ab)° = b°a° breaks
    conv = list(Q.convs[1])
    a, b = P.lattice.mask(["(0,1)"]), P.lattice.mask(["(0,0)"])
    conv[a], conv[b] = conv[b], conv[a]
    bad = NQuantale(Q.lattice, [P.table()], Q.units, [P.unary("dom")], [P.unary("cod")], {1: conv}, p=0)
    r = check_npquantale(bad)
    assert not r.ok and r.failures()[0].witness is not None


def test_identity_converse_on_commutative_instance():
    Q = NQuantale.from_quantale(load_fixture("bool2q"))
    assert check_npquantale(Q).ok


def test_missing_converse():
    Q = bool_quantale(2)
    with pytest.raises(MissingDecoration):
        check_npquantale(Q)


def test_lattice_cap():
    Q = powerset_nquantale(load_fixture("local2catoid"))
    with pytest.raises(BoundExceeded):
        check_nquantale(Q, cap=4)


def test_strength_validation():
    with pytest.raises(ValueError):
        check_nquantale(bool_quantale(2), "medium")
    with pytest.raises(MalformedStructure):
        NQuantale(load_fixture("bool2q").lattice, [], [], [], [])

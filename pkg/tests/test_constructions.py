import random
from itertools import product

import pytest

from catoids import (FiniteCatoid, FiniteGroupoid, NCatoid, Quantale, QFunction, atoms_to_catoid,
                     build_lattice, check_nquantale, check_quantale, convolution_quantale,
                     delta_law_report, find_isomorphism, indicator_isomorphism, load_fixture,
                     pair_groupoid, path_catoid, powerset_nquantale, powerset_quantale,
                     roundtrip_report, shuffle_lazy)
from catoids.constructions import PointwiseConvolution, convolution_sample_pool
from catoids.errors import (CapExceeded, EmptyUnit, MalformedStructure, MissingDecoration,
                            NonAtomicSource, NonFunctionalAtoms, NotFrame, NotGroupoid, NotLocal)
from catoids.search import SearchSpec, catoid_of, search
from catoids.suite import bool_quantale


def nonlocal_catoid():
    # a is an endo-element on e with a.a undefined
    return FiniteCatoid.from_labels(["e", "a"], {("e", "e"): ["e"], ("e", "a"): ["a"], ("a", "e"): ["a"]},
                                    {"e": "e", "a": "e"}, {"e": "e", "a": "e"}, "loop")


def test_nonlocal_catoid_is_catoid():
    from catoids import check_catoid
    r = check_catoid(nonlocal_catoid())
    assert r.ok and not r.facts["is_local"]


def test_powerset_pair_groupoid():
    P = powerset_quantale(pair_groupoid([0, 1]))
    assert P.tier == "dedekind" and P.n == 16
    for t in ("plain", "modal", "involutive", "dedekind", "boolean"):
        assert check_quantale(P, t).ok
    e = P.unit
    for X in range(P.n):
        assert P.dom(X) == e & P.mul(X, P.conv(X))
        assert P.cod(X) == e & P.mul(P.conv(X), X)


def test_path_remark():
    C = path_catoid(["v1", "v2", "v3", "v4"], [("e1", "v2", "v1"), ("e2", "v2", "v3"), ("e3", "v3", "v4")])
    P = powerset_quantale(C)
    L = P.lattice
    X, Y = L.mask(["(v2,e1,v1)", "(v2,e2,v3)"]), L.mask(["(v3,e3,v4)"])
    assert L.members(P.mul(X, Y)) == {"(v2,e2,v3,e3,v4)"}
    assert L.members(P.cod(X)) == {"v1", "v3"} and L.members(P.dom(Y)) == {"v3"}
    assert check_quantale(P, "modal").ok


def test_empty_catoid():
    P = powerset_quantale(FiniteCatoid([], [], [], []))
    assert P.n == 1 and check_quantale(P, "modal").ok


def test_powerset_gates():
    with pytest.raises(NotLocal):
        powerset_quantale(nonlocal_catoid(), "modal")
    assert powerset_quantale(nonlocal_catoid()).tier == "plain"
    with pytest.raises(NotGroupoid):
        powerset_quantale(load_fixture("path4"), "dedekind")
    G = pair_groupoid([0, 1])
    with pytest.raises(NotGroupoid):
        powerset_quantale(FiniteGroupoid(G.carrier, G.comp, G.src, G.tgt, list(range(4))), "dedekind")
    with pytest.raises(ValueError):
        powerset_quantale(G, "boolean")


def test_powerset_nquantale():
    P = powerset_nquantale(load_fixture("local2catoid"))
    assert P.n == 8 and check_nquantale(P).ok
    S = powerset_nquantale(load_fixture("twocategory"))
    assert check_nquantale(S, "strong").ok
    one = NCatoid(["e"], [[[1]], [[1]]], [[0], [0]], [[0], [0]])
    T = powerset_nquantale(one)
    assert T.n == 2 and check_nquantale(T, "strong").ok
    with pytest.raises(NotLocal):
        powerset_nquantale(load_fixture("functional2catoid"))


def brute_convolution(C, V, f, g):
    out = []
    for x in C.carrier:
        acc = V.lattice.bot
        for y, z in product(C.carrier, repeat=2):
            if x in C.compose(y, z):
                acc = V.lattice.join(acc, V.mul(f[y], g[z]))
        out.append(acc)
    return out


@pytest.mark.parametrize("cname", ["pairgroupoid2", "discrete2", "path4"])
def test_convolution_matches_brute_force(cname):
    C = load_fixture(cname)
    V = load_fixture("diamond")
    F = convolution_quantale(C, V, "plain", mode="materialized", cap=10 ** 6)
    L = F.lattice
    rng = random.Random(1)
    for _ in range(60):
        fa = {x: rng.randrange(V.n) for x in C.carrier}
        ga = {x: rng.randrange(V.n) for x in C.carrier}
        a = L.encode([fa[x] for x in C.carrier])
        b = L.encode([ga[x] for x in C.carrier])
        assert list(L.decode(F.mul(a, b))) == brute_convolution(C, V, fa, ga)


@pytest.mark.parametrize("cname", ["pairgroupoid2", "discrete2", "path4"])
def test_delta_law(cname):
    C = load_fixture(cname)
    for vname in ("bool2q", "diamond", "domnotunique"):
        assert delta_law_report(C, load_fixture(vname)).ok


def test_convolution_with_two_is_powerset():
    X = load_fixture("local2catoid")
    F = convolution_quantale(X, bool_quantale(2))
    P = powerset_nquantale(X)
    assert indicator_isomorphism(F, P).ok
    assert check_nquantale(F).ok
    for name in ("pairgroupoid2", "discrete2", "path4"):
        C = load_fixture(name)
        F = convolution_quantale(C, load_fixture("bool2q"), "modal")
        assert indicator_isomorphism(F, powerset_quantale(C, "modal")).ok


def test_dedekind_convolution():
    C = load_fixture("pairgroupoid2")
    F = convolution_quantale(C, load_fixture("bool2q"), "dedekind")
    assert check_quantale(F, "dedekind").ok
    assert indicator_isomorphism(F, powerset_quantale(C, "dedekind")).ok


def test_convolution_modal_tier_passes():
    C = load_fixture("path4")
    F = convolution_quantale(C, load_fixture("bool2q"), "modal")
    assert check_quantale(F, "modal").ok


def test_pointwise_mode_and_cap():
    C = load_fixture("path4")
    V = load_fixture("diamond")
    with pytest.raises(CapExceeded):
        convolution_quantale(C, V, mode="materialized", cap=100)
    pc = convolution_quantale(C, V, cap=100)
    assert isinstance(pc, PointwiseConvolution)
    f = QFunction.delta("(v2,e2,v3)", V.idx("a"))
    g = QFunction.delta("(v3,e3,v4)", V.idx("1"))
    assert pc.evaluate(f, g, "(v2,e2,v3,e3,v4)") == V.idx("a")
    assert pc.evaluate(f, g, "v2") == V.lattice.bot


def test_lazy_delta_law():
    S = shuffle_lazy("ab")
    V = load_fixture("diamond")
    pc = convolution_quantale(S, V)
    words = S.sample(2)
    for x, y, z in product(words, repeat=3):
        for a, b in product(range(V.n), repeat=2):
            got = pc.evaluate(QFunction.delta(y, a), QFunction.delta(z, b), x)
            want = V.mul(a, b) if x in S.compose(y, z) else V.lattice.bot
            assert got == want
    with pytest.raises(CapExceeded):
        convolution_quantale(S, V, mode="materialized")


def test_convolution_gates():
    V = load_fixture("aabot")
    with pytest.raises(MissingDecoration):
        convolution_quantale(load_fixture("path4"), V, "modal")
    with pytest.raises(NotLocal):
        convolution_quantale(nonlocal_catoid(), load_fixture("bool2q"), "modal")
    with pytest.raises(NotGroupoid):
        convolution_quantale(load_fixture("path4"), load_fixture("bool2q"), "dedekind")
    m3 = build_lattice(["0", "a", "b", "c", "1"], [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    meet = {(x, y): m3.label(m3.meet(m3.idx(x), m3.idx(y))) for x in m3.elements for y in m3.elements}
    ident = {x: x for x in m3.elements}
    W = Quantale.from_labels(m3, meet, "1", ident, ident, ident)
    with pytest.raises(NotFrame):
        convolution_quantale(pair_groupoid([0]), W, "dedekind")
    with pytest.raises(MalformedStructure):
        convolution_quantale(load_fixture("local2catoid"), load_fixture("bool2q"))


def test_dom_of_delta():
    C = load_fixture("pairgroupoid2")
    V = load_fixture("domnotunique")
    F = convolution_quantale(C, V, "modal")
    L = F.lattice
    for x in C.carrier:
        for a in range(V.n):
            d = L.decode(F.dom(L.delta(x, a)))
            want = [V.dom(a) if y == C.s(x) else V.lattice.bot for y in C.carrier]
            assert list(d) == want


def test_sample_pool_contains_deltas():
    F = convolution_quantale(load_fixture("path4"), load_fixture("bool2q"), "modal")
    pool = convolution_sample_pool(F, k=8)
    assert F.lattice.delta("v1", 1) in pool and len(pool) == len(set(pool))


def test_atom_recovery_round_trips():
    for name in ("pairgroupoid2", "path4", "discrete2"):
        C = load_fixture(name)
        R = atoms_to_catoid(powerset_quantale(C))
        assert find_isomorphism(C, R) is not None
    X = load_fixture("local2catoid")
    assert find_isomorphism(X, atoms_to_catoid(powerset_nquantale(X))) is not None
    one = FiniteCatoid(["e"], [[1]], [0], [0])
    assert atoms_to_catoid(powerset_quantale(one)).n == 1


def test_atom_recovery_errors():
    P = powerset_quantale(load_fixture("path4"))
    with pytest.raises(EmptyUnit):
        atoms_to_catoid(Quantale(P.lattice, P.table(), 0, P.unary("dom"), P.unary("cod")))
    top = P.lattice.top
    with pytest.raises(NonAtomicSource):
        atoms_to_catoid(Quantale(P.lattice, P.table(), P.unit, [top] * P.n, P.unary("cod")))
    D = load_fixture("local2catoid").dimension(0)
    Q = powerset_quantale(D, "modal")
    with pytest.raises(NonFunctionalAtoms):
        atoms_to_catoid(Q.with_decorations(conv=list(range(Q.n))))
    with pytest.raises(MissingDecoration):
        atoms_to_catoid(Quantale(P.lattice, P.table(), P.unit))


def test_find_isomorphism_relabelled():
    C = load_fixture("pairgroupoid2")
    D = FiniteGroupoid(["p", "q", "r", "s"], C.comp, C.src, C.tgt, C.inv)
    iso = find_isomorphism(C, D)
    assert iso == {"(0,0)": "p", "(0,1)": "q", "(1,0)": "r", "(1,1)": "s"}
    assert find_isomorphism(C, load_fixture("discrete2")) is None


def test_roundtrip_reports():
    for X in (load_fixture("pairgroupoid2"), load_fixture("local2catoid"), load_fixture("twocategory"),
              NCatoid.from_catoid(pair_groupoid([0, 1]))):
        r = roundtrip_report(X)
        assert r.ok and all(c.passed for c in r.checks)
    r = roundtrip_report(nonlocal_catoid())
    assert r.ok
    assert [c.status for c in r.checks] == ["pass", "n/a", "n/a", "n/a"]


def test_roundtrip_on_all_small_local_catoids():
    checked = 0
    for n in (1, 2, 3):
        spec = SearchSpec("catoid", size=n, constraints=("catoid", "local"))
        for X in search(spec).found:
            r = roundtrip_report(catoid_of(X))
            assert r.ok and r["leg: isomorphism"].passed
            checked += 1
    assert checked >= 5

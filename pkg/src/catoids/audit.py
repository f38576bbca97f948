"""Fixture verification and the exhaustive audits built on model search."""
import time
from itertools import permutations, product
from math import factorial

from .catoid import check_catoid, check_groupoid, check_morphism, derived_laws_catoid
from .constructions import powerset_quantale
from .errors import BudgetExhausted
from .fixtures import load_fixture
from .ncatoid import check_ncatoid, is_strong, globular_laws, interchange_sides, reduced_implies_full, cells
from .nquantale import check_nquantale
from .quantale import (check_quantale, strong_gelfand, modular_law, with_explicit_modal, modal_axioms,
                       Sampling)
from .report import Report
from .search import (SearchSpec, search, st2_candidates, st2_axioms, multioperations, associative,
                     commutative, abelian_monoid, relabel_map, relabel_table, flat, three_chain,
                     quantale_isomorphic, _Budget, _Stop, local, functional, St2)


def _claim(rep, fixture, claim, ok, observed=None):
    rep.add(f"{fixture}: {claim}", bool(ok), None if ok else {"observed": observed})


def _failing(report):
    return [c.name for c in report.failures()]


def _has_witness(check, **want):
    return any(all(w.get(k) == v for k, v in want.items()) for w in check.witnesses)


def verify_fixtures() -> Report:
    """Every printed claim about the shipped fixtures, compared bit for bit."""
    rep = Report("printed examples")

    C = load_fixture("discrete2")
    r = check_catoid(C)
    _claim(rep, "discrete2", "catoid axioms pass; local and functional", r.ok and r.facts["is_local"]
           and r.facts["is_functional"], _failing(r))
    m = check_morphism(lambda x: "b", C, C, bounded=True)
    exact = m["f(xy) = f(x)f(y)"]
    _claim(rep, "discrete2", "f_b is a bounded morphism", m.ok, _failing(m))
    _claim(rep, "discrete2", "f_b(ab) = {} differs from f_b(a)f_b(b) = {b}",
           exact.failed and _has_witness(exact, args=["a", "b"], **{"f(xy)": C.show_set(0),
                                                                    "f(x)f(y)": C.show_set(C.mask(["b"]))}),
           exact.witnesses)

    X = load_fixture("local2catoid")
    full = check_ncatoid(X)
    _claim(rep, "local2catoid", "full 2-catoid axioms pass", full.ok, _failing(full))
    _claim(rep, "local2catoid", "local, functional for *1 but not for *0",
           full.facts["is_local"] and full.facts["functional_by_dim"] == [False, True], full.facts)
    st = is_strong(X)
    law = st["s1(x *0 y) = s1(x) *0 s1(y)"]
    _claim(rep, "local2catoid", "strong law fails: s1(a *0 c) = {a} below {a,b} = s1(a) *0 s1(a)",
           law.failed and _has_witness(law, args=["a", "c"], lhs=X.show_set(X.mask(["a"])),
                                       rhs=X.show_set(X.mask(["a", "b"]))), law.witnesses)
    _claim(rep, "local2catoid", "strong t1 law fails likewise", st["t1(x *0 y) = t1(x) *0 t1(y)"].failed)
    g = globular_laws(X)
    _claim(rep, "local2catoid", "cells C0 = {b}, C1 = {a,b}, C2 = carrier",
           g.ok and g.facts["cells"] == {"0": ["b"], "1": ["a", "b"], "2": ["a", "b", "c"]}, g.facts)
    ri = reduced_implies_full(X)
    _claim(rep, "local2catoid", "reduced and full axioms agree", ri.ok, ri.facts)

    X = load_fixture("functional2catoid")
    full = check_ncatoid(X)
    _claim(rep, "functional2catoid", "full 2-catoid axioms pass; functional",
           full.ok and full.facts["is_functional"], _failing(full))
    law = is_strong(X)["s1(x *0 y) = s1(x) *0 s1(y)"]
    _claim(rep, "functional2catoid", "strong law fails: s1(a *0 a) = {} below {b}",
           law.failed and _has_witness(law, args=["a", "a"], lhs=X.show_set(0),
                                       rhs=X.show_set(X.mask(["b"]))), law.witnesses)
    ri = reduced_implies_full(X)
    _claim(rep, "functional2catoid", "reduced and full axioms agree", ri.ok, ri.facts)

    X = load_fixture("twocategory")
    full = check_ncatoid(X)
    _claim(rep, "twocategory", "full 2-catoid axioms pass; a 2-category",
           full.ok and full.facts["is_category"], _failing(full))
    _claim(rep, "twocategory", "strong laws hold", is_strong(X).ok)
    lhs, rhs = interchange_sides(X, 0, 1, "b", "a", "b", "a")
    _claim(rep, "twocategory", "interchange strict: (b *1 a) *0 (b *1 a) = {} below {b}",
           lhs == frozenset() and rhs == frozenset({"b"}), (sorted(lhs), sorted(rhs)))
    g = globular_laws(X)
    _claim(rep, "twocategory", "C0 = {b}, C1 = {a,b} (s1 is the identity); globular laws pass",
           g.ok and g.facts["cells"]["0"] == ["b"] and g.facts["cells"]["1"] == ["a", "b"], g.facts)
    ri = reduced_implies_full(X)
    _claim(rep, "twocategory", "reduced and full axioms agree", ri.ok, ri.facts)

    G = load_fixture("pairgroupoid2")
    r = check_groupoid(G)
    _claim(rep, "pairgroupoid2", "groupoid axioms pass", r.ok, _failing(r))
    _claim(rep, "pairgroupoid2", "units are (0,0) and (1,1)", [G.label(i) for i in G.units()] == ["(0,0)", "(1,1)"], G.units())

    C = load_fixture("path4")
    r = check_catoid(C)
    _claim(rep, "path4", "catoid axioms pass; local; 8 elements", r.ok and r.facts["is_local"] and C.n == 8,
           (_failing(r), C.n))
    P = powerset_quantale(C)
    Xs = P.lattice.mask(["(v2,e1,v1)", "(v2,e2,v3)"])
    Ys = P.lattice.mask(["(v3,e3,v4)"])
    _claim(rep, "path4", "X.Y = {(v2,e2,v3,e3,v4)} while cod X = {v1,v3} and dom Y = {v3}",
           P.mul(Xs, Ys) == P.lattice.mask(["(v2,e2,v3,e3,v4)"])
           and P.cod(Xs) == P.lattice.mask(["v1", "v3"]) and P.dom(Ys) == P.lattice.mask(["v3"]),
           (P.label(P.mul(Xs, Ys)), P.label(P.cod(Xs)), P.label(P.dom(Ys))))

    Q = load_fixture("bool2q")
    tiers = {t: check_quantale(Q, t).ok for t in ("plain", "modal", "involutive", "dedekind", "boolean")}
    _claim(rep, "bool2q", "every tier passes", all(tiers.values()), tiers)

    Q = load_fixture("aabot")
    a, one, top = Q.idx("a"), Q.idx("1"), Q.idx("1")
    inv = check_quantale(Q, "involutive")
    ded = check_quantale(Q, "dedekind")
    _claim(rep, "aabot", "involutive quantale axioms pass", inv.ok, _failing(inv))
    _claim(rep, "aabot", "strong Gelfand fails: aa°a = bot below a", not strong_gelfand(Q, a))
    _claim(rep, "aabot", "modular and Dedekind laws fail",
           ded["modular law"].failed and ded["Dedekind law"].failed, _failing(ded))

    Q = load_fixture("diamond")
    one, a, top = Q.idx("1"), Q.idx("a"), Q.idx("top")
    inv = check_quantale(Q, "involutive")
    ded = check_quantale(Q, "dedekind")
    _claim(rep, "diamond", "involutive quantale axioms pass", inv.ok, _failing(inv))
    _claim(rep, "diamond", "strong Gelfand holds", all(strong_gelfand(Q, x) for x in range(Q.n)))
    L = Q.lattice
    _claim(rep, "diamond", "modular law fails at (1, a, top): 1a /\\ top = a above bot = (1 /\\ top a)a",
           ded["modular law"].failed and not modular_law(Q, one, a, top)
           and L.meet(Q.mul(one, a), top) == a and Q.mul(L.meet(one, Q.mul(top, Q.conv(a))), a) == L.bot,
           ded["modular law"].witnesses)

    Q = load_fixture("domnotunique")
    E = with_explicit_modal(Q)
    r1, r2 = Report("installed"), Report("explicit")
    modal_axioms(Q, r1, Sampling())
    modal_axioms(E, r2, Sampling())
    ded = check_quantale(Q, "dedekind")
    a = Q.idx("a")
    differ = [Q.label(x) for x in range(Q.n) if Q.dom(x) != E.dom(x) or Q.cod(x) != E.cod(x)]
    _claim(rep, "domnotunique", "Dedekind quantale axioms pass", ded.ok, _failing(ded))
    _claim(rep, "domnotunique", "installed and explicit decorations both satisfy the modal axioms",
           r1.ok and r2.ok, (_failing(r1), _failing(r2)))
    _claim(rep, "domnotunique", "decorations differ exactly at a: dom(a) = top, 1 /\\ aa° = a",
           differ == ["a"] and Q.dom(a) == Q.lattice.top and E.dom(a) == a, differ)

    Q = load_fixture("d10")
    r = check_nquantale(Q)
    _claim(rep, "d10", "only dom1.dom0 = dom0 fails", _failing(r) == ["dom1.dom0 = dom0"], _failing(r))
    law = r["dom1.dom0 = dom0"]
    _claim(rep, "d10", "witness a: dom1(dom0 a) = top", law.failed and law.witness["args"] == ["a"],
           law.witnesses)

    Q = load_fixture("idid")
    r = check_nquantale(Q, "strong")
    _claim(rep, "idid", "strong 2-quantale axioms pass", r.ok, _failing(r))
    _claim(rep, "idid", "units differ: 1_0 below 1_1",
           Q.units[0] != Q.units[1] and Q.lattice.lt(Q.units[0], Q.units[1]))
    return rep


# Eckmann-Hilton collapse audit

def eckmann_hilton_audit(k=2, seconds=60.0, max_nodes=20_000_000) -> Report:
    """Enumerate 2-dimensional st-multimagmas up to size k and test the collapse lemmas."""
    rep = Report(f"Eckmann-Hilton collapse audit, size <= {k}")
    budget = _Budget(SearchSpec("st2", k, max_nodes=max_nodes, seconds=seconds, size_limit=max(k, 5)))
    counts = {"structures": 0, "morphism": 0, "category": 0, "interchange": 0}
    bad1, bad2, bad3 = [], [], []
    non_abelian = {"category": [], "interchange": []}
    try:
        for n in range(1, k + 1):
            for X in st2_candidates(n, budget, prune=True, maplaws=True, assoc=False):
                counts["structures"] += 1
                if st2_axioms(X, assoc=False, eq_low=True):
                    counts["morphism"] += 1
                    if not (X.s0 == X.s1 and X.t0 == X.t1 and X.s0 == X.t0 and X.s1 == X.t1):
                        bad1.append(X)
                    c0, c1 = X.table(0), X.table(1)
                    cat = all(local(n, s, t, c) and functional(n, c)
                              for s, t, c in ((X.s0, X.t0, c0), (X.s1, X.t1, c1)))
                    if cat and associative(n, c0) and associative(n, c1):
                        counts["category"] += 1
                        if not (X.c0 == X.c1 and commutative(n, c0)):
                            bad2.append(X)
                        if not abelian_monoid(n, X.s0, X.t0, c0):
                            non_abelian["category"].append(X)
                if st2_axioms(X, assoc=False, eq_interchange=True):
                    counts["interchange"] += 1
                    c0 = X.table(0)
                    if not (X.c0 == X.c1 and X.s0 == X.s1 == X.t0 == X.t1
                            and associative(n, c0) and commutative(n, c0)):
                        bad3.append(X)
                    if not abelian_monoid(n, X.s0, X.t0, c0):
                        non_abelian["interchange"].append(X)
    except _Stop as e:
        raise BudgetExhausted(f"collapse audit stopped: {e}", rep) from None

    def show(xs):
        return {"models": [repr(x) for x in xs[:3]]} if xs else None

    rep.add("equational s0/t0 laws => s0 = s1, t0 = t1, s0 = t0, s1 = t1", not bad1, show(bad1))
    rep.add("2-categories with equational laws => *0 = *1, commutative", not bad2, show(bad2))
    rep.add("equational interchange => *0 = *1, s0 = s1 = t0 = t1, associative, commutative",
            not bad3, show(bad3))
    conforming = non_abelian["category"] + non_abelian["interchange"]
    witness = next((X for X in conforming if not all(v for v in X.c0)), None)
    rep.add("a conforming model that is not an abelian monoid exists", bool(conforming),
            {"model": _describe(witness or (conforming[0] if conforming else None))}, kind="info")
    rep.add("a conforming model with partial composition exists", witness is not None,
            {"model": _describe(witness)}, kind="info")
    rep.facts.update(counts)
    rep.facts["non-abelian category models"] = len(non_abelian["category"])
    rep.facts["non-abelian interchange models"] = len(non_abelian["interchange"])
    return rep


def _describe(X):
    if X is None:
        return None
    labels = [chr(ord("a") + i) for i in range(X.n)]
    out = {}
    for k, (s, t) in enumerate(((X.s0, X.t0), (X.s1, X.t1))):
        c = X.table(k)
        out[f"dim {k}"] = {
            "src": {labels[x]: labels[s[x]] for x in range(X.n)},
            "tgt": {labels[x]: labels[t[x]] for x in range(X.n)},
            "comp": {f"{labels[x]}{labels[y]}": [labels[z] for z in range(X.n) if c[x][y] >> z & 1]
                     for x in range(X.n) for y in range(X.n) if c[x][y]}}
    return out


# reduced versus full axioms

def reduced_axiom_audit(size=2, seconds=60.0) -> Report:
    """Reduced and full 2-catoid axioms agree on every two-dimensional structure of this size.

    Both axiom sets contain the per-dimension catoid axioms, so a structure
    whose dimension fails them fails both. The remaining structures pair up
    catoids on the carrier; each pair is checked with the public checkers.
    """
    rep = Report(f"reduced versus full 2-catoid axioms, size {size}")
    n = size
    budget = _Budget(SearchSpec("st2", n, seconds=seconds, max_nodes=50_000_000, size_limit=max(n, 5)))
    maps = list(product(range(n), repeat=n))
    dims = []
    try:
        for s, t in product(maps, repeat=2):
            for c in multioperations(n, list(s), list(t), budget, assoc=True):
                dims.append((list(s), list(t), c))
    except _Stop as e:
        raise BudgetExhausted(f"reduced-axiom audit stopped: {e}", rep) from None
    total = (n ** n) ** 4 * (1 << n) ** (2 * n * n)
    agree = red = full = 0
    mismatches = []
    deadline = time.monotonic() + seconds
    for (s0, t0, c0), (s1, t1, c1) in product(dims, repeat=2):
        if time.monotonic() > deadline:
            raise BudgetExhausted("reduced-axiom audit ran out of time", rep)
        X = St2(n, tuple(s0), tuple(t0), tuple(s1), tuple(t1), flat(c0), flat(c1)).to_ncatoid()
        r = check_ncatoid(X, "reduced").ok
        f = check_ncatoid(X, "full").ok
        red += r
        full += f
        if r == f:
            agree += 1
        else:
            mismatches.append(X)
    rep.add("reduced axioms hold iff full axioms hold", not mismatches,
            {"mismatches": len(mismatches)} if mismatches else None)
    rep.facts.update(all_structures=total, catoid_dimension_pairs=len(dims) ** 2,
                     failing_per_dimension_axioms=total - len(dims) ** 2,
                     reduced_pass=red, full_pass=full, agree=agree)
    return rep


# isomorphism pruning cross-check

def _automorphisms(n, s, t, c):
    out = 0
    for p in permutations(range(n)):
        p = list(p)
        if relabel_map(p, s) == list(s) and relabel_map(p, t) == list(t) and relabel_table(p, c) == c:
            out += 1
    return out


def iso_pruning_crosscheck(max_size=3, constraints=("catoid",)) -> Report:
    """Orbit-counting check: labelled count = sum of n!/|Aut| over canonical representatives."""
    rep = Report("isomorphism pruning cross-check")
    for n in range(1, max_size + 1):
        pruned = search(SearchSpec("catoid", n, constraints=tuple(constraints))).found
        labelled = search(SearchSpec("catoid", n, constraints=tuple(constraints), prune_isomorphs=False)).found
        orbit_total = sum(factorial(n) // _automorphisms(*X) for X in pruned)
        rep.add(f"size {n}: {len(labelled)} labelled = orbit sum over {len(pruned)} classes",
                orbit_total == len(labelled), {"orbit sum": orbit_total, "labelled": len(labelled)})
        rep.facts[f"classes {n}"] = len(pruned)
        rep.facts[f"labelled {n}"] = len(labelled)
    return rep


def search_soundness(max_size=2) -> Report:
    """Structures emitted by search pass the public checkers for their bundle."""
    rep = Report("search soundness")
    for n in range(1, max_size + 1):
        found = search(SearchSpec("catoid", n, constraints=("catoid",))).found
        rep.law(f"catoids of size {n} pass check_catoid", [(X,) for X in found],
                lambda X: check_catoid(_catoid(X)).ok)
        found = search(SearchSpec("st2", n, constraints=("2-catoid",))).found
        rep.law(f"2-catoids of size {n} pass check_ncatoid", [(X,) for X in found],
                lambda X: check_ncatoid(X.to_ncatoid()).ok)
    return rep


def _catoid(X):
    from .search import catoid_of
    return catoid_of(X)


def gelfand_search_report(seconds=60.0) -> Report:
    """Involutive quantales on the 3-chain that falsify strong Gelfand."""
    spec = SearchSpec("quantale", lattice=three_chain(), constraints=("involutive",),
                      decorations=("conv",), goal="strong gelfand", goal_mode="falsify", seconds=seconds)
    res = search(spec)
    aabot = load_fixture("aabot")
    isos = [quantale_isomorphic(Q, aabot) for Q in res.found]
    rep = Report("search: involutive quantales on the 3-chain without strong Gelfand")
    rep.add("a model is found", bool(res.found))
    rep.add("a found model is isomorphic to the aa = bot fixture", any(i is not None for i in isos),
            {"isomorphism": next((i for i in isos if i), None)})
    rep.facts.update(res.report.facts)
    return rep

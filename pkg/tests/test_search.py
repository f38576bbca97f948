from itertools import permutations, product

import pytest

from catoids import build_lattice, chain, check_quantale, find_isomorphism, load_fixture
from catoids.audit import (eckmann_hilton_audit, gelfand_search_report, iso_pruning_crosscheck,
                           reduced_axiom_audit, search_soundness)
from catoids.errors import BudgetExhausted, MalformedStructure
from catoids.search import SearchSpec, catoid_of, iter_search, quantale_isomorphic, search, three_chain

from oracles import catoid_laws


def brute_catoids(n):
    """Every catoid on n points, as canonical forms under relabelling."""
    xs = list(range(n))
    cells = list(product(xs, repeat=2))
    seen = set()
    for s, t in product(product(xs, repeat=n), repeat=2):
        for masks in product(range(1 << n), repeat=n * n):
            comp = {c: {x for x in xs if m >> x & 1} for c, m in zip(cells, masks)}
            if not all(catoid_laws(xs, comp, dict(enumerate(s)), dict(enumerate(t))).values()):
                continue
            forms = []
            for p in permutations(xs):
                forms.append((tuple(p[s[i]] for i in sorted(xs, key=lambda i: p[i])),
                              tuple(p[t[i]] for i in sorted(xs, key=lambda i: p[i])),
                              tuple(sorted((p[a], p[b], tuple(sorted(p[v] for v in comp[a, b])))
                                           for a, b in cells))))
            seen.add(min(forms))
    return seen


def test_catoid_counts_match_brute_force():
    for n in (1, 2):
        res = search(SearchSpec("catoid", size=n, constraints=("catoid",)))
        assert res.complete
        assert len(res.found) == len(brute_catoids(n))


def test_found_catoids_pass_checker():
    from catoids import check_catoid
    res = search(SearchSpec("catoid", size=3, constraints=("catoid", "local")))
    for X in res.found:
        r = check_catoid(catoid_of(X))
        assert r.ok and r.facts["is_local"]


def test_no_two_results_isomorphic():
    found = [catoid_of(X) for X in search(SearchSpec("catoid", size=3, constraints=("catoid",))).found]
    for i, A in enumerate(found):
        for B in found[i + 1:]:
            assert find_isomorphism(A, B) is None


def brute_chain_quantales(L):
    """Quantales on a chain: unit u, bottom absorbing, the remaining cells free."""
    n = L.n
    count = 0
    for u in range(n):
        free = [(a, b) for a in range(n) for b in range(n) if L.bot not in (a, b) and u not in (a, b)]
        for vals in product(range(n), repeat=len(free)):
            T = [[None] * n for _ in range(n)]
            for a in range(n):
                T[a][L.bot] = T[L.bot][a] = L.bot
                if a != L.bot:
                    T[u][a] = T[a][u] = a
            for c, v in zip(free, vals):
                T[c[0]][c[1]] = v
            if any(T[a][L.bot] != L.bot or T[L.bot][a] != L.bot for a in range(n)):
                continue
            J = L.join
            ok = all(T[a][T[b][c]] == T[T[a][b]][c] for a, b, c in product(range(n), repeat=3))
            ok = ok and all(T[a][J(b, c)] == J(T[a][b], T[a][c]) and T[J(b, c)][a] == J(T[b][a], T[c][a])
                            for a, b, c in product(range(n), repeat=3))
            ok = ok and all(T[u][a] == a == T[a][u] for a in range(n))
            count += ok
    return count


@pytest.mark.parametrize("labels", [["0", "1"], ["0", "a", "1"], ["0", "a", "b", "1"]])
def test_chain_quantale_counts(labels):
    L = chain(labels)
    res = search(SearchSpec("quantale", lattice=L, constraints=("quantale",)))
    assert len(res.found) == brute_chain_quantales(L)
    for Q in res.found:
        assert check_quantale(Q).ok


def test_gelfand_search_finds_fixture():
    res = search(SearchSpec("quantale", lattice=three_chain(), decorations=("conv",),
                            constraints=("involutive",), goal="strong gelfand", goal_mode="falsify"))
    assert len(res.found) == 1
    fixture = load_fixture("aabot")
    assert quantale_isomorphic(res.found[0], fixture) is not None
    assert gelfand_search_report(seconds=30).ok


def test_equational_interchange_collapses():
    res = search(SearchSpec("st2", size=2, constraints=("equational-interchange",),
                            goal="comp0 = comp1", goal_mode="falsify"))
    assert res.complete and res.found == []


def test_deterministic_order():
    spec = SearchSpec("st2", size=2, constraints=("2-catoid",))
    a = [X for X in iter_search(spec)]
    b = [X for X in iter_search(spec)]
    assert a == b and a


def test_budget_exhaustion_keeps_partial_results():
    spec = SearchSpec("st2", size=3, constraints=("2-catoid",), max_nodes=2000)
    with pytest.raises(BudgetExhausted) as ei:
        search(spec)
    assert ei.value.partial is not None and not ei.value.partial.complete


def test_limit():
    res = search(SearchSpec("catoid", size=3, constraints=("catoid",)), limit=2)
    assert len(res.found) == 2 and not res.complete


def test_spec_validation():
    for bad in (SearchSpec("monoid"), SearchSpec("catoid", constraints=("nope",)),
                SearchSpec("catoid", goal="nope"), SearchSpec("catoid", goal_mode="maybe"),
                SearchSpec("quantale"), SearchSpec("catoid", size=9)):
        with pytest.raises(MalformedStructure):
            bad.validate()


def test_iso_pruning_agrees_with_orbits():
    r = iso_pruning_crosscheck(3)
    assert r.ok


def test_search_soundness():
    assert search_soundness(2).ok


def test_eckmann_hilton_small():
    r = eckmann_hilton_audit(1)
    assert r.ok
    # one point leaves no room for a non-abelian model
    assert r["a conforming model that is not an abelian monoid exists"].failed


def test_reduced_axioms_audit_size_one():
    r = reduced_axiom_audit(1)
    assert r.ok

"""Bounded enumeration of small catoids, 2-dimensional st-structures and quantales.

Structures are enumerated in a fixed order. With isomorphism pruning on, only
canonical representatives are kept: the source/target data must be
lexicographically least under carrier permutations, and the composition
tables least under the permutations that fix that data.
"""
import time
from dataclasses import dataclass, field
from itertools import permutations, product

from .catoid import FiniteCatoid, bits, popcount
from .errors import BudgetExhausted, MalformedStructure
from .lattice import FiniteLattice, chain
from .ncatoid import NCatoid
from .quantale import Quantale, strong_gelfand, modular_law, dedekind_law, check_quantale
from .report import Report

SIGNATURES = ("catoid", "st2", "quantale")
SIZE_LIMITS = {"catoid": 5, "st2": 5, "quantale": 6}


@dataclass
class SearchSpec:
    """What to enumerate and what to look for.

    signature: "catoid" (one multioperation with source and target maps),
    "st2" (two of them on one carrier) or "quantale" (a composition table on
    a fixed lattice, plus the decorations listed in `decorations`).
    """
    signature: str
    size: int = 2
    constraints: tuple = ()
    goal: str = None
    goal_mode: str = "satisfy"
    lattice: FiniteLattice = None
    decorations: tuple = ()
    max_nodes: int = 5_000_000
    seconds: float = 60.0
    prune_isomorphs: bool = True
    size_limit: int = None

    def validate(self):
        if self.signature not in SIGNATURES:
            raise MalformedStructure(f"unknown signature {self.signature!r}")
        if self.goal_mode not in ("satisfy", "falsify"):
            raise MalformedStructure("goal_mode is satisfy or falsify")
        limit = self.size_limit or SIZE_LIMITS[self.signature]
        n = self.lattice.n if self.signature == "quantale" and self.lattice else self.size
        if n > limit:
            raise MalformedStructure(f"size {n} exceeds the limit {limit} for {self.signature}")
        if self.signature == "quantale" and self.lattice is None:
            raise MalformedStructure("quantale search needs a lattice")
        unknown = set(self.constraints) - set(BUNDLES[self.signature])
        if unknown:
            raise MalformedStructure(f"unknown constraints {sorted(unknown)} for {self.signature}")
        if self.goal is not None and self.goal not in GOALS[self.signature]:
            raise MalformedStructure(f"unknown goal {self.goal!r} for {self.signature}")


@dataclass
class SearchResult:
    found: list = field(default_factory=list)
    examined: int = 0
    nodes: int = 0
    complete: bool = True
    report: Report = None


class _Budget:
    def __init__(self, spec):
        self.max_nodes = spec.max_nodes
        self.deadline = time.monotonic() + spec.seconds
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Stop("node limit reached")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _Stop("time limit reached")


class _Stop(Exception):
    pass


# raw structures and their predicates

def pmask(perm, mask):
    out = 0
    for i in bits(mask):
        out |= 1 << perm[i]
    return out


def _inv(perm):
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return out


def relabel_map(perm, f):
    """perm . f . perm^-1 as a list."""
    inv = _inv(perm)
    return [perm[f[inv[x]]] for x in range(len(f))]


def relabel_table(perm, c):
    inv = _inv(perm)
    n = len(c)
    return [[pmask(perm, c[inv[x]][inv[y]]) for y in range(n)] for x in range(n)]


def flat(c):
    return tuple(v for row in c for v in row)


def ext(c, X, Y):
    out = 0
    for x in bits(X):
        row = c[x]
        for y in bits(Y):
            out |= row[y]
    return out


def img(f, X):
    out = 0
    for x in bits(X):
        out |= 1 << f[x]
    return out


def st_multimagma(n, s, t, c):
    for x in range(n):
        if c[s[x]][x] != 1 << x or c[x][t[x]] != 1 << x:
            return False
        for y in range(n):
            if c[x][y] and t[x] != s[y]:
                return False
    return True


def associative(n, c):
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if ext(c, 1 << x, c[y][z]) != ext(c, c[x][y], 1 << z):
                    return False
    return True


def commutative(n, c):
    return all(c[x][y] == c[y][x] for x in range(n) for y in range(n))


def local(n, s, t, c):
    return all(t[x] != s[y] or c[x][y] for x in range(n) for y in range(n))


def functional(n, c):
    return all(popcount(v) <= 1 for row in c for v in row)


def abelian_monoid(n, s, t, c):
    units = {s[x] for x in range(n)} | {t[x] for x in range(n)}
    return (len(units) == 1 and functional(n, c) and all(v for row in c for v in row)
            and associative(n, c) and commutative(n, c))


@dataclass(frozen=True)
class St2:
    """Two st-multimagma structures on the carrier 0..n-1."""
    n: int
    s0: tuple
    t0: tuple
    s1: tuple
    t1: tuple
    c0: tuple
    c1: tuple

    def maps(self):
        return self.s0, self.t0, self.s1, self.t1

    def table(self, k):
        n = self.n
        c = self.c0 if k == 0 else self.c1
        return [list(c[i * n:(i + 1) * n]) for i in range(n)]

    def to_ncatoid(self, labels=None, name="") -> NCatoid:
        labels = labels or [chr(ord("a") + i) for i in range(self.n)]
        return NCatoid(labels, [self.table(0), self.table(1)], [list(self.s0), list(self.s1)],
                       [list(self.t0), list(self.t1)], name=name)


def _morph(n, f, c, eq):
    for x in range(n):
        for y in range(n):
            lhs, rhs = img(f, c[x][y]), c[f[x]][f[y]]
            if (lhs != rhs) if eq else (lhs & ~rhs):
                return False
    return True


def _interchange(n, ci, cj, eq):
    for w, x, y, z in product(range(n), repeat=4):
        a = ext(ci, cj[w][x], cj[y][z])
        b = ext(cj, ci[w][y], ci[x][z])
        if (a != b) if eq else (a & ~b):
            return False
    return True


def st2_maplaws(n, s0, t0, s1, t1):
    """Commutation and whisker laws; they only involve the maps."""
    for x in range(n):
        if s0[s1[x]] != s1[s0[x]] or s0[t1[x]] != t1[s0[x]] or s1[t0[x]] != t0[s1[x]] \
                or t0[t1[x]] != t1[t0[x]]:
            return False
        if s1[s0[x]] != s0[x] or s1[t0[x]] != t0[x] or t1[s0[x]] != s0[x] or t1[t0[x]] != t0[x]:
            return False
    return True


def st2_axioms(X: St2, assoc=True, eq_low=False, eq_interchange=False, reduced=False):
    """2-catoid axioms on raw tables; assoc=False gives 2-st-multimagmas.

    eq_low makes s0, t0 over *1 equations; eq_interchange does the same for
    interchange. reduced keeps only the per-dimension axioms, the laws for s1, t1
    over *0 and interchange.
    """
    n = X.n
    c0, c1 = X.table(0), X.table(1)
    s0, t0, s1, t1 = X.maps()
    if not (st_multimagma(n, s0, t0, c0) and st_multimagma(n, s1, t1, c1)):
        return False
    if assoc and not (associative(n, c0) and associative(n, c1)):
        return False
    if not reduced:
        if not st2_maplaws(n, s0, t0, s1, t1):
            return False
        if not (_morph(n, s0, c1, eq_low) and _morph(n, t0, c1, eq_low)):
            return False
    if not (_morph(n, s1, c0, False) and _morph(n, t1, c0, False)):
        return False
    return _interchange(n, c0, c1, eq_interchange)


# enumeration of one multioperation given its source and target maps

def _cell_domains(n, s, t):
    """Forced unit cells, or None when the unit laws clash."""
    forced = {}
    for x in range(n):
        for cell in ((s[x], x), (x, t[x])):
            if forced.get(cell, 1 << x) != 1 << x:
                return None
            forced[cell] = 1 << x
    for (x, y), v in forced.items():
        if t[x] != s[y]:
            return None
    doms = []
    for x in range(n):
        for y in range(n):
            if (x, y) in forced:
                doms.append((forced[x, y],))
            elif t[x] != s[y]:
                doms.append((0,))
            else:
                doms.append(tuple(range(1 << n)))
    return doms


def _assoc_partial(n, c, x0, y0):
    """Associativity triples decidable once cells up to (x0, y0) in row order are set."""
    done = lambda a, b: (a, b) <= (x0, y0)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if not done(y, z) or not done(x, y):
                    continue
                if any(not done(x, w) for w in bits(c[y][z])):
                    continue
                if any(not done(w, z) for w in bits(c[x][y])):
                    continue
                if ext(c, 1 << x, c[y][z]) != ext(c, c[x][y], 1 << z):
                    return False
    return True


def multioperations(n, s, t, budget, assoc=True, functional_only=False, local_only=False):
    """All tables satisfying unit laws and weak locality (and associativity if asked)."""
    doms = _cell_domains(n, s, t)
    if doms is None:
        return
    if functional_only:
        doms = [tuple(v for v in d if popcount(v) <= 1) for d in doms]
    if local_only:
        doms = [tuple(v for v in d if v) if t[k // n] == s[k % n] else d for k, d in enumerate(doms)]
    c = [[0] * n for _ in range(n)]
    cells = n * n

    def rec(k):
        if k == cells:
            yield [row[:] for row in c]
            return
        x, y = divmod(k, n)
        for v in doms[k]:
            budget.tick()
            c[x][y] = v
            if assoc and not _assoc_partial(n, c, x, y):
                continue
            yield from rec(k + 1)
        c[x][y] = 0

    yield from rec(0)


def _lex_least(key, candidates):
    return all(key <= k for k in candidates)


def _canonical_maps(n, maps, perms):
    key = tuple(v for f in maps for v in f)
    for p in perms:
        if tuple(v for f in maps for v in relabel_map(p, f)) < key:
            return False
    return True


def _stabilizer(maps, perms):
    return [p for p in perms if all(relabel_map(p, list(f)) == list(f) for f in maps)]


# catoid signature

def _catoid_candidates(spec, budget):
    n = spec.size
    perms = [list(p) for p in permutations(range(n))]
    cons = set(spec.constraints)
    assoc = "st-multimagma" not in cons or bool(cons & {"catoid", "local", "functional", "category"})
    for s in product(range(n), repeat=n):
        for t in product(range(n), repeat=n):
            budget.tick()
            if spec.prune_isomorphs and not _canonical_maps(n, (s, t), perms):
                continue
            stab = _stabilizer((s, t), perms) if spec.prune_isomorphs else []
            for c in multioperations(n, s, t, budget, assoc=assoc,
                                     functional_only="functional" in cons or "category" in cons,
                                     local_only="local" in cons or "category" in cons):
                if spec.prune_isomorphs:
                    key = flat(c)
                    if not _lex_least(key, (flat(relabel_table(p, c)) for p in stab)):
                        continue
                yield (n, list(s), list(t), c)


def _catoid_bundle(name):
    def ok(X):
        n, s, t, c = X
        base = st_multimagma(n, s, t, c)
        if name == "st-multimagma":
            return base
        base = base and associative(n, c)
        if name == "catoid":
            return base
        if name == "local":
            return base and local(n, s, t, c)
        if name == "functional":
            return base and functional(n, c)
        return base and local(n, s, t, c) and functional(n, c)
    return ok


def catoid_of(X, name="") -> FiniteCatoid:
    n, s, t, c = X
    return FiniteCatoid([chr(ord("a") + i) for i in range(n)], c, s, t, name)


# 2-dimensional signature

def st2_candidates(n, budget, prune=True, maplaws=True, assoc=True, category=False):
    """Two-dimensional st-structures on n points, one per isomorphism class when prune is set."""
    perms = [list(p) for p in permutations(range(n))]
    maps_all = list(product(range(n), repeat=n))
    for s0, t0, s1, t1 in product(maps_all, repeat=4):
        budget.tick()
        if maplaws and not st2_maplaws(n, s0, t0, s1, t1):
            continue
        if prune and not _canonical_maps(n, (s0, t0, s1, t1), perms):
            continue
        stab = _stabilizer((s0, t0, s1, t1), perms) if prune else []
        ops0 = list(multioperations(n, s0, t0, budget, assoc, category, category))
        if not ops0:
            continue
        ops1 = list(multioperations(n, s1, t1, budget, assoc, category, category))
        for c0 in ops0:
            for c1 in ops1:
                budget.tick()
                if prune:
                    key = flat(c0) + flat(c1)
                    if not _lex_least(key, (flat(relabel_table(p, c0)) + flat(relabel_table(p, c1))
                                            for p in stab)):
                        continue
                yield St2(n, s0, t0, s1, t1, flat(c0), flat(c1))


ST2_BUNDLES = {
    "2-st-multimagma": dict(assoc=False),
    "2-catoid": dict(),
    "2-catoid-reduced": dict(reduced=True),
    "equational-morphism": dict(assoc=False, eq_low=True),
    "equational-interchange": dict(assoc=False, eq_interchange=True),
}


def _st2_bundle(name):
    if name == "category":
        def ok(X):
            n = X.n
            return all(local(n, s, t, X.table(k)) and functional(n, X.table(k))
                       for k, (s, t) in enumerate(((X.s0, X.t0), (X.s1, X.t1))))
        return ok
    kw = ST2_BUNDLES[name]
    return lambda X: st2_axioms(X, **kw)


# quantale signature

def lattice_automorphisms(L: FiniteLattice):
    out = []
    for p in permutations(range(L.n)):
        if all(L.leq(i, j) == L.leq(p[i], p[j]) for i in range(L.n) for j in range(L.n)):
            out.append(list(p))
    return out


def _sup_preserving_unaries(L):
    n = L.n
    for f in product(range(n), repeat=n):
        if f[L.bot] == L.bot and all(f[L.join(a, b)] == L.join(f[a], f[b])
                                     for a in range(n) for b in range(n)):
            yield list(f)


def _quantale_tables(L, u, budget, conv=None):
    """Sup-preserving associative tables with unit u, filled cell by cell."""
    n = L.n
    c = [[None] * n for _ in range(n)]
    for a in range(n):
        c[L.bot][a] = c[a][L.bot] = L.bot
    for a in range(n):
        if c[u][a] not in (None, a) or c[a][u] not in (None, a):
            return
        c[u][a] = a
        c[a][u] = a
    free = [(a, b) for a in range(n) for b in range(n) if c[a][b] is None]

    def consistent():
        for a in range(n):
            for b in range(n):
                for d in range(n):
                    bd = L.join(b, d)
                    r = (c[a][b], c[a][d], c[a][bd])
                    if None not in r and r[2] != L.join(r[0], r[1]):
                        return False
                    r = (c[b][a], c[d][a], c[bd][a])
                    if None not in r and r[2] != L.join(r[0], r[1]):
                        return False
                    ab, bd2 = c[a][b], c[b][d]
                    if ab is not None and bd2 is not None:
                        l, r2 = c[ab][d], c[a][bd2]
                        if l is not None and r2 is not None and l != r2:
                            return False
        if conv is not None:
            for a in range(n):
                for b in range(n):
                    ab, x = c[a][b], c[conv[b]][conv[a]]
                    if ab is not None and x is not None and conv[ab] != x:
                        return False
        return True

    if not consistent():
        return

    def rec(k):
        if k == len(free):
            yield [row[:] for row in c]
            return
        a, b = free[k]
        for v in range(n):
            budget.tick()
            c[a][b] = v
            if consistent():
                yield from rec(k + 1)
        c[a][b] = None

    yield from rec(0)


def _quantale_candidates(spec, budget):
    L = spec.lattice
    n = L.n
    autos = lattice_automorphisms(L) if spec.prune_isomorphs else [list(range(n))]
    decs = set(spec.decorations)
    convs = [None]
    if "conv" in decs:
        convs = [f for f in _sup_preserving_unaries(L) if all(f[f[a]] == a for a in range(n))]
    doms = [None]
    if "dom" in decs:
        doms = [f for f in _sup_preserving_unaries(L)]
    for u in range(n):
        for cv in convs:
            for tab in _quantale_tables(L, u, budget, cv):
                for dm in doms:
                    for cd in (doms if dm is not None else [None]):
                        budget.tick()
                        Q = Quantale(L, tab, u, dm, cd, cv)
                        if spec.prune_isomorphs and not _quantale_canonical(Q, autos):
                            continue
                        yield Q


def _quantale_key(n, tab, u, dm, cd, cv, p=None):
    p = p or list(range(n))
    inv = _inv(p)
    key = [p[u]]
    key += [p[tab[inv[a]][inv[b]]] for a in range(n) for b in range(n)]
    for f in (dm, cd, cv):
        if f is not None:
            key += [p[f[inv[a]]] for a in range(n)]
    return tuple(key)


def _quantale_canonical(Q, autos):
    n = Q.n
    tab = Q.table()
    dm = Q.unary("dom") if Q.has_modal else None
    cd = Q.unary("cod") if Q.has_modal else None
    cv = Q.unary("conv") if Q.has_conv else None
    key = _quantale_key(n, tab, Q.unit, dm, cd, cv)
    return all(key <= _quantale_key(n, tab, Q.unit, dm, cd, cv, p) for p in autos)


def _quantale_bundle(name):
    tier = {"quantale": "plain", "involutive": "involutive", "modal": "modal", "dedekind": "dedekind"}[name]
    return lambda Q: check_quantale(Q, tier).ok


BUNDLES = {
    "catoid": {k: _catoid_bundle(k) for k in ("st-multimagma", "catoid", "local", "functional", "category")},
    "st2": {k: _st2_bundle(k) for k in list(ST2_BUNDLES) + ["category"]},
    "quantale": {k: _quantale_bundle(k) for k in ("quantale", "involutive", "modal", "dedekind")},
}


def _all_q(Q, law):
    r = range(Q.n)
    if law == "strong gelfand":
        return all(strong_gelfand(Q, a) for a in r)
    f = modular_law if law == "modular law" else dedekind_law
    return all(f(Q, a, b, c) for a in r for b in r for c in r)


GOALS = {
    "catoid": {
        "local": lambda X: local(X[0], X[1], X[2], X[3]),
        "functional": lambda X: functional(X[0], X[3]),
        "total": lambda X: all(v for row in X[3] for v in row),
    },
    "st2": {
        "comp0 = comp1": lambda X: X.c0 == X.c1,
        "abelian monoid": lambda X: all(abelian_monoid(X.n, s, t, X.table(k))
                                        for k, (s, t) in enumerate(((X.s0, X.t0), (X.s1, X.t1)))),
    },
    "quantale": {
        "strong gelfand": lambda Q: _all_q(Q, "strong gelfand"),
        "modular law": lambda Q: _all_q(Q, "modular law"),
        "Dedekind law": lambda Q: _all_q(Q, "Dedekind law"),
    },
}


def iter_search(spec: SearchSpec, stats=None):
    """Yield every structure meeting the constraints and the goal, in canonical order."""
    spec.validate()
    budget = _Budget(spec)
    stats = stats if stats is not None else {}
    stats.setdefault("examined", 0)
    stats["budget"] = budget
    cons = [BUNDLES[spec.signature][c] for c in spec.constraints]
    goal = GOALS[spec.signature].get(spec.goal) if spec.goal else None
    if spec.signature == "catoid":
        gen = _catoid_candidates(spec, budget)
    elif spec.signature == "st2":
        need_assoc = bool({"2-catoid", "2-catoid-reduced"} & set(spec.constraints))
        maplaws = bool(set(spec.constraints) - {"2-catoid-reduced", "category"})
        gen = st2_candidates(spec.size, budget, spec.prune_isomorphs, maplaws, need_assoc,
                             "category" in spec.constraints)
    else:
        gen = _quantale_candidates(spec, budget)
    for X in gen:
        stats["examined"] += 1
        if not all(ok(X) for ok in cons):
            continue
        if goal is not None and goal(X) != (spec.goal_mode == "satisfy"):
            continue
        yield X


def search(spec: SearchSpec, limit=None) -> SearchResult:
    """Collect results; raises BudgetExhausted carrying the partial SearchResult."""
    res = SearchResult()
    stats = {}
    try:
        for X in iter_search(spec, stats):
            res.found.append(X)
            if limit is not None and len(res.found) >= limit:
                res.complete = False
                break
    except _Stop as e:
        res.complete = False
        res.examined = stats.get("examined", 0)
        res.nodes = stats["budget"].nodes
        res.report = _search_report(spec, res, str(e))
        raise BudgetExhausted(f"search budget exhausted: {e}", res) from None
    res.examined = stats.get("examined", 0)
    res.nodes = stats["budget"].nodes
    res.report = _search_report(spec, res)
    return res


def _search_report(spec, res, stopped=None):
    goal = f"{spec.goal_mode} {spec.goal}" if spec.goal else "any"
    rep = Report(f"search {spec.signature} size {spec.lattice.n if spec.lattice else spec.size}: "
                 f"constraints {list(spec.constraints)}, goal {goal}")
    rep.facts.update(found=len(res.found), examined=res.examined, nodes=res.nodes,
                     complete=res.complete, pruned=spec.prune_isomorphs)
    if stopped:
        rep.facts["stopped"] = stopped
    return rep


def quantale_isomorphic(P: Quantale, Q: Quantale):
    """A lattice isomorphism carrying P onto Q (tables, unit, present decorations), or None."""
    if P.n != Q.n or P.has_modal != Q.has_modal or P.has_conv != Q.has_conv:
        return None
    LP, LQ = P.lattice, Q.lattice
    for p in permutations(range(P.n)):
        if not all(LP.leq(a, b) == LQ.leq(p[a], p[b]) for a in range(P.n) for b in range(P.n)):
            continue
        if p[P.unit] != Q.unit:
            continue
        if any(p[P.mul(a, b)] != Q.mul(p[a], p[b]) for a in range(P.n) for b in range(P.n)):
            continue
        if P.has_modal and any(p[P.dom(a)] != Q.dom(p[a]) or p[P.cod(a)] != Q.cod(p[a])
                               for a in range(P.n)):
            continue
        if P.has_conv and any(p[P.conv(a)] != Q.conv(p[a]) for a in range(P.n)):
            continue
        return {P.label(a): Q.label(p[a]) for a in range(P.n)}
    return None


def three_chain():
    return chain(["bot", "a", "top"], "3-chain")

"""n-catoids (finite truncations of omega-catoids) and (n,p)-catoids.

Dimensions are numbered 0..n-1.  The inverse map inv[i], for p < i <= n,
inverts cells with respect to the composition of dimension i-1.
"""
from itertools import product

from .catoid import FiniteCatoid, FiniteGroupoid, bits, popcount, check_catoid, derived_laws_catoid
from .errors import MalformedStructure, MissingInverseMap, BoundExceeded
from .report import Report

CARRIER_CAP = 12


class NCatoid:
    def __init__(self, carrier, comps, srcs, tgts, invs=None, p=None, name=""):
        self.carrier = tuple(carrier)
        self.n = len(self.carrier)
        self.dims = len(comps)
        if self.dims < 1:
            raise MalformedStructure("an n-catoid needs at least one dimension")
        if not len(srcs) == len(tgts) == self.dims:
            raise MalformedStructure("every dimension needs comp, src and tgt")
        self.index = {x: i for i, x in enumerate(self.carrier)}
        self._dim = [FiniteCatoid(self.carrier, c, s, t) for c, s, t in zip(comps, srcs, tgts)]
        self.comps = [d.comp for d in self._dim]
        self.srcs = [d.src for d in self._dim]
        self.tgts = [d.tgt for d in self._dim]
        self.p = p
        self.invs = {}
        for i, inv in (invs or {}).items():
            i = int(i)
            if not 0 < i <= self.dims:
                raise MalformedStructure(f"inverse index {i} outside 1..{self.dims}")
            inv = list(inv)
            if len(inv) != self.n or any(not 0 <= v < self.n for v in inv):
                raise MalformedStructure(f"inverse map {i} is not total on the carrier")
            self.invs[i] = inv
        if p is not None and not 0 <= p < self.dims:
            raise MalformedStructure(f"p={p} must satisfy 0 <= p < {self.dims}")
        self.name = name

    @classmethod
    def from_labels(cls, carrier, blocks, invs=None, p=None, name=""):
        """blocks: per dimension {comp: {(y,z): results}, src: {..}, tgt: {..}}."""
        carrier = list(carrier)
        dims = [FiniteCatoid.from_labels(carrier, b["comp"], b["src"], b["tgt"]) for b in blocks]
        idx = {x: i for i, x in enumerate(carrier)}
        inv_idx = {}
        for i, m in (invs or {}).items():
            try:
                inv_idx[int(i)] = [idx[m[x]] for x in carrier]
            except KeyError as e:
                raise MalformedStructure(f"inverse map {i} mentions or misses {e.args[0]!r}") from None
        return cls(carrier, [d.comp for d in dims], [d.src for d in dims],
                   [d.tgt for d in dims], inv_idx, p, name)

    @classmethod
    def from_catoid(cls, C: FiniteCatoid, p=None):
        """A 1-catoid; a groupoid becomes a (1,0)-catoid unless p says otherwise."""
        invs = {}
        if isinstance(C, FiniteGroupoid):
            invs = {1: C.inv}
            p = 0 if p is None else p
        return cls(C.carrier, [C.comp], [C.src], [C.tgt], invs, p, C.name)

    def dimension(self, k):
        d = self._dim[k]
        name = f"{self.name} dim {k}"
        if k + 1 in self.invs:
            return FiniteGroupoid(self.carrier, d.comp, d.src, d.tgt, self.invs[k + 1], name)
        return FiniteCatoid(self.carrier, d.comp, d.src, d.tgt, name)

    def label(self, i):
        return self.carrier[i]

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise MalformedStructure(f"{x!r} is not in the carrier") from None

    def compose(self, k, x, y):
        return self._dim[k].members(self.comps[k][self.idx(x)][self.idx(y)])

    def s(self, k, x):
        return self.carrier[self.srcs[k][self.idx(x)]]

    def t(self, k, x):
        return self.carrier[self.tgts[k][self.idx(x)]]

    def ext(self, k, X, Y):
        return self._dim[k].ext(X, Y)

    def image(self, f, X):
        out = 0
        for i in bits(X):
            out |= 1 << f[i]
        return out

    def mask(self, xs):
        return self._dim[0].mask(xs)

    def show_set(self, mask):
        return "{" + ",".join(self.carrier[i] for i in bits(mask)) + "}"

    def cells_mask(self, i):
        if i >= self.dims:
            return (1 << self.n) - 1
        m = 0
        for x in range(self.n):
            if self.srcs[i][x] == x:
                m |= 1 << x
        return m

    def is_local(self):
        return all(d.is_local() for d in self._dim)

    def is_functional(self):
        return all(d.is_functional() for d in self._dim)

    def __repr__(self):
        return f"<NCatoid {self.name} dims={self.dims} n={self.n} p={self.p}>"


def cells(X: NCatoid, i):
    """The i-cells: fixpoints of s_i, or the whole carrier for i >= dims."""
    return frozenset(X.carrier[k] for k in bits(X.cells_mask(i)))


def _cap(X, cap):
    if cap is not None and X.n > cap:
        raise BoundExceeded(f"carrier of size {X.n} exceeds the exhaustive cap {cap}")


def _dim_axioms(X, rep, info=True):
    for k in range(X.dims):
        sub = check_catoid(X.dimension(k))
        if not info:
            sub.checks = [c for c in sub.checks if c.kind == "axiom"]
        rep.merge(sub, f"dim {k}: ")


def _a(X, *ix):
    return [X.carrier[i] for i in ix]


def _morphism(rep, X, f, fname, j, strict=False):
    """fname(x *j y) <= fname(x) *j fname(y), or equality when strict."""
    comp, n = X.comps[j], X.n
    img, S = X.image, X.show_set

    def holds(x, y):
        lhs = img(f, comp[x][y])
        rhs = comp[f[x]][f[y]]
        return lhs == rhs if strict else lhs & ~rhs == 0

    rel = "=" if strict else "<="
    rep.law(f"{fname}(x *{j} y) {rel} {fname}(x) *{j} {fname}(y)",
            product(range(n), repeat=2), holds,
            lambda x, y: {"args": _a(X, x, y), "lhs": S(img(f, comp[x][y])),
                          "rhs": S(comp[f[x]][f[y]])})


def _interchange(rep, X, i, j):
    n, ci, cj, ext = X.n, X.comps[i], X.comps[j], X.ext
    S = X.show_set

    def sides(w, x, y, z):
        return ext(i, cj[w][x], cj[y][z]), ext(j, ci[w][y], ci[x][z])

    def holds(w, x, y, z):
        a, b = sides(w, x, y, z)
        return a & ~b == 0

    def show(w, x, y, z):
        a, b = sides(w, x, y, z)
        return {"args": _a(X, w, x, y, z), "lhs": S(a), "rhs": S(b)}

    rep.law(f"interchange (w *{j} x) *{i} (y *{j} z) <= (w *{i} y) *{j} (x *{i} z)",
            product(range(n), repeat=4), holds, show)


def interchange_sides(X: NCatoid, i, j, w, x, y, z):
    """Both sides of the interchange inclusion, as label sets."""
    w, x, y, z = (X.idx(v) for v in (w, x, y, z))
    ci, cj = X.comps[i], X.comps[j]
    a = X.ext(i, cj[w][x], cj[y][z])
    b = X.ext(j, ci[w][y], ci[x][z])
    return X._dim[0].members(a), X._dim[0].members(b)


def check_ncatoid(X: NCatoid, mode="full", cap=CARRIER_CAP) -> Report:
    if mode not in ("full", "reduced"):
        raise ValueError(f"unknown mode {mode!r}")
    _cap(X, cap)
    rep = Report(f"{X.dims}-catoid axioms ({mode}): {X.name or 'unnamed'}")
    _dim_axioms(X, rep, info=False)
    n, S, T = X.n, X.srcs, X.tgts
    one = lambda: range(n)
    a1 = lambda x: {"args": _a(X, x)}
    for i, j in product(range(X.dims), repeat=2):
        if i >= j:
            continue
        if mode == "full":
            rep.law(f"s{i}s{j} = s{j}s{i}", one(), lambda x: S[i][S[j][x]] == S[j][S[i][x]], a1)
            rep.law(f"s{i}t{j} = t{j}s{i}", one(), lambda x: S[i][T[j][x]] == T[j][S[i][x]], a1)
            rep.law(f"s{j}t{i} = t{i}s{j}", one(), lambda x: S[j][T[i][x]] == T[i][S[j][x]], a1)
            rep.law(f"t{i}t{j} = t{j}t{i}", one(), lambda x: T[i][T[j][x]] == T[j][T[i][x]], a1)
            _morphism(rep, X, S[i], f"s{i}", j)
            _morphism(rep, X, T[i], f"t{i}", j)
        _morphism(rep, X, S[j], f"s{j}", i)
        _morphism(rep, X, T[j], f"t{j}", i)
        _interchange(rep, X, i, j)
        if mode == "full":
            rep.law(f"s{j}s{i} = s{i}", one(), lambda x: S[j][S[i][x]] == S[i][x], a1)
            rep.law(f"s{j}t{i} = t{i}", one(), lambda x: S[j][T[i][x]] == T[i][x], a1)
            rep.law(f"t{j}s{i} = s{i}", one(), lambda x: T[j][S[i][x]] == S[i][x], a1)
            rep.law(f"t{j}t{i} = t{i}", one(), lambda x: T[j][T[i][x]] == T[i][x], a1)
    loc = [X._dim[k].is_local() for k in range(X.dims)]
    fun = [X._dim[k].is_functional() for k in range(X.dims)]
    rep.facts.update(is_local=all(loc), is_functional=all(fun),
                     is_category=all(loc) and all(fun),
                     local_by_dim=loc, functional_by_dim=fun)
    return rep


def reduced_implies_full(X: NCatoid, cap=CARRIER_CAP) -> Report:
    red = check_ncatoid(X, "reduced", cap)
    full = check_ncatoid(X, "full", cap)
    rep = Report(f"reduced axioms imply full axioms: {X.name or 'unnamed'}")
    rep.facts.update(reduced=red.ok, full=full.ok)
    wit = None
    if red.ok and not full.ok:
        wit = {"failing": [c.name for c in full.failures()]}
    rep.add("reduced => full", not red.ok or full.ok, wit)
    rep.add("full => reduced", not full.ok or red.ok)
    return rep


def is_strong(X: NCatoid, cap=CARRIER_CAP) -> Report:
    _cap(X, cap)
    rep = Report(f"strong morphism laws: {X.name or 'unnamed'}")
    n = X.n
    for i, j in product(range(X.dims), repeat=2):
        if i >= j:
            continue
        _morphism(rep, X, X.srcs[j], f"s{j}", i, strict=True)
        _morphism(rep, X, X.tgts[j], f"t{j}", i, strict=True)
        ci = X.comps[i]
        for f, fn in ((X.srcs[j], f"s{j}"), (X.tgts[j], f"t{j}")):
            rep.law(f"D{i}(x,y) iff D{i}({fn}x,{fn}y)", product(range(n), repeat=2),
                    lambda x, y, f=f: bool(ci[x][y]) == bool(ci[f[x]][f[y]]),
                    lambda x, y: {"args": _a(X, x, y)})
    return rep


def globular_laws(X: NCatoid) -> Report:
    rep = Report(f"globular laws: {X.name or 'unnamed'}")
    n, S, T = X.n, X.srcs, X.tgts
    a1 = lambda x: {"args": _a(X, x)}
    masks = [X.cells_mask(i) for i in range(X.dims + 1)]
    rep.add("cell chain C0 <= C1 <= ... <= C",
            all(masks[k] & ~masks[k + 1] == 0 for k in range(X.dims)),
            {"cells": [X.show_set(m) for m in masks]})
    for i, j in product(range(X.dims), repeat=2):
        if i >= j:
            continue
        rep.law(f"s{i}s{j} = s{i}", range(n), lambda x: S[i][S[j][x]] == S[i][x], a1)
        rep.law(f"s{i}t{j} = s{i}", range(n), lambda x: S[i][T[j][x]] == S[i][x], a1)
        rep.law(f"t{i}t{j} = t{i}", range(n), lambda x: T[i][T[j][x]] == T[i][x], a1)
        rep.law(f"t{i}s{j} = t{i}", range(n), lambda x: T[i][S[j][x]] == T[i][x], a1)
    rep.facts["cells"] = {str(i): sorted(cells(X, i), key=X.idx) for i in range(X.dims + 1)}
    return rep


def derived_laws_ncatoid(X: NCatoid) -> Report:
    rep = Report(f"derived n-catoid laws: {X.name or 'unnamed'}")
    for k in range(X.dims):
        sub = derived_laws_catoid(X.dimension(k))
        sub.facts.clear()
        rep.merge(sub, f"dim {k}: ")
    rep.merge(globular_laws(X))
    n, S, T, comps = X.n, X.srcs, X.tgts, X.comps
    d = X.dims
    for i in range(d):
        ci = [x for x in range(n) if S[i][x] == x]
        for j in range(i, d):
            rep.law(f"x in C{i} => s{j}(x) = x = t{j}(x)", ci,
                    lambda x, j=j: S[j][x] == x == T[j][x], lambda x: {"args": _a(X, x)})
    for k in range(d):
        for i, j in product(range(k + 1), repeat=2):
            def orth(x, y, i=i, j=j):
                a, b = S[i][x], S[j][y]
                return comps[k][a][b] == (1 << a if a == b else 0)
            rep.law(f"s{i}(x) *{k} s{j}(y) orthogonal", product(range(n), repeat=2), orth,
                    lambda x, y: {"args": _a(X, x, y)})
    for i, j in product(range(d), repeat=2):
        if i >= j:
            continue
        def cat_prop(x, y, i=i, j=j):
            r = comps[j][x][y]
            if not r:
                return True
            return X.image(S[i], r) == 1 << S[i][x] == 1 << S[i][y]
        rep.law(f"D{j}(x,y) => s{i}(x *{j} y) = {{s{i}x}} = {{s{i}y}}",
                product(range(n), repeat=2), cat_prop, lambda x, y: {"args": _a(X, x, y)})
        eq = all(X.image(f[i], comps[j][x][y]) == comps[j][f[i][x]][f[i][y]]
                 for f in (S, T) for x in range(n) for y in range(n))
        collapse = S[i] == S[j] and T[i] == T[j]
        rep.add(f"equational s{i}/t{i} morphism laws => s{i}=s{j}, t{i}=t{j}",
                not eq or collapse, None if not eq or collapse else {"equational": True})
    return rep


def check_npcatoid(X: NCatoid, cap=CARRIER_CAP) -> Report:
    if X.p is None:
        raise MissingInverseMap("structure has no inversion threshold p")
    _cap(X, cap)
    rep = Report(f"({X.dims},{X.p})-catoid inverses: {X.name or 'unnamed'}")
    n = X.n
    for i in range(X.p + 1, X.dims + 1):
        if i not in X.invs:
            raise MissingInverseMap(f"inverse map {i} is missing")
        inv, k = X.invs[i], i - 1
        comp, s, t = X.comps[k], X.srcs[k], X.tgts[k]
        show = lambda x, inv=inv: {"args": _a(X, x), "inverse": X.label(inv[x])}
        rep.law(f"x *{k} x^-{i} = {{s{k}(x)}}", range(n), lambda x: comp[x][inv[x]] == 1 << s[x], show)
        rep.law(f"x^-{i} *{k} x = {{t{k}(x)}}", range(n), lambda x: comp[inv[x]][x] == 1 << t[x], show)
        ci = X.cells_mask(i)
        rep.law(f"x^-{i} in C{i} for x in C{i}", bits(ci), lambda x: ci >> inv[x] & 1, show)
        lower = X.cells_mask(i - 1)
        rep.law(f"x^-{i} = x on lower cells", bits(lower), lambda x: inv[x] == x, show)
    return rep

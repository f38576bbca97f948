"""Finite catoids and groupoids, their checkers, and stock constructors.

Elements are indices into the carrier; subsets are int bitmasks.  Public
helpers accept and return labels.
"""
from itertools import product

from .errors import MalformedStructure, CyclicDigraph
from .report import Report


def bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


class FiniteCatoid:
    def __init__(self, carrier, comp, src, tgt, name=""):
        self.carrier = tuple(carrier)
        self.n = len(self.carrier)
        self.index = {x: i for i, x in enumerate(self.carrier)}
        if len(self.index) != self.n:
            raise MalformedStructure("duplicate carrier labels")
        self.comp = [list(row) for row in comp]
        self.src = list(src)
        self.tgt = list(tgt)
        self.name = name
        n, full = self.n, (1 << self.n) - 1
        if len(self.comp) != n or any(len(r) != n for r in self.comp):
            raise MalformedStructure("composition table has the wrong shape")
        if any(m & ~full for r in self.comp for m in r):
            raise MalformedStructure("composition result outside the carrier")
        if len(self.src) != n or len(self.tgt) != n:
            raise MalformedStructure("source/target map has the wrong length")
        if any(not 0 <= v < n for v in self.src + self.tgt):
            raise MalformedStructure("source/target value outside the carrier")

    @classmethod
    def from_labels(cls, carrier, comp, src, tgt, name=""):
        """comp: mapping (y, z) -> iterable of results; absent pairs are empty."""
        carrier = list(carrier)
        idx = {x: i for i, x in enumerate(carrier)}
        n = len(carrier)

        def at(x, what):
            if x not in idx:
                raise MalformedStructure(f"{what} refers to {x!r}, which is not in the carrier")
            return idx[x]

        table = [[0] * n for _ in range(n)]
        for (y, z), res in comp.items():
            m = 0
            for r in res:
                m |= 1 << at(r, f"comp[{y},{z}]")
            table[at(y, "comp")][at(z, "comp")] = m
        s = [at(src[x], "src") if x in src else None for x in carrier]
        t = [at(tgt[x], "tgt") if x in tgt else None for x in carrier]
        if None in s or None in t:
            raise MalformedStructure("source/target map is not total")
        return cls(carrier, table, s, t, name)

    # label-level interface
    def label(self, i):
        return self.carrier[i]

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise MalformedStructure(f"{x!r} is not in the carrier") from None

    def members(self, mask):
        return frozenset(self.carrier[i] for i in bits(mask))

    def mask(self, xs):
        m = 0
        for x in xs:
            m |= 1 << self.idx(x)
        return m

    def compose(self, x, y):
        return self.members(self.comp[self.idx(x)][self.idx(y)])

    def s(self, x):
        return self.carrier[self.src[self.idx(x)]]

    def t(self, x):
        return self.carrier[self.tgt[self.idx(x)]]

    # index-level interface
    def mul(self, i, j):
        return self.comp[i][j]

    def ext(self, X, Y):
        """Extension of the multioperation to subsets."""
        out = 0
        for i in bits(X):
            row = self.comp[i]
            for j in bits(Y):
                out |= row[j]
        return out

    def image(self, f, X):
        out = 0
        for i in bits(X):
            out |= 1 << f[i]
        return out

    def units(self):
        return [i for i in range(self.n) if self.src[i] == i]

    def units_mask(self):
        m = 0
        for i in self.units():
            m |= 1 << i
        return m

    def fibre(self, x):
        k = self.idx(x)
        return {(self.carrier[i], self.carrier[j])
                for i in range(self.n) for j in range(self.n) if self.comp[i][j] >> k & 1}

    def defined(self, i, j):
        return self.comp[i][j] != 0

    def is_local(self):
        return all(self.comp[i][j] for i in range(self.n) for j in range(self.n)
                   if self.tgt[i] == self.src[j])

    def is_functional(self):
        return all(popcount(m) <= 1 for row in self.comp for m in row)

    def is_total(self):
        return all(m for row in self.comp for m in row)

    def show_set(self, mask):
        return "{" + ",".join(self.carrier[i] for i in bits(mask)) + "}"

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} n={self.n}>"

    def __eq__(self, other):
        return (isinstance(other, FiniteCatoid) and type(self) is type(other)
                and self.carrier == other.carrier and self.comp == other.comp
                and self.src == other.src and self.tgt == other.tgt
                and getattr(self, "inv", None) == getattr(other, "inv", None))

    __hash__ = None


class FiniteGroupoid(FiniteCatoid):
    def __init__(self, carrier, comp, src, tgt, inv, name=""):
        super().__init__(carrier, comp, src, tgt, name)
        self.inv = list(inv)
        if len(self.inv) != self.n or any(not 0 <= v < self.n for v in self.inv):
            raise MalformedStructure("inverse map is not total on the carrier")

    @classmethod
    def from_labels(cls, carrier, comp, src, tgt, inv, name=""):
        base = FiniteCatoid.from_labels(carrier, comp, src, tgt, name)
        try:
            inv_idx = [base.idx(inv[x]) for x in base.carrier]
        except KeyError as e:
            raise MalformedStructure(f"inverse map is missing {e.args[0]!r}") from None
        return cls(base.carrier, base.comp, base.src, base.tgt, inv_idx, name)

    @property
    def base(self):
        return FiniteCatoid(self.carrier, self.comp, self.src, self.tgt, self.name)

    def inverse(self, x):
        return self.carrier[self.inv[self.idx(x)]]


def _args(C, *ix):
    return [C.carrier[i] for i in ix]


def check_catoid(C: FiniteCatoid) -> Report:
    rep = Report(f"catoid axioms: {C.name or 'unnamed'}")
    n, comp, s, t = C.n, C.comp, C.src, C.tgt
    S = C.show_set

    def assoc(x, y, z):
        return C.ext(1 << x, comp[y][z]) == C.ext(comp[x][y], 1 << z)

    rep.law("associativity", product(range(n), repeat=3), assoc,
            lambda x, y, z: {"args": _args(C, x, y, z),
                             "x(yz)": S(C.ext(1 << x, comp[y][z])),
                             "(xy)z": S(C.ext(comp[x][y], 1 << z))})
    rep.law("weak locality", product(range(n), repeat=2),
            lambda x, y: not comp[x][y] or t[x] == s[y],
            lambda x, y: {"args": _args(C, x, y), "xy": S(comp[x][y]),
                          "t(x)": C.label(t[x]), "s(y)": C.label(s[y])})
    rep.law("left unit", range(n), lambda x: comp[s[x]][x] == 1 << x,
            lambda x: {"args": _args(C, x), "s(x)x": S(comp[s[x]][x])})
    rep.law("right unit", range(n), lambda x: comp[x][t[x]] == 1 << x,
            lambda x: {"args": _args(C, x), "xt(x)": S(comp[x][t[x]])})
    rep.law("local", product(range(n), repeat=2),
            lambda x, y: t[x] != s[y] or comp[x][y] != 0,
            lambda x, y: {"args": _args(C, x, y)}, kind="info")
    rep.law("functional", product(range(n), repeat=2),
            lambda x, y: popcount(comp[x][y]) <= 1,
            lambda x, y: {"args": _args(C, x, y), "xy": S(comp[x][y])}, kind="info")
    rep.law("total", product(range(n), repeat=2), lambda x, y: comp[x][y] != 0,
            lambda x, y: {"args": _args(C, x, y)}, kind="info")
    rep.facts.update(is_local=rep["local"].passed, is_functional=rep["functional"].passed,
                     is_total=rep["total"].passed,
                     units=[C.label(i) for i in C.units()])
    return rep


def lemma24_characterisations(C: FiniteCatoid):
    """Truth values of the three equivalent locality statements."""
    n, comp, s, t = C.n, C.comp, C.src, C.tgt
    img = C.image
    local = C.is_local()
    eqs = all(img(s, comp[x][y]) == img(s, comp[x][s[y]])
              and img(t, comp[x][y]) == img(t, comp[t[x]][y])
              for x in range(n) for y in range(n))
    delta = all((comp[x][y] != 0) == (comp[t[x]][s[y]] != 0)
                for x in range(n) for y in range(n))
    return local, eqs, delta


def derived_laws_catoid(C: FiniteCatoid) -> Report:
    rep = Report(f"derived catoid laws: {C.name or 'unnamed'}")
    n, comp, s, t = C.n, C.comp, C.src, C.tgt
    img, S = C.image, C.show_set
    one = range(n)
    two = lambda: product(range(n), repeat=2)
    a1 = lambda x: {"args": _args(C, x)}
    rep.law("s.s = s", one, lambda x: s[s[x]] == s[x], a1)
    rep.law("t.t = t", one, lambda x: t[t[x]] == t[x], a1)
    rep.law("s.t = t", one, lambda x: s[t[x]] == t[x], a1)
    rep.law("t.s = s", one, lambda x: t[s[x]] == s[x], a1)
    rep.law("s(x) = x iff x = t(x)", one, lambda x: (s[x] == x) == (t[x] == x), a1)
    rep.law("s(x)s(x) = {s(x)}", one, lambda x: comp[s[x]][s[x]] == 1 << s[x], a1)
    rep.law("t(x)t(x) = {t(x)}", one, lambda x: comp[t[x]][t[x]] == 1 << t[x], a1)
    rep.law("s(x)t(y) = t(y)s(x)", two(), lambda x, y: comp[s[x]][t[y]] == comp[t[y]][s[x]],
            lambda x, y: {"args": _args(C, x, y)})
    rep.law("s(s(x)y) = s(x)s(y)", two(),
            lambda x, y: img(s, comp[s[x]][y]) == comp[s[x]][s[y]],
            lambda x, y: {"args": _args(C, x, y), "lhs": S(img(s, comp[s[x]][y])),
                          "rhs": S(comp[s[x]][s[y]])})
    rep.law("t(xt(y)) = t(x)t(y)", two(),
            lambda x, y: img(t, comp[x][t[y]]) == comp[t[x]][t[y]],
            lambda x, y: {"args": _args(C, x, y)})
    units = C.units()
    rep.law("units are orthogonal idempotents", product(units, repeat=2),
            lambda x, y: comp[x][y] == (1 << x if x == y else 0),
            lambda x, y: {"args": _args(C, x, y), "xy": S(comp[x][y])})
    src_img = img(s, (1 << n) - 1)
    tgt_img = img(t, (1 << n) - 1)
    umask = C.units_mask()
    rep.add("C0 = s(C) = t(C)", src_img == umask == tgt_img,
            {"C0": S(umask), "s(C)": S(src_img), "t(C)": S(tgt_img)})
    rep.law("s(xy) <= s(xs(y))", two(),
            lambda x, y: img(s, comp[x][y]) & ~img(s, comp[x][s[y]]) == 0,
            lambda x, y: {"args": _args(C, x, y)})
    rep.law("t(xy) <= t(t(x)y)", two(),
            lambda x, y: img(t, comp[x][y]) & ~img(t, comp[t[x]][y]) == 0,
            lambda x, y: {"args": _args(C, x, y)})
    rep.law("defined(x,y) => s(xy) = {s(x)}", two(),
            lambda x, y: not comp[x][y] or img(s, comp[x][y]) == 1 << s[x],
            lambda x, y: {"args": _args(C, x, y)})
    rep.law("defined(x,y) => t(xy) = {t(y)}", two(),
            lambda x, y: not comp[x][y] or img(t, comp[x][y]) == 1 << t[y],
            lambda x, y: {"args": _args(C, x, y)})
    a, b, c = lemma24_characterisations(C)
    rep.add("locality characterisations agree", a == b == c,
            {"local": a, "locality equations": b, "defined iff t(x)s(y) nonempty": c})
    rep.facts["is_local"] = a
    return rep


def check_groupoid(G: FiniteGroupoid) -> Report:
    rep = Report(f"groupoid axioms: {G.name or 'unnamed'}")
    rep.merge(check_catoid(G), "catoid: ")
    n, comp, s, t, inv = G.n, G.comp, G.src, G.tgt, G.inv
    S = G.show_set
    a1 = lambda x: {"args": _args(G, x), "inverse": G.label(inv[x])}
    rep.law("x x^- = {s(x)}", range(n), lambda x: comp[x][inv[x]] == 1 << s[x],
            lambda x: {"args": _args(G, x), "x x^-": S(comp[x][inv[x]])})
    rep.law("x^- x = {t(x)}", range(n), lambda x: comp[inv[x]][x] == 1 << t[x],
            lambda x: {"args": _args(G, x), "x^- x": S(comp[inv[x]][x])})
    rep.add("local", G.is_local())
    rep.add("functional", G.is_functional())
    rep.law("x^-- = x", range(n), lambda x: inv[inv[x]] == x, a1)
    rep.law("s(x^-) = t(x)", range(n), lambda x: s[inv[x]] == t[x], a1)
    rep.law("t(x^-) = s(x)", range(n), lambda x: t[inv[x]] == s[x], a1)
    rep.law("s(x)^- = s(x)", range(n), lambda x: inv[s[x]] == s[x], a1)
    rep.law("x x^- x = {x}", range(n), lambda x: G.ext(comp[x][inv[x]], 1 << x) == 1 << x, a1)

    def shunt(x, y, z):
        a = bool(comp[y][z] >> x & 1)
        b = bool(comp[x][inv[z]] >> y & 1)
        c = bool(comp[inv[y]][x] >> z & 1)
        return a == b == c

    three = lambda: product(range(n), repeat=3)
    rep.law("shunting x in yz iff y in xz^- iff z in y^-x", three(), shunt,
            lambda x, y, z: {"args": _args(G, x, y, z)})
    rep.law("left cancellation", three(),
            lambda x, y, z: not (s[x] == t[z] == s[y] and comp[z][x] == comp[z][y]) or x == y,
            lambda x, y, z: {"args": _args(G, x, y, z)})
    rep.law("right cancellation", three(),
            lambda x, y, z: not (t[x] == s[z] == t[y] and comp[x][z] == comp[y][z]) or x == y,
            lambda x, y, z: {"args": _args(G, x, y, z)})
    rep.law("(xy)^- = y^- x^-", product(range(n), repeat=2),
            lambda x, y: G.image(inv, comp[x][y]) == comp[inv[y]][inv[x]],
            lambda x, y: {"args": _args(G, x, y)})
    rep.law("t(x) = s(y) => x^- x = y y^-", product(range(n), repeat=2),
            lambda x, y: t[x] != s[y] or comp[inv[x]][x] == comp[y][inv[y]],
            lambda x, y: {"args": _args(G, x, y)})
    return rep


def opposite(C: FiniteCatoid) -> FiniteCatoid:
    n = C.n
    comp = [[C.comp[j][i] for j in range(n)] for i in range(n)]
    name = f"op({C.name})" if C.name else ""
    if isinstance(C, FiniteGroupoid):
        return FiniteGroupoid(C.carrier, comp, C.tgt, C.src, C.inv, name)
    return FiniteCatoid(C.carrier, comp, C.tgt, C.src, name)


def check_morphism(f, C: FiniteCatoid, D: FiniteCatoid, bounded=False) -> Report:
    """f: mapping or callable from labels of C to labels of D."""
    get = f if callable(f) else f.__getitem__
    try:
        fi = [D.idx(get(x)) for x in C.carrier]
    except KeyError as e:
        raise MalformedStructure(f"map is not total: missing {e.args[0]!r}") from None
    rep = Report("catoid morphism")
    n = C.n

    def fimg(mask):
        return C.image(fi, mask) if mask else 0

    def comp_ok(x, y):
        return fimg(C.comp[x][y]) & ~D.comp[fi[x]][fi[y]] == 0

    def show(x, y):
        return {"args": _args(C, x, y), "f(xy)": D.show_set(fimg(C.comp[x][y])),
                "f(x)f(y)": D.show_set(D.comp[fi[x]][fi[y]])}

    pairs = lambda: product(range(n), repeat=2)
    rep.law("f(xy) <= f(x)f(y)", pairs(), comp_ok, show)
    rep.law("f.s = s.f", range(n), lambda x: fi[C.src[x]] == D.src[fi[x]],
            lambda x: {"args": _args(C, x)})
    rep.law("f.t = t.f", range(n), lambda x: fi[C.tgt[x]] == D.tgt[fi[x]],
            lambda x: {"args": _args(C, x)})
    if bounded:
        def back(x, u, v):
            if not D.comp[u][v] >> fi[x] & 1:
                return True
            return any(C.comp[y][z] >> x & 1 for y in range(n) for z in range(n)
                       if fi[y] == u and fi[z] == v)
        rep.law("bounded", product(range(n), range(D.n), range(D.n)), back,
                lambda x, u, v: {"x": C.label(x), "u": D.label(u), "v": D.label(v)})
    rep.law("f(xy) = f(x)f(y)", pairs(),
            lambda x, y: fimg(C.comp[x][y]) == D.comp[fi[x]][fi[y]], show, kind="info")
    return rep


# constructors

def discrete_catoid(labels, name="discrete"):
    labels = list(labels)
    n = len(labels)
    comp = [[(1 << i) if i == j else 0 for j in range(n)] for i in range(n)]
    return FiniteCatoid(labels, comp, range(n), range(n), name)


def pair_label(a, b):
    return f"({a},{b})"


def pair_groupoid(labels, name="pair groupoid"):
    labels = [str(x) for x in labels]
    m = len(labels)
    carrier = [pair_label(a, b) for a in labels for b in labels]
    pos = lambda a, b: a * m + b
    n = m * m
    comp = [[0] * n for _ in range(n)]
    for a, b, d in product(range(m), repeat=3):
        comp[pos(a, b)][pos(b, d)] = 1 << pos(a, d)
    src = [pos(a, a) for a in range(m) for b in range(m)]
    tgt = [pos(b, b) for a in range(m) for b in range(m)]
    inv = [pos(b, a) for a in range(m) for b in range(m)]
    return FiniteGroupoid(carrier, comp, src, tgt, inv, name)


def path_label(path):
    if len(path) == 1:
        return path[0]
    return "(" + ",".join(path) + ")"


def path_catoid(vertices, edges, name="path catoid"):
    """edges: iterable of (edge, source, target). The digraph must be acyclic."""
    vertices = [str(v) for v in vertices]
    vset = set(vertices)
    out = {v: [] for v in vertices}
    for e, a, b in edges:
        if a not in vset or b not in vset:
            raise MalformedStructure(f"edge {e!r} has an endpoint outside the vertex set")
        out[a].append((str(e), b))
    paths = [(v,) for v in vertices]

    def walk(path, seen):
        for e, b in out[path[-1]]:
            if b in seen:
                raise CyclicDigraph(f"cycle through {b!r}")
            p = path + (e, b)
            paths.append(p)
            walk(p, seen | {b})

    for v in vertices:
        walk((v,), {v})
    paths.sort(key=lambda p: len(p))
    labels = [path_label(p) for p in paths]
    index = {p: i for i, p in enumerate(paths)}
    n = len(paths)
    comp = [[0] * n for _ in range(n)]
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if p[-1] == q[0]:
                comp[i][j] = 1 << index[p + q[1:]]
    src = [index[(p[0],)] for p in paths]
    tgt = [index[(p[-1],)] for p in paths]
    return FiniteCatoid(labels, comp, src, tgt, name)


def monoid_catoid(table, name="monoid"):
    """table: mapping (x, y) -> x*y over a finite set; the unit is found from the table."""
    labels = []
    for (x, y), z in table.items():
        for v in (x, y, z):
            if v not in labels:
                labels.append(v)
    idx = {x: i for i, x in enumerate(labels)}
    n = len(labels)
    if len(table) != n * n:
        raise MalformedStructure("monoid table must be total")
    units = [e for e in labels if all(table[e, x] == x == table[x, e] for x in labels)]
    if not units:
        raise MalformedStructure("monoid table has no unit")
    e = idx[units[0]]
    comp = [[1 << idx[table[x, y]] for y in labels] for x in labels]
    return FiniteCatoid(labels, comp, [e] * n, [e] * n, name)


class LazyCatoid:
    """Catoid on a possibly infinite universe with computable finite fibres."""

    def __init__(self, mem, fibre, src, tgt, sample, compose=None, name=""):
        self.mem = mem
        self.fibre = fibre
        self.src = src
        self.tgt = tgt
        self.sample = sample
        self._compose = compose
        self.name = name

    def compose(self, y, z):
        if self._compose is None:
            raise NotImplementedError("this lazy catoid only answers fibre queries")
        return self._compose(y, z)


def shuffle(v, w):
    """The shuffle of two words, by the defining recursion."""
    if not v:
        return {w}
    if not w:
        return {v}
    return {v[0] + u for u in shuffle(v[1:], w)} | {w[0] + u for u in shuffle(v, w[1:])}


def _words(alphabet, max_len):
    out = [""]
    layer = [""]
    for _ in range(max_len):
        layer = [w + a for w in layer for a in alphabet]
        out.extend(layer)
    return out


def shuffle_lazy(alphabet, name="shuffle"):
    alphabet = tuple(alphabet)
    letters = set(alphabet)

    def mem(w):
        return isinstance(w, str) and set(w) <= letters

    def fibre(x):
        k = len(x)
        out = set()
        for m in range(1 << k):
            y = "".join(x[i] for i in range(k) if m >> i & 1)
            z = "".join(x[i] for i in range(k) if not m >> i & 1)
            out.add((y, z))
        return out

    return LazyCatoid(mem, fibre, lambda w: "", lambda w: "",
                      lambda max_len=3: _words(alphabet, max_len), shuffle, name)


def concat_lazy(alphabet, name="concatenation"):
    """Free monoid as a single-unit catoid; with shuffle it forms a 2-catoid."""
    alphabet = tuple(alphabet)
    letters = set(alphabet)
    return LazyCatoid(lambda w: isinstance(w, str) and set(w) <= letters,
                      lambda x: {(x[:k], x[k:]) for k in range(len(x) + 1)},
                      lambda w: "", lambda w: "",
                      lambda max_len=3: _words(alphabet, max_len),
                      lambda y, z: {y + z}, name)


def check_lazy(L: LazyCatoid, max_len=3) -> Report:
    """Sampled spot-checks; lazy structures are never checked globally."""
    rep = Report(f"lazy catoid spot-checks: {L.name}")
    xs = L.sample(max_len)
    rep.law("fibre consistency", product(xs, repeat=3),
            lambda x, y, z: (x in L.compose(y, z)) == ((y, z) in L.fibre(x)),
            lambda x, y, z: {"x": x, "y": y, "z": z})
    rep.law("fibre members compose to x", xs,
            lambda x: all(x in L.compose(y, z) for y, z in L.fibre(x)))
    rep.law("left unit", xs, lambda x: L.compose(L.src(x), x) == {x})
    rep.law("right unit", xs, lambda x: L.compose(x, L.tgt(x)) == {x})

    def assoc(x, y, z):
        left = set().union(*(L.compose(x, v) for v in L.compose(y, z)))
        right = set().union(*(L.compose(u, z) for u in L.compose(x, y)))
        return left == right

    short = L.sample(min(max_len, 2))
    rep.law("associativity", product(short, repeat=3), assoc)
    rep.facts["sampled"] = len(xs)
    return rep

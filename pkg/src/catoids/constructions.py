"""Powerset extension, convolution algebras, atom recovery and round trips."""
import random
from dataclasses import dataclass, field
from itertools import permutations, product

from .catoid import FiniteCatoid, FiniteGroupoid, LazyCatoid, bits, check_catoid, check_groupoid
from .errors import (CapExceeded, NotLocal, NotGroupoid, NotFrame, MissingDecoration, EmptyUnit,
                     NonFunctionalAtoms, NonAtomicSource, LibraryBug, MalformedStructure)
from .lattice import PowersetLattice, FunctionLattice, classify, POWERSET_BOUND, BoundExceeded
from .ncatoid import NCatoid, check_ncatoid, check_npcatoid
from .nquantale import NQuantale, check_nquantale, check_npquantale
from .quantale import Quantale, Sampling, check_quantale
from .report import Report

CONVOLUTION_CAP = 4096
ROW_TABLE_ATOMS = 16


class _Rows:
    """Lifts an atom-level multiplication table to subsets, row by row."""

    def __init__(self, comp):
        self.comp = comp
        self.m = len(comp)
        self.rows = {}

    def row(self, x):
        r = self.rows.get(x)
        if r is None:
            c = self.comp[x]
            r = [0] * (1 << self.m)
            for Y in range(1, 1 << self.m):
                low = Y & -Y
                r[Y] = r[Y ^ low] | c[low.bit_length() - 1]
            self.rows[x] = r
        return r

    def table(self):
        """Full product table by subset recursion on the left argument."""
        N = 1 << self.m
        T = [None] * N
        T[0] = [0] * N
        for X in range(1, N):
            low = X & -X
            a, b = T[X ^ low], self.row(low.bit_length() - 1)
            T[X] = [u | v for u, v in zip(a, b)]
        return T

    def mul(self, X, Y):
        out = 0
        if self.m <= ROW_TABLE_ATOMS:
            for x in bits(X):
                out |= self.row(x)[Y]
        else:
            for x in bits(X):
                c = self.comp[x]
                for y in bits(Y):
                    out |= c[y]
        return out


def _image(f, X):
    out = 0
    for i in bits(X):
        out |= 1 << f[i]
    return out


def image_table(f):
    """Direct images of every subset under f, indexed by bitmask."""
    T = [0] * (1 << len(f))
    for X in range(1, len(T)):
        low = X & -X
        T[X] = T[X ^ low] | 1 << f[low.bit_length() - 1]
    return T


FULL_TABLE_ATOMS = 9


class PowersetQuantale(Quantale):
    def __init__(self, C: FiniteCatoid, tier, name=""):
        if C.n > POWERSET_BOUND:
            raise BoundExceeded(f"powerset of a {C.n}-element carrier exceeds bound {POWERSET_BOUND}")
        self.C = C
        self.tier = tier
        self.lattice = PowersetLattice(C.carrier)
        self.n = self.lattice.n
        self.unit = C.units_mask()
        self.name = name or f"P({C.name})"
        self._rows = _Rows(C.comp)
        self._comp = None
        self._dom = self._cod = True if tier in ("modal", "dedekind") else None
        self._conv = True if tier == "dedekind" else None
        self._stars = {}
        self._full = self._rows.table() if C.n <= FULL_TABLE_ATOMS else None
        self._img = {}

    def mul(self, a, b):
        if self._full is not None:
            return self._full[a][b]
        return self._rows.mul(a, b)

    def _apply(self, which, f, a):
        T = self._img.get(which)
        if T is None:
            T = self._img[which] = image_table(f)
        return T[a]

    def dom(self, a):
        return self._apply("dom", self.C.src, a)

    def cod(self, a):
        return self._apply("cod", self.C.tgt, a)

    def conv(self, a):
        return self._apply("conv", self.C.inv, a)


def _auto_tier(C):
    if isinstance(C, FiniteGroupoid):
        return "dedekind"
    return "modal" if C.is_local() else "plain"


def powerset_quantale(C: FiniteCatoid, tier=None) -> PowersetQuantale:
    tier = tier or _auto_tier(C)
    if tier not in ("plain", "modal", "dedekind"):
        raise ValueError(f"unknown powerset tier {tier!r}")
    if tier in ("modal", "dedekind") and not C.is_local():
        raise NotLocal(f"{C.name or 'catoid'} is not local; the modal powerset tier needs locality")
    if tier == "dedekind":
        if not isinstance(C, FiniteGroupoid):
            raise NotGroupoid("the Dedekind powerset tier needs a groupoid")
        g = check_groupoid(C)
        if not g.ok:
            raise NotGroupoid(f"groupoid axioms fail: {[c.name for c in g.failures()]}")
    P = PowersetQuantale(C, tier)
    if tier == "dedekind":
        u = P.unit
        for X in range(P.n) if P.n <= 1024 else []:
            if P.dom(X) != u & P.mul(X, P.conv(X)) or P.cod(X) != u & P.mul(P.conv(X), X):
                raise LibraryBug(f"groupoid domain identity fails at {P.label(X)}")
    return P


class PowersetNQuantale(NQuantale):
    def __init__(self, C: NCatoid, name=""):
        if C.n > POWERSET_BOUND:
            raise BoundExceeded(f"powerset of a {C.n}-element carrier exceeds bound {POWERSET_BOUND}")
        self.C = C
        L = PowersetLattice(C.carrier)
        units = [C.cells_mask(k) for k in range(C.dims)]
        convs = {i: None for i in C.invs}
        super().__init__(L, None, units, None, None, convs, C.p, name or f"P({C.name})")
        self._rows = [_Rows(c) for c in C.comps]
        self._full = [r.table() for r in self._rows] if C.n <= FULL_TABLE_ATOMS else None
        self._img = {}

    def mul(self, k, a, b):
        if self._full is not None:
            return self._full[k][a][b]
        return self._rows[k].mul(a, b)

    def _apply(self, key, f, a):
        T = self._img.get(key)
        if T is None:
            T = self._img[key] = image_table(f)
        return T[a]

    def dom(self, k, a):
        return self._apply(("dom", k), self.C.srcs[k], a)

    def cod(self, k, a):
        return self._apply(("cod", k), self.C.tgts[k], a)

    def conv(self, i, a):
        return self._apply(("conv", i), self.C.invs[i], a)


def powerset_nquantale(C: NCatoid) -> PowersetNQuantale:
    if not C.is_local():
        raise NotLocal(f"{C.name or 'n-catoid'} is not local in every dimension")
    if C.p is not None:
        missing = [i for i in range(C.p + 1, C.dims + 1) if i not in C.invs]
        if missing:
            raise MissingDecoration(f"inverse maps {missing} are missing")
    return PowersetNQuantale(C)


# convolution

@dataclass
class QFunction:
    """Finitely supported map from catoid elements to value-quantale indices (absent = bottom)."""
    values: dict = field(default_factory=dict)

    def __call__(self, x, bot=0):
        return self.values.get(x, bot)

    @classmethod
    def delta(cls, x, alpha):
        return cls({x: alpha})


def _fibres(C: FiniteCatoid):
    fib = [[] for _ in range(C.n)]
    for y in range(C.n):
        for z in range(C.n):
            for x in bits(C.comp[y][z]):
                fib[x].append((y, z))
    return fib


class ConvolutionQuantale(Quantale):
    """The function space V^C with convolution; elements are mixed-radix codes."""

    def __init__(self, C: FiniteCatoid, V: Quantale, tier, name=""):
        self.C, self.V, self.tier = C, V, tier
        self.lattice = FunctionLattice(C.carrier, V.lattice)
        self.n = self.lattice.n
        self.name = name or f"{V.name}^{C.name}"
        L, VL = self.lattice, V.lattice
        self.unit = L.encode([V.unit if C.src[x] == x else VL.bot for x in range(C.n)])
        self._fib = _fibres(C)
        self._comp = None
        self._dom = self._cod = True if tier in ("modal", "dedekind") else None
        self._conv = True if tier == "dedekind" else None
        self._cache = {} if self.n <= 1024 else None
        self._stars = {}

    def pointwise(self, f, g):
        V, VL = self.V, self.V.lattice
        out = []
        for x in range(self.C.n):
            acc = VL.bot
            for y, z in self._fib[x]:
                acc = VL.join(acc, V.mul(f[y], g[z]))
            out.append(acc)
        return out

    def mul(self, a, b):
        if self._cache is not None:
            r = self._cache.get((a, b))
            if r is None:
                L = self.lattice
                r = self._cache[a, b] = L.encode(self.pointwise(L.decode(a), L.decode(b)))
            return r
        L = self.lattice
        return L.encode(self.pointwise(L.decode(a), L.decode(b)))

    def _push(self, a, f, g):
        VL, vals = self.V.lattice, self.lattice.decode(a)
        out = [VL.bot] * self.C.n
        for x, v in enumerate(vals):
            out[f[x]] = VL.join(out[f[x]], g(v))
        return self.lattice.encode(out)

    def dom(self, a):
        return self._push(a, self.C.src, self.V.dom)

    def cod(self, a):
        return self._push(a, self.C.tgt, self.V.cod)

    def conv(self, a):
        vals = self.lattice.decode(a)
        inv = self.C.inv
        return self.lattice.encode([self.V.conv(vals[inv[x]]) for x in range(self.C.n)])

    def delta(self, x, alpha):
        return self.lattice.delta(x, alpha)


class ConvolutionNQuantale(NQuantale):
    def __init__(self, C: NCatoid, V: NQuantale, name=""):
        self.C, self.V = C, V
        L = FunctionLattice(C.carrier, V.lattice)
        VL = V.lattice
        units = [L.encode([V.units[k] if C.srcs[k][x] == x else VL.bot for x in range(C.n)])
                 for k in range(C.dims)]
        convs = {i: None for i in C.invs if i in V.convs}
        super().__init__(L, None, units, None, None, convs, C.p if convs else None,
                         name or f"{V.name}^{C.name}")
        self._fibs = []
        for k in range(C.dims):
            fib = [[] for _ in range(C.n)]
            for y in range(C.n):
                for z in range(C.n):
                    for x in bits(C.comps[k][y][z]):
                        fib[x].append((y, z))
            self._fibs.append(fib)
        self._cache = {}

    def mul(self, k, a, b):
        key = (k, a, b)
        r = self._cache.get(key)
        if r is None:
            L, V, VL = self.lattice, self.V, self.V.lattice
            f, g = L.decode(a), L.decode(b)
            out = []
            for x in range(self.C.n):
                acc = VL.bot
                for y, z in self._fibs[k][x]:
                    acc = VL.join(acc, V.mul(k, f[y], g[z]))
                out.append(acc)
            r = self._cache[key] = L.encode(out)
        return r

    def _push(self, a, f, g):
        VL, vals = self.V.lattice, self.lattice.decode(a)
        out = [VL.bot] * self.C.n
        for x, v in enumerate(vals):
            out[f[x]] = VL.join(out[f[x]], g(v))
        return self.lattice.encode(out)

    def dom(self, k, a):
        return self._push(a, self.C.srcs[k], lambda v: self.V.dom(k, v))

    def cod(self, k, a):
        return self._push(a, self.C.tgts[k], lambda v: self.V.cod(k, v))

    def conv(self, i, a):
        vals = self.lattice.decode(a)
        inv = self.C.invs[i]
        return self.lattice.encode([self.V.conv(i, vals[inv[x]]) for x in range(self.C.n)])


class PointwiseConvolution:
    """Convolution on finitely supported functions, queried one point at a time."""

    def __init__(self, C, V: Quantale, tier="plain"):
        self.C, self.V, self.tier = C, V, tier
        self.lazy = isinstance(C, LazyCatoid)

    def _fibre(self, x):
        if self.lazy:
            return self.C.fibre(x)
        return self.C.fibre(x)

    def evaluate(self, f: QFunction, g: QFunction, x):
        VL = self.V.lattice
        acc = VL.bot
        for y, z in self._fibre(x):
            acc = VL.join(acc, self.V.mul(f(y, VL.bot), g(z, VL.bot)))
        return acc

    def unit_at(self, x):
        s = self.C.src(x) if self.lazy else self.C.s(x)
        return self.V.unit if s == x else self.V.lattice.bot

    def dom_at(self, f: QFunction, y):
        VL = self.V.lattice
        s = self.C.src if self.lazy else self.C.s
        return VL.join_all(self.V.dom(v) for x, v in f.values.items() if s(x) == y)

    def cod_at(self, f: QFunction, y):
        VL = self.V.lattice
        t = self.C.tgt if self.lazy else self.C.t
        return VL.join_all(self.V.cod(v) for x, v in f.values.items() if t(x) == y)


def convolution_quantale(C, V, tier="plain", mode="auto", cap=CONVOLUTION_CAP):
    """V^C: materialized when |V|^|C| <= cap, otherwise a pointwise evaluator."""
    if isinstance(C, NCatoid) != isinstance(V, NQuantale):
        raise MalformedStructure("an n-catoid needs an n-quantale of values and vice versa")
    if isinstance(C, NCatoid):
        if C.dims != V.dims:
            raise MalformedStructure("catoid and value quantale differ in dimension")
        if V.n ** C.n > cap:
            raise CapExceeded(f"|Q|^|C| = {V.n}^{C.n} exceeds the cap {cap}")
        if not C.is_local():
            raise NotLocal("convolution n-quantales need a local n-catoid")
        if C.invs and V.convs and not classify(V.lattice).frame:
            raise NotFrame("value lattice is not a frame")
        return ConvolutionNQuantale(C, V)
    if tier in ("modal", "dedekind"):
        if not V.has_modal:
            raise MissingDecoration("modal convolution needs a modal value quantale")
        local = C.is_local() if isinstance(C, FiniteCatoid) else True
        if not local:
            raise NotLocal("modal convolution needs a local catoid")
    if tier == "dedekind":
        if not isinstance(C, FiniteGroupoid):
            raise NotGroupoid("Dedekind convolution needs a groupoid")
        if not V.has_conv:
            raise MissingDecoration("Dedekind convolution needs a converse on the values")
        if not classify(V.lattice).frame:
            raise NotFrame("binary meets of the value lattice do not distribute over sups")
    if isinstance(C, LazyCatoid):
        if mode == "materialized":
            raise CapExceeded("lazy catoids admit pointwise mode only")
        return PointwiseConvolution(C, V, tier)
    over = V.n ** C.n > cap
    if mode == "pointwise" or (mode == "auto" and over):
        return PointwiseConvolution(C, V, tier)
    if over:
        raise CapExceeded(f"|Q|^|C| = {V.n}^{C.n} exceeds the cap {cap}")
    return ConvolutionQuantale(C, V, tier)


def convolution_sample_pool(Q: ConvolutionQuantale, k=64, seed=0):
    """Deltas, pairwise joins of deltas, and k seeded random functions."""
    L = Q.lattice
    deltas = sorted({L.delta(x, a) for x in Q.C.carrier for a in range(Q.V.n)})
    pool = set(deltas)
    for a, b in product(deltas, repeat=2):
        pool.add(L.join(a, b))
    rng = random.Random(seed)
    for _ in range(k):
        pool.add(L.encode([rng.randrange(Q.V.n) for _ in range(Q.C.n)]))
    return sorted(pool)


def delta_law_report(C: FiniteCatoid, V: Quantale) -> Report:
    """(delta_x^a * delta_y^b)(z) = a.b.[z in x y] over all x, y, z, a, b."""
    pc = PointwiseConvolution(C, V)
    VL = V.lattice
    rep = Report(f"delta algebra: {V.name}^{C.name}")
    rep.law("(dx^a * dy^b)(z) = ab[z in xy]",
            product(C.carrier, C.carrier, C.carrier, range(V.n), range(V.n)),
            lambda x, y, z, a, b: pc.evaluate(QFunction.delta(x, a), QFunction.delta(y, b), z)
            == (V.mul(a, b) if z in C.compose(x, y) else VL.bot),
            lambda x, y, z, a, b: {"x": x, "y": y, "z": z, "a": V.label(a), "b": V.label(b)})
    if V.has_modal:
        rep.law("Dom(dx^a) = dom(a) d_s(x)", product(C.carrier, range(V.n)),
                lambda x, a: all(pc.dom_at(QFunction.delta(x, a), y)
                                 == (V.dom(a) if y == C.s(x) else VL.bot) for y in C.carrier))
        rep.law("Cod(dx^a) = cod(a) d_t(x)", product(C.carrier, range(V.n)),
                lambda x, a: all(pc.cod_at(QFunction.delta(x, a), y)
                                 == (V.cod(a) if y == C.t(x) else VL.bot) for y in C.carrier))
    return rep


def indicator_isomorphism(F, P, sampling=None) -> Report:
    """Check f -> {x | f(x) = 1} is an isomorphism from 2^C onto P(C)."""
    rep = Report(f"indicator isomorphism {F.name} ~ {P.name}")
    nq = isinstance(F, NQuantale)
    V = F.V
    VL = V.lattice
    one = V.units[0] if nq else V.unit
    if VL.n != 2 or one != VL.top:
        raise MalformedStructure("indicator isomorphism needs the two-element value quantale")
    L = F.lattice
    m = L.m

    def phi(a):
        vals = L.decode(a)
        return sum(1 << x for x in range(m) if vals[x] == VL.top)

    n = F.n
    rep.add("bijection", n == P.n and len({phi(a) for a in range(n)}) == n)
    sm = sampling or Sampling()
    pairs = list(sm.tuples(range(n), 2, "iso"))
    dims = range(F.dims) if nq else [None]
    for k in dims:
        mulF = (lambda a, b: F.mul(k, a, b)) if nq else F.mul
        mulP = (lambda a, b: P.mul(k, a, b)) if nq else P.mul
        tag = f"[{k}] " if nq else ""
        rep.law(tag + "phi(f*g) = phi(f)phi(g)", pairs, lambda a, b: phi(mulF(a, b)) == mulP(phi(a), phi(b)),
                lambda a, b: {"f": F.label(a), "g": F.label(b)})
        uF = F.units[k] if nq else F.unit
        uP = P.units[k] if nq else P.unit
        rep.add(tag + "phi(unit) = unit", phi(uF) == uP)
        dF = (lambda a: F.dom(k, a)) if nq else (F.dom if F.has_modal else None)
        if nq or (F.has_modal and P.has_modal):
            dP = (lambda a: P.dom(k, a)) if nq else P.dom
            cF = (lambda a: F.cod(k, a)) if nq else F.cod
            cP = (lambda a: P.cod(k, a)) if nq else P.cod
            rep.law(tag + "phi(Dom f) = dom(phi f)", range(n), lambda a: phi(dF(a)) == dP(phi(a)))
            rep.law(tag + "phi(Cod f) = cod(phi f)", range(n), lambda a: phi(cF(a)) == cP(phi(a)))
    rep.law("order", pairs, lambda a, b: L.leq(a, b) == P.lattice.leq(phi(a), phi(b)))
    if nq:
        for i in F.convs:
            rep.law(f"phi(f°{i}) = phi(f)°{i}", range(n), lambda a: phi(F.conv(i, a)) == P.conv(i, phi(a)))
    elif F.has_conv and P.has_conv:
        rep.law("phi(f°) = phi(f)°", range(n), lambda a: phi(F.conv(a)) == P.conv(phi(a)))
    return rep


# atom recovery

def _atom_base(L):
    if isinstance(L, PowersetLattice):
        return [1 << k for k in range(len(L.base))], list(L.base)
    c = classify(L)
    if not c.boolean:
        raise MalformedStructure("atom recovery needs a powerset (boolean) lattice")
    atoms = L.atoms()
    labels = []
    for a in atoms:
        lab = L.label(a)
        labels.append(lab[1:-1] if lab.startswith("{") and lab.endswith("}") else lab)
    return atoms, labels


def _recover_dim(mul, dom, cod, unit, L, atoms, what):
    if unit == L.bot:
        raise EmptyUnit(f"{what}: the unit is bottom")
    pos = {a: k for k, a in enumerate(atoms)}
    m = len(atoms)
    comp = [[0] * m for _ in range(m)]
    for y in range(m):
        for z in range(m):
            prod_ = mul(atoms[y], atoms[z])
            for x in range(m):
                if L.leq(atoms[x], prod_):
                    comp[y][z] |= 1 << x

    def point(f, x, nm):
        v = f(atoms[x])
        if v not in pos:
            raise NonAtomicSource(f"{what}: {nm} of an atom is not an atom")
        return pos[v]

    src = [point(dom, x, "dom") for x in range(m)]
    tgt = [point(cod, x, "cod") for x in range(m)]
    return comp, src, tgt, pos


def atoms_to_catoid(P):
    L = P.lattice
    atoms, labels = _atom_base(L)
    if isinstance(P, NQuantale):
        comps, srcs, tgts, invs = [], [], [], {}
        for k in range(P.dims):
            comp, src, tgt, pos = _recover_dim(lambda a, b: P.mul(k, a, b), lambda a: P.dom(k, a),
                                               lambda a: P.cod(k, a), P.units[k], L, atoms, f"dim {k}")
            comps.append(comp)
            srcs.append(src)
            tgts.append(tgt)
        for i in P.convs:
            invs[i] = _inverse(lambda a: P.conv(i, a), comps[i - 1], atoms)
        return NCatoid(labels, comps, srcs, tgts, invs, P.p if invs else None, f"atoms({P.name})")
    if not P.has_modal:
        raise MissingDecoration("atom recovery needs dom and cod")
    comp, src, tgt, pos = _recover_dim(P.mul, P.dom, P.cod, P.unit, L, atoms, "quantale")
    if P.has_conv:
        inv = _inverse(P.conv, comp, atoms)
        return FiniteGroupoid(labels, comp, src, tgt, inv, f"atoms({P.name})")
    return FiniteCatoid(labels, comp, src, tgt, f"atoms({P.name})")


def _inverse(conv, comp, atoms):
    pos = {a: k for k, a in enumerate(atoms)}
    if any(bin(r).count("1") > 1 for row in comp for r in row):
        raise NonFunctionalAtoms("some product of atoms holds more than one atom")
    inv = []
    for a in atoms:
        v = conv(a)
        if v not in pos:
            raise NonFunctionalAtoms("the converse of an atom is not an atom")
        inv.append(pos[v])
    return inv


# isomorphism

def _tables(X):
    if isinstance(X, NCatoid):
        return X.comps, X.srcs, X.tgts, X.invs
    inv = {1: X.inv} if isinstance(X, FiniteGroupoid) else {}
    return [X.comp], [X.src], [X.tgt], inv


def _same_under(A, B, perm):
    ca, sa, ta, ia = _tables(A)
    cb, sb, tb, ib = _tables(B)
    if len(ca) != len(cb) or set(ia) != set(ib):
        return False
    n = len(perm)

    def pm(mask):
        out = 0
        for i in bits(mask):
            out |= 1 << perm[i]
        return out

    for k in range(len(ca)):
        for x in range(n):
            if perm[sa[k][x]] != sb[k][perm[x]] or perm[ta[k][x]] != tb[k][perm[x]]:
                return False
            for y in range(n):
                if pm(ca[k][x][y]) != cb[k][perm[x]][perm[y]]:
                    return False
    for i in ia:
        if any(perm[ia[i][x]] != ib[i][perm[x]] for x in range(n)):
            return False
    return True


def find_isomorphism(A, B, search_limit=8):
    """Label-preserving bijection first; otherwise search over bijections for small carriers."""
    if A.n != B.n:
        return None
    if set(A.carrier) == set(B.carrier):
        perm = [B.index[x] for x in A.carrier]
        if _same_under(A, B, perm):
            return {x: x for x in A.carrier}
    if A.n > search_limit:
        return None
    for perm in permutations(range(A.n)):
        if _same_under(A, B, list(perm)):
            return {A.carrier[i]: B.carrier[perm[i]] for i in range(A.n)}
    return None


def roundtrip_report(C) -> Report:
    rep = Report(f"round trip: {C.name or 'unnamed'}")
    if isinstance(C, NCatoid):
        chk = check_ncatoid(C)
        if C.p is not None:
            chk.merge(check_npcatoid(C))
    elif isinstance(C, FiniteGroupoid):
        chk = check_groupoid(C)
    else:
        chk = check_catoid(C)
    rep.add("leg: structure axioms", chk.ok,
            None if chk.ok else {"failing": [c.name for c in chk.failures()]})
    if not C.is_local():
        rep.skip("leg: powerset quantale axioms", "modal leg refused: structure is not local")
        rep.skip("leg: atom recovery", "modal leg refused: structure is not local")
        rep.skip("leg: isomorphism", "modal leg refused: structure is not local")
        return rep
    if isinstance(C, NCatoid):
        P = powerset_nquantale(C)
        q = check_nquantale(P, "weak")
        if C.p is not None:
            q.merge(check_npquantale(P))
        tier = "n-quantale"
    else:
        P = powerset_quantale(C)
        tier = P.tier
        q = check_quantale(P, tier)
        if tier == "dedekind":
            q.merge(check_quantale(P, "modal"), "modal ")
    rep.add(f"leg: powerset quantale axioms ({tier})", q.ok,
            None if q.ok else {"failing": [c.name for c in q.failures()][:5]})
    try:
        R = atoms_to_catoid(P)
    except (EmptyUnit, NonAtomicSource, NonFunctionalAtoms) as e:
        rep.add("leg: atom recovery", False, {"error": str(e)})
        return rep
    rep.add("leg: atom recovery", True)
    iso = find_isomorphism(C, R)
    rep.add("leg: isomorphism", iso is not None)
    rep.facts["label preserving"] = iso is not None and all(k == v for k, v in iso.items())
    return rep

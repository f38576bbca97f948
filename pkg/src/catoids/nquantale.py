"""n-quantales and (n,p)-quantales on one lattice.

Dimensions are numbered 0..n-1; conv[i], for p < i <= n, is a converse
with respect to the composition of dimension i-1.
"""
from itertools import product

from .errors import MalformedStructure, MissingDecoration, BoundExceeded
from .lattice import FiniteLattice
from .quantale import (mixed_tuples, Quantale, Sampling, DEFAULT_SAMPLING, quantale_axioms, modal_axioms,
                       involution_axioms, modular_law, kleene_star, _star_laws)
from .report import Report

LATTICE_CAP = 16


class NQuantale:
    def __init__(self, lattice: FiniteLattice, comps, units, doms, cods, convs=None, p=None, name=""):
        self.lattice = lattice
        self.n = lattice.n
        self.dims = len(units)
        if self.dims < 1:
            raise MalformedStructure("an n-quantale needs at least one dimension")
        if comps is not None and not len(comps) == len(doms) == len(cods) == self.dims:
            raise MalformedStructure("every dimension needs comp, unit, dom and cod")
        self._comps = comps
        self.units = list(units)
        self._doms = doms
        self._cods = cods
        self.convs = dict(convs or {})
        self.p = p
        self.name = name
        self._stars = {}
        n = self.n
        if comps is not None:
            for k in range(self.dims):
                if len(comps[k]) != n or any(len(r) != n for r in comps[k]):
                    raise MalformedStructure(f"composition table {k} has the wrong shape")
                for nm, m in (("dom", doms[k]), ("cod", cods[k])):
                    if len(m) != n or any(not 0 <= v < n for v in m):
                        raise MalformedStructure(f"{nm} map {k} is not total")
        for i, m in self.convs.items():
            if not 0 < i <= self.dims:
                raise MalformedStructure(f"converse index {i} outside 1..{self.dims}")
        if p is not None and not 0 <= p < self.dims:
            raise MalformedStructure(f"p={p} must satisfy 0 <= p < {self.dims}")

    @classmethod
    def from_labels(cls, lattice, blocks, convs=None, p=None, name=""):
        qs = [Quantale.from_labels(lattice, b["comp"], b["unit"], b["dom"], b["cod"]) for b in blocks]
        L = lattice
        cv = {}
        for i, m in (convs or {}).items():
            try:
                cv[int(i)] = [L.idx(m[L.label(a)]) for a in range(L.n)]
            except KeyError as e:
                raise MalformedStructure(f"converse {i} misses {e.args[0]!r}") from None
        return cls(L, [q._comp for q in qs], [q.unit for q in qs], [q._dom for q in qs],
                   [q._cod for q in qs], cv, p, name)

    @classmethod
    def from_quantale(cls, Q: Quantale, p=None):
        convs = {}
        if Q.has_conv:
            convs = {1: Q.unary("conv")}
            p = 0 if p is None else p
        return cls(Q.lattice, [Q.table()], [Q.unit], [Q.unary("dom")], [Q.unary("cod")],
                   convs, p, Q.name)

    def mul(self, k, a, b):
        return self._comps[k][a][b]

    def dom(self, k, a):
        return self._doms[k][a]

    def cod(self, k, a):
        return self._cods[k][a]

    def conv(self, i, a):
        return self.convs[i][a]

    def label(self, a):
        return self.lattice.label(a)

    def idx(self, x):
        return self.lattice.idx(x)

    def dimension(self, k) -> Quantale:
        return DimensionView(self, k)

    def fix(self, k):
        """Q_k: fixpoints of dom_k, or the whole lattice for k >= dims."""
        if k >= self.dims:
            return list(range(self.n))
        return [a for a in range(self.n) if self.dom(k, a) == a]

    def star(self, k, a):
        key = (k, a)
        if key not in self._stars:
            self._stars[key] = kleene_star(self.dimension(k), a, verify=False)
        return self._stars[key]

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} dims={self.dims} n={self.n}>"


class DimensionView(Quantale):
    """One dimension of an n-quantale as a plain Quantale."""

    def __init__(self, Q: NQuantale, k):
        self.Q, self.k = Q, k
        self.lattice = Q.lattice
        self.n = Q.n
        self.unit = Q.units[k]
        self.name = f"{Q.name} dim {k}"
        self._comp = None
        self._dom = self._cod = True
        self._conv = True if k + 1 in Q.convs else None
        self._stars = {}

    def mul(self, a, b):
        return self.Q.mul(self.k, a, b)

    def dom(self, a):
        return self.Q.dom(self.k, a)

    def cod(self, a):
        return self.Q.cod(self.k, a)

    def conv(self, a):
        return self.Q.conv(self.k + 1, a)


def _cap(Q, cap, sampling):
    if cap is not None and Q.n > cap and sampling is None:
        raise BoundExceeded(f"lattice of size {Q.n} exceeds the exhaustive cap {cap}; pass a sampling regime")


def _lab(Q, *xs):
    return [Q.label(x) for x in xs]


def _sh(Q):
    return lambda *xs: {"args": _lab(Q, *xs)}


def _pairs(d):
    return [(i, j) for i in range(d) for j in range(d) if i < j]


def check_nquantale(Q: NQuantale, strength="weak", cap=LATTICE_CAP, sampling=None) -> Report:
    if strength not in ("weak", "strong"):
        raise ValueError(f"unknown strength {strength!r}")
    _cap(Q, cap, sampling)
    sm = sampling or DEFAULT_SAMPLING
    rep = Report(f"{Q.dims}-quantale axioms ({strength}): {Q.name or 'unnamed'}")
    for k in range(Q.dims):
        D = Q.dimension(k)
        quantale_axioms(D, rep, sm, f"dim {k}: ")
        modal_axioms(D, rep, sm, f"dim {k}: ")
    L, n = Q.lattice, Q.n
    le = L.leq
    m, d, c = Q.mul, Q.dom, Q.cod
    sh = _sh(Q)
    two = lambda tag: sm.tuples(range(n), 2, tag)
    for i, j in _pairs(Q.dims):
        rep.law(f"dom{i}(a *{j} b) <= dom{i}a *{j} dom{i}b", two("f1"),
                lambda a, b: le(d(i, m(j, a, b)), m(j, d(i, a), d(i, b))), sh)
        rep.law(f"cod{i}(a *{j} b) <= cod{i}a *{j} cod{i}b", two("f2"),
                lambda a, b: le(c(i, m(j, a, b)), m(j, c(i, a), c(i, b))), sh)
        rep.law(f"dom{j}(a *{i} b) <= dom{j}a *{i} dom{j}b", two("f3"),
                lambda a, b: le(d(j, m(i, a, b)), m(i, d(j, a), d(j, b))), sh)
        rep.law(f"cod{j}(a *{i} b) <= cod{j}a *{i} cod{j}b", two("f4"),
                lambda a, b: le(c(j, m(i, a, b)), m(i, c(j, a), c(j, b))), sh)
        rep.law(f"interchange (a *{j} b) *{i} (c *{j} d) <= (a *{i} c) *{j} (b *{i} d)",
                sm.tuples(range(n), 4, "ich"),
                lambda a, b, x, y: le(m(i, m(j, a, b), m(j, x, y)), m(j, m(i, a, x), m(i, b, y))), sh)
        rep.law(f"dom{j}.dom{i} = dom{i}", range(n), lambda a: d(j, d(i, a)) == d(i, a),
                lambda a: {"args": _lab(Q, a), f"dom{j}(dom{i}(a))": Q.label(d(j, d(i, a))),
                           f"dom{i}(a)": Q.label(d(i, a))})
        if strength == "strong":
            rep.law(f"strong dom{j}(a *{i} b) = dom{j}a *{i} dom{j}b", two("s1"),
                    lambda a, b: d(j, m(i, a, b)) == m(i, d(j, a), d(j, b)), sh)
            rep.law(f"strong cod{j}(a *{i} b) = cod{j}a *{i} cod{j}b", two("s2"),
                    lambda a, b: c(j, m(i, a, b)) == m(i, c(j, a), c(j, b)), sh)
    return rep


def is_strong_nquantale(Q: NQuantale, sampling=None):
    sm = sampling or DEFAULT_SAMPLING
    m, d, c = Q.mul, Q.dom, Q.cod
    for i, j in _pairs(Q.dims):
        for a, b in sm.tuples(range(Q.n), 2, "isstrong"):
            if d(j, m(i, a, b)) != m(i, d(j, a), d(j, b)) or c(j, m(i, a, b)) != m(i, c(j, a), c(j, b)):
                return False
    return True


def derived_laws_nquantale(Q: NQuantale, strong=None, cap=LATTICE_CAP, sampling=None) -> Report:
    _cap(Q, cap, sampling)
    sm = sampling or DEFAULT_SAMPLING
    if strong is None:
        strong = is_strong_nquantale(Q, sm)
    rep = Report(f"derived {Q.dims}-quantale laws: {Q.name or 'unnamed'}")
    rep.facts["strong"] = strong
    L, n = Q.lattice, Q.n
    le, M = L.leq, L.meet
    m, d, c, u = Q.mul, Q.dom, Q.cod, Q.units
    sh = _sh(Q)
    N = range(n)
    two = lambda tag: sm.tuples(N, 2, tag)
    three = lambda tag: sm.tuples(N, 3, tag)
    four = lambda tag: sm.tuples(N, 4, tag)

    def gated(name, cases, holds):
        if strong:
            rep.law(name, cases, holds, sh)
        else:
            rep.skip(name, "strong-only law; instance is weak")

    fixes = [Q.fix(k) for k in range(Q.dims + 1)]
    rep.add("chain Q0 <= Q1 <= ... <= Q",
            all(set(fixes[k]) <= set(fixes[k + 1]) for k in range(Q.dims)))
    for k in range(Q.dims):
        for i, j in product(range(k + 1), repeat=2):
            rep.law(f"dom{i}(a) *{k} dom{j}(b) = dom{i}(a) /\\ dom{j}(b)", two("cap"),
                    lambda a, b, i=i, j=j, k=k: m(k, d(i, a), d(j, b)) == M(d(i, a), d(j, b)), sh)
            rep.law(f"cod{i}(a) *{k} cod{j}(b) = cod{i}(a) /\\ cod{j}(b)", two("capc"),
                    lambda a, b, i=i, j=j, k=k: m(k, c(i, a), c(j, b)) == M(c(i, a), c(j, b)), sh)

    for i, j in _pairs(Q.dims):
        pre = f"[{i}<{j}] "
        # basic properties
        rep.law(pre + f"dom{j}.cod{i} = cod{i}", N, lambda a: d(j, c(i, a)) == c(i, a), sh)
        rep.law(pre + f"cod{j}.dom{i} = dom{i}", N, lambda a: c(j, d(i, a)) == d(i, a), sh)
        rep.law(pre + f"cod{j}.cod{i} = cod{i}", N, lambda a: c(j, c(i, a)) == c(i, a), sh)
        uj, ui = u[j], u[i]
        rep.add(pre + f"1_{j} <= 1_{j} *{i} 1_{j}", le(uj, m(i, uj, uj)))
        if strong:
            rep.add(pre + f"strong 1_{j} *{i} 1_{j} = 1_{j}", m(i, uj, uj) == uj)
        else:
            rep.skip(pre + f"strong 1_{j} *{i} 1_{j} = 1_{j}", "strong-only law; instance is weak")
        rep.add(pre + f"1_{i} *{j} 1_{i} = 1_{i}", m(j, ui, ui) == ui)
        rep.add(pre + f"1_{i} <= 1_{j}", le(ui, uj))
        rep.add(pre + f"dom{j}(1_{i}) = 1_{i} and cod{j}(1_{i}) = 1_{i}", d(j, ui) == ui == c(j, ui))
        rep.add(pre + f"dom{i}(1_{j}) = 1_{i} and cod{i}(1_{j}) = 1_{i}", d(i, uj) == ui == c(i, uj))
        rep.law(pre + f"dom{i}.dom{j} = dom{j}.dom{i}", N, lambda a: d(i, d(j, a)) == d(j, d(i, a)), sh)
        rep.law(pre + f"dom{i}.cod{j} = cod{j}.dom{i}", N, lambda a: d(i, c(j, a)) == c(j, d(i, a)), sh)
        rep.law(pre + f"cod{i}.dom{j} = dom{j}.cod{i}", N, lambda a: c(i, d(j, a)) == d(j, c(i, a)), sh)
        rep.law(pre + f"cod{i}.cod{j} = cod{j}.cod{i}", N, lambda a: c(i, c(j, a)) == c(j, c(i, a)), sh)
        rep.law(pre + f"dom{i}(a *{j} b) = dom{i}(a *{j} dom{j}b)", two("p6a"),
                lambda a, b: d(i, m(j, a, b)) == d(i, m(j, a, d(j, b))), sh)
        rep.law(pre + f"cod{i}(a *{j} b) = cod{i}(cod{j}a *{j} b)", two("p6b"),
                lambda a, b: c(i, m(j, a, b)) == c(i, m(j, c(j, a), b)), sh)

        # stars
        si = lambda a: Q.star(i, a)
        sj = lambda a: Q.star(j, a)
        rep.law(pre + f"dom{i}(a) *{i} b^*{j} <= (dom{i}(a) *{i} b)^*{j}", two("st1"),
                lambda a, b: le(m(i, d(i, a), sj(b)), sj(m(i, d(i, a), b))), sh)
        rep.law(pre + f"a^*{j} *{i} cod{i}(b) <= (a *{i} cod{i}(b))^*{j}", two("st2"),
                lambda a, b: le(m(i, sj(a), c(i, b)), sj(m(i, a, c(i, b)))), sh)
        gated(pre + f"strong dom{j}(a) *{i} b^*{j} <= (dom{j}(a) *{i} b)^*{j}", two("st3"),
              lambda a, b: le(m(i, d(j, a), sj(b)), sj(m(i, d(j, a), b))))
        gated(pre + f"strong a^*{j} *{i} cod{j}(b) <= (a *{i} cod{j}(b))^*{j}", two("st4"),
              lambda a, b: le(m(i, sj(a), c(j, b)), sj(m(i, a, c(j, b)))))
        rep.law(pre + f"(a *{j} b)^*{i} <= a^*{i} *{j} b^*{i}", two("st5"),
                lambda a, b: le(si(m(j, a, b)), m(j, si(a), si(b))), sh)

        # mod-props families
        mp = pre + "mod-props "
        rep.law(mp + f"(1) dom{i}(a) *{j} dom{i}(a) = dom{i}(a)", N,
                lambda a: m(j, d(i, a), d(i, a)) == d(i, a), sh)
        rep.law(mp + f"(1) cod{i}(a) *{j} cod{i}(a) = cod{i}(a)", N,
                lambda a: m(j, c(i, a), c(i, a)) == c(i, a), sh)
        rep.law(mp + f"(2) dom{i}(a *{j} b) = dom{i}(a *{j} dom{j}(b))", two("m2a"),
                lambda a, b: d(i, m(j, a, b)) == d(i, m(j, a, d(j, b))), sh)
        rep.law(mp + f"(2) cod{i}(a *{j} b) = cod{i}(cod{j}(a) *{j} b)", two("m2b"),
                lambda a, b: c(i, m(j, a, b)) == c(i, m(j, c(j, a), b)), sh)
        rep.law(mp + f"(3) dom{i}(a *{j} b) = dom{i}(cod{j}(a) *{j} b)", two("m3a"),
                lambda a, b: d(i, m(j, a, b)) == d(i, m(j, c(j, a), b)), sh)
        rep.law(mp + f"(3) cod{i}(a *{j} b) = cod{i}(a *{j} dom{j}(b))", two("m3b"),
                lambda a, b: c(i, m(j, a, b)) == c(i, m(j, a, d(j, b))), sh)
        rep.law(mp + f"(4) dom{i}(a *{i} b) = dom{i}(a *{i} dom{j}(b))", two("m4a"),
                lambda a, b: d(i, m(i, a, b)) == d(i, m(i, a, d(j, b))), sh)
        rep.law(mp + f"(4) cod{i}(a *{i} b) = cod{i}(cod{j}(a) *{i} b)", two("m4b"),
                lambda a, b: c(i, m(i, a, b)) == c(i, m(i, c(j, a), b)), sh)
        rep.law(mp + f"(5) dom{i}(a *{i} b) <= dom{i}(cod{j}(a) *{i} b)", two("m5a"),
                lambda a, b: le(d(i, m(i, a, b)), d(i, m(i, c(j, a), b))), sh)
        rep.law(mp + f"(5) cod{i}(a *{i} b) <= cod{i}(a *{i} dom{j}(b))", two("m5b"),
                lambda a, b: le(c(i, m(i, a, b)), c(i, m(i, a, d(j, b)))), sh)
        gated(mp + f"(5) strong dom{i}(a *{i} b) = dom{i}(cod{j}(a) *{i} b)", two("m5c"),
              lambda a, b: d(i, m(i, a, b)) == d(i, m(i, c(j, a), b)))
        gated(mp + f"(5) strong cod{i}(a *{i} b) = cod{i}(a *{i} dom{j}(b))", two("m5d"),
              lambda a, b: c(i, m(i, a, b)) == c(i, m(i, a, d(j, b))))
        rep.law(mp + f"(6) dom{i}(a) *{i} (b *{j} c) <= (dom{i}(a) *{i} b) *{j} (dom{i}(a) *{i} c)",
                three("m6a"),
                lambda a, b, x: le(m(i, d(i, a), m(j, b, x)), m(j, m(i, d(i, a), b), m(i, d(i, a), x))), sh)
        rep.law(mp + f"(6) (a *{j} b) *{i} dom{i}(c) <= (a *{i} dom{i}(c)) *{j} (b *{i} dom{i}(c))",
                three("m6b"),
                lambda a, b, x: le(m(i, m(j, a, b), d(i, x)), m(j, m(i, a, d(i, x)), m(i, b, d(i, x)))), sh)
        rep.law(mp + f"(7) dom{i}(dom{j}(a) *{j} b) <= dom{i}(a) *{j} dom{i}(b)", two("m7a"),
                lambda a, b: le(d(i, m(j, d(j, a), b)), m(j, d(i, a), d(i, b))), sh)
        rep.law(mp + f"(7) cod{i}(a *{j} cod{j}(b)) <= cod{i}(a) *{j} cod{i}(b)", two("m7b"),
                lambda a, b: le(c(i, m(j, a, c(j, b))), m(j, c(i, a), c(i, b))), sh)
        rep.law(mp + f"(8) dom{j}(dom{i}(a) *{j} b) = dom{i}(a) *{j} dom{j}(b)", two("m8a"),
                lambda a, b: d(j, m(j, d(i, a), b)) == m(j, d(i, a), d(j, b)), sh)
        rep.law(mp + f"(8) cod{j}(a *{j} cod{i}(b)) = cod{j}(a) *{j} cod{i}(b)", two("m8b"),
                lambda a, b: c(j, m(j, a, c(i, b))) == m(j, c(j, a), c(i, b)), sh)
        rep.law(mp + f"(9) dom{i}(a) *{j} dom{i}(b) = dom{i}(a) *{i} dom{i}(b)", two("m9a"),
                lambda a, b: m(j, d(i, a), d(i, b)) == m(i, d(i, a), d(i, b)), sh)
        rep.law(mp + f"(9) cod{i}(a) *{j} cod{i}(b) = cod{i}(a) *{i} cod{i}(b)", two("m9b"),
                lambda a, b: m(j, c(i, a), c(i, b)) == m(i, c(i, a), c(i, b)), sh)
        for nm, f in ((f"dom{i}", d), (f"cod{i}", c)):
            rep.law(mp + f"(10) strong interchange on {nm} elements", four("m10" + nm),
                    lambda a, b, x, y, f=f: m(i, m(j, f(i, a), f(i, b)), m(j, f(i, x), f(i, y)))
                    == m(j, m(i, f(i, a), f(i, x)), m(i, f(i, b), f(i, y))), sh)

        # higher diamonds: <a>_k b is |a>_k b = dom_k(a *k b) or <a|_k b = cod_k(b *k a)
        fd = lambda k, a, b: d(k, m(k, a, b))
        bd = lambda k, a, b: c(k, m(k, b, a))
        both = (("|a>", fd), ("<a|", bd))
        hd = pre + "higher diamonds "
        for on, od in both:
            rep.law(hd + f"(1) {on}{i} |b>{j} c = {on}{i}(b *{j} c)", three("h1a" + on),
                    lambda a, b, x, od=od: od(i, a, fd(j, b, x)) == od(i, a, m(j, b, x)), sh)
            rep.law(hd + f"(1) {on}{i} <b|{j} c = {on}{i}(c *{j} b)", three("h1b" + on),
                    lambda a, b, x, od=od: od(i, a, bd(j, b, x)) == od(i, a, m(j, x, b)), sh)
        for inn, idia in both:
            rep.law(hd + f"(2) |a>{i} {inn}{j} c <= |a>{i}(dom{i}(b) *{j} dom{i}(c))", three("h2a" + inn),
                    lambda a, b, x, idia=idia: le(fd(i, a, idia(j, b, x)), fd(i, a, m(j, d(i, b), d(i, x)))), sh)
        rep.law(hd + f"(2) <a|{i} <b|{j} c <= <a|{i}(cod{i}(c) *{j} cod{i}(b))", three("h2b"),
                lambda a, b, x: le(bd(i, a, bd(j, b, x)), bd(i, a, m(j, c(i, x), c(i, b)))), sh)
        Qj = Q.fix(j)
        cases3 = mixed_tuples(sm, (Qj, N, N), "h3")
        rep.law(hd + f"(3) a in Q{j}: |a>{i}|b>{j} c <= |a>{i} b *{j} |a>{i} c", cases3,
                lambda a, b, x: le(fd(i, a, fd(j, b, x)), m(j, fd(i, a, b), fd(i, a, x))), sh)
        rep.law(hd + f"(3) a in Q{j}: <a|{i}<b|{j} c <= <a|{i} b *{j} <a|{i} c", cases3,
                lambda a, b, x: le(bd(i, a, bd(j, b, x)), m(j, bd(i, a, b), bd(i, a, x))), sh)
        for inn, idia in both:
            rep.law(hd + f"(4) |a>{j} {inn}{i} c <= |a>{j} <dom{j}(b)>{i} c", three("h4a" + inn),
                    lambda a, b, x, idia=idia: le(fd(j, a, idia(i, b, x)), fd(j, a, idia(i, d(j, b), x))), sh)
            rep.law(hd + f"(4) <a|{j} {inn}{i} c <= <a|{j} <cod{j}(b)>{i} c", three("h4b" + inn),
                    lambda a, b, x, idia=idia: le(bd(j, a, idia(i, b, x)), bd(j, a, idia(i, c(j, b), x))), sh)
            gated(hd + f"(4) strong |a>{j} {inn}{i} c = |a>{j} <dom{j}(b)>{i} c", three("h4c" + inn),
                  lambda a, b, x, idia=idia: fd(j, a, idia(i, b, x)) == fd(j, a, idia(i, d(j, b), x)))
            gated(hd + f"(4) strong <a|{j} {inn}{i} c = <a|{j} <cod{j}(b)>{i} c", three("h4d" + inn),
                  lambda a, b, x, idia=idia: bd(j, a, idia(i, b, x)) == bd(j, a, idia(i, c(j, b), x)))
            rep.law(hd + f"(5) dom{i}(a) *{i} {inn}{j} c <= <dom{i}(a) *{i} b>{j}(dom{i}(a) *{i} c)",
                    three("h5a" + inn),
                    lambda a, b, x, idia=idia: le(m(i, d(i, a), idia(j, b, x)),
                                                  idia(j, m(i, d(i, a), b), m(i, d(i, a), x))), sh)
            gated(hd + f"(5) strong {inn}{j} b *{i} dom{i}(c) <= <a *{i} dom{i}(c)>{j}(b *{i} dom{i}(c))",
                  three("h5b" + inn),
                  lambda a, b, x, idia=idia: le(m(i, idia(j, a, b), d(i, x)),
                                                idia(j, m(i, a, d(i, x)), m(i, b, d(i, x)))))
    return rep


def check_kleene_layer(Q: NQuantale, strong=None, cap=LATTICE_CAP, sampling=None) -> Report:
    _cap(Q, cap, sampling)
    sm = sampling or DEFAULT_SAMPLING
    if strong is None:
        strong = is_strong_nquantale(Q, sm)
    rep = Report(f"Kleene layer: {Q.name or 'unnamed'}")
    n = Q.n
    for k in range(Q.dims):
        D = Q.dimension(k)
        st = {a: Q.star(k, a) for a in range(n)}
        _star_laws(D, rep, sm, list(range(n)), st, f"dim {k}: ")
    le, m, d, c = Q.lattice.leq, Q.mul, Q.dom, Q.cod
    sh = _sh(Q)
    for i, j in _pairs(Q.dims):
        sj = lambda a: Q.star(j, a)
        si = lambda a: Q.star(i, a)
        two = lambda tag: sm.tuples(range(n), 2, tag)
        rep.law(f"dom{i}(a) *{i} b^*{j} <= (dom{i}(a) *{i} b)^*{j}", two("k1"),
                lambda a, b: le(m(i, d(i, a), sj(b)), sj(m(i, d(i, a), b))), sh)
        rep.law(f"a^*{j} *{i} cod{i}(b) <= (a *{i} cod{i}(b))^*{j}", two("k2"),
                lambda a, b: le(m(i, sj(a), c(i, b)), sj(m(i, a, c(i, b)))), sh)
        for name, holds in ((f"dom{j}(a) *{i} b^*{j} <= (dom{j}(a) *{i} b)^*{j}",
                             lambda a, b: le(m(i, d(j, a), sj(b)), sj(m(i, d(j, a), b)))),
                            (f"a^*{j} *{i} cod{j}(b) <= (a *{i} cod{j}(b))^*{j}",
                             lambda a, b: le(m(i, sj(a), c(j, b)), sj(m(i, a, c(j, b)))))):
            if strong:
                rep.law("strong " + name, two("k3"), holds, sh)
            else:
                rep.skip("strong " + name, "strong-only law; instance is weak")
        rep.law(f"(a *{j} b)^*{i} <= a^*{i} *{j} b^*{i}", two("k5"),
                lambda a, b: le(si(m(j, a, b)), m(j, si(a), si(b))), sh)
    rep.facts["strong"] = strong
    return rep


def globular_ka_bundle(Q: NQuantale, cap=LATTICE_CAP, sampling=None) -> Report:
    """Axioms of globular Kleene algebras that strong n-quantales must satisfy."""
    rep = Report(f"globular Kleene algebra bundle: {Q.name or 'unnamed'}")
    rep.merge(check_nquantale(Q, "strong", cap, sampling))
    rep.merge(check_kleene_layer(Q, True, cap, sampling), "star: ")
    return rep


def check_npquantale(Q: NQuantale, cap=LATTICE_CAP, sampling=None) -> Report:
    if Q.p is None:
        raise MissingDecoration("structure has no converse threshold p")
    _cap(Q, cap, sampling)
    sm = sampling or DEFAULT_SAMPLING
    rep = Report(f"({Q.dims},{Q.p})-quantale converses: {Q.name or 'unnamed'}")
    n = Q.n
    sh = _sh(Q)
    for i in range(Q.p + 1, Q.dims + 1):
        if i not in Q.convs:
            raise MissingDecoration(f"converse {i} is missing")
        D = Q.dimension(i - 1)
        involution_axioms(D, rep, sm, f"conv{i} wrt *{i - 1}: ")
        rep.law(f"conv{i} wrt *{i - 1}: modular law", sm.tuples(range(n), 3, "npmod"),
                lambda a, b, c: modular_law(D, a, b, c), sh)
        low = set(Q.fix(i - 1))
        rep.law(f"conv{i} fixes Q{i - 1}", sorted(low), lambda a: Q.conv(i, a) == a, sh)
        qi = set(Q.fix(i))
        rep.law(f"conv{i} maps Q{i} into Q{i}", sorted(qi), lambda a: Q.conv(i, a) in qi, sh)
    return rep

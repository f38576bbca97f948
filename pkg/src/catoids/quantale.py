"""Finite quantales with optional domain/codomain and converse decorations."""
import random
from dataclasses import dataclass
from itertools import product

from .errors import MalformedStructure, MissingDecoration, LibraryBug
from .lattice import FiniteLattice, classify
from .report import Report

TIERS = ("plain", "modal", "involutive", "dedekind", "boolean")


@dataclass
class Sampling:
    """How laws are quantified: exhaustively up to `limit` tuples, else seeded samples."""
    limit: int = 300_000
    samples: int = 4000
    seed: int = 0
    pool: list = None  # replaces whole-carrier quantification when set

    def tuples(self, pool, arity, tag=""):
        if self.pool is not None and isinstance(pool, range):
            pool = self.pool
        pool = list(pool)
        if len(pool) ** arity <= self.limit:
            return product(pool, repeat=arity)
        rng = random.Random(f"{self.seed}:{tag}:{arity}")
        return (tuple(rng.choice(pool) for _ in range(arity)) for _ in range(self.samples))

    def exhaustive(self, size, arity):
        if self.pool is not None:
            size = len(self.pool)
        return size ** arity <= self.limit


DEFAULT_SAMPLING = Sampling()


def mixed_tuples(sm: Sampling, pools, tag=""):
    """Tuples drawn from one pool per position; exhaustive while the product fits the limit."""
    pools = [list(p) for p in pools]
    size = 1
    for p in pools:
        size *= len(p)
    if size <= sm.limit:
        return list(product(*pools))
    rng = random.Random(f"{sm.seed}:{tag}:mixed")
    return [tuple(rng.choice(p) for p in pools) for _ in range(sm.samples)]


class Quantale:
    """comp is an n x n table of lattice indices; dom/cod/conv are optional lists."""

    def __init__(self, lattice: FiniteLattice, comp, unit, dom=None, cod=None, conv=None, name=""):
        self.lattice = lattice
        self.n = lattice.n
        self._comp = comp
        self.unit = unit
        self._dom = dom
        self._cod = cod
        self._conv = conv
        self.name = name
        self._stars = {}
        n = self.n
        if comp is not None and (len(comp) != n or any(len(r) != n for r in comp)):
            raise MalformedStructure("composition table has the wrong shape")
        for nm, m in (("dom", dom), ("cod", cod), ("conv", conv)):
            if m is not None and (len(m) != n or any(not 0 <= v < n for v in m)):
                raise MalformedStructure(f"{nm} map is not total on the lattice")
        if not 0 <= unit < n:
            raise MalformedStructure("unit is not a lattice element")

    @classmethod
    def from_labels(cls, lattice, comp, unit, dom=None, cod=None, conv=None, name=""):
        L = lattice
        n = L.n
        table = [[None] * n for _ in range(n)]
        for (x, y), z in comp.items():
            table[L.idx(x)][L.idx(y)] = L.idx(z)
        missing = [(L.label(i), L.label(j)) for i in range(n) for j in range(n) if table[i][j] is None]
        if missing:
            raise MalformedStructure(f"composition undefined on {missing[0]!r}; quantale tables must be total")

        def unary(m, nm):
            if m is None:
                return None
            try:
                return [L.idx(m[L.label(i)]) for i in range(n)]
            except KeyError as e:
                raise MalformedStructure(f"{nm} map misses {e.args[0]!r}") from None

        return cls(L, table, L.idx(unit), unary(dom, "dom"), unary(cod, "cod"),
                   unary(conv, "conv"), name)

    def mul(self, a, b):
        return self._comp[a][b]

    def dom(self, a):
        return self._dom[a]

    def cod(self, a):
        return self._cod[a]

    def conv(self, a):
        return self._conv[a]

    @property
    def has_modal(self):
        return self._dom is not None and self._cod is not None

    @property
    def has_conv(self):
        return self._conv is not None

    def label(self, a):
        return self.lattice.label(a)

    def idx(self, x):
        return self.lattice.idx(x)

    def table(self):
        return [[self.mul(a, b) for b in range(self.n)] for a in range(self.n)]

    def unary(self, which):
        f = getattr(self, which)
        return [f(a) for a in range(self.n)]

    def with_decorations(self, dom=None, cod=None, conv=None, name=None):
        """A copy with the given maps (lists) replacing or adding decorations."""
        return Quantale(self.lattice, self.table(), self.unit,
                        dom if dom is not None else (self.unary("dom") if self.has_modal else None),
                        cod if cod is not None else (self.unary("cod") if self.has_modal else None),
                        conv if conv is not None else (self.unary("conv") if self.has_conv else None),
                        self.name if name is None else name)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} n={self.n}>"


def explicit_dom(Q, a):
    L = Q.lattice
    return L.meet(Q.unit, Q.mul(a, Q.conv(a)))


def explicit_cod(Q, a):
    L = Q.lattice
    return L.meet(Q.unit, Q.mul(Q.conv(a), a))


def with_explicit_modal(Q: Quantale) -> Quantale:
    """Install dom = 1 /\\ a a°, cod = 1 /\\ a° a (Dedekind auto-derive)."""
    if not Q.has_conv:
        raise MissingDecoration("explicit domain needs a converse")
    r = range(Q.n)
    return Q.with_decorations([explicit_dom(Q, a) for a in r], [explicit_cod(Q, a) for a in r],
                              name=f"{Q.name} (explicit dom/cod)")


def _lab(Q, *xs):
    return [Q.label(x) for x in xs]


def _show(Q):
    return lambda *xs: {"args": _lab(Q, *xs)}


def quantale_axioms(Q, rep, sm, prefix=""):
    L, m, n = Q.lattice, Q.mul, Q.n
    J, bot, e = L.join, L.bot, Q.unit
    sh = _show(Q)
    rep.law(f"{prefix}associativity", sm.tuples(range(n), 3, "assoc"),
            lambda a, b, c: m(a, m(b, c)) == m(m(a, b), c), sh)
    rep.law(f"{prefix}left unit", range(n), lambda a: m(e, a) == a, sh)
    rep.law(f"{prefix}right unit", range(n), lambda a: m(a, e) == a, sh)
    rep.law(f"{prefix}a(b v c) = ab v ac", sm.tuples(range(n), 3, "ldist"),
            lambda a, b, c: m(a, J(b, c)) == J(m(a, b), m(a, c)), sh,
            note="binary joins and bottom suffice on finite lattices")
    rep.law(f"{prefix}(b v c)a = ba v ca", sm.tuples(range(n), 3, "rdist"),
            lambda a, b, c: m(J(b, c), a) == J(m(b, a), m(c, a)), sh)
    rep.law(f"{prefix}a bot = bot = bot a", range(n), lambda a: m(a, bot) == bot == m(bot, a), sh)


def modal_axioms(Q, rep, sm, prefix=""):
    if not Q.has_modal:
        raise MissingDecoration("modal tier needs dom and cod")
    L, m, n = Q.lattice, Q.mul, Q.n
    d, c, le, J, bot, e = Q.dom, Q.cod, L.leq, L.join, L.bot, Q.unit
    sh = _show(Q)
    pairs = lambda tag: sm.tuples(range(n), 2, tag)
    rep.law(f"{prefix}dom absorption a <= dom(a)a", range(n), lambda a: le(a, m(d(a), a)), sh)
    rep.law(f"{prefix}dom locality dom(a dom b) = dom(ab)", pairs("dloc"),
            lambda a, b: d(m(a, d(b))) == d(m(a, b)), sh)
    rep.law(f"{prefix}dom subidentity dom(a) <= 1", range(n), lambda a: le(d(a), e), sh)
    rep.add(f"{prefix}dom bottom dom(bot) = bot", d(bot) == bot)
    rep.law(f"{prefix}dom sup dom(a v b) = dom a v dom b", pairs("dsup"),
            lambda a, b: d(J(a, b)) == J(d(a), d(b)), sh)
    rep.law(f"{prefix}cod absorption a <= a cod(a)", range(n), lambda a: le(a, m(a, c(a))), sh)
    rep.law(f"{prefix}cod locality cod(cod(a) b) = cod(ab)", pairs("cloc"),
            lambda a, b: c(m(c(a), b)) == c(m(a, b)), sh)
    rep.law(f"{prefix}cod subidentity cod(a) <= 1", range(n), lambda a: le(c(a), e), sh)
    rep.add(f"{prefix}cod bottom cod(bot) = bot", c(bot) == bot)
    rep.law(f"{prefix}cod sup cod(a v b) = cod a v cod b", pairs("csup"),
            lambda a, b: c(J(a, b)) == J(c(a), c(b)), sh)
    rep.law(f"{prefix}dom.cod = cod", range(n), lambda a: d(c(a)) == c(a), sh)
    rep.law(f"{prefix}cod.dom = dom", range(n), lambda a: c(d(a)) == d(a), sh)


def involution_axioms(Q, rep, sm, prefix=""):
    if not Q.has_conv:
        raise MissingDecoration("involutive tier needs conv")
    L, m, n, v = Q.lattice, Q.mul, Q.n, Q.conv
    sh = _show(Q)
    rep.law(f"{prefix}a°° = a", range(n), lambda a: v(v(a)) == a, sh)
    rep.law(f"{prefix}(a v b)° = a° v b°", sm.tuples(range(n), 2, "cvsup"),
            lambda a, b: v(L.join(a, b)) == L.join(v(a), v(b)), sh)
    rep.add(f"{prefix}bot° = bot", v(L.bot) == L.bot)
    rep.law(f"{prefix}(ab)° = b°a°", sm.tuples(range(n), 2, "cvmul"),
            lambda a, b: v(m(a, b)) == m(v(b), v(a)), sh)


def dedekind_law(Q, a, b, c):
    L, m, v = Q.lattice, Q.mul, Q.conv
    return L.leq(L.meet(m(a, b), c), m(L.meet(a, m(c, v(b))), L.meet(b, m(v(a), c))))


def modular_law(Q, a, b, c):
    L, m, v = Q.lattice, Q.mul, Q.conv
    return L.leq(L.meet(m(a, b), c), m(L.meet(a, m(c, v(b))), b))


def strong_gelfand(Q, a):
    return Q.lattice.leq(a, Q.mul(Q.mul(a, Q.conv(a)), a))


def _ded_show(Q, dedekind):
    L, m, v = Q.lattice, Q.mul, Q.conv

    def show(a, b, c):
        out = {"args": _lab(Q, a, b, c), "ab /\\ c": Q.label(L.meet(m(a, b), c))}
        if dedekind:
            rhs = m(L.meet(a, m(c, v(b))), L.meet(b, m(v(a), c)))
            out["(a /\\ cb°)(b /\\ a°c)"] = Q.label(rhs)
        else:
            out["(a /\\ cb°)b"] = Q.label(m(L.meet(a, m(c, v(b))), b))
        return out
    return show


def dedekind_axioms(Q, rep, sm, prefix=""):
    involution_axioms(Q, rep, sm, prefix)
    tri = lambda tag: sm.tuples(range(Q.n), 3, tag)
    d = rep.law(f"{prefix}Dedekind law", tri("ded"), lambda a, b, c: dedekind_law(Q, a, b, c),
                _ded_show(Q, True))
    mo = rep.law(f"{prefix}modular law", tri("mod"), lambda a, b, c: modular_law(Q, a, b, c),
                 _ded_show(Q, False))
    rep.add(f"{prefix}modular law iff Dedekind law", d.status == mo.status)


def check_quantale(Q: Quantale, tier="plain", sampling=None) -> Report:
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}; expected one of {TIERS}")
    sm = sampling or DEFAULT_SAMPLING
    rep = Report(f"quantale axioms ({tier}): {Q.name or 'unnamed'}")
    quantale_axioms(Q, rep, sm)
    if tier == "modal":
        modal_axioms(Q, rep, sm)
    elif tier == "involutive":
        involution_axioms(Q, rep, sm)
    elif tier == "dedekind":
        dedekind_axioms(Q, rep, sm)
    elif tier == "boolean":
        c = classify(Q.lattice)
        rep.add("lattice is boolean", c.boolean)
        if Q.has_modal:
            modal_axioms(Q, rep, sm)
        if Q.has_conv:
            dedekind_axioms(Q, rep, sm)
    rep.facts["regime"] = "exhaustive" if sm.exhaustive(Q.n, 3) else f"sampled ({sm.samples} tuples per law, seed {sm.seed})"
    return rep


def kleene_star(Q: Quantale, a, verify=True, sampling=None):
    """Least fixpoint of b -> 1 v ab, iterated upwards from 1."""
    if a in Q._stars:
        return Q._stars[a]
    L, m = Q.lattice, Q.mul
    b = Q.unit
    while True:
        nb = L.join(Q.unit, m(a, b))
        if nb == b:
            break
        b = nb
    if verify:
        rep = Report("star")
        _star_laws(Q, rep, sampling or DEFAULT_SAMPLING, [a], {a: b})
        if not rep.ok:
            raise LibraryBug(f"star axioms fail at {Q.label(a)!r}: the input is not a quantale")
    Q._stars[a] = b
    return b


def star_table(Q):
    return {a: kleene_star(Q, a, verify=False) for a in range(Q.n)}


def _star_laws(Q, rep, sm, alphas, st, prefix=""):
    L, m, le, J, e = Q.lattice, Q.mul, Q.lattice.leq, Q.lattice.join, Q.unit
    sh = _show(Q)
    rep.law(f"{prefix}star unfold 1 v a a* <= a*", alphas, lambda a: le(J(e, m(a, st[a])), st[a]), sh)
    rep.law(f"{prefix}star unfold 1 v a* a <= a*", alphas, lambda a: le(J(e, m(st[a], a)), st[a]), sh)
    n = Q.n
    pool = sm.pool if sm.pool is not None else range(n)
    if len(alphas) * len(pool) ** 2 <= sm.limit:
        cases = [(a,) + bc for a in alphas for bc in product(pool, repeat=2)]
    else:
        rng = random.Random(f"{sm.seed}:starind")
        cases = [(rng.choice(alphas), rng.choice(pool), rng.choice(pool)) for _ in range(sm.samples)]
    rep.law(f"{prefix}star induction c v ab <= b => a*c <= b", cases,
            lambda a, b, c: not le(J(c, m(a, b)), b) or le(m(st[a], c), b), sh)
    rep.law(f"{prefix}star induction c v ba <= b => ca* <= b", cases,
            lambda a, b, c: not le(J(c, m(b, a)), b) or le(m(c, st[a]), b), sh)


def q0(Q):
    """Domain elements: fixpoints of dom."""
    return [a for a in range(Q.n) if Q.dom(a) == a]


def derived_laws_quantale(Q: Quantale, sampling=None) -> Report:
    sm = sampling or DEFAULT_SAMPLING
    rep = Report(f"derived quantale laws: {Q.name or 'unnamed'}")
    L, m, n = Q.lattice, Q.mul, Q.n
    le, J, M, bot, top, e = L.leq, L.join, L.meet, L.bot, L.top, Q.unit
    sh = _show(Q)
    st = star_table(Q)
    _star_laws(Q, rep, sm, list(range(n)), st)
    if Q.has_modal:
        d, c = Q.dom, Q.cod
        rep.law("dom(a)a = a", range(n), lambda a: m(d(a), a) == a, sh)
        rep.law("a cod(a) = a", range(n), lambda a: m(a, c(a)) == a, sh)
        rep.law("dom.dom = dom", range(n), lambda a: d(d(a)) == d(a), sh)
        fix = q0(Q)
        rep.add("image(dom) = fix(dom) = fix(cod)",
                sorted({d(a) for a in range(n)}) == fix == [a for a in range(n) if c(a) == a])
        rep.law("on Q_dom: pq = p /\\ q", product(fix, repeat=2), lambda p, q: m(p, q) == M(p, q), sh)
        rep.law("on Q_dom: pq = qp", product(fix, repeat=2), lambda p, q: m(p, q) == m(q, p), sh)
        rep.law("on Q_dom: distributive", product(fix, repeat=3),
                lambda p, q, r: M(p, J(q, r)) == J(M(p, q), M(p, r)), sh)
    if Q.has_conv:
        v = Q.conv
        inv = Report("")
        involution_axioms(Q, inv, sm)
        if not inv.ok:
            rep.skip("converse laws", "involution axioms fail")
        else:
            rep.law("a <= b => a° <= b°", sm.tuples(range(n), 2, "cvmono"),
                    lambda a, b: not le(a, b) or le(v(a), v(b)), sh)
            rep.law("(a /\\ b)° = a° /\\ b°", sm.tuples(range(n), 2, "cvmeet"),
                    lambda a, b: v(M(a, b)) == M(v(a), v(b)), sh)
            rep.add("bot° = bot, 1° = 1, top° = top", v(bot) == bot and v(e) == e and v(top) == top)
            rep.law("a° /\\ b = bot iff a /\\ b° = bot", sm.tuples(range(n), 2, "cvbot"),
                    lambda a, b: (M(v(a), b) == bot) == (M(a, v(b)) == bot), sh)
            rep.law("(a*)° = (a°)*", range(n), lambda a: v(st[a]) == st[v(a)], sh)
            ded = Report("")
            dedekind_axioms(Q, ded, sm)
            if ded.ok:
                _dedekind_derived(Q, rep, sm)
            else:
                rep.skip("Dedekind laws", "Dedekind law fails on this instance")
    return rep


def _dedekind_derived(Q, rep, sm):
    L, m, n, v = Q.lattice, Q.mul, Q.n, Q.conv
    le, M, bot, top, e = L.leq, L.meet, L.bot, L.top, Q.unit
    sh = _show(Q)
    tri = lambda tag: sm.tuples(range(n), 3, tag)
    rep.law("strong Gelfand a <= a a° a", range(n), lambda a: strong_gelfand(Q, a), sh)
    rep.law("Peirce ab /\\ c° = bot iff bc /\\ a° = bot", tri("peirce"),
            lambda a, b, c: (M(m(a, b), v(c)) == bot) == (M(m(b, c), v(a)) == bot), sh)
    rep.law("Schroeder ab /\\ c = bot iff b /\\ a°c = bot", tri("schr1"),
            lambda a, b, c: (M(m(a, b), c) == bot) == (M(b, m(v(a), c)) == bot), sh)
    rep.law("Schroeder ab /\\ c = bot iff a /\\ cb° = bot", tri("schr2"),
            lambda a, b, c: (M(m(a, b), c) == bot) == (M(a, m(c, v(b))) == bot), sh)
    E = with_explicit_modal(Q)
    d, c = E.dom, E.cod
    rep.law("explicit dom(a) = 1 /\\ a top", range(n), lambda a: d(a) == M(e, m(a, top)), sh)
    rep.law("explicit cod(a) = 1 /\\ top a", range(n), lambda a: c(a) == M(e, m(top, a)), sh)
    rep.law("explicit dom(a) top = a top", range(n), lambda a: m(d(a), top) == m(a, top), sh)
    rep.law("explicit top cod(a) = top a", range(n), lambda a: m(top, c(a)) == m(top, a), sh)
    rep.law("explicit dom(a)° = dom(a)", range(n), lambda a: v(d(a)) == d(a), sh)
    rep.law("explicit dom(a°) = cod(a)", range(n), lambda a: d(v(a)) == c(a), sh)
    sub = Report("")
    modal_axioms(E, sub, sm)
    rep.merge(sub, "explicit ")
    if Q.has_modal:
        rep.law("installed dom(a)° = dom(a)", range(n), lambda a: v(Q.dom(a)) == Q.dom(a), sh)
        rep.law("installed cod(a)° = cod(a)", range(n), lambda a: v(Q.cod(a)) == Q.cod(a), sh)
        same = all(Q.dom(a) == d(a) and Q.cod(a) == c(a) for a in range(n))
        rep.facts["installed decoration is explicit"] = same
    cl = classify(L)
    if cl.boolean:
        neg = cl.complement
        rep.law("(-a)° = -(a°)", range(n), lambda a: v(neg[a]) == neg[v(a)], sh)
        rep.law("residual a°(-(ab)) <= -b", sm.tuples(range(n), 2, "resid"),
                lambda a, b: le(m(v(a), neg[m(a, b)]), neg[b]), sh)
        if Q.has_modal:
            rep.law("boolean: installed decoration is explicit", range(n),
                    lambda a: Q.dom(a) == d(a) and Q.cod(a) == c(a), sh)


class ModalOperators:
    def __init__(self, Q: Quantale):
        if not Q.has_modal:
            raise MissingDecoration("diamonds need dom and cod")
        self.Q = Q
        self.q0 = q0(Q)
        cl = classify(Q.lattice)
        self.boolean = cl.boolean
        self._neg = cl.complement

        self._memo = {}

    def _cached(self, key, f):
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = f()
        return v

    def fdia(self, a, p):
        return self._cached(("fd", a, p), lambda: self.Q.dom(self.Q.mul(a, p)))

    def bdia(self, a, p):
        return self._cached(("bd", a, p), lambda: self.Q.cod(self.Q.mul(p, a)))

    def neg(self, p):
        """Complement inside Q_0, relative to the unit."""
        if not self.boolean:
            raise MissingDecoration("complements need a boolean lattice")
        return self.Q.lattice.meet(self.Q.unit, self._neg[p])

    def bbox(self, a, p):
        L = self.Q.lattice
        if not self.boolean:
            raise MissingDecoration("boxes are defined on boolean instances only")
        return self._cached(("bb", a, p),
                            lambda: L.join_all(q for q in self.q0 if L.leq(self.fdia(a, q), p)))

    def fbox(self, a, p):
        L = self.Q.lattice
        if not self.boolean:
            raise MissingDecoration("boxes are defined on boolean instances only")
        return self._cached(("fb", a, p),
                            lambda: L.join_all(q for q in self.q0 if L.leq(self.bdia(a, q), p)))


def diamonds_boxes(Q: Quantale, sampling=None):
    """Modal operators and a report on their laws over Q x Q_0 (x Q_0)."""
    sm = sampling or DEFAULT_SAMPLING
    ops = ModalOperators(Q)
    rep = Report(f"modal operator laws: {Q.name or 'unnamed'}")
    L, m, n = Q.lattice, Q.mul, Q.n
    le, J, M, bot, e = L.leq, L.join, L.meet, L.bot, Q.unit
    P = ops.q0
    fd, bd = ops.fdia, ops.bdia
    sh = _show(Q)
    apq = lambda tag: mixed_tuples(sm, (range(n), P, P), tag)
    abp = lambda tag: mixed_tuples(sm, (range(n), range(n), P), tag)
    ap = [(a, p) for a in range(n) for p in P]
    rep.law("demodalisation |a>p <= q iff ap <= qa", apq("dm1"),
            lambda a, p, q: le(fd(a, p), q) == le(m(a, p), m(q, a)), sh)
    rep.law("demodalisation <a|p <= q iff pa <= aq", apq("dm2"),
            lambda a, p, q: le(bd(a, p), q) == le(m(p, a), m(a, q)), sh)
    for nm, dia, comp_ in (("|a>", fd, lambda a, b: m(a, b)), ("<a|", bd, lambda a, b: m(b, a))):
        pre = f"{nm} "
        rep.law(pre + "composition", abp("mc" + nm),
                lambda a, b, p: dia(comp_(a, b), p) == dia(a, dia(b, p)), sh)
        rep.law(pre + "sup in the operator", abp("ms" + nm),
                lambda a, b, p: dia(J(a, b), p) == J(dia(a, p), dia(b, p)), sh)
        rep.law(pre + "sup in the argument", apq("ma" + nm),
                lambda a, p, q: dia(a, J(p, q)) == J(dia(a, p), dia(a, q)), sh)
        rep.law(pre + "bottom argument", range(n), lambda a: dia(a, bot) == bot, sh)
        rep.law(pre + "bottom operator", P, lambda p: dia(bot, p) == bot, sh)
        rep.law(pre + "unit operator", P, lambda p: dia(e, p) == p, sh)
    rep.law("|a>1 = dom(a)", range(n), lambda a: fd(a, e) == Q.dom(a), sh)
    rep.law("<a|1 = cod(a)", range(n), lambda a: bd(a, e) == Q.cod(a), sh)
    if ops.boolean:
        fb, bb, ng = ops.fbox, ops.bbox, ops.neg
        rep.law("boxes stay in Q_0", ap, lambda a, p: Q.dom(fb(a, p)) == fb(a, p) and Q.dom(bb(a, p)) == bb(a, p), sh)
        rep.law("Galois |a>p <= q iff p <= [a|q", apq("g1"),
                lambda a, p, q: le(fd(a, p), q) == le(p, bb(a, q)), sh)
        rep.law("Galois <a|p <= q iff p <= |a]q", apq("g2"),
                lambda a, p, q: le(bd(a, p), q) == le(p, fb(a, q)), sh)
        rep.law("demodalisation p <= [a|q iff ap <= qa", apq("dm3"),
                lambda a, p, q: le(p, bb(a, q)) == le(m(a, p), m(q, a)), sh)
        rep.law("demodalisation p <= |a]q iff pa <= aq", apq("dm4"),
                lambda a, p, q: le(p, fb(a, q)) == le(m(p, a), m(a, q)), sh)
        rep.law("De Morgan |a]p = -|a>-p", ap, lambda a, p: fb(a, p) == ng(fd(a, ng(p))), sh)
        rep.law("De Morgan |a>p = -|a]-p", ap, lambda a, p: fd(a, p) == ng(fb(a, ng(p))), sh)
        rep.law("De Morgan [a|p = -<a|-p", ap, lambda a, p: bb(a, p) == ng(bd(a, ng(p))), sh)
        rep.law("De Morgan <a|p = -[a|-p", ap, lambda a, p: bd(a, p) == ng(bb(a, ng(p))), sh)
        rep.law("|ab]p = |a]|b]p", abp("bc"),
                lambda a, b, p: fb(m(a, b), p) == fb(a, fb(b, p)), sh)
        rep.law("|a v b]p = |a]p /\\ |b]p", abp("bs"),
                lambda a, b, p: fb(J(a, b), p) == M(fb(a, p), fb(b, p)), sh)
        rep.law("|a](p /\\ q) = |a]p /\\ |a]q", apq("bm"),
                lambda a, p, q: fb(a, M(p, q)) == M(fb(a, p), fb(a, q)), sh)
        rep.law("|a]1 = 1", range(n), lambda a: fb(a, e) == e, sh)
        rep.law("|bot]p = 1 and |1]p = p", P, lambda p: fb(bot, p) == e and fb(e, p) == p, sh)
    else:
        rep.skip("box laws", "boxes need a boolean lattice")
    ded = Report("")
    if Q.has_conv:
        dedekind_axioms(Q, ded, sm)
    if Q.has_conv and ded.ok:
        v = Q.conv
        rep.law("<a| = |a°>", ap, lambda a, p: bd(a, p) == fd(v(a), p), sh)
        rep.law("|a> = <a°|", ap, lambda a, p: fd(a, p) == bd(v(a), p), sh)
        if ops.boolean:
            rep.law("[a| = |a°]", ap, lambda a, p: ops.bbox(a, p) == ops.fbox(v(a), p), sh)
    return ops, rep

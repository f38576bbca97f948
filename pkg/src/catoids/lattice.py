"""Finite lattices: table-backed, powerset, and pointwise function spaces."""
from dataclasses import dataclass, field
from functools import reduce
from itertools import product

from .errors import NotAPartialOrder, NotALattice, BoundExceeded, MalformedStructure

POWERSET_BOUND = 16
EXHAUSTIVE_CLASSIFY = 64
EXHAUSTIVE_FRAME = 16


class FiniteLattice:
    """Lattice on indices 0..n-1 with string labels.

    The table-backed form stores the up-set of every element as a bitmask
    and full join/meet tables.
    """

    def __init__(self, elements, up, name=""):
        self.elements = tuple(elements)
        self.n = len(self.elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.name = name
        self._up = list(up)
        n = self.n
        by_up = {u: i for i, u in enumerate(self._up)}
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if self._up[i] >> j & 1:
                    down[j] |= 1 << i
        by_down = {d: i for i, d in enumerate(down)}
        self._down = down
        self._join = [[0] * n for _ in range(n)]
        self._meet = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                u = self._up[i] & self._up[j]
                d = down[i] & down[j]
                if u not in by_up or d not in by_down:
                    a, b = self.elements[i], self.elements[j]
                    raise NotALattice(f"{a!r} and {b!r} lack a {'join' if u not in by_up else 'meet'}")
                self._join[i][j] = by_up[u]
                self._meet[i][j] = by_down[d]
        self.bot = reduce(self.meet, range(n))
        self.top = reduce(self.join, range(n))

    def leq(self, i, j):
        return bool(self._up[i] >> j & 1)

    def join(self, i, j):
        return self._join[i][j]

    def meet(self, i, j):
        return self._meet[i][j]

    def lt(self, i, j):
        return i != j and self.leq(i, j)

    def join_all(self, xs):
        return reduce(self.join, xs, self.bot)

    def meet_all(self, xs):
        return reduce(self.meet, xs, self.top)

    def label(self, i):
        return self.elements[i]

    def idx(self, x):
        try:
            return self.index[x]
        except KeyError:
            raise MalformedStructure(f"unknown lattice element {x!r}") from None

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(range(self.n))

    def leq_pairs(self):
        """Covering-free listing of the order (all strict pairs)."""
        return [(self.elements[i], self.elements[j])
                for i in range(self.n) for j in range(self.n) if i != j and self.leq(i, j)]

    def atoms(self):
        return [i for i in range(self.n) if i != self.bot
                and all(j in (self.bot, i) for j in range(self.n) if self.leq(j, i))]

    def _structural_class(self):
        return None

    def __repr__(self):
        return f"<{type(self).__name__} {self.name or ''} n={self.n}>"


def build_lattice(elements, leq_pairs, name=""):
    """Lattice from labels and any relation whose reflexive-transitive closure is a partial order."""
    elements = list(elements)
    if not elements:
        raise MalformedStructure("lattice needs at least one element")
    if len(set(elements)) != len(elements):
        raise MalformedStructure("duplicate lattice elements")
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    up = [1 << i for i in range(n)]
    for pair in leq_pairs:
        x, y = pair
        if x not in idx or y not in idx:
            raise MalformedStructure(f"leq pair {pair!r} mentions an unknown element")
        up[idx[x]] |= 1 << idx[y]
    # Warshall closure on bitmasks
    for k in range(n):
        bit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= uk
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise NotAPartialOrder(f"cycle between {elements[i]!r} and {elements[j]!r}")
    return FiniteLattice(elements, up, name)


def chain(labels, name=""):
    return build_lattice(labels, list(zip(labels, labels[1:])), name)


def subset_label(base, mask):
    return "{" + ",".join(base[i] for i in range(len(base)) if mask >> i & 1) + "}"


class PowersetLattice(FiniteLattice):
    """Subsets of `base`; the index of a subset is its bitmask."""

    def __init__(self, base, name=""):
        self.base = tuple(base)
        if len(set(self.base)) != len(self.base):
            raise MalformedStructure("duplicate base elements")
        self.n = 1 << len(self.base)
        self.name = name
        self.bot = 0
        self.top = self.n - 1
        self._labels = None
        self._index = None

    @property
    def elements(self):
        if self._labels is None:
            self._labels = tuple(subset_label(self.base, m) for m in range(self.n))
        return self._labels

    @property
    def index(self):
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.elements)}
        return self._index

    def leq(self, i, j):
        return i & ~j == 0

    def join(self, i, j):
        return i | j

    def meet(self, i, j):
        return i & j

    def label(self, i):
        return subset_label(self.base, i)

    def idx(self, x):
        if isinstance(x, (set, frozenset, list, tuple)):
            return self.mask(x)
        return super().idx(x)

    def mask(self, xs):
        pos = {b: k for k, b in enumerate(self.base)}
        m = 0
        for x in xs:
            if x not in pos:
                raise MalformedStructure(f"{x!r} is not in the powerset base")
            m |= 1 << pos[x]
        return m

    def members(self, i):
        return frozenset(self.base[k] for k in range(len(self.base)) if i >> k & 1)

    def atoms(self):
        return [1 << k for k in range(len(self.base))]

    def _structural_class(self):
        comp = {i: self.top ^ i for i in range(self.n)}
        return Classification(True, True, True, comp, False, "powerset lattice: boolean by construction")


def powerset_lattice(base, bound=POWERSET_BOUND):
    base = list(base)
    if len(base) > bound:
        raise BoundExceeded(f"powerset base of size {len(base)} exceeds bound {bound}")
    return PowersetLattice(base)


class FunctionLattice(FiniteLattice):
    """Pointwise order on maps keys -> value lattice, encoded in mixed radix."""

    def __init__(self, keys, values: FiniteLattice, name=""):
        self.keys = tuple(keys)
        self.values = values
        self.m = len(self.keys)
        self.radix = values.n
        self.n = values.n ** self.m
        self.name = name
        self.bot = self.encode([values.bot] * self.m)
        self.top = self.encode([values.top] * self.m)
        self._index = None

    def encode(self, vec):
        r, code = self.radix, 0
        for v in reversed(vec):
            code = code * r + v
        return code

    def decode(self, code):
        r, out = self.radix, []
        for _ in range(self.m):
            code, v = divmod(code, r)
            out.append(v)
        return out

    def leq(self, i, j):
        V = self.values
        return all(V.leq(a, b) for a, b in zip(self.decode(i), self.decode(j)))

    def join(self, i, j):
        V = self.values
        return self.encode([V.join(a, b) for a, b in zip(self.decode(i), self.decode(j))])

    def meet(self, i, j):
        V = self.values
        return self.encode([V.meet(a, b) for a, b in zip(self.decode(i), self.decode(j))])

    def label(self, i):
        V = self.values
        parts = [f"{k}:{V.label(v)}" for k, v in zip(self.keys, self.decode(i)) if v != V.bot]
        return "{" + ",".join(parts) + "}"

    @property
    def elements(self):
        return tuple(self.label(i) for i in range(self.n))

    @property
    def index(self):
        if self._index is None:
            self._index = {self.label(i): i for i in range(self.n)}
        return self._index

    def delta(self, key, value):
        vec = [self.values.bot] * self.m
        vec[self.keys.index(key)] = value
        return self.encode(vec)

    def atoms(self):
        V = self.values
        return [self.delta(k, a) for k in self.keys for a in V.atoms()]

    def _structural_class(self):
        c = classify(self.values)
        comp = None
        if c.boolean:
            comp = {}
            for i in range(self.n):
                comp[i] = self.encode([c.complement[v] for v in self.decode(i)])
        return Classification(c.distributive, c.boolean, c.frame, comp, False,
                              "function lattice: inherits the value lattice's classification")


@dataclass
class Classification:
    distributive: bool
    boolean: bool
    frame: bool
    complement: dict = field(default=None, repr=False)
    exhaustive: bool = True
    note: str = ""


def classify(L: FiniteLattice) -> Classification:
    known = L._structural_class()
    if known is not None:
        return known
    n = L.n
    if n > EXHAUSTIVE_CLASSIFY:
        raise BoundExceeded(f"classify is exhaustive only up to {EXHAUSTIVE_CLASSIFY} elements")
    J, M = L.join, L.meet
    dist = all(M(x, J(y, z)) == J(M(x, y), M(x, z))
               for x, y, z in product(range(n), repeat=3))
    comp = {}
    for x in range(n):
        for y in range(n):
            if J(x, y) == L.top and M(x, y) == L.bot:
                comp[x] = y
                break
    boolean = dist and len(comp) == n
    if n <= EXHAUSTIVE_FRAME:
        frame = _frame_exhaustive(L)
        note = "frame law checked over all subsets"
    else:
        frame = dist
        note = "frame law follows from distributivity on finite lattices"
    return Classification(dist, boolean, frame, comp if boolean else None, True, note)


def _frame_exhaustive(L):
    n = L.n
    sup = [L.bot] * (1 << n)
    for S in range(1, 1 << n):
        low = (S & -S).bit_length() - 1
        sup[S] = L.join(sup[S & (S - 1)], low)
    for x in range(n):
        acc = [L.bot] * (1 << n)
        for S in range(1, 1 << n):
            low = (S & -S).bit_length() - 1
            acc[S] = L.join(acc[S & (S - 1)], L.meet(x, low))
            if acc[S] != L.meet(x, sup[S]):
                return False
    return True

"""Reading and writing structure files (JSON)."""
import json
import re
from pathlib import Path

from .catoid import FiniteCatoid, FiniteGroupoid
from .errors import ParseError, MalformedStructure
from .lattice import FiniteLattice, PowersetLattice, build_lattice
from .ncatoid import NCatoid
from .nquantale import NQuantale
from .quantale import Quantale

KINDS = ("catoid", "groupoid", "ncatoid", "quantale", "nquantale")


def _line_of(text, key):
    if text is None:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


class _Reader:
    def __init__(self, data, text=None):
        self.data = data
        self.text = text

    def fail(self, msg, field):
        raise ParseError(msg, field, _line_of(self.text, field.split(".")[-1]))

    def get(self, obj, key, path, kind=None, required=True):
        if not isinstance(obj, dict):
            self.fail("expected an object", path)
        if key not in obj:
            if required:
                self.fail(f"missing field {key!r}", f"{path}.{key}" if path else key)
            return None
        v = obj[key]
        if kind is not None and not isinstance(v, kind):
            self.fail(f"field {key!r} has the wrong type", f"{path}.{key}" if path else key)
        return v

    def lattice(self, obj):
        spec = self.get(obj, "lattice", "", dict)
        if "powerset" in spec:
            base = spec["powerset"]
            if not isinstance(base, list):
                self.fail("powerset base must be a list", "lattice.powerset")
            return PowersetLattice([str(b) for b in base])
        els = [str(e) for e in self.get(spec, "elements", "lattice", list)]
        leq = self.get(spec, "leq", "lattice", list)
        pairs = []
        for p in leq:
            if not isinstance(p, list) or len(p) != 2:
                self.fail(f"leq entry {p!r} is not a pair", "lattice.leq")
            pairs.append((str(p[0]), str(p[1])))
        return build_lattice(els, pairs, self.data.get("meta", {}).get("name", ""))

    def catoid_block(self, obj, path, carrier):
        comp = {}
        for e in self.get(obj, "comp", path, list, required=False) or []:
            if not (isinstance(e, list) and len(e) == 3 and isinstance(e[2], list)):
                self.fail(f"comp entry {e!r} must be [y, z, [results]]", f"{path}.comp" if path else "comp")
            comp[str(e[0]), str(e[1])] = [str(r) for r in e[2]]
        src = {str(k): str(v) for k, v in self.get(obj, "src", path, dict).items()}
        tgt = {str(k): str(v) for k, v in self.get(obj, "tgt", path, dict).items()}
        inv = obj.get("inv")
        if inv is not None:
            inv = {str(k): str(v) for k, v in inv.items()}
        return comp, src, tgt, inv

    def quantale_block(self, obj, path):
        comp = {}
        for e in self.get(obj, "comp", path, list):
            if not (isinstance(e, list) and len(e) == 3):
                self.fail(f"comp entry {e!r} must be [x, y, z]", f"{path}.comp" if path else "comp")
            comp[str(e[0]), str(e[1])] = str(e[2])
        maps = {}
        for k in ("dom", "cod", "conv"):
            m = self.get(obj, k, path, dict, required=False)
            maps[k] = None if m is None else {str(a): str(b) for a, b in m.items()}
        return comp, str(self.get(obj, "unit", path)), maps


def _dim_blocks(r, data):
    dims = r.get(data, "dims", "", int)
    if dims < 1:
        r.fail("dims must be positive", "dims")
    return dims, [r.get(data, f"dim {k}", "", dict) for k in range(dims)]


def from_data(data, text=None, kind=None):
    r = _Reader(data, text)
    if not isinstance(data, dict):
        raise ParseError("a structure file holds one JSON object", None, 1)
    kind = kind or data.get("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown or missing kind {kind!r}", "kind", _line_of(text, "kind"))
    name = data.get("meta", {}).get("name", "")
    try:
        if kind in ("catoid", "groupoid"):
            carrier = [str(x) for x in r.get(data, "carrier", "", list)]
            comp, src, tgt, inv = r.catoid_block(data, "", carrier)
            if kind == "groupoid":
                if inv is None:
                    r.fail("a groupoid needs an inv map", "inv")
                return FiniteGroupoid.from_labels(carrier, comp, src, tgt, inv, name)
            return FiniteCatoid.from_labels(carrier, comp, src, tgt, name)
        if kind == "ncatoid":
            carrier = [str(x) for x in r.get(data, "carrier", "", list)]
            dims, raw = _dim_blocks(r, data)
            blocks, invs = [], {}
            for k, b in enumerate(raw):
                comp, src, tgt, inv = r.catoid_block(b, f"dim {k}", carrier)
                blocks.append({"comp": comp, "src": src, "tgt": tgt})
                if inv is not None:
                    invs[k + 1] = inv
            return NCatoid.from_labels(carrier, blocks, invs, data.get("p"), name)
        L = r.lattice(data)
        if kind == "quantale":
            comp, unit, maps = r.quantale_block(data, "")
            return Quantale.from_labels(L, comp, unit, maps["dom"], maps["cod"], maps["conv"], name)
        dims, raw = _dim_blocks(r, data)
        blocks, convs = [], {}
        for k, b in enumerate(raw):
            comp, unit, maps = r.quantale_block(b, f"dim {k}")
            if maps["dom"] is None or maps["cod"] is None:
                r.fail("every dimension needs dom and cod", f"dim {k}")
            blocks.append({"comp": comp, "unit": unit, "dom": maps["dom"], "cod": maps["cod"]})
            if maps["conv"] is not None:
                convs[k + 1] = maps["conv"]
        return NQuantale.from_labels(L, blocks, convs, data.get("p"), name)
    except ParseError:
        raise
    except MalformedStructure as e:
        raise ParseError(str(e), kind, None) from None


def loads(text, kind=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"not valid JSON: {e.msg}", None, e.lineno) from None
    return from_data(data, text, kind)


def load(path, kind=None):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, kind)


def meta_of(path):
    return json.loads(Path(path).read_text(encoding="utf-8")).get("meta", {})


# emitting

def kind_of(X):
    if isinstance(X, NCatoid):
        return "ncatoid"
    if isinstance(X, FiniteGroupoid):
        return "groupoid"
    if isinstance(X, FiniteCatoid):
        return "catoid"
    if isinstance(X, NQuantale):
        return "nquantale"
    if isinstance(X, Quantale):
        return "quantale"
    raise TypeError(f"cannot emit {type(X).__name__}")


def _catoid_block(carrier, comp, src, tgt, inv=None):
    out = {"comp": [[carrier[y], carrier[z], [carrier[x] for x in range(len(carrier)) if comp[y][z] >> x & 1]]
                    for y in range(len(carrier)) for z in range(len(carrier)) if comp[y][z]],
           "src": {carrier[x]: carrier[src[x]] for x in range(len(carrier))},
           "tgt": {carrier[x]: carrier[tgt[x]] for x in range(len(carrier))}}
    if inv is not None:
        out["inv"] = {carrier[x]: carrier[inv[x]] for x in range(len(carrier))}
    return out


def _lattice_data(L: FiniteLattice):
    if isinstance(L, PowersetLattice):
        return {"powerset": list(L.base)}
    covers = []
    for i in range(L.n):
        for j in range(L.n):
            if L.lt(i, j) and not any(L.lt(i, k) and L.lt(k, j) for k in range(L.n)):
                covers.append([L.label(i), L.label(j)])
    return {"elements": [L.label(i) for i in range(L.n)], "leq": covers}


def _quantale_block(Q, mul, unit, dom, cod, conv):
    lab, n = Q.lattice.label, Q.n
    out = {"comp": [[lab(a), lab(b), lab(mul(a, b))] for a in range(n) for b in range(n)],
           "unit": lab(unit)}
    for k, f in (("dom", dom), ("cod", cod), ("conv", conv)):
        if f is not None:
            out[k] = {lab(a): lab(f(a)) for a in range(n)}
    return out


def to_data(X, meta=None):
    kind = kind_of(X)
    data = {"kind": kind, "meta": dict(meta or {"name": X.name})}
    if kind in ("catoid", "groupoid"):
        data["carrier"] = list(X.carrier)
        data.update(_catoid_block(X.carrier, X.comp, X.src, X.tgt, X.inv if kind == "groupoid" else None))
    elif kind == "ncatoid":
        data["carrier"] = list(X.carrier)
        data["dims"] = X.dims
        if X.p is not None:
            data["p"] = X.p
        for k in range(X.dims):
            data[f"dim {k}"] = _catoid_block(X.carrier, X.comps[k], X.srcs[k], X.tgts[k], X.invs.get(k + 1))
    elif kind == "quantale":
        data["lattice"] = _lattice_data(X.lattice)
        data.update(_quantale_block(X, X.mul, X.unit, X.dom if X.has_modal else None,
                                    X.cod if X.has_modal else None, X.conv if X.has_conv else None))
    else:
        data["lattice"] = _lattice_data(X.lattice)
        data["dims"] = X.dims
        if X.p is not None:
            data["p"] = X.p
        for k in range(X.dims):
            conv = (lambda a, i=k + 1: X.conv(i, a)) if k + 1 in X.convs else None
            data[f"dim {k}"] = _quantale_block(X, lambda a, b, k=k: X.mul(k, a, b), X.units[k],
                                               lambda a, k=k: X.dom(k, a), lambda a, k=k: X.cod(k, a), conv)
    return data


def dumps(X, meta=None):
    return json.dumps(to_data(X, meta), indent=1, ensure_ascii=False) + "\n"


def dump(X, path, meta=None):
    Path(path).write_text(dumps(X, meta), encoding="utf-8")

"""Command-line front end: check, build, suite and search.

Exit codes: 0 everything passed, 1 a law or expectation failed, 2 bad input,
3 a search or audit ran out of budget. Every flag can also be set through an
environment variable named CATOIDS_<FLAG>, e.g. CATOIDS_SEED=3.
"""
import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .catoid import FiniteCatoid, FiniteGroupoid, check_catoid, check_groupoid, opposite
from .constructions import (CONVOLUTION_CAP, PointwiseConvolution, atoms_to_catoid, convolution_quantale,
                            powerset_nquantale, powerset_quantale)
from .errors import BudgetExhausted, CatoidError, MalformedStructure
from .fixtures import resolve
from .lattice import build_lattice
from .ncatoid import CARRIER_CAP, NCatoid, check_ncatoid, check_npcatoid
from .nquantale import LATTICE_CAP, NQuantale, check_npquantale, check_nquantale
from .quantale import TIERS, Quantale, Sampling, check_quantale
from .report import Report
from .search import SearchSpec, search
from . import suite as suite_mod

OK, FAILED, BAD_INPUT, BUDGET = 0, 1, 2, 3


def _env(name, default=None, conv=str):
    v = os.environ.get(f"CATOIDS_{name.upper().replace('-', '_')}")
    return default if v is None else conv(v)


def _common(p):
    p.add_argument("--format", choices=("text", "machine"), default=_env("format", "text"))
    p.add_argument("--seed", type=int, default=_env("seed", 0, int))
    p.add_argument("--cap", type=int, default=_env("cap", None, int),
                   help="size cap for exhaustive checks or materialized convolution")


def build_parser():
    ap = argparse.ArgumentParser(prog="catoids", description="Check and build catoids and quantales.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", help="check the axioms of a structure file")
    c.add_argument("path")
    c.add_argument("--kind", choices=io.KINDS, default=_env("kind"))
    c.add_argument("--tier", choices=TIERS + ("reduced", "full"), default=_env("tier"))
    c.add_argument("--strength", choices=("weak", "strong"), default=_env("strength", "weak"))
    _common(c)

    b = sub.add_parser("build", help="construct a structure and write it as a structure file")
    b.add_argument("construction", choices=("powerset", "convolution", "opposite", "atoms"))
    b.add_argument("inputs", nargs="+")
    b.add_argument("--tier", choices=("plain", "modal", "dedekind"), default=_env("tier"))
    b.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    b.add_argument("--unchecked", action="store_true", help="skip checking the inputs")
    _common(b)

    s = sub.add_parser("suite", help="run the property suite")
    s.add_argument("scope", nargs="?", choices=("fixtures", "laws", "search", "all"), default="all")
    s.add_argument("--only", default=_env("only"), help="section name or tag, e.g. dedekind")
    s.add_argument("--jobs", type=int, default=_env("jobs", 1, int))
    _common(s)

    q = sub.add_parser("search", help="enumerate structures described by a search spec file")
    q.add_argument("spec")
    q.add_argument("--budget-seconds", type=float, default=_env("budget_seconds", None, float))
    q.add_argument("--limit", type=int, default=None, help="stop after this many results")
    q.add_argument("-o", "--output", default=None)
    _common(q)
    return ap


def _emit(args, reports, out=None):
    out = out or sys.stdout
    if args.format == "machine":
        if len(reports) == 1:
            out.write(reports[0].to_json() + "\n")
        else:
            data = {"ok": all(r.ok for r in reports), "reports": [r.to_dict() for r in reports]}
            out.write(json.dumps(data, sort_keys=True, indent=1, ensure_ascii=False) + "\n")
    else:
        for r in reports:
            out.write(r.to_text() + "\n")


def _load(path, kind=None):
    return io.load(resolve(path), kind)


def check_structure(X, tier=None, strength="weak", cap=None, sampling=None):
    """The axiom report matching the structure's kind and the requested tier."""
    if isinstance(X, NCatoid):
        mode = tier if tier in ("reduced", "full") else "full"
        rep = check_ncatoid(X, mode, cap or CARRIER_CAP)
        if X.p is not None:
            rep.merge(check_npcatoid(X, cap or CARRIER_CAP))
        return rep
    if isinstance(X, FiniteGroupoid):
        return check_groupoid(X)
    if isinstance(X, FiniteCatoid):
        return check_catoid(X)
    if isinstance(X, NQuantale):
        rep = check_nquantale(X, strength, cap or LATTICE_CAP, sampling)
        if X.p is not None:
            rep.merge(check_npquantale(X, cap or LATTICE_CAP, sampling))
        return rep
    if tier in TIERS:
        return check_quantale(X, tier, sampling)
    rep = check_quantale(X, "modal" if X.has_modal else "plain", sampling)
    if X.has_conv:
        extra = check_quantale(X, "involutive", sampling)
        have = set(rep.names())
        extra.checks = [c for c in extra.checks if c.name not in have]
        rep.merge(extra)
    return rep


def cmd_check(args):
    X = _load(args.path, args.kind)
    rep = check_structure(X, args.tier, args.strength, args.cap, Sampling(seed=args.seed))
    _emit(args, [rep])
    return OK if rep.ok else FAILED


def _summary(msg):
    print(msg, file=sys.stderr)


def _lift(V: Quantale, dims):
    dom = V.unary("dom") if V.has_modal else list(range(V.n))
    cod = V.unary("cod") if V.has_modal else list(range(V.n))
    t = V.table()
    return NQuantale(V.lattice, [t] * dims, [V.unit] * dims, [dom] * dims, [cod] * dims, name=V.name)


def cmd_build(args):
    ins = [_load(p) for p in args.inputs]
    if not args.unchecked:
        for path, X in zip(args.inputs, ins):
            r = check_structure(X)
            if not r.ok:
                _summary(f"input {path} fails its axioms: {[c.name for c in r.failures()][:5]}")
                return FAILED
    kind = args.construction
    if kind == "powerset":
        (C,) = ins
        if isinstance(C, NCatoid):
            out = powerset_nquantale(C)
            _summary(f"powerset {C.dims}-quantale on {C.n} atoms: {out.n} elements")
        else:
            out = powerset_quantale(C, args.tier)
            _summary(f"powerset quantale, tier {out.tier}: {out.n} elements")
    elif kind == "convolution":
        if len(ins) != 2:
            raise MalformedStructure("convolution takes a catoid file and a quantale file")
        C, V = ins
        if isinstance(C, NCatoid) and isinstance(V, Quantale):
            V = _lift(V, C.dims)
        if isinstance(C, NCatoid):
            out = convolution_quantale(C, V, cap=args.cap or CONVOLUTION_CAP)
        else:
            tier = args.tier or ("modal" if V.has_modal and C.is_local() else "plain")
            out = convolution_quantale(C, V, tier, mode="materialized" if args.cap is None else "auto",
                                       cap=args.cap or CONVOLUTION_CAP)
        if isinstance(out, PointwiseConvolution):
            raise MalformedStructure("the function space exceeds the cap; raise --cap to materialize it")
        _summary(f"convolution algebra {V.name}^{C.name}: {out.n} functions")
    elif kind == "opposite":
        (C,) = ins
        if isinstance(C, NCatoid) or not isinstance(C, FiniteCatoid):
            raise MalformedStructure("opposite takes a catoid or groupoid")
        out = opposite(C)
        _summary(f"opposite of {C.name}: {C.n} elements")
    else:
        (Q,) = ins
        out = atoms_to_catoid(Q)
        _summary(f"recovered {io.kind_of(out)} on {out.n} atoms")
    text = io.dumps(out, {"name": out.name, "provenance": f"built by: catoids build {kind}"})
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def cmd_suite(args):
    names = suite_mod.select(args.scope, args.only)
    if not names:
        _summary(f"no suite section matches scope {args.scope!r} and filter {args.only!r}")
        return BAD_INPUT
    reports = suite_mod.run(names, max(1, args.jobs))
    _emit(args, reports)
    failed = [r.title for r in reports if not r.ok]
    _summary(f"{len(reports) - len(failed)}/{len(reports)} sections passed" +
             (f"; failing: {failed}" if failed else ""))
    return OK if not failed else FAILED


def spec_from_data(d, seconds=None):
    lattice = None
    if "lattice" in d:
        L = d["lattice"]
        lattice = build_lattice([str(e) for e in L["elements"]], [tuple(map(str, p)) for p in L["leq"]])
    spec = SearchSpec(signature=d["signature"], size=d.get("size", 2), constraints=tuple(d.get("constraints", ())),
                      goal=d.get("goal"), goal_mode=d.get("goal_mode", "satisfy"), lattice=lattice,
                      decorations=tuple(d.get("decorations", ())), max_nodes=d.get("max_nodes", 5_000_000),
                      seconds=seconds or d.get("seconds", 60.0), prune_isomorphs=d.get("prune_isomorphs", True))
    spec.validate()
    return spec


def _as_structure(spec, X):
    from .search import catoid_of
    if spec.signature == "catoid":
        return catoid_of(X)
    if spec.signature == "st2":
        return X.to_ncatoid()
    return X


def cmd_search(args):
    try:
        d = json.loads(Path(resolve(args.spec)).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedStructure(f"cannot read search spec: {e}") from None
    spec = spec_from_data(d, args.budget_seconds)
    code = OK
    try:
        res = search(spec, args.limit)
    except BudgetExhausted as e:
        res, code = e.partial, BUDGET
        _summary("budget exhausted; results are partial")
    docs = [io.to_data(_as_structure(spec, X), {"name": f"search result {i}", "provenance": "found by catoids search"})
            for i, X in enumerate(res.found)]
    text = json.dumps(docs, indent=1, ensure_ascii=False) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _summary(f"{len(res.found)} structure(s); {res.examined} candidates examined")
    if args.format == "machine":
        sys.stderr.write(res.report.to_json() + "\n")
    return code


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    handler = {"check": cmd_check, "build": cmd_build, "suite": cmd_suite, "search": cmd_search}[args.cmd]
    try:
        return handler(args)
    except BudgetExhausted as e:
        _summary(f"budget exhausted: {e}")
        return BUDGET
    except MalformedStructure as e:
        _summary(f"input error: {e}")
        return BAD_INPUT
    except CatoidError as e:
        _summary(f"cannot proceed: {type(e).__name__}: {e}")
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Named sections of the property suite, runnable in worker processes."""
from concurrent.futures import ProcessPoolExecutor

from .audit import (verify_fixtures, eckmann_hilton_audit, reduced_axiom_audit, iso_pruning_crosscheck,
                    search_soundness, gelfand_search_report)
from .catoid import FiniteGroupoid, check_catoid, check_groupoid, derived_laws_catoid, check_lazy, shuffle_lazy
from .constructions import (powerset_quantale, powerset_nquantale, convolution_quantale, indicator_isomorphism,
                            delta_law_report, roundtrip_report, ConvolutionQuantale)
from .fixtures import load_fixture, CATOID_FIXTURES
from .ncatoid import NCatoid, check_ncatoid, derived_laws_ncatoid, reduced_implies_full
from .nquantale import NQuantale, check_nquantale, derived_laws_nquantale, check_kleene_layer
from .quantale import Quantale, check_quantale, derived_laws_quantale, diamonds_boxes
from .report import Report


def bool_quantale(dims=None):
    Q = load_fixture("bool2q")
    if dims is None:
        return Q
    t, d = Q.table(), Q.unary("dom")
    return NQuantale(Q.lattice, [t] * dims, [Q.unit] * dims, [d] * dims, [d] * dims, name="2")


def _catoid_laws():
    rep = Report("derived catoid laws on fixtures")
    for name in CATOID_FIXTURES:
        X = load_fixture(name)
        if isinstance(X, NCatoid):
            rep.merge(derived_laws_ncatoid(X), f"{name}: ")
            rep.merge(reduced_implies_full(X), f"{name}: ")
        elif isinstance(X, FiniteGroupoid):
            rep.merge(check_groupoid(X), f"{name}: ")
            rep.merge(derived_laws_catoid(X), f"{name}: ")
        else:
            rep.merge(derived_laws_catoid(X), f"{name}: ")
    rep.merge(check_lazy(shuffle_lazy("ab"), 3), "shuffle: ")
    return rep


def _quantale_laws():
    rep = Report("derived quantale laws")
    for name in ("bool2q", "aabot", "diamond", "domnotunique"):
        rep.merge(derived_laws_quantale(load_fixture(name)), f"{name}: ")
    for name in ("discrete2", "path4"):
        P = powerset_quantale(load_fixture(name))
        rep.merge(check_quantale(P, "modal"), f"P({name}): ")
        rep.merge(derived_laws_quantale(P), f"P({name}): ")
        rep.merge(diamonds_boxes(P)[1], f"P({name}): ")
    return rep


def _dedekind_laws():
    rep = Report("relation algebra on a 2-set")
    P = powerset_quantale(load_fixture("pairgroupoid2"), "dedekind")
    rep.merge(check_quantale(P, "boolean"))
    rep.merge(derived_laws_quantale(P))
    rep.merge(diamonds_boxes(P)[1])
    return rep


def _nquantale_laws():
    rep = Report("derived n-quantale laws")
    for name in ("local2catoid", "twocategory", "functional2catoid"):
        X = load_fixture(name)
        if not X.is_local():
            continue
        P = powerset_nquantale(X)
        rep.merge(check_nquantale(P), f"P({name}): ")
        rep.merge(derived_laws_nquantale(P), f"P({name}): ")
        rep.merge(check_kleene_layer(P), f"P({name}): ")
    idid = load_fixture("idid")
    rep.merge(derived_laws_nquantale(idid), "idid: ")
    rep.merge(check_kleene_layer(idid), "idid: ")
    return rep


def _roundtrips():
    rep = Report("round trips")
    for name in CATOID_FIXTURES:
        rep.merge(roundtrip_report(load_fixture(name)), f"{name}: ")
    rep.merge(roundtrip_report(NCatoid.from_catoid(load_fixture("pairgroupoid2"))), "(1,0) pairgroupoid2: ")
    return rep


def _convolution():
    rep = Report("convolution with 2-valued functions versus powerset")
    V = bool_quantale()
    for name in CATOID_FIXTURES:
        C = load_fixture(name)
        if isinstance(C, NCatoid) and not C.is_local():
            # modal convolution needs locality; compare each composition on its own
            for k in range(C.dims):
                D = C.dimension(k)
                F = convolution_quantale(D, V, "plain")
                rep.merge(indicator_isomorphism(F, powerset_quantale(D, "plain")), f"{name} dim {k}: ")
                rep.merge(delta_law_report(D, V), f"{name} dim {k}: ")
            continue
        if isinstance(C, NCatoid):
            F = convolution_quantale(C, bool_quantale(C.dims))
            rep.merge(indicator_isomorphism(F, powerset_nquantale(C)), f"{name}: ")
            for k in range(C.dims):
                rep.merge(delta_law_report(C.dimension(k), V), f"{name} dim {k}: ")
            continue
        tier = "dedekind" if isinstance(C, FiniteGroupoid) else "modal"
        F = convolution_quantale(C, V, tier)
        if not isinstance(F, ConvolutionQuantale):
            rep.skip(f"{name}: materialized convolution", "above the cap; pointwise only")
            continue
        rep.merge(indicator_isomorphism(F, powerset_quantale(C, tier)), f"{name}: ")
        rep.merge(delta_law_report(C, V), f"{name}: ")
    return rep


SECTIONS = {
    "fixtures": ("fixtures", ("fixtures",), verify_fixtures),
    "catoid": ("laws", ("catoid", "groupoid", "ncatoid"), _catoid_laws),
    "quantale": ("laws", ("quantale", "modal"), _quantale_laws),
    "dedekind": ("laws", ("dedekind", "quantale", "relation"), _dedekind_laws),
    "nquantale": ("laws", ("nquantale", "kleene"), _nquantale_laws),
    "roundtrip": ("laws", ("roundtrip",), _roundtrips),
    "convolution": ("laws", ("convolution",), _convolution),
    "eckmann-hilton": ("search", ("search", "eckmann-hilton"), lambda: eckmann_hilton_audit(2)),
    "gelfand-search": ("search", ("search",), gelfand_search_report),
    "reduced-audit": ("search", ("search", "reduced"), lambda: reduced_axiom_audit(2)),
    "iso-pruning": ("search", ("search",), lambda: iso_pruning_crosscheck(3)),
    "search-soundness": ("search", ("search",), search_soundness),
}


def select(scope="all", only=None):
    out = []
    for name, (sc, tags, _) in SECTIONS.items():
        if scope != "all" and sc != scope:
            continue
        if only and only != name and only not in tags:
            continue
        out.append(name)
    return out


def run_section(name) -> Report:
    return SECTIONS[name][2]()


def run(names, jobs=1):
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_section, names))
    return [run_section(n) for n in names]

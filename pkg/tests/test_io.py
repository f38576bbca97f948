import json

import pytest
from hypothesis import given, settings, strategies as st

from catoids import FiniteCatoid, io
from catoids.constructions import powerset_nquantale, powerset_quantale
from catoids.errors import ParseError
from catoids.fixtures import NAMES, fixture_path, load_fixture


@pytest.mark.parametrize("name", NAMES)
def test_fixture_round_trip(name):
    X = load_fixture(name)
    text = io.dumps(X)
    assert io.dumps(io.loads(text)) == text


def test_meta_is_read():
    meta = io.meta_of(fixture_path("path4"))
    assert meta["name"] and meta["provenance"]


def test_powerset_shorthand_round_trip():
    P = powerset_quantale(load_fixture("pairgroupoid2"))
    data = io.to_data(P)
    assert "powerset" in data["lattice"]
    Q = io.from_data(json.loads(io.dumps(P)))
    assert Q.table() == P.table() and Q.unary("conv") == P.unary("conv")
    N = powerset_nquantale(load_fixture("local2catoid"))
    assert io.dumps(io.loads(io.dumps(N))) == io.dumps(N)


def test_parse_error_names_field_and_line():
    text = '{\n "kind": "catoid",\n "carrier": ["a"],\n "comp": [["a", "a", ["zz"]]],\n "src": {"a": "a"},\n "tgt": {"a": "a"}\n}'
    with pytest.raises(Exception) as ei:
        io.loads(text)
    assert "zz" in str(ei.value)


def test_missing_field():
    text = '{\n "kind": "catoid",\n "carrier": ["a"],\n "comp": [],\n "tgt": {"a": "a"}\n}'
    with pytest.raises(ParseError) as ei:
        io.loads(text)
    assert ei.value.field == "src"


def test_bad_json_and_kind():
    with pytest.raises(ParseError):
        io.loads("{not json")
    with pytest.raises(ParseError):
        io.loads('{"kind": "monoid"}')


def test_wrong_type_reports_line():
    text = '{\n "kind": "catoid",\n "carrier": "a",\n "comp": [],\n "src": {},\n "tgt": {}\n}'
    with pytest.raises(ParseError) as ei:
        io.loads(text)
    assert ei.value.line == 3


@st.composite
def random_catoid_table(draw):
    n = draw(st.integers(1, 4))
    full = (1 << n) - 1
    comp = [[draw(st.integers(0, full)) for _ in range(n)] for _ in range(n)]
    s = [draw(st.integers(0, n - 1)) for _ in range(n)]
    t = [draw(st.integers(0, n - 1)) for _ in range(n)]
    return FiniteCatoid([f"x{i}" for i in range(n)], comp, s, t, "random")


@settings(max_examples=100, deadline=None)
@given(random_catoid_table())
def test_random_round_trip(C):
    D = io.loads(io.dumps(C))
    assert D == C and io.dumps(D) == io.dumps(C)

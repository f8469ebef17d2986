import json
import os
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homlie.errors import ParseError
from homlie.fileio import (
    algebra_from_json,
    algebra_to_json,
    bundle_to_files,
    canonicalize,
    dumps,
    fixture_path,
    form_from_json,
    parse_algebra,
    parse_bundle,
    parse_cocycle,
    parse_derivations,
    parse_form,
    parse_homlie,
    serialize_algebra,
    serialize_bundle,
    serialize_cocycle,
    serialize_form,
    serialize_homlie,
)
from homlie.fileio import _Ctx
from homlie.construct import build_alpha, compute_hk
from homlie.lie import StructureConstants, jacobi_defect
from homlie.zoo import example_derivations, osc4, sl2

from strategies import matrices, rationals

DATA = os.path.dirname(fixture_path())


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_shipped_fixtures_parse(ex_bundle):
    b = parse_bundle(fixture_path())
    assert b.g.tensor == ex_bundle.g.tensor
    assert b.B.gram == ex_bundle.B.gram
    assert b.theta.tensor == ex_bundle.theta.tensor
    assert parse_derivations(os.path.join(DATA, "derivations.json")) == example_derivations()


@pytest.mark.parametrize("name,kind", [("g0.json", "algebra"), ("g.json", "algebra"), ("B.json", "form"),
                                       ("B0.json", "form"), ("theta.json", "cocycle")])
def test_fixture_round_trip_is_byte_identical(name, kind):
    path = os.path.join(DATA, name)
    with open(path, encoding="utf-8") as f:
        assert canonicalize(path, kind) == f.read()


def test_rational_normalization(tmp_path):
    p = _write(tmp_path, "a.json", {"dim": 2, "basis": ["x", "y"], "products": [
        {"left": "x", "right": "y", "result": {"y": "2/4"}}]})
    alg = parse_algebra(p)
    assert alg.tensor[0][1][1] == Fraction(1, 2)
    assert '"1/2"' in serialize_algebra(alg)
    assert "2/4" not in serialize_algebra(alg)


def test_unknown_label(tmp_path):
    p = _write(tmp_path, "a.json", {"dim": 2, "basis": ["x", "y"], "products": [
        {"left": "x", "right": "q", "result": {"y": "1"}}]})
    with pytest.raises(ParseError) as err:
        parse_algebra(p)
    assert "q" in str(err.value) and "a.json" in str(err.value)


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5.2", ""])
def test_malformed_rational(tmp_path, bad):
    p = _write(tmp_path, "a.json", {"dim": 2, "basis": ["x", "y"], "products": [
        {"left": "x", "right": "y", "result": {"y": bad}}]})
    with pytest.raises(ParseError):
        parse_algebra(p)


def test_skew_violation_and_duplicates(tmp_path):
    both = {"dim": 2, "basis": ["x", "y"], "products": [
        {"left": "x", "right": "y", "result": {"y": "1"}},
        {"left": "y", "right": "x", "result": {"y": "-1"}}]}
    with pytest.raises(ParseError):
        parse_algebra(_write(tmp_path, "a.json", both))
    dup = {"dim": 2, "basis": ["x", "y"], "products": [
        {"left": "x", "right": "y", "result": {"y": "1"}},
        {"left": "x", "right": "y", "result": {"y": "1"}}]}
    with pytest.raises(ParseError):
        parse_algebra(_write(tmp_path, "b.json", dup))


def test_bad_json_reports_position(tmp_path):
    p = _write(tmp_path, "a.json", '{"dim": 2,\n "basis": [}')
    with pytest.raises(ParseError) as err:
        parse_algebra(p)
    assert "line 2" in str(err.value)


def test_dimension_mismatch(tmp_path):
    p = _write(tmp_path, "f.json", {"dim": 2, "gram": [["1", "0"]], "symmetric": True})
    with pytest.raises(ParseError):
        parse_form(p)


def test_asymmetric_form_rejected(tmp_path):
    p = _write(tmp_path, "f.json", {"dim": 2, "gram": [["1", "2"], ["0", "1"]], "symmetric": True})
    with pytest.raises(ParseError):
        parse_form(p)


def test_cocycle_needs_matching_g0(tmp_path):
    g0 = parse_algebra(os.path.join(DATA, "g0.json"))
    theta = parse_cocycle(os.path.join(DATA, "theta.json"), g0)
    assert theta.dim_g0 == 6 and theta.dim_v == 3
    assert parse_cocycle(os.path.join(DATA, "theta.json")) == theta


def test_bundle_files_round_trip(tmp_path, ex_bundle):
    path = bundle_to_files(ex_bundle, str(tmp_path))
    b = parse_bundle(path)
    assert serialize_bundle(b) == serialize_bundle(ex_bundle)
    no_g = bundle_to_files(ex_bundle, str(tmp_path / "nog"), include_g=False)
    assert parse_bundle(no_g).g.tensor == ex_bundle.g.tensor


def test_inline_bundle(tmp_path, ex_bundle):
    d = json.loads(serialize_bundle(ex_bundle))
    p = _write(tmp_path, "bundle.json", d)
    assert parse_bundle(p).B.gram == ex_bundle.B.gram


def test_homlie_round_trip(tmp_path, ex_bundle):
    hl = build_alpha(ex_bundle, compute_hk(ex_bundle))
    text = serialize_homlie(hl)
    p = _write(tmp_path, "hl.json", text)
    back = parse_homlie(p)
    assert back.mu.tensor == hl.mu.tensor and back.alpha == hl.alpha
    assert serialize_homlie(back) == text


def test_form_and_cocycle_serialization_stable(ex_bundle, tmp_path):
    for text, parse in ((serialize_form(ex_bundle.B), parse_form), (serialize_cocycle(ex_bundle.theta), parse_cocycle)):
        p = _write(tmp_path, "x.json", text)
        again = parse(p)
        assert (serialize_form(again) if parse is parse_form else serialize_cocycle(again)) == text


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": 2}) == '{\n  "a": 2,\n  "b": 1\n}\n'


@given(matrices(3, 3))
def test_form_round_trip_property(m):
    ctx = _Ctx("mem")
    d = {"dim": 3, "gram": [[str(a) for a in r] for r in m.rows], "symmetric": False}
    f = form_from_json(d, ctx)
    assert f.gram == m


@given(st.lists(rationals, min_size=3, max_size=3), st.sampled_from([sl2(), osc4()]))
def test_algebra_round_trip_property(scale, base):
    # rescale each output coordinate by a random rational
    n = base.dim
    t = [[[c * (scale[k % 3] or 1) for k, c in enumerate(cell)] for cell in row] for row in base.tensor]
    alg = StructureConstants(n, t, base.basis, True)
    again = algebra_from_json(json.loads(dumps(algebra_to_json(alg))), _Ctx("mem"))
    assert again.tensor == alg.tensor
    assert dumps(algebra_to_json(again)) == dumps(algebra_to_json(alg))


def test_parsed_example_is_lie():
    assert jacobi_defect(parse_algebra(os.path.join(DATA, "g.json"))) == []

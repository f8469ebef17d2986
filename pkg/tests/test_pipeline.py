import json
from fractions import Fraction

import pytest

from homlie import anchors as A
from homlie.fileio import fixture_path
from homlie.forms import GramForm
from homlie.lie import StructureConstants, killing_form
from homlie.linalg import Mat
from homlie.pipeline import run_report
from homlie.zoo import osc4, osc4_metric, sl2, trivial_extension

A1, A2, A3, B1, B2, B3, V1, V2, V3 = range(9)


@pytest.fixture(scope="module")
def ex_report():
    return run_report(fixture_path(), probes=20)


def test_example_report_passes(ex_report):
    rep = ex_report
    assert rep.passed and rep.bundle_valid and rep.failure is None
    assert rep.killing["g0"]["K_is_zero"] is True
    assert rep.simplicity["mult_algebra_dim"] == 100
    assert rep.simplicity["absolutely_simple"] is True
    assert rep.summary().endswith("PASS\n")


def test_every_anchor_reported(ex_report):
    names = [v for k, v in vars(A).items() if k.isupper() and isinstance(v, str)]
    missing = [a for a in names if a not in ex_report.anchors]
    assert missing == []


def test_determinism(ex_bundle, ex_report):
    again = run_report(ex_bundle, probes=20)
    assert again.to_json() == ex_report.to_json()
    tup = (ex_bundle.g0, ex_bundle.B0, ex_bundle.theta, ex_bundle.g, ex_bundle.B)
    assert run_report(tup, probes=20).to_json() == ex_report.to_json()


def test_degenerate_B_aborts(ex_bundle):
    b = ex_bundle
    rep = run_report((b.g0, b.B0, b.theta, b.g, GramForm.zero(9)), probes=5)
    assert not rep.passed
    assert rep.failure["anchor"] == A.METRIC == "non-degenerate, symmetric, bilinear form"
    assert rep.failure["stage"] == "bundle validation"


def test_trivial_sl2():
    g0 = sl2()
    rep = run_report(trivial_extension(g0, killing_form(g0), 1), probes=5)
    assert rep.passed
    assert rep.killing["g0"]["condition_B"] is True
    assert rep.killing["g0"]["nondegenerate"] is True


def test_trivial_osc4():
    rep = run_report(trivial_extension(osc4(), osc4_metric(), 2), probes=5)
    assert rep.passed
    assert rep.killing["g0"]["lie_solvable"] is True


def test_perturbed_structure_constant_aborts(ex_bundle):
    b = ex_bundle
    t = [[list(c) for c in row] for row in b.g.tensor]
    t[A1][A2][V1] += 1
    t[A2][A1][V1] -= 1
    rep = run_report((b.g0, b.B0, b.theta, StructureConstants(9, t), b.B), probes=5)
    assert rep.failure is not None
    assert rep.failure["anchor"] in (A.JACOBI, A.INVARIANT, A.HK_ID)
    assert rep.failure["failures"] and "residual" in rep.failure["failures"][0]
    assert json.loads(rep.to_json())["pass"] is False


def test_json_is_rational_strings(ex_report):
    d = json.loads(ex_report.to_json())
    K = d["killing"]["g"]["K"]
    assert all(isinstance(x, str) and Fraction(x) == Fraction(x) for row in K for x in row)


def test_report_stage_order(ex_report):
    st = ex_report.stages
    assert st[0] == "bundle validation"
    assert st.index("compute_hk") < st.index("connection_product") < st.index("build_G")
    assert st[-1] == "structure_diagnostics"


def test_non_isotropic_v_marks_unmet():
    g0 = sl2()
    rep = run_report(trivial_extension(g0, killing_form(g0), 1, Mat.identity(1)), probes=5)
    assert not rep.anchors[A.E_PROJ].applicable

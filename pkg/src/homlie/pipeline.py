"""End-to-end run over a quadratic central extension.

Stages run in a fixed order and each consumes the previous outputs. The first
hard failure stops the run and is reported with its anchor and residuals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import anchors as A
from .cocycles import ExtensionBundle, derivations_from_cocycle
from .connection import (
    build_G,
    burnside_simplicity,
    check_mu_invariance_of_B,
    connection_product,
    g0_connection,
    quotient_homlie,
    thm44_report,
)
from .construct import (
    build_alpha,
    build_alpha_prime,
    build_mu,
    check_twisted_jacobi,
    compute_hk,
    hk_diagnostics,
    homlie_variants_report,
    lemma42_projections,
    restrict_homlie,
    structure_diagnostics,
    v_is_isotropic,
)
from .errors import ValidationError
from .fileio import dumps, parse_bundle
from .forms import is_derivation, is_skew_for
from .killing import check_condition_B, classify
from .lie import is_nilpotent
from .report import Report, to_jsonable

STAGES = (
    "bundle validation",
    "compute_hk",
    "hk_diagnostics",
    "build_mu",
    "build_alpha",
    "build_alpha_prime",
    "restrict_homlie",
    "check_condition_B",
    "twisted_killing",
    "homlie_lcs",
    "check_mu_invariance_of_B",
    "lemma42_projections",
    "connection_product",
    "g0_connection",
    "build_G",
    "structure_diagnostics",
)


@dataclass
class PipelineReport:
    bundle_valid: bool = False
    hk: dict = field(default_factory=dict)
    homlie_variants: dict = field(default_factory=dict)
    killing: dict = field(default_factory=dict)
    connection: dict = field(default_factory=dict)
    simplicity: dict = field(default_factory=dict)
    anchors: Report = field(default_factory=lambda: Report("anchors"))
    stages: list = field(default_factory=list)
    failure: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None and self.bundle_valid and self.anchors.passed

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "bundle_valid": self.bundle_valid,
            "failure": to_jsonable(self.failure),
            "stages": list(self.stages),
            "hk": to_jsonable(self.hk),
            "homlie_variants": to_jsonable(self.homlie_variants),
            "killing": to_jsonable(self.killing),
            "connection": to_jsonable(self.connection),
            "simplicity": to_jsonable(self.simplicity),
            "anchors": self.anchors.to_dict()["checks"],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def summary(self) -> str:
        lines = [f"bundle: {'valid' if self.bundle_valid else 'INVALID'}"]
        if self.failure is not None:
            f = self.failure
            lines.append(f"aborted at {f['stage']}: {f['anchor']}")
            for item in f["failures"][:5]:
                lines.append(f"  {to_jsonable(item)}")
            if len(f["failures"]) > 5:
                lines.append(f"  ... {len(f['failures']) - 5} more")
        lines.extend(self.anchors.summary_lines())
        if self.simplicity:
            s = self.simplicity
            lines.append(f"G: dim {s['dim']}, Mult(G) dim {s['mult_algebra_dim']}, {s['status']}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def _stage(rep: PipelineReport, name: str):
    rep.stages.append(name)


def _abort(rep: PipelineReport, stage: str, exc: ValidationError) -> PipelineReport:
    rep.failure = {"stage": stage, "anchor": exc.anchor, "failures": exc.failures}
    return rep


def run_report(
    source: Union[str, ExtensionBundle, tuple],
    seed: int = 1,
    probes: int = 200,
    bound: int = 9,
) -> PipelineReport:
    """Run every stage on a bundle file path, a built bundle, or a tuple
    ``(g0, B0, theta, g, B)`` that is validated here.

    Parse errors propagate as :class:`ParseError`; mathematical failures are
    captured in the returned report.
    """
    rep = PipelineReport()
    _stage(rep, "bundle validation")
    try:
        if isinstance(source, str):
            bundle = parse_bundle(source)
        elif isinstance(source, tuple):
            bundle = ExtensionBundle(*source)
        else:
            bundle = source
    except ValidationError as exc:
        return _abort(rep, "bundle validation", exc)
    rep.bundle_valid = True
    for a in (A.JACOBI, A.INVARIANT, A.METRIC, A.COCYCLE, A.EXTENSION, A.V_CENTRAL):
        rep.anchors.record(a, [])
    ds = derivations_from_cocycle(bundle.g0, bundle.B0, bundle.theta)
    rep.anchors.record(A.LEIBNIZ, [{"derivation": l, "indices": [i, j], "residual": r}
                                   for l, d in enumerate(ds) for i, j, r in is_derivation(bundle.g0, d)])
    rep.anchors.record(A.SKEW, [{"derivation": l, "indices": [i, j], "residual": r}
                                for l, d in enumerate(ds) for i, j, r in is_skew_for(bundle.B0, d)])
    stage = "compute_hk"
    try:
        _stage(rep, stage)
        pair = compute_hk(bundle)
        rep.hk = {"h": pair.h, "k": pair.k, "T": pair.T, "R": pair.R_matrix, "a": list(pair.a_elems)}

        stage = "hk_diagnostics"
        _stage(rep, stage)
        rep.anchors.merge(hk_diagnostics(bundle, pair))

        stage = "build_mu"
        _stage(rep, stage)
        mu = build_mu(bundle, pair)

        stage = "build_alpha"
        _stage(rep, stage)
        hl = build_alpha(bundle, pair, mu)

        stage = "build_alpha_prime"
        _stage(rep, stage)
        hlp = build_alpha_prime(bundle, pair, mu)

        stage = "restrict_homlie"
        _stage(rep, stage)
        hl0 = restrict_homlie(bundle, pair, mu)
        rep.homlie_variants = {
            "(g,μ,α)": {"twisted_jacobi": not check_twisted_jacobi(hl), "alpha": hl.alpha},
            "(g,μ,α′)": {"twisted_jacobi": not check_twisted_jacobi(hlp), "alpha": hlp.alpha},
            "(g0,μ0,α0)": {"twisted_jacobi": not check_twisted_jacobi(hl0), "alpha": hl0.alpha},
        }
        rep.anchors.record(A.TWISTED_JACOBI, [])
        vrep = homlie_variants_report(bundle, pair, hl, hlp, hl0)
        rep.anchors.merge(vrep)
        rep.homlie_variants["g0_ideal_for_alpha_prime"] = vrep.data["g0_ideal_for_alpha_prime"]

        stage = "check_condition_B"
        _stage(rep, stage)
        cb0, _ = check_condition_B(hl0, bundle.g0)
        cb, _ = check_condition_B(hl, bundle.g)
        rep.anchors.expect(A.CONDITION_B, True, note=f"holds on g0: {cb0}; on g: {cb}")

        stage = "twisted_killing"
        _stage(rep, stage)
        k0 = classify(hl0, bundle.g0)
        kg = classify(hl, bundle.g)
        rep.anchors.merge(k0.report)
        _stage(rep, "homlie_lcs")
        rep.killing = {"g0": k0.to_dict(), "g": kg.to_dict()}
        rep.killing["g0"]["condition_B"] = cb0
        rep.killing["g"]["condition_B"] = cb
        if cb0 and k0.homlie_nilpotent:
            rep.anchors.expect(A.GIL, k0.lie_nilpotent and k0.K_is_zero,
                               {"indices": [], "residual": "Hom-Lie nilpotent but consequent fails"})
        else:
            rep.anchors.unmet(A.GIL, "condition (B) fails" if not cb0 else "not Hom-Lie nilpotent")

        stage = "check_mu_invariance_of_B"
        _stage(rep, stage)
        inv = check_mu_invariance_of_B(bundle, hl)
        rep.anchors.record(A.MU_INV_B, [])
        rep.connection["B_mu_invariant"] = inv

        stage = "lemma42_projections"
        _stage(rep, stage)
        if v_is_isotropic(bundle):
            _, _, prep = lemma42_projections(bundle, pair)
            rep.anchors.merge(prep)
        else:
            for a in (A.E_PROJ, A.F_PROJ, A.INDEP, A.H_V_BIJ, A.IM_ALPHA0_V, A.ALPHA0_REG, A.L1):
                rep.anchors.unmet(a, "V is not isotropic")

        stage = "connection_product"
        _stage(rep, stage)
        conn = connection_product(bundle.g, bundle.B, hl)
        crep = thm44_report(bundle, pair, conn, hlp.alpha, mu, seed=seed)
        rep.anchors.record(A.CONN_DEF, [])
        rep.anchors.merge(crep)
        rep.connection.update(crep.data)
        rep.connection["product"] = _table(conn)

        stage = "g0_connection"
        _stage(rep, stage)
        dotp, drep = g0_connection(bundle, conn, pair, mu, seed=seed)
        rep.anchors.merge(drep)
        rep.connection["g0_product"] = _table(dotp)

        stage = "build_G"
        _stage(rep, stage)
        G = build_G(bundle.g, bundle.B, conn, mu)
        rep.anchors.record(A.G_UNIT, [])
        rep.anchors.record(A.G_COMM, [])
        simp = burnside_simplicity(G.base, seed=seed, probes=probes, bound=bound)
        rep.simplicity = simp.to_dict()
        if simp.absolutely_simple and simp.probe.failures:
            rep.anchors.record(A.G_SIMPLE, [{"indices": [], "residual": "certificate holds but a probe found a proper ideal"}])
        elif not is_nilpotent(bundle.g0):
            rep.anchors.unmet(A.G_SIMPLE, "g0 is not nilpotent")
        elif simp.absolutely_simple:
            rep.anchors.record(A.G_SIMPLE, [])
        else:
            rep.anchors.unmet(A.G_SIMPLE, "Burnside certificate inconclusive; undetermined over the closure")
        _, iso_ok = quotient_homlie(G, hlp.alpha, mu)
        rep.simplicity["quotient_iso_ok"] = iso_ok
        rep.anchors.expect(A.G_QUOTIENT, iso_ok, {"indices": [], "residual": "induced structure differs from (g,μ,α′)"})

        stage = "structure_diagnostics"
        _stage(rep, stage)
        rep.anchors.merge(structure_diagnostics(bundle, pair, hl))
    except ValidationError as exc:
        return _abort(rep, stage, exc)
    return rep


def _table(p) -> dict:
    """Nonzero products as ``{"xy": {label: value}}``."""
    out = {}
    for i in range(p.dim):
        for j in range(p.dim):
            cell = p.tensor[i][j]
            if any(cell):
                out[f"{p.basis[i]}{p.basis[j]}"] = {p.basis[k]: c for k, c in enumerate(cell) if c}
    return out

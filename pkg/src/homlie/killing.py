"""The twisted Killing form ``K(x, y) = Tr(ad_mu(x) ad_mu(y) alpha)``.

``K`` is computed for any Hom-Lie structure. The identities linking it to the
classical Killing form, and the classification statements, are only asserted
when condition (B) holds: ``alpha(mu(x, y)) = mu(alpha(x), y) = [x, y]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import anchors as A
from .construct import HomLieStructure, check_twisted_jacobi
from .errors import DimensionMismatch, PreconditionError, ValidationError
from .forms import GramForm
from .lie import StructureConstants, Subspace, bracket, is_nilpotent, is_solvable, killing_form
from .linalg import Mat, det, dot, is_zero, vsub
from .report import Report

_ZERO = Fraction(0)


def check_condition_B(hl: HomLieStructure, lie: StructureConstants):
    """``(holds, defects)``; each defect is ``(i, j, which, residual)`` with
    ``which`` 0 for ``alpha(mu(x, y))`` and 1 for ``mu(alpha(x), y)``."""
    if hl.dim != lie.dim:
        raise DimensionMismatch("Hom-Lie structure and Lie algebra differ in dimension")
    n = hl.dim
    acols = hl.alpha.columns()
    bad = []
    for i in range(n):
        for j in range(n):
            target = lie.tensor[i][j]
            r0 = vsub(hl.alpha.apply(hl.mu.tensor[i][j]), target)
            if not is_zero(r0):
                bad.append((i, j, 0, r0))
            r1 = vsub(bracket(hl.mu, acols[i], lie.e(j)), target)
            if not is_zero(r1):
                bad.append((i, j, 1, r1))
    return not bad, bad


def twisted_killing(hl: HomLieStructure) -> GramForm:
    n = hl.dim
    ads = [hl.mu.left_mult(i) for i in range(n)]
    tw = [m @ hl.alpha for m in ads]
    g = [[(ads[i] @ tw[j]).trace() for j in range(n)] for i in range(n)]
    m = Mat(g, n)
    return GramForm(n, m, m == m.T)


def _form_triples(form: GramForm, left, right, n):
    """Triples where ``form(left(x, y), z) != form(x, right(y, z))``."""
    bad = []
    for i in range(n):
        for j in range(n):
            lij = left[i][j]
            for k in range(n):
                r = dot(lij, form.gram.col(k)) - dot(form.gram.rows[i], right[j][k])
                if r:
                    bad.append({"indices": [i, j, k], "residual": r})
    return bad


def killing_identities_report(hl: HomLieStructure, lie: StructureConstants, K: Optional[GramForm] = None) -> Report:
    rep = Report("twisted Killing identities")
    ok, _ = check_condition_B(hl, lie)
    anchors = [A.K_SYM, A.K_ALPHA, A.K_MU_INV, A.K_LIE_INV]
    if not ok:
        for a in anchors:
            rep.unmet(a, "condition (B) fails")
        return rep
    n = hl.dim
    K = K or twisted_killing(hl)
    kappa = killing_form(lie)
    G = K.gram
    rep.record(A.K_SYM, [{"indices": [i, j], "residual": G[i, j] - G[j, i]}
                         for i in range(n) for j in range(i + 1, n) if G[i, j] != G[j, i]])
    f = []
    acols = hl.alpha.columns()
    for i in range(n):
        for j in range(n):
            k1 = K.value(acols[i], lie.e(j))
            k2 = K.value(lie.e(i), acols[j])
            kk = kappa.entry(i, j)
            if k1 != kk or k2 != kk:
                f.append({"indices": [i, j], "residual": [k1 - kk, k2 - kk]})
    rep.record(A.K_ALPHA, f)
    rep.record(A.K_MU_INV, _form_triples(K, hl.mu.tensor, hl.mu.tensor, n))
    rep.record(A.K_LIE_INV, _form_triples(K, lie.tensor, lie.tensor, n))
    return rep


def homlie_lcs(hl: HomLieStructure):
    """``g, mu(g, g), mu(g, mu(g, g)), ...`` to stabilization; returns ``(series, nilpotent)``."""
    n = hl.dim
    cur = Subspace.full(n)
    series = [cur]
    while True:
        nxt = Subspace(n, tuple(bracket(hl.mu, hl.mu.e(i), y) for i in range(n) for y in cur.basis))
        if nxt == cur:
            break
        series.append(nxt)
        cur = nxt
        if cur.is_zero():
            break
    return series, series[-1].is_zero()


@dataclass
class TwistedKillingReport:
    K: GramForm
    kappa: GramForm
    condition_A: bool
    condition_B: bool
    identities_pass: Optional[bool]
    nondegenerate: bool
    solvability_criterion_holds: Optional[bool]
    K_is_zero: bool
    homlie_nilpotent: bool
    lie_nilpotent: bool
    lie_solvable: bool
    kappa_nondegenerate: bool = False
    K_symmetric: bool = False
    report: Report = field(default_factory=lambda: Report("classification"))

    def to_dict(self) -> dict:
        from .report import to_jsonable

        return {
            "K": to_jsonable(self.K.gram),
            "kappa": to_jsonable(self.kappa.gram),
            "K_symmetric": self.K_symmetric,
            "condition_A": self.condition_A,
            "condition_B": self.condition_B,
            "identities_pass": self.identities_pass,
            "nondegenerate": self.nondegenerate,
            "kappa_nondegenerate": self.kappa_nondegenerate,
            "solvability_criterion_holds": self.solvability_criterion_holds,
            "K_is_zero": self.K_is_zero,
            "homlie_nilpotent": self.homlie_nilpotent,
            "lie_nilpotent": self.lie_nilpotent,
            "lie_solvable": self.lie_solvable,
            "checks": self.report.to_dict()["checks"],
        }


def classify(hl: HomLieStructure, lie: StructureConstants) -> TwistedKillingReport:
    """Populate every flag; theorem-backed cross-checks are recorded in ``report``
    and only asserted when condition (B) holds."""
    K = twisted_killing(hl)
    kappa = killing_form(lie)
    cond_a = not check_twisted_jacobi(hl)
    cond_b, _ = check_condition_B(hl, lie)
    rep = Report("classification")
    rep.merge(killing_identities_report(hl, lie, K))
    k_nd = det(K.gram) != 0
    kap_nd = det(kappa.gram) != 0
    k_zero = K.is_zero()
    lie_nil, lie_solv = is_nilpotent(lie), is_solvable(lie)
    _, hl_nil = homlie_lcs(hl)
    n = hl.dim
    if cond_b:
        identities = rep.passed
        rep.expect(A.K_NONDEG, k_nd == kap_nd, {"indices": [], "residual": [det(K.gram), det(kappa.gram)]})
        hyp = all(
            K.value(lie.e(i), lie.tensor[j][k]) == 0 for i in range(n) for j in range(n) for k in range(n)
        )
        rep.expect(A.K_SOLV, (not hyp) or lie_solv, {"indices": [], "residual": "hypothesis holds, g not solvable"},
                   note="" if hyp else "hypothesis K(x,[y,z]) = 0 not met")
        rep.expect(A.K_NILP, k_zero == lie_nil, {"indices": [], "residual": [k_zero, lie_nil]})
        solv_crit = hyp
    else:
        identities = None
        solv_crit = None
        for a in (A.K_NONDEG, A.K_SOLV, A.K_NILP):
            rep.unmet(a, "condition (B) fails")
    return TwistedKillingReport(
        K=K,
        kappa=kappa,
        condition_A=cond_a,
        condition_B=cond_b,
        identities_pass=identities,
        nondegenerate=k_nd,
        solvability_criterion_holds=solv_crit,
        K_is_zero=k_zero,
        homlie_nilpotent=hl_nil,
        lie_nilpotent=lie_nil,
        lie_solvable=lie_solv,
        kappa_nondegenerate=kap_nd,
        K_symmetric=K.symmetric,
        report=rep,
    )


def check_gil_implication(hl: HomLieStructure, lie: StructureConstants) -> bool:
    """Hom-Lie nilpotent implies Lie nilpotent with ``K = 0``; raises if violated."""
    ok, _ = check_condition_B(hl, lie)
    if not ok:
        raise PreconditionError("condition (B) does not hold")
    _, hl_nil = homlie_lcs(hl)
    if not hl_nil:
        return True
    if is_nilpotent(lie) and twisted_killing(hl).is_zero():
        return True
    raise ValidationError(A.GIL, [{"indices": [], "residual": "Hom-Lie nilpotent but consequent fails"}])

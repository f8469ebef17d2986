"""Command-line interface.

Exit codes: 0 when every check passes (or a query succeeded), 1 when a
mathematical check fails, 2 for unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from . import anchors as A
from .cocycles import (
    central_extend,
    check_cocycle,
    cocycle_from_derivations,
    cocycle_radicals,
    is_coboundary,
)
from .connection import (
    build_G,
    burnside_simplicity,
    connection_product,
    g0_connection,
    thm44_report,
)
from .construct import build_alpha, build_alpha_prime, build_mu, check_twisted_jacobi, compute_hk, restrict_homlie
from .errors import DimensionMismatch, ParseError, PreconditionError, SingularFormError, ValidationError
from .fileio import (
    algebra_from_json,
    algebra_to_json,
    bundle_from_json,
    bundle_to_files,
    cocycle_to_json,
    derivations_to_json,
    dumps,
    form_to_json,
    homlie_to_json,
    load_json,
    parse_algebra,
    parse_bundle,
    parse_cocycle,
    parse_derivations,
    parse_form,
    parse_homlie,
)
from .forms import check_invariant, derivation_space, is_nondegenerate, skew_derivation_space
from .killing import classify
from .lie import jacobi_defect
from .linalg import Mat, parse_rational
from .pipeline import run_report
from .report import to_jsonable
from .zoo import stock

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(obj, out: Optional[str] = None) -> None:
    text = dumps(to_jsonable(obj))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _failures(pairs) -> list:
    return [{"indices": list(p[:-1]), "residual": p[-1]} for p in pairs]


# ---------------------------------------------------------------- validate

def cmd_validate(args) -> int:
    kind = args.kind
    if kind == "lie":
        alg = parse_algebra(args.file)
        bad = jacobi_defect(alg) if alg.skew else [("skew", "product is not skew")]
        _emit({"kind": "lie", "valid": not bad, "dim": alg.dim, "checks": {A.JACOBI: {"pass": not bad, "failures": _failures(bad)}}})
        return EXIT_FAIL if bad else EXIT_OK
    if kind == "form":
        form = parse_form(args.file)
        checks = {A.METRIC: {"pass": form.symmetric and is_nondegenerate(form), "determinant": form.determinant}}
        if args.algebra:
            alg = parse_algebra(args.algebra)
            if alg.dim != form.dim:
                raise DimensionMismatch(f"form dimension {form.dim} differs from algebra dimension {alg.dim}")
            bad = check_invariant(alg, form)
            checks[A.INVARIANT] = {"pass": not bad, "failures": _failures(bad)}
        ok = all(c["pass"] for c in checks.values())
        _emit({"kind": "form", "valid": ok, "dim": form.dim, "checks": checks})
        return EXIT_OK if ok else EXIT_FAIL
    if kind == "cocycle":
        if not args.algebra:
            raise ParseError("validate cocycle needs --algebra <g0.json>")
        g0 = parse_algebra(args.algebra)
        theta = parse_cocycle(args.file, g0)
        bad = check_cocycle(g0, theta)
        _emit({"kind": "cocycle", "valid": not bad, "checks": {A.COCYCLE: {"pass": not bad, "failures": _failures(bad)}}})
        return EXIT_FAIL if bad else EXIT_OK
    if kind == "homlie":
        hl = parse_homlie(args.file, candidate=True)
        bad = check_twisted_jacobi(hl)
        _emit({"kind": "homlie", "valid": not bad, "dim": hl.dim,
               "checks": {A.TWISTED_JACOBI: {"pass": not bad, "failures": _failures(bad)}}})
        return EXIT_FAIL if bad else EXIT_OK
    try:
        b = parse_bundle(args.file)
    except ValidationError as exc:
        _emit({"kind": "bundle", "valid": False, "anchor": exc.anchor, "failures": exc.failures})
        return EXIT_FAIL
    _emit({"kind": "bundle", "valid": True, "dim_g0": b.n0, "dim_v": b.r})
    return EXIT_OK


# ---------------------------------------------------------------- derivations / cocycles

def cmd_derivations(args) -> int:
    alg = parse_algebra(args.algebra)
    if args.form:
        form = parse_form(args.form)
        if form.dim != alg.dim:
            raise DimensionMismatch(f"form dimension {form.dim} differs from algebra dimension {alg.dim}")
        basis = skew_derivation_space(alg, form)
    else:
        basis = derivation_space(alg)
    _emit(derivations_to_json(alg.dim, basis), args.output)
    return EXIT_OK


def cmd_cocycle(args) -> int:
    g0 = parse_algebra(args.g0)
    if args.action == "from-derivations":
        B0 = parse_form(args.form)
        ds = parse_derivations(args.derivations)
        labels = tuple(args.basis_v.split(",")) if args.basis_v else ()
        theta = cocycle_from_derivations(g0, B0, ds, labels)
        _emit(cocycle_to_json(theta), args.output)
        return EXIT_OK
    theta = parse_cocycle(args.theta, g0)
    if args.action == "check":
        bad = check_cocycle(g0, theta)
        _emit({A.COCYCLE: {"pass": not bad, "failures": _failures(bad)}})
        return EXIT_FAIL if bad else EXIT_OK
    if args.action == "coboundary":
        tau = is_coboundary(g0, theta)
        _emit({"coboundary": tau is not None,
               "message": "coboundary" if tau is not None else "not a coboundary",
               "tau": tau})
        return EXIT_OK
    per, joint = cocycle_radicals(g0, theta)
    _emit({"per_component": {theta.basis_v[l]: [list(v) for v in s.basis] for l, s in enumerate(per)},
           "joint": [list(v) for v in joint.basis], "joint_dim": joint.dim})
    return EXIT_OK


def cmd_extend(args) -> int:
    g0 = parse_algebra(args.g0)
    theta = parse_cocycle(args.theta, g0)
    bad = check_cocycle(g0, theta)
    if bad:
        _emit({A.COCYCLE: {"pass": False, "failures": _failures(bad)}})
        return EXIT_FAIL
    _emit(algebra_to_json(central_extend(g0, theta)), args.output)
    return EXIT_OK


# ---------------------------------------------------------------- Hom-Lie and Killing

def cmd_homlie(args) -> int:
    b = parse_bundle(args.bundle)
    pair = compute_hk(b)
    mu = build_mu(b, pair)
    if args.variant == "alpha":
        hl = build_alpha(b, pair, mu)
    elif args.variant == "alpha-prime":
        hl = build_alpha_prime(b, pair, mu)
    else:
        hl = restrict_homlie(b, pair, mu)
    _emit(homlie_to_json(hl), args.output)
    return EXIT_OK


def cmd_killing(args) -> int:
    hl = parse_homlie(args.homlie, candidate=True)
    lie = parse_algebra(args.lie)
    rep = classify(hl, lie)
    _emit(rep.to_dict(), args.output)
    return EXIT_OK if rep.report.passed else EXIT_FAIL


# ---------------------------------------------------------------- connection and G

def cmd_connection(args) -> int:
    b = parse_bundle(args.bundle)
    pair = compute_hk(b)
    mu = build_mu(b, pair)
    hl = build_alpha(b, pair, mu)
    hlp = build_alpha_prime(b, pair, mu)
    conn = connection_product(b.g, b.B, hl)
    rep = thm44_report(b, pair, conn, hlp.alpha, mu, seed=args.seed)
    dotp, drep = g0_connection(b, conn, pair, mu, seed=args.seed)
    ok = rep.passed and drep.passed
    _emit({"pass": ok, "product": algebra_to_json(conn), "g0_product": algebra_to_json(dotp),
           "checks": rep.to_dict(), "g0_checks": drep.to_dict()}, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gsimple(args) -> int:
    d, ctx = load_json(args.file)
    if isinstance(d, dict) and "g0" in d:
        b = bundle_from_json(d, ctx, os.path.dirname(os.path.abspath(args.file)))
        pair = compute_hk(b)
        mu = build_mu(b, pair)
        conn = connection_product(b.g, b.B, build_alpha(b, pair, mu))
        alg = build_G(b.g, b.B, conn, mu).base
    else:
        alg = algebra_from_json(d, ctx)
    res = burnside_simplicity(alg, seed=args.seed, probes=args.probes, bound=args.bound)
    _emit(res.to_dict(), args.output)
    return EXIT_FAIL if res.absolutely_simple and res.probe.failures else EXIT_OK


# ---------------------------------------------------------------- zoo and report

def _zoo_params(args) -> dict:
    params = {}
    if args.beta is not None:
        params["beta"] = Mat.identity(3).scale(parse_rational(args.beta))
    if args.beta_matrix is not None:
        rows = json.loads(args.beta_matrix)
        params["beta"] = Mat([[parse_rational(x) for x in r] for r in rows], 3)
    if args.g0_name:
        params["g0_name"] = args.g0_name
    if args.r is not None:
        params["r"] = args.r
    if args.scale is not None:
        params["scale"] = parse_rational(args.scale)
    return params


def cmd_zoo(args) -> int:
    try:
        entry = stock(args.name, **_zoo_params(args))
    except KeyError as exc:
        raise ParseError(str(exc.args[0])) from None
    os.makedirs(args.output, exist_ok=True)
    written = []
    if entry.bundle is not None:
        bundle_to_files(entry.bundle, args.output)
        written = ["g0.json", "B0.json", "theta.json", "B.json", "g.json", "bundle.json"]
        if args.name == "example":
            from .zoo import example_derivations

            path = os.path.join(args.output, "derivations.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(dumps(derivations_to_json(entry.bundle.n0, example_derivations())))
            written.append("derivations.json")
    else:
        with open(os.path.join(args.output, "algebra.json"), "w", encoding="utf-8") as fh:
            fh.write(dumps(algebra_to_json(entry.algebra)))
        written.append("algebra.json")
        if entry.form is not None:
            with open(os.path.join(args.output, "form.json"), "w", encoding="utf-8") as fh:
                fh.write(dumps(form_to_json(entry.form)))
            written.append("form.json")
    _emit({"name": args.name, "directory": args.output, "files": written})
    return EXIT_OK


def cmd_report(args) -> int:
    rep = run_report(args.bundle, seed=args.seed, probes=args.probes, bound=args.bound)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
        sys.stdout.write(rep.summary())
    elif args.summary:
        sys.stdout.write(rep.summary())
    else:
        sys.stdout.write(rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


# ---------------------------------------------------------------- parser

def _add_probe_flags(p) -> None:
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--probes", type=int, default=200)
    p.add_argument("--bound", type=int, default=9)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homlie", description="Exact Hom-Lie structures on quadratic central extensions.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a single file")
    p.add_argument("kind", choices=["lie", "form", "cocycle", "homlie", "bundle"])
    p.add_argument("file")
    p.add_argument("--algebra", help="algebra for form invariance or the cocycle's g0")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("derivations", help="basis of Der(g), or of the B-skew derivations with --form")
    p.add_argument("algebra")
    p.add_argument("--form")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_derivations)

    p = sub.add_parser("cocycle", help="cocycle queries")
    csub = p.add_subparsers(dest="action", required=True)
    for name in ("check", "coboundary", "radicals"):
        q = csub.add_parser(name)
        q.add_argument("g0")
        q.add_argument("theta")
        q.set_defaults(func=cmd_cocycle)
    q = csub.add_parser("from-derivations")
    q.add_argument("g0")
    q.add_argument("form")
    q.add_argument("derivations")
    q.add_argument("--basis-v", help="comma-separated labels for V")
    q.add_argument("-o", "--output")
    q.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("extend", help="central extension g0 + V")
    p.add_argument("g0")
    p.add_argument("theta")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("homlie", help="Hom-Lie structure induced by a bundle")
    p.add_argument("bundle")
    p.add_argument("--variant", choices=["alpha", "alpha-prime", "g0"], default="alpha")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_homlie)

    p = sub.add_parser("killing", help="twisted Killing form and classification flags")
    p.add_argument("homlie")
    p.add_argument("lie")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_killing)

    p = sub.add_parser("connection", help="connection product of a bundle with its checks")
    p.add_argument("bundle")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_connection)

    p = sub.add_parser("gsimple", help="Burnside simplicity of G (bundle) or of a unital algebra")
    p.add_argument("file")
    _add_probe_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gsimple)

    p = sub.add_parser("zoo", help="write stock fixtures to a directory")
    p.add_argument("name")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--beta", help="scalar c for beta = c Id")
    p.add_argument("--beta-matrix", help="3x3 JSON matrix of rational strings")
    p.add_argument("--g0-name")
    p.add_argument("--r", type=int)
    p.add_argument("--scale")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("report", help="full pipeline report")
    p.add_argument("bundle")
    _add_probe_flags(p)
    p.add_argument("--summary", action="store_true", help="print the human summary instead of JSON")
    p.add_argument("-o", "--output", help="write JSON here and print the summary")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _emit({"pass": False, "anchor": exc.anchor, "failures": exc.failures})
        return EXIT_FAIL
    except (ParseError, DimensionMismatch, PreconditionError, SingularFormError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

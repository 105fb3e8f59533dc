"""Batch verification front end.

Subcommands:

    check       run the suites named in the spec file (or --suite)
    brackets    tabulate low-arity brackets of the main operator
    split       order/degree decomposition with certificates
    cohomology  slice dimensions and representatives of the differential
    explain     echo the parsed spec with derived structural facts

Exit codes: 0 all checks pass, 1 at least one failure, 2 malformed spec,
3 nothing failed but some check was left untested within budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import AlgebraError, Element, enumerate_monomials, format_element
from .brackets import (
    Budget,
    akman_bracket,
    akman_order_check,
    bv_bracket,
    koszul_bracket,
    monomial_tuples,
)
from .linfty import verify_linfty
from .models import BUILTIN_MODELS
from .operators import Operator, format_operator
from .specfile import ModelSpec, SpecError, parse_spec
from .structures import (
    StructReport,
    check_bvinfty,
    check_derivation_lemma,
    check_gerstenhaber,
    cohomology,
    degree_split,
    induced_bv,
    square_expansion_identities,
)

SCHEMA = "bvcheck-report/1"

SUITE_NAMES = (
    "bv-core",
    "brackets",
    "linfty",
    "split",
    "derivation",
    "bvinfty",
    "gerstenhaber",
    "cohomology",
)


def _hom_monomials(spec: ModelSpec, budget: Budget) -> list[Element]:
    table = spec.table
    return [
        Element.monomial(table, m)
        for m in enumerate_monomials(table, budget.max_degree)
    ]


def run_suite(name: str, spec: ModelSpec, budget: Budget, params: dict) -> StructReport:
    table = spec.table
    D = spec.main_operator()
    d = spec.differential()

    if name == "bv-core":
        report = StructReport("core operator facts")
        report.add("operator is odd", "pass" if D.is_odd() else "fail")
        ok, witness = D.is_square_zero()
        report.add(
            "operator squares to zero",
            "pass" if ok else "fail",
            witness=None
            if ok
            else format_element(Element.monomial(table, witness)),
        )
        k = params.get("order", D.structural_order())
        cert = akman_order_check(D, k, budget)
        report.add(
            f"bracket order <= {k}",
            "pass" if cert.passed else "fail",
            cert.verdict(),
            witness="; ".join(
                format_element(Element.monomial(table, m))
                for m in cert.failure_witness
            )
            if cert.failure_witness
            else None,
        )
        return report

    if name == "brackets":
        report = StructReport("bracket route agreement")
        arity = params.get("arity", 3)
        for n in range(1, arity + 1):
            bad = None
            tested = 0
            for tup in monomial_tuples(table, n, budget):
                elems = [Element.monomial(table, m) for m in tup]
                tested += 1
                if not (akman_bracket(D, elems) - koszul_bracket(D, elems)).is_zero():
                    bad = tup
                    break
            report.add(
                f"recursion vs unshuffle expansion, arity {n}",
                "fail" if bad else "pass",
                "" if bad else f"{tested} tuples",
                witness=str(bad) if bad else None,
            )
        return report

    if name == "linfty":
        n_max = params.get("n", 3)
        report = StructReport("square-zero relation family")
        for rr in verify_linfty(D, n_max, budget):
            report.add(
                f"relation n={rr.index}",
                "pass" if rr.passed else "fail",
                f"{rr.tuples_tested} tuples",
                witness=str(rr.failing_tuple) if rr.failing_tuple else None,
            )
        return report

    if name == "split":
        report = StructReport("order/degree decomposition")
        result = degree_split(D, budget)
        for n, comp in result.components:
            cert = result.certificates[n]
            report.add(
                f"component n={n} (degree {3 - 2 * n:+d}) has order <= {n}",
                "pass" if cert.passed else "fail",
                cert.verdict(),
                witness=str(cert.failure_witness) if cert.failure_witness else None,
            )
        report.add(
            "no off-pattern degree components",
            "fail" if result.residual_flag else "pass",
            f"residual degrees {result.residual_degrees}" if result.residual_flag else "",
        )
        for item in square_expansion_identities(D).items:
            report.add(item.name, item.status, item.details, item.witness)
        return report

    if name == "derivation":
        return check_derivation_lemma(D, budget)

    if name == "bvinfty":
        return check_bvinfty(table, d, D, budget)

    if name == "gerstenhaber":
        elems = _hom_monomials(spec, budget)
        deg = D.degree() if D.is_degree_homogeneous() and not D.is_zero() else None
        return check_gerstenhaber(
            lambda a, b: bv_bracket(D, a, b),
            lambda a, b: a * b,
            elems,
            budget,
            bracket_degree=deg,
            product_degree=0,
            title="bracket of the main operator",
        )

    if name == "cohomology":
        window = params.get("window", budget.max_degree + 1)
        report = StructReport("cohomology of the differential")
        H = cohomology(table, d, window)
        report.add("slice dimensions", "pass", str(H.dims()))
        for w in H.warnings:
            report.add("window truncation", "untested", w)
        if not D.is_zero() and not (D - d).is_zero():
            for item in induced_bv(table, d, D, window, budget).items:
                report.add(item.name, item.status, item.details, item.witness)
        return report

    raise SpecError(f"unknown suite {name!r} (known: {', '.join(SUITE_NAMES)})", 0)


def _exit_code(reports: list[StructReport]) -> int:
    if any(not r.passed for r in reports):
        return 1
    if any(not r.fully_tested for r in reports):
        return 3
    return 0


def _emit(reports, args, spec_name: str, exit_code: int) -> None:
    if args.format == "json":
        payload = {
            "schema": SCHEMA,
            "spec": spec_name,
            "seed": args.seed,
            "exit_code": exit_code,
            "suites": [
                {
                    "title": r.title,
                    "passed": r.passed,
                    "items": [
                        {
                            "name": i.name,
                            "status": i.status,
                            "details": i.details,
                            "witness": i.witness,
                        }
                        for i in r.items
                    ],
                }
                for r in reports
            ],
        }
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = []
        for r in reports:
            lines.extend(r.lines())
        lines.append(f"result: {'PASS' if exit_code in (0, 3) else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_spec(args) -> ModelSpec:
    if args.spec:
        with open(args.spec) as fh:
            text = fh.read()
        return parse_spec(text)
    if args.model:
        if args.model not in BUILTIN_MODELS:
            raise SpecError(
                f"unknown model {args.model!r} "
                f"(known: {', '.join(sorted(BUILTIN_MODELS))})", 0
            )
        return parse_spec(f"MODEL {args.model}\n")
    raise SpecError("either --spec or --model is required", 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bvcheck", description="exact checks for odd square-zero operators"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in ("check", "brackets", "split", "cohomology", "explain"):
        p = sub.add_parser(cmd)
        p.add_argument("--spec", help="path to a spec file")
        p.add_argument("--model", help="builtin model name instead of a spec")
        p.add_argument(
            "--suite", action="append", default=[],
            help="suite to run (repeatable); overrides the spec's SUITE lines",
        )
        p.add_argument("--budget-degree", type=int, default=3)
        p.add_argument("--budget-tuples", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("human", "json"), default="human")
        p.add_argument("--out", help="write the report to a file")
        if cmd == "brackets":
            p.add_argument("--arity", type=int, default=2)
        if cmd == "cohomology":
            p.add_argument("--window", type=int, default=4)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    budget = Budget(
        max_degree=args.budget_degree,
        max_tuples=args.budget_tuples,
        seed=args.seed,
    )
    try:
        spec = _load_spec(args)
        spec_name = args.spec or f"model:{args.model}"

        if args.command == "check":
            suites = [(s, {}) for s in args.suite] or spec.suites or [("bv-core", {})]
            reports = [run_suite(n, spec, budget, p) for n, p in suites]
            code = _exit_code(reports)
            _emit(reports, args, spec_name, code)
            return code

        if args.command == "brackets":
            D = spec.main_operator()
            report = run_suite("brackets", spec, budget, {"arity": args.arity})
            table = spec.table
            values = StructReport(f"arity-{args.arity} bracket values")
            shown = 0
            for tup in monomial_tuples(table, args.arity, budget):
                if shown >= 12:
                    break
                elems = [Element.monomial(table, m) for m in tup]
                val = akman_bracket(D, elems)
                if val.is_zero():
                    continue
                shown += 1
                label = ", ".join(format_element(e) for e in elems)
                values.add(f"F({label})", "pass", format_element(val))
            reports = [report, values]
            code = _exit_code([report])
            _emit(reports, args, spec_name, code)
            return code

        if args.command == "split":
            report = run_suite("split", spec, budget, {})
            code = _exit_code([report])
            _emit([report], args, spec_name, code)
            return code

        if args.command == "cohomology":
            report = run_suite("cohomology", spec, budget, {"window": args.window})
            H = cohomology(spec.table, spec.differential(), args.window)
            reps = StructReport("representatives")
            for g, rs in sorted(H.representatives.items()):
                reps.add(
                    f"degree {g}", "pass",
                    "; ".join(format_element(r) for r in rs),
                )
            code = _exit_code([report])
            _emit([report, reps], args, spec_name, code)
            return code

        if args.command == "explain":
            report = StructReport("parsed spec")
            t = spec.table
            report.add(
                "generators", "pass",
                ", ".join(f"{n} (degree {d})" for n, d in zip(t.names, t.degrees)),
            )
            ops = dict(spec.operators)
            if spec.model is not None:
                ops.setdefault("D", spec.model.D)
                if not spec.model.d.is_zero():
                    ops.setdefault("d", spec.model.d)
            for name, op in sorted(ops.items()):
                degs = sorted(op.degree_components())
                report.add(
                    f"operator {name}", "pass",
                    f"order {op.structural_order()}, degrees {degs}: "
                    f"{format_operator(op)}",
                )
            if spec.suites:
                report.add(
                    "suites", "pass",
                    "; ".join(n + (f" {p}" if p else "") for n, p in spec.suites),
                )
            _emit([report], args, spec_name, 0)
            return 0

        raise AssertionError(args.command)
    except SpecError as exc:
        sys.stderr.write(f"spec error: {exc}\n")
        return 2
    except (AlgebraError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

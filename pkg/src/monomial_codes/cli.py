"""Command-line front end: ``monomial-codes <group> <command> [flags]``.

Exit status is 0 on PASS, 1 on FAIL and 2 when parameters are rejected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .codes import build_code, verify, weight_distribution
from .cyclotomic import CycInt
from .errors import ParameterError, VerificationError
from .exponents import apn_catalog, differential_uniformity, solve_d
from .expsums import joint_t_distribution, t_distribution, t_sum
from .field import build_field
from .suite import run_suite

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def _value_json(v: CycInt) -> dict:
    return {"value": list(v.coeffs), "render": v.render()}


def _field_element(field, token: str) -> int:
    """``zero`` or a discrete log i, meaning alpha^i."""
    if token == "zero":
        return 0
    try:
        return field.exp(int(token))
    except ValueError:
        raise ParameterError(f"--u/--v take a discrete log or 'zero', got {token!r}") from None


# -- command handlers: each returns (exit status, payload dict, text) --------

def cmd_field_show(args):
    field = build_field(args.p, args.m)
    payload = {
        "p": field.p,
        "m": field.m,
        "size": field.q,
        "modulus": list(field.modulus),
        "alpha": "root of the modulus; elements are sum c_i p^i of their coordinates",
    }
    return EXIT_PASS, payload, field.descriptor().rstrip("\n")


def cmd_d_solve(args):
    sols = solve_d(args.p, args.m, args.k)
    payload = {
        "params": {"p": args.p, "m": args.m, "k": args.k, "e": sols[0].e},
        "solutions": [{"d": s.d, "class": s.residue_class.name} for s in sols],
    }
    text = "\n".join(f"d={s.d}  class={s.residue_class.name} ({s.residue_class.value})" for s in sols)
    return EXIT_PASS, payload, text


def cmd_d_apn(args):
    catalog = apn_catalog(args.m)
    rows = []
    field = build_field(3, args.m) if args.check else None
    for entry in catalog:
        row = {"family": entry.family, "d": entry.d, "k": entry.k}
        if field is not None:
            row["differential_uniformity"] = differential_uniformity(field, entry.d)
        rows.append(row)
    status = EXIT_PASS
    if field is not None and any(r["differential_uniformity"] != 2 for r in rows):
        status = EXIT_FAIL
    lines = ["family  d  k" + ("  uniformity" if field is not None else "")]
    for r in rows:
        extra = f"  {r['differential_uniformity']}" if field is not None else ""
        lines.append(f"({r['family']})  {r['d']}  {r['k']}{extra}")
    return status, {"m": args.m, "catalog": rows}, "\n".join(lines)


def cmd_expsum_t(args):
    field = build_field(args.p, args.m)
    u = _field_element(field, args.u)
    v = _field_element(field, args.v)
    value = t_sum(field, u, v, args.k)
    payload = {"params": {"p": args.p, "m": args.m, "k": args.k, "u": args.u, "v": args.v}}
    payload.update(_value_json(value))
    return EXIT_PASS, payload, f"T({args.u}, {args.v}) = {value.render()}  {list(value.coeffs)}"


def _spectrum_output(report, args, key_json, key_text):
    keys = sorted(set(report.observed) | set(report.expected))
    rows = [
        {**key_json(key), "observed": report.observed.get(key, 0), "expected": report.expected.get(key, 0)}
        for key in keys
    ]
    verdict = "PASS" if report.ok else "FAIL"
    payload = {
        "params": {"p": args.p, "m": args.m, "k": args.k},
        "mode": report.mode,
        "rows": rows,
        "verdict": verdict,
    }
    lines = [f"{key_text(key)}  observed={r['observed']}  expected={r['expected']}" for key, r in zip(keys, rows)]
    if not report.ok:
        key, got, want = report.mismatches[0]
        payload["first_mismatch"] = {**key_json(key), "observed": got, "expected": want}
        lines.append(f"first mismatch: {key_text(key)} observed {got}, expected {want}")
    lines.append(verdict)
    return (EXIT_PASS if report.ok else EXIT_FAIL), payload, "\n".join(lines)


def cmd_expsum_dist(args):
    report = t_distribution(build_field(args.p, args.m), args.k, args.mode)
    return _spectrum_output(report, args, _value_json, lambda v: v.render())


def cmd_expsum_joint(args):
    report = joint_t_distribution(build_field(args.p, args.m), args.k, args.mode)

    def key_json(pair):
        return {"left": _value_json(pair[0]), "right": _value_json(pair[1])}

    return _spectrum_output(report, args, key_json, lambda pair: f"({pair[0].render()}, {pair[1].render()})")


def _code(args):
    return build_code(build_field(args.p, args.m), args.k, args.d, args.a)


def cmd_code_build(args):
    code = _code(args)
    dist = weight_distribution(code, jobs=args.jobs)
    payload = {
        "params": code.params,
        "length": code.length,
        "dimension": dist.dimension,
        "min_distance": dist.min_distance,
        "enumerator": dist.as_pairs(),
        "defining_logs": code.defining_logs.tolist(),
    }
    text = (
        f"params {code.params}\nlength {code.length}\ndimension {dist.dimension}\n"
        f"min_distance {dist.min_distance}\nenumerator {dist.enumerator()}"
    )
    return EXIT_PASS, payload, text


def cmd_code_verify(args):
    report = verify(_code(args), jobs=args.jobs)
    payload = report.to_dict()
    lines = [
        f"branch {report.branch}",
        f"length {report.observed.length}",
        f"dimension {report.observed.dimension}",
        f"enumerator {report.observed.enumerator()}",
    ]
    if report.expected.possible_weights is not None:
        lines.append(f"possible weights {sorted(report.expected.possible_weights)}")
    else:
        lines.append(f"expected {report.expected.enumerator()}")
    if report.verdict == "FAIL":
        name, detail = report.first_failure
        lines.append(f"first mismatch: {name}: {detail}")
    lines.append(report.verdict)
    return (EXIT_PASS if report.verdict == "PASS" else EXIT_FAIL), payload, "\n".join(lines)


def cmd_suite(args):
    results = run_suite(args.level, args.jobs)
    ok = all(r.ok for r in results)
    verdict = "PASS" if ok else "FAIL"
    payload = {"level": args.level, "checks": [r.to_dict() for r in results], "verdict": verdict}
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}  {r.detail}" for r in results]
    lines.append(verdict)
    return (EXIT_PASS if ok else EXIT_FAIL), payload, "\n".join(lines)


# -- parser ------------------------------------------------------------------

def _common():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parent.add_argument("--out", help="write the report to this file instead of stdout")
    parent.add_argument("--jobs", type=int, default=1, help="worker threads for weight scans")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="monomial-codes", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name, handler, *flags):
        cmd = sub.add_parser(name, parents=[common])
        for flag in flags:
            cmd.add_argument(f"--{flag}", type=int, required=True)
        cmd.set_defaults(handler=handler)
        return cmd

    field = groups.add_parser("field").add_subparsers(dest="command", required=True)
    leaf(field, "show", cmd_field_show, "p", "m")

    d = groups.add_parser("d").add_subparsers(dest="command", required=True)
    leaf(d, "solve", cmd_d_solve, "p", "m", "k")
    apn = leaf(d, "apn", cmd_d_apn, "m")
    apn.add_argument("--check", action="store_true", help="also measure differential uniformity")

    expsum = groups.add_parser("expsum").add_subparsers(dest="command", required=True)
    t = leaf(expsum, "t", cmd_expsum_t, "p", "m", "k")
    t.add_argument("--u", default="0", metavar="LOG", help="u = alpha^LOG, or 'zero'")
    t.add_argument("--v", default="0", metavar="LOG", help="v = alpha^LOG, or 'zero'")
    for name, handler in (("dist", cmd_expsum_dist), ("joint", cmd_expsum_joint)):
        cmd = leaf(expsum, name, handler, "p", "m", "k")
        cmd.add_argument("--mode", choices=("naive", "orbit"), default="naive")

    code = groups.add_parser("code").add_subparsers(dest="command", required=True)
    leaf(code, "build", cmd_code_build, "p", "m", "k", "d", "a")
    leaf(code, "verify", cmd_code_verify, "p", "m", "k", "d", "a")

    suite = leaf(groups, "suite", cmd_suite)
    suite.add_argument("--level", choices=("quick", "full"), default="quick")
    return parser


def _enumerator_csv(payload) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["weight", "frequency"])
    writer.writerows(payload["enumerator"])
    return buf.getvalue()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.format == "csv" and args.handler not in (cmd_code_build, cmd_code_verify):
            raise ParameterError("csv output is only available for weight enumerators (code build/verify)")
        if args.jobs < 1:
            raise ParameterError(f"--jobs must be at least 1, got {args.jobs}")
        status, payload, text = args.handler(args)
    except ParameterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except VerificationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL

    if args.format == "json":
        out = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        out = _enumerator_csv(payload)
    else:
        out = text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 bad input, 3 resource bound.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from importlib import resources
from typing import Any

from . import __version__
from .census import (
    MarkedPartition, census_counts, char_poly, char_poly_eval_signed_one,
    check_enumeration_bound, enumerate_marked_partitions, expand_char_poly,
    is_s_admissible, is_t_admissible, reflection_census,
)
from .errors import ParseError, ResourceBoundError
from .exactnum import SUPPORTED_ORDERS, two_cos
from .groups import GammaClassTable, GammaSpec, class_table, contains_minus_one, klein_exists, parse_spec
from .oracle import default_cap, oracle_report
from .series import JSON_SAFE_INT, class_series, supertrace_series, trace_series

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_BOUND = 0, 1, 2, 3
MAX_SERIES_NMAX = 10_000
MAX_COUNT_N = 10_000

# column order of --format csv, per command
CSV_COLUMNS = {
    "groups": ["gamma", "class", "size", "element_order", "angle", "is_identity", "is_minus_one"],
    "census": ["gamma", "N", "C", "T", "S"],
    "census_list": ["gamma", "N", "partition", "t_admissible", "s_admissible", "char_poly"],
    "series": ["gamma", "which", "N", "coefficient"],
    "verify": ["check", "gamma", "N", "expected", "actual", "ok"],
    "charpoly": ["gamma", "partition", "power", "coefficient"],
}


class InputError(Exception):
    pass


def load_schema(command: str) -> dict:
    """The JSON schema shipped for ``--format json`` output of ``command``."""
    text = resources.files("wreathtrace").joinpath("schemas", f"{command}.schema.json").read_text()
    return json.loads(text)


def jsonable_int(v: int):
    return v if abs(v) <= JSON_SAFE_INT else str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return jsonable_int(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# -- rendering helpers -------------------------------------------------------

def _trace_text(angle) -> str:
    if angle.m in SUPPORTED_ORDERS:
        tc = two_cos(angle)
        if tc.is_rational():
            return str(tc.a)
        return f"{float(tc):.12g}"
    return f"2cos(2π·{angle.k}/{angle.m})"


def _factor_text(factor) -> str:
    r, a = factor.r, factor.angle
    lam = lambda p: "λ" if p == 1 else f"λ^{p}"  # noqa: E731
    if a.is_zero():
        base, power = f"({lam(r)} - 1)", 2 * factor.multiplicity
    elif a.is_half():
        base, power = f"({lam(r)} + 1)", 2 * factor.multiplicity
    else:
        tr = _trace_text(a)
        if tr in ("1", "-1"):
            tr = tr[:-1]
        if tr == "0":
            base = f"({lam(2 * r)} + 1)"
        elif tr.startswith("-"):
            base = f"({lam(2 * r)} + {tr[1:]}{lam(r)} + 1)"
        else:
            base = f"({lam(2 * r)} - {tr}{lam(r)} + 1)"
        power = factor.multiplicity
    return base if power == 1 else f"{base}^{power}"


def _poly_text(coeffs) -> str:
    """Descending-power rendering of ascending coefficients; near-integers print as integers."""
    terms = []
    for p in range(len(coeffs) - 1, -1, -1):
        c = float(coeffs[p].real)
        if abs(c) < 1e-12:
            continue
        mag = abs(c)
        num = str(int(round(mag))) if abs(mag - round(mag)) < 1e-9 else f"{mag:.10g}"
        mono = "" if p == 0 else ("λ" if p == 1 else f"λ^{p}")
        body = num if not mono else (mono if num == "1" else f"{num}{mono}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _clean(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else x


# -- payload builders --------------------------------------------------------

def groups_payload(spec: GammaSpec) -> dict:
    t = class_table(spec)
    refl, params = reflection_census(spec, 2)
    return {
        "gamma": str(spec),
        "order": t.order,
        "classes": t.count,
        "minus_one": contains_minus_one(t),
        "klein_exists": klein_exists(t, 1),
        "reflection_classes": refl,
        "parameters": params,
        "class_table": [
            {
                "id": c.label, "size": c.size, "element_order": c.element_order,
                "angle": str(c.angle), "is_identity": c.is_identity, "is_minus_one": c.is_minus_one,
            }
            for c in t.classes
        ],
    }


def _partition_record(mp: MarkedPartition, t: GammaClassTable) -> dict:
    f = char_poly(mp, t)
    return {
        "partition": str(mp),
        "t_admissible": is_t_admissible(mp, t),
        "s_admissible": is_s_admissible(mp, t),
        "char_poly": " ".join(_factor_text(x) for x in f) or "1",
        "factors": [{"angle": str(x.angle), "r": x.r, "multiplicity": x.multiplicity} for x in f],
    }


def census_payload(spec: GammaSpec, N: int, listing: bool = False) -> dict:
    if N < 0:
        raise InputError("--n must be nonnegative")
    t = class_table(spec)
    if listing:
        check_enumeration_bound(t, N)
    elif N > MAX_COUNT_N:
        raise ResourceBoundError("census N", N, MAX_COUNT_N)
    res = census_counts(spec, N)
    payload = {"gamma": str(spec), "N": N, "C": jsonable_int(res.C), "T": jsonable_int(res.T), "S": jsonable_int(res.S)}
    if listing:
        payload["partitions"] = [_partition_record(mp, t) for mp in enumerate_marked_partitions(t, N)]
    return payload


_SERIES = {"t": trace_series, "s": supertrace_series, "c": class_series}


def series_payload(spec: GammaSpec, n_max: int, which: str) -> dict:
    if n_max < 0:
        raise InputError("--nmax must be nonnegative")
    if n_max > MAX_SERIES_NMAX:
        raise ResourceBoundError("series nmax", n_max, MAX_SERIES_NMAX)
    s = _SERIES[which](spec, n_max)
    return {"gamma": str(spec), "which": which, "nmax": n_max, "coefficients": s.to_json()}


def charpoly_payload(spec: GammaSpec, text: str) -> dict:
    t = class_table(spec)
    try:
        mp = MarkedPartition.parse(text)
    except (ParseError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    for _, a in mp.keys():
        if a >= t.count:
            raise InputError(f"class c{a} does not exist in {spec} (classes c0..c{t.count - 1})")
    f = char_poly(mp, t)
    coeffs = expand_char_poly(f)
    zp, vp = char_poly_eval_signed_one(f, 1)
    zm, vm = char_poly_eval_signed_one(f, -1)
    return {
        "gamma": str(spec),
        "partition": str(mp),
        "N": mp.weight,
        "degree": f.degree,
        "factored": " ".join(_factor_text(x) for x in f) or "1",
        "factors": [{"angle": str(x.angle), "r": x.r, "multiplicity": x.multiplicity} for x in f],
        "expanded": _poly_text(coeffs),
        "coefficients": [_clean(float(c.real)) for c in coeffs],
        "at_plus_one": {"is_zero": zp, "value": _clean(vp)},
        "at_minus_one": {"is_zero": zm, "value": _clean(vm)},
        "t_admissible": not zp,
        "s_admissible": not zm,
    }


def _check(checks: list, name: str, spec: GammaSpec, N, expected, actual) -> None:
    checks.append({
        "check": name, "gamma": str(spec), "N": N,
        "expected": _jsonable(expected), "actual": _jsonable(actual), "ok": expected == actual,
    })


def verify_payload(spec: GammaSpec, n_max: int, oracle_max: int, skip_oracle: bool = False, cap=None) -> dict:
    """Census vs series, color-spec vs closed form, the S/T inequalities, and the oracle."""
    if n_max < 0 or oracle_max < 0:
        raise InputError("bounds must be nonnegative")
    t = class_table(spec)
    if not skip_oracle:
        limit = default_cap() if cap is None else cap
        size = spec.order ** oracle_max * math.factorial(oracle_max)
        if size > limit:
            raise ResourceBoundError(f"oracle group size for {spec} wr S_{oracle_max}", size, limit)
    checks: list[dict] = []
    cs, ts, ss = class_series(spec, n_max), trace_series(spec, n_max), supertrace_series(spec, n_max)
    _check(checks, "trace series: colored = closed form", spec, None,
           ts.to_json(), trace_series(spec, n_max, method="colored").to_json())
    _check(checks, "supertrace series: colored = closed form", spec, None,
           ss.to_json(), supertrace_series(spec, n_max, method="colored").to_json())
    census = {}
    for N in range(n_max + 1):
        try:
            check_enumeration_bound(t, N)
            res = census_counts(spec, N, mode="enumerate")
        except ResourceBoundError:
            res = census_counts(spec, N, mode="count")
        census[N] = res
        _check(checks, "census = series", spec, N,
               [cs[N], ts[N], ss[N]], [res.C, res.T, res.S])
        k = klein_exists(t, N)
        _check(checks, "S > 0", spec, N, True, res.S > 0)
        _check(checks, "S >= T", spec, N, True, res.S >= res.T)
        _check(checks, "S = T iff Klein operator", spec, N, k, res.S == res.T)
    if not skip_oracle:
        for N in range(oracle_max + 1):
            rep = oracle_report(spec, N, cap)
            expected = census.get(N) or census_counts(spec, N)
            _check(checks, "oracle = census", spec, N,
                   [expected.C, expected.T, expected.S], list(rep.counts))
            bijective = (
                rep.constant_on_classes
                and len(set(rep.labels)) == len(rep.labels)
                and set(rep.labels) == set(enumerate_marked_partitions(t, N, check_bound=False))
            )
            _check(checks, "classify_element bijection", spec, N, True, bijective)
            _check(checks, "eigenvalue tests = admissibility", spec, N, True, rep.eigen_agrees)
    failures = [c for c in checks if not c["ok"]]
    return {
        "gamma": str(spec), "nmax": n_max,
        "oracle_max": None if skip_oracle else oracle_max,
        "passed": not failures, "checks": checks, "failures": failures,
    }


# -- output ------------------------------------------------------------------

def _csv(rows: list[list[Any]], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _csv_rows(command: str, p: dict) -> tuple[list, list[str]]:
    if command == "groups":
        rows = [[p["gamma"], c["id"], c["size"], c["element_order"], c["angle"], c["is_identity"], c["is_minus_one"]]
                for c in p["class_table"]]
        return rows, CSV_COLUMNS["groups"]
    if command == "census":
        if "partitions" in p:
            rows = [[p["gamma"], p["N"], r["partition"], r["t_admissible"], r["s_admissible"], r["char_poly"]]
                    for r in p["partitions"]]
            return rows, CSV_COLUMNS["census_list"]
        return [[p["gamma"], p["N"], p["C"], p["T"], p["S"]]], CSV_COLUMNS["census"]
    if command == "series":
        rows = [[p["gamma"], p["which"], N, c] for N, c in enumerate(p["coefficients"])]
        return rows, CSV_COLUMNS["series"]
    if command == "verify":
        rows = [[c["check"], c["gamma"], "" if c["N"] is None else c["N"], json.dumps(c["expected"]),
                 json.dumps(c["actual"]), c["ok"]] for c in p["checks"]]
        return rows, CSV_COLUMNS["verify"]
    rows = [[p["gamma"], p["partition"], k, c] for k, c in enumerate(p["coefficients"])]
    return rows, CSV_COLUMNS["charpoly"]


def _text(command: str, p: dict) -> str:
    lines = []
    if command == "groups":
        lines.append(f"{p['gamma']}: order={p['order']} classes={p['classes']} "
                     f"minus_one={'yes' if p['minus_one'] else 'no'} klein={'yes' if p['klein_exists'] else 'no'}")
        lines.append(f"reflection classes (N>=2): {p['reflection_classes']}, parameters: {p['parameters']}")
        for c in p["class_table"]:
            lines.append(f"  {c['id']:>4}  size={c['size']:<4} order={c['element_order']:<4} angle={c['angle']}")
    elif command == "census":
        lines.append(f"{p['gamma']} wr S_{p['N']}: C={p['C']} T={p['T']} S={p['S']}")
        for r in p.get("partitions", []):
            lines.append(f"  {r['partition'] or '(empty)':<28} t-adm={'yes' if r['t_admissible'] else 'no':<3} "
                         f"s-adm={'yes' if r['s_admissible'] else 'no':<3} {r['char_poly']}")
    elif command == "series":
        lines.append(json.dumps(p["coefficients"]))
    elif command == "verify":
        for c in p["checks"]:
            where = "" if c["N"] is None else f" N={c['N']}"
            lines.append(f"{'PASS' if c['ok'] else 'FAIL'} {c['check']}{where}")
            if not c["ok"]:
                lines.append(f"     expected {c['expected']} got {c['actual']}")
        lines.append(f"{p['gamma']}: {'all checks passed' if p['passed'] else str(len(p['failures'])) + ' check(s) failed'}")
    else:
        lines.append(f"{p['gamma']} {p['partition']}: degree {p['degree']}")
        lines.append(f"  factored: {p['factored']}")
        lines.append(f"  expanded: {p['expanded']}")
        lines.append(f"  P(+1) = {p['at_plus_one']['value']:g}  t-adm={'yes' if p['t_admissible'] else 'no'}")
        lines.append(f"  P(-1) = {p['at_minus_one']['value']:g}  s-adm={'yes' if p['s_admissible'] else 'no'}")
    return "\n".join(lines) + "\n"


def render(command: str, payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    if fmt == "csv":
        rows, cols = _csv_rows(command, payload)
        return _csv(rows, cols)
    return _text(command, payload)


# -- argument parsing ----------------------------------------------------------

def _spec_arg(text: str) -> GammaSpec:
    try:
        return parse_spec(text)
    except ParseError as exc:
        raise InputError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreathtrace",
        description="Traces and supertraces of symplectic reflection algebras of Gamma wr S_N.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--gamma", required=True, help="Z<n>, D<n>, 2T, 2O or 2I")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        return p

    add("groups", "class table of Gamma")
    p = add("census", "C, T, S of Gamma wr S_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list every marked partition")
    p = add("series", "coefficients of a generating function")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--which", choices=("t", "s", "c"), required=True)
    p = add("verify", "cross-validate census, series and brute force")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--oracle-max", type=int, default=2)
    p.add_argument("--skip-oracle", action="store_true")
    p = add("charpoly", "characteristic polynomial of a class")
    p.add_argument("--mp", required=True, help='marked partition, e.g. "2^1[c1] 1^3[c0]"')
    return parser


def _dispatch(args) -> tuple[dict, int]:
    spec = _spec_arg(args.gamma)
    if args.command == "groups":
        return groups_payload(spec), EXIT_OK
    if args.command == "census":
        return census_payload(spec, args.n, args.list), EXIT_OK
    if args.command == "series":
        return series_payload(spec, args.nmax, args.which), EXIT_OK
    if args.command == "verify":
        payload = verify_payload(spec, args.nmax, args.oracle_max, args.skip_oracle)
        return payload, EXIT_OK if payload["passed"] else EXIT_MISMATCH
    return charpoly_payload(spec, args.mp), EXIT_OK


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        payload, code = _dispatch(args)
    except InputError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    except ResourceBoundError as exc:
        print(f"error: resource bound exceeded: {exc}", file=stderr)
        return EXIT_BOUND
    stdout.write(render(args.command, payload, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())

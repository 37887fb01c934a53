"""Command-line front end: evaluate any implemented function, verify a
file of integral-identity cases, or generate a parameter-grid case file.

Exit codes: 0 success / all cases pass, 1 verification failures,
2 usage, parse or domain errors, 3 convergence failure in ``eval``.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

from . import __version__
from .errors import (
    CaseParseError,
    ConvergenceError,
    DomainError,
    StruveintError,
)
from .identities import (
    DEFAULT_TOLERANCE,
    THEOREM1,
    THEOREM2,
    IntegralCase,
    VerificationReport,
    verify_case,
)
from .lauricella import LauricellaSpec, lauricella_eval_full
from .quadrature import QuadControl, oberhettinger_closed_form
from .series import (
    FoxWrightSpec,
    SeriesControl,
    StruveParams,
    fox_wright_full,
    pfq_full,
    struve_h_paper_full,
    struve_l_paper_full,
    struve_w_full,
)

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RE_REAL = re.compile(rf"^({_NUM})$")
_RE_FULL = re.compile(rf"^({_NUM})([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")
_RE_IMAG = re.compile(rf"^({_NUM})i$")


def parse_complex(text, field: str = "value") -> complex:
    """Parse '1.5', '1.5+0.25i', '0.25i' or an {re, im} mapping."""
    if isinstance(text, (int, float)):
        return complex(text)
    if isinstance(text, dict):
        try:
            return complex(float(text.get("re", 0.0)), float(text.get("im", 0.0)))
        except (TypeError, ValueError):
            raise CaseParseError(f"{field}: malformed complex object {text!r}")
    text = str(text).strip()
    m = _RE_REAL.match(text)
    if m:
        return complex(float(m.group(1)), 0.0)
    m = _RE_FULL.match(text)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _RE_IMAG.match(text)
    if m:
        return complex(0.0, float(m.group(1)))
    raise CaseParseError(f"{field}: cannot parse complex literal {text!r}")


def format_complex(z: complex) -> str:
    """Inverse of parse_complex ('re' or 're+imi', no spaces).

    Parts use the shortest representation that round-trips the double
    exactly (never more than 17 significant digits).
    """
    z = complex(z)
    if z.imag == 0:
        return repr(z.real)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _sci(z: complex) -> str:
    """Value rendering for eval output: 15 digits after the point."""
    if z.imag == 0:
        return f"{z.real:.15e}"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.15e}{sign}{abs(z.imag):.15e}i"


def _parse_kv(pairs) -> dict[str, str]:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise CaseParseError(f"parameter {item!r} is not of the form key=value")
        key, _, value = item.partition("=")
        out[key] = value
    return out


def _need(params: dict, names, function: str):
    missing = [n for n in names if n not in params]
    if missing:
        raise CaseParseError(f"{function}: missing parameter(s) {', '.join(missing)}")


def _parse_pairs(text: str, field: str):
    """'a:A,b:B' -> ((a, A), ...) for Fox-Wright parameter blocks."""
    if not text:
        return ()
    out = []
    for chunk in text.split(","):
        if ":" not in chunk:
            raise CaseParseError(f"{field}: entry {chunk!r} is not of the form param:weight")
        param, _, weight = chunk.partition(":")
        out.append((parse_complex(param, field), float(weight)))
    return tuple(out)


def _parse_list(text: str, field: str):
    if not text:
        return ()
    return tuple(parse_complex(v, field) for v in text.split(","))


def _series_control(args) -> SeriesControl:
    kw = {}
    if args.max_terms is not None:
        kw["max_terms"] = args.max_terms
    return SeriesControl(**kw)


def _quad_control(args) -> QuadControl:
    kw = {}
    if args.quad_tol is not None:
        kw["rel_tol"] = args.quad_tol
    return QuadControl(**kw)


def _load_lauricella_spec(path: str) -> LauricellaSpec:
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    try:
        return LauricellaSpec(
            global_upper=[(parse_complex(a, "global_upper"), tuple(e)) for a, e in raw["global_upper"]],
            global_lower=[(parse_complex(c, "global_lower"), tuple(e)) for c, e in raw["global_lower"]],
            per_var_upper=[
                [(parse_complex(b, "per_var_upper"), e) for b, e in row] for row in raw["per_var_upper"]
            ],
            per_var_lower=[
                [(parse_complex(d, "per_var_lower"), e) for d, e in row] for row in raw["per_var_lower"]
            ],
            n=int(raw["n"]),
        )
    except KeyError as exc:
        raise CaseParseError(f"lauricella spec file: missing field {exc}")


def cmd_eval(args) -> int:
    params = _parse_kv(args.params)
    ctl = _series_control(args)
    name = args.function
    diag = ""
    if name in ("struve_h", "struve_l", "struve_w"):
        if name == "struve_w":
            _need(params, ("p", "b", "c", "z"), name)
            prm = StruveParams(
                parse_complex(params["p"], "p"),
                parse_complex(params["b"], "b"),
                parse_complex(params["c"], "c"),
            )
            res = struve_w_full(prm, float(params["z"]), ctl)
        else:
            _need(params, ("nu", "z"), name)
            runner = struve_h_paper_full if name == "struve_h" else struve_l_paper_full
            res = runner(parse_complex(params["nu"], "nu"), float(params["z"]), ctl)
        value = res.value
        diag = f"terms={res.terms} tail_estimate={res.tail_estimate:.3e}"
    elif name == "fox_wright":
        _need(params, ("z",), name)
        spec = FoxWrightSpec(
            upper=_parse_pairs(params.get("upper", ""), "upper"),
            lower=_parse_pairs(params.get("lower", ""), "lower"),
        )
        res = fox_wright_full(spec, parse_complex(params["z"], "z"), ctl)
        value = res.value
        diag = f"terms={res.terms} tail_estimate={res.tail_estimate:.3e} delta={spec.delta:g}"
    elif name == "pfq":
        _need(params, ("z",), name)
        res = pfq_full(
            _parse_list(params.get("upper", ""), "upper"),
            _parse_list(params.get("lower", ""), "lower"),
            parse_complex(params["z"], "z"),
            ctl,
        )
        value = res.value
        diag = f"terms={res.terms} tail_estimate={res.tail_estimate:.3e}"
    elif name == "lauricella":
        _need(params, ("spec", "z"), name)
        spec = _load_lauricella_spec(params["spec"])
        res = lauricella_eval_full(spec, _parse_list(params["z"], "z"), ctl)
        value = res.value
        diag = f"shells={res.shells} terms={res.terms} tail_estimate={res.tail_estimate:.3e}"
    elif name == "oberhettinger":
        _need(params, ("a", "mu", "lambda"), name)
        value = oberhettinger_closed_form(
            float(params["a"]),
            parse_complex(params["mu"], "mu"),
            parse_complex(params["lambda"], "lambda"),
        )
        diag = "closed form"
    else:
        raise CaseParseError(f"unknown function {name!r}")
    print(_sci(value))
    if diag:
        print(f"# {diag}")
    return 0


def case_to_dict(case: IntegralCase) -> dict:
    return {
        "variant": case.variant,
        "a": case.a,
        "lambda": format_complex(case.lam),
        "mu": format_complex(case.mu),
        "b": format_complex(case.b),
        "c": format_complex(case.c),
        "p": [format_complex(v) for v in case.p],
        "y": list(case.y),
        "n": case.n,
    }


def case_from_dict(raw: dict, index: int) -> IntegralCase:
    """Structural parsing; raises CaseParseError naming the bad field.

    Semantic violations of the identity's validity conditions are left
    to IntegralCase itself (DomainError), so a verify run can report
    them as failed cases instead of refusing the file.
    """
    where = f"cases[{index}]"
    if not isinstance(raw, dict):
        raise CaseParseError(f"{where}: expected an object")
    for fld in ("variant", "a", "lambda", "mu", "b", "c", "p", "y"):
        if fld not in raw:
            raise CaseParseError(f"{where}.{fld}: missing")
    variant = str(raw["variant"]).lower()
    try:
        a = float(raw["a"])
        y = tuple(float(v) for v in raw["y"])
    except (TypeError, ValueError) as exc:
        raise CaseParseError(f"{where}.a/.y: {exc}")
    p_raw = raw["p"] if isinstance(raw["p"], list) else [raw["p"]]
    p = tuple(parse_complex(v, f"{where}.p") for v in p_raw)
    return IntegralCase(
        variant=variant,
        a=a,
        lam=parse_complex(raw["lambda"], f"{where}.lambda"),
        mu=parse_complex(raw["mu"], f"{where}.mu"),
        b=parse_complex(raw["b"], f"{where}.b"),
        c=parse_complex(raw["c"], f"{where}.c"),
        p=p,
        y=y,
        n=int(raw.get("n", 0)),
    )


def report_to_dict(rep: VerificationReport, raw_case: dict) -> dict:
    def cpx(z: complex) -> dict:
        return {"re": z.real, "im": z.imag}

    return {
        "case": raw_case,
        "lhs": cpx(rep.lhs),
        "rhs": cpx(rep.rhs),
        "abs_err": rep.abs_err,
        "rel_err": rep.rel_err,
        "pass": rep.passed,
        "tolerance": rep.tolerance_used,
        "reason": rep.reason,
        "diagnostics": {"quad": _plain(rep.lhs_diag), "series": _plain(rep.rhs_diag)},
        "wall_clock_s": rep.wall_clock_s,
    }


def _plain(obj):
    """Coerce numpy scalars and tuples into JSON-clean values."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [_plain(v) for v in obj]
    if isinstance(obj, bool):
        return obj
    if hasattr(obj, "item"):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _json_default(obj):
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"not JSON serializable: {obj!r}")


def _write_csv(entries, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(
        [
            "index", "variant", "n", "a", "lambda", "mu", "b", "c", "p", "y",
            "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "pass",
        ]
    )
    for i, entry in enumerate(entries):
        case = entry["case"]
        writer.writerow(
            [
                i,
                case.get("variant", ""),
                case.get("n", ""),
                case.get("a", ""),
                case.get("lambda", ""),
                case.get("mu", ""),
                case.get("b", ""),
                case.get("c", ""),
                ";".join(str(v) for v in case.get("p", [])),
                ";".join(str(v) for v in case.get("y", [])),
                entry["lhs"]["re"],
                entry["lhs"]["im"],
                entry["rhs"]["re"],
                entry["rhs"]["im"],
                entry["abs_err"],
                entry["rel_err"],
                entry["pass"],
            ]
        )


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise CaseParseError(f"cannot read case file {args.input}: {exc}")
    if not isinstance(document, dict) or "cases" not in document:
        raise CaseParseError("case file must be an object with a 'cases' list")

    controls = document.get("controls", {})
    tol = args.tol if args.tol is not None else float(controls.get("tol", DEFAULT_TOLERANCE))
    qkw = {}
    if args.quad_tol is not None:
        qkw["rel_tol"] = args.quad_tol
    elif "quad_rel_tol" in controls:
        qkw["rel_tol"] = float(controls["quad_rel_tol"])
    qctl = QuadControl(**qkw)
    skw = {}
    if args.max_terms is not None:
        skw["max_terms"] = args.max_terms
    elif "max_terms" in controls:
        skw["max_terms"] = int(controls["max_terms"])
    if "series_rel_tol" in controls:
        skw["rel_tol"] = float(controls["series_rel_tol"])
    sctl = SeriesControl(**skw)

    records = document["cases"]
    parsed: list[tuple[dict, IntegralCase | None, str | None]] = []
    for i, raw in enumerate(records):
        try:
            parsed.append((raw, case_from_dict(raw, i), None))
        except CaseParseError:
            raise
        except DomainError as exc:
            parsed.append((raw, None, f"condition violated: {exc}"))

    def run(item):
        raw, case, problem = item
        start = time.perf_counter()
        if case is None:
            rep = VerificationReport(
                case=None, lhs=complex("nan"), rhs=complex("nan"),
                abs_err=math.inf, rel_err=math.inf, passed=False,
                tolerance_used=tol, reason=problem,
                wall_clock_s=time.perf_counter() - start,
            )
            return raw, rep
        return raw, verify_case(case, qctl, sctl, tol)

    if args.jobs > 1 and len(parsed) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run, parsed))
    else:
        results = [run(item) for item in parsed]

    entries = [report_to_dict(rep, raw) for raw, rep in results]
    passed = sum(1 for _, rep in results if rep.passed)
    report = {
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "cases": entries,
        "summary": {"total": len(entries), "passed": passed, "failed": len(entries) - passed},
    }
    if args.format == "csv":
        import io

        buffer = io.StringIO()
        _write_csv(entries, buffer)
        _emit(buffer.getvalue(), args.output)
    else:
        _emit(json.dumps(report, indent=2, default=_json_default) + "\n", args.output)
    print(
        f"verified {len(entries)} case(s): {passed} passed, {len(entries) - passed} failed",
        file=sys.stderr,
    )
    return 0 if passed == len(entries) else 1


def _scalar_choices(text: str, field: str) -> list[complex]:
    """'v' | 'v1,v2,...' | 'start:end:step' -> list of choices."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise CaseParseError(f"{field}: range must be start:end:step")
        try:
            start, end, step = (float(v) for v in parts)
        except ValueError:
            raise CaseParseError(f"{field}: range bounds must be real numbers")
        if step <= 0 or end < start:
            raise CaseParseError(f"{field}: need start <= end and step > 0")
        out = []
        v = start
        while v <= end + 1e-9 * max(1.0, abs(end)):
            out.append(complex(v))
            v += step
        return out
    return [parse_complex(v, field) for v in text.split(",")]


def _vector_choices(text: str, field: str, n: int) -> list[tuple[complex, ...]]:
    """';'-separated vectors of length n; scalar-choice syntax when n = 1."""
    if n == 1 and ";" not in text:
        return [(v,) for v in _scalar_choices(text, field)]
    out = []
    for chunk in text.split(";"):
        vec = tuple(parse_complex(v, field) for v in chunk.split(","))
        if len(vec) != n:
            raise CaseParseError(f"{field}: vector {chunk!r} must have length n = {n}")
        out.append(vec)
    return out


def cmd_grid(args) -> int:
    n = args.n
    variant = args.variant
    mus = _scalar_choices(args.mu, "--mu")
    lams = _scalar_choices(getattr(args, "lambda"), "--lambda")
    bs = _scalar_choices(args.b, "--b")
    cs = _scalar_choices(args.c, "--c")
    a_values = _scalar_choices(args.a, "--a")
    ps = _vector_choices(args.p, "--p", n)
    ys = _vector_choices(args.y, "--y", n)
    for a in a_values:
        if a.imag != 0:
            raise CaseParseError("--a: must be real and positive")
    for vec in ys:
        if any(v.imag != 0 for v in vec):
            raise CaseParseError("--y: entries must be real and positive")

    cases = []
    skipped = 0
    for mu in mus:
        for lam in lams:
            for b in bs:
                for c in cs:
                    for a in a_values:
                        for p in ps:
                            for y in ys:
                                try:
                                    case = IntegralCase(
                                        variant=variant,
                                        a=a.real,
                                        lam=lam,
                                        mu=mu,
                                        b=b,
                                        c=c,
                                        p=p,
                                        y=tuple(v.real for v in y),
                                        n=n,
                                    )
                                except DomainError:
                                    skipped += 1
                                    continue
                                cases.append(case_to_dict(case))
    document = {"cases": cases}
    _emit(json.dumps(document, indent=2) + "\n", args.output)
    message = f"generated {len(cases)} case(s), skipped {skipped} condition-violating combination(s)"
    if not cases:
        message = "warning: every combination violates the identity's conditions; " + message
    print(message, file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="verification relative tolerance")
    common.add_argument("--quad-tol", type=float, default=None, help="quadrature relative tolerance")
    common.add_argument("--max-terms", type=int, default=None, help="series term budget")
    common.add_argument("--output", default=None, help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="cases evaluated concurrently")

    parser = argparse.ArgumentParser(
        prog="struveint",
        description="Evaluate the library's special functions and verify the integral identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate one function")
    p_eval.add_argument(
        "function",
        choices=("struve_h", "struve_l", "struve_w", "fox_wright", "pfq", "lauricella", "oberhettinger"),
    )
    p_eval.add_argument("params", nargs="*", help="key=value parameters; complex as 're' or 're+imi'")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", parents=[common], help="verify a case file")
    p_verify.add_argument("input", help="JSON case file")
    p_verify.set_defaults(func=cmd_verify)

    p_grid = sub.add_parser("grid", parents=[common], help="generate a Cartesian-product case file")
    p_grid.add_argument("--variant", required=True, choices=(THEOREM1, THEOREM2))
    p_grid.add_argument("--n", type=int, default=1)
    p_grid.add_argument("--mu", required=True)
    p_grid.add_argument("--lambda", required=True)
    p_grid.add_argument("--p", required=True)
    p_grid.add_argument("--b", required=True)
    p_grid.add_argument("--c", required=True)
    p_grid.add_argument("--a", required=True)
    p_grid.add_argument("--y", required=True)
    p_grid.set_defaults(func=cmd_grid)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (CaseParseError, StruveintError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

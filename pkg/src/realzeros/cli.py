"""Batch command-line surface: eval, verify, kernels, zeros, jensen.

Reports go to stdout (or --out) as versioned JSON or fixed-header CSV.
Exit codes: 0 all checks pass, 1 a proved-claim tolerance failed, 2
invalid parameters, 3 numerical failure, 4 a conjecture-level finding
(currently: a confirmed negative minimum among the g-kernel's even
Taylor coefficients). Identical configurations produce byte-identical
JSON apart from the wall-time field.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, is_dataclass

from .errors import NumericalError, ParameterError
from .functions import FunctionId, evaluate
from .identities import (
    MellinBarnesSpec,
    verify_derivative_identities,
    verify_F_square_decomposition,
    verify_F_square_expansion,
    verify_K_square_decomposition,
    verify_mellin_barnes,
    verify_xistar_k_sum,
)
from .kernels import confirm_coefficient, f_taylor, g_taylor, scan_kernel_properties
from .zeros import (
    CONTROL_Z2P1,
    Rectangle,
    certify_reality,
    count_zeros_rectangle,
    jensen_scan,
    scan_real_zeros,
)

__all__ = ["main", "RunConfig", "RunReport"]

_EXIT_PASS = 0
_EXIT_FAIL = 1
_EXIT_PARAMS = 2
_EXIT_NUMERIC = 3
_EXIT_FINDING = 4

_IDENTITY_TOLS = {
    "kp": 1e-8,
    "mellin": 1e-6,
    "f2": 1e-8,
    "f3": 1e-6,
    "deriv": 1e-6,
    "xistar": 1e-9,
}

_COEFF_FLOOR = {"f": -1e-12, "g": -1e-10}


@dataclass(frozen=True)
class RunConfig:
    """Echo of one resolved invocation; embedded verbatim in the report."""

    command: str
    params: dict
    fmt: str
    out: str | None


@dataclass
class RunReport:
    config: RunConfig
    rows: list
    summary: dict
    wall_time_s: float
    exit_code: int


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # grid tokens such as -2:2:0.5 must parse as values, not options;
        # the stock matcher only exempts plain negative numbers
        self._negative_number_matcher = re.compile(r"^-[\d.]")


def _scalar(tok) -> float:
    """One numeric token; the literal '2pi' means the binary64 of 2*pi."""
    if isinstance(tok, (int, float)):
        return float(tok)
    t = str(tok).strip().lower()
    if t == "2pi":
        return 2.0 * math.pi
    try:
        return float(t)
    except ValueError:
        raise ParameterError("cannot parse number %r" % (tok,)) from None


def _expand(tokens) -> list:
    """Numbers and lo:hi:step ranges (endpoints kept within half a step)."""
    out = []
    for tok in tokens:
        s = str(tok)
        if ":" in s:
            parts = s.split(":")
            if len(parts) != 3:
                raise ParameterError("grid syntax is lo:hi:step, got %r" % s)
            lo, hi, st = (_scalar(p) for p in parts)
            if not (st > 0.0 and math.isfinite(st)):
                raise ParameterError("grid step must be positive in %r" % s)
            if hi < lo:
                raise ParameterError("grid needs hi >= lo in %r" % s)
            n = int(math.floor((hi - lo) / st + 0.5))
            out.extend(lo + i * st for i in range(n + 1))
        else:
            out.append(_scalar(s))
    if not out:
        raise ParameterError("empty grid")
    return out


def _threads() -> int:
    raw = os.environ.get("REALZEROS_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError("REALZEROS_THREADS must be an integer") from None
    return max(1, n)


def _map_ordered(fn, items):
    n = _threads()
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _build_fid(ns, allow_control=False):
    name = ns.fn
    if name == "control-z2p1":
        if not allow_control:
            raise ParameterError(
                "the synthetic control is only meaningful for zeros/jensen"
            )
        return CONTROL_Z2P1

    def need(flag):
        v = getattr(ns, flag, None)
        if v is None:
            raise ParameterError("--fn %s requires --%s" % (name, flag))
        return v

    if name == "k":
        return FunctionId.k_order(need("a"))
    if name == "f":
        return FunctionId.f(need("a"), need("c"))
    if name == "xistar":
        return FunctionId.xi_star()
    if name == "xistarstar":
        return FunctionId.xi_star_star()
    if name == "xigeneral":
        return FunctionId.xi_general(
            need("A"), need("B"), need("a"), need("b"), need("c")
        )
    if name == "riemannxi":
        return FunctionId.riemann_xi()
    raise ParameterError("unknown function %r" % (name,))


def _plain(obj):
    if type(obj).__module__ == "numpy":
        obj = obj.item()
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: _plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


# ---------------------------------------------------------------------------
# commands


def cmd_eval(ns) -> RunReport:
    fid = _build_fid(ns)
    xs = []
    if ns.x:
        xs.extend(_expand(ns.x))
    if ns.z is not None:
        xs.extend(_expand(ns.z))
    if not xs:
        raise ParameterError("eval needs --x or --z")

    def one(x):
        v = complex(evaluate(fid, x))
        row = {"x": x, "value": v.real}
        if v.imag != 0.0:
            row["value_imag"] = v.imag
        return row

    rows = _map_ordered(one, xs)
    summary = {"pass": len(rows), "fail": 0, "finding": 0}
    return _finish(ns, "eval", rows, summary, _EXIT_PASS)


def _verify_points(ns):
    ident = ns.identity
    a_list = _expand(ns.a) if ns.a else [1.0]
    x_list = _expand(ns.x) if ns.x else [1.0]
    c_list = _expand(ns.c) if ns.c else [0.0]
    if ident == "xistar":
        y_list = _expand(ns.y) if ns.y else [0.0]
        return [(x, y) for x in x_list for y in y_list]
    y_list = _expand(ns.y) if ns.y else [0.5]
    for a in a_list:
        if not a > 0.0:
            raise ParameterError("every a must be positive, got %g" % a)
    if ident in ("f2", "f3"):
        return [
            (a, c, x, y)
            for a in a_list
            for c in c_list
            for x in x_list
            for y in y_list
        ]
    return [(a, x, y) for a in a_list for x in x_list for y in y_list]


def cmd_verify(ns) -> RunReport:
    ident = ns.identity
    tol = ns.tol if ns.tol is not None else _IDENTITY_TOLS[ident]
    points = _verify_points(ns)
    mb = None
    if ident == "mellin":
        if ns.cline is None:
            raise ParameterError("--identity mellin requires --cline")
        mb = MellinBarnesSpec(c_line=ns.cline, height=ns.height, step=ns.cstep)
        for _a, _x, y in points:
            if not mb.c_line < -abs(y):
                raise ParameterError(
                    "contour abscissa %g must lie left of -|y| = %g"
                    % (mb.c_line, -abs(y))
                )

    def one(pt):
        if ident == "kp":
            a, x, y = pt
            return [verify_K_square_decomposition(a, x, y, tol=tol)]
        if ident == "mellin":
            a, x, y = pt
            return [verify_mellin_barnes(a, x, y, mb, tol=tol)]
        if ident == "f2":
            a, c, x, y = pt
            return [verify_F_square_expansion(a, c, x, y, tol=tol)]
        if ident == "f3":
            a, c, x, y = pt
            return [verify_F_square_decomposition(a, c, x, y, tol=tol)]
        if ident == "deriv":
            a, x, y = pt
            return list(verify_derivative_identities(a, x, y, tol=tol))
        x, y = pt
        return [verify_xistar_k_sum(complex(x, y), tol=tol)]

    reports = [r for chunk in _map_ordered(one, points) for r in chunk]
    rows = [_report_row(r) for r in reports]
    n_pass = sum(1 for r in reports if r.passed)
    n_fail = len(reports) - n_pass
    code = _EXIT_PASS if n_fail == 0 else _EXIT_FAIL
    summary = {"pass": n_pass, "fail": n_fail, "finding": 0}
    return _finish(ns, "verify", rows, summary, code)


def _report_row(r):
    return {
        "identity": r.identity_name,
        "a": r.inputs.get("a"),
        "c": r.inputs.get("c", r.inputs.get("c_line")),
        "x": r.inputs.get("x"),
        "y": r.inputs.get("y"),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "abs_residual": r.abs_residual,
        "rel_residual": r.rel_residual,
        "tol": r.tolerance_used,
        "pass": r.passed,
    }


def cmd_kernels(ns) -> RunReport:
    which = ns.which
    t_list = _expand(ns.t) if ns.t else _expand(["0.1:0.9:0.1"])
    c_list = _expand(ns.c) if ns.c is not None else ([1.0] if which == "g" else [0.0])
    y_list = _expand(ns.y) if ns.y else _expand(["0.25:3:0.25"])
    rep = scan_kernel_properties(
        t_list, c_list, y_list, which=which, taylor_order=ns.order
    )
    norm = max(1.0, rep.max_abs_coefficient)
    checks = {
        "min_value_ok": bool(
            rep.min_value >= -1e-10 * max(1.0, abs(rep.min_value))
        ),
        "second_difference_ok": bool(rep.min_second_difference >= -1e-8 * norm),
        "odd_coefficients_ok": bool(rep.odd_coefficient_max_abs <= 1e-13 * norm),
        "trichotomy_ok": rep.trichotomy_violations == 0,
    }
    coeff_floor = _COEFF_FLOOR[which] * norm
    confirmation = None
    finding = False
    if rep.min_taylor_coefficient < coeff_floor:
        k, t, c = rep.min_taylor_location
        agrees, oracle = confirm_coefficient(
            which, t, c, k, rep.min_taylor_coefficient
        )
        confirmation = {"k": k, "t": t, "c": c, "oracle": oracle, "agrees": agrees}
        if which == "f":
            # these coefficients are proved nonnegative, so any dip fails
            checks["coefficients_ok"] = False
        elif agrees and oracle < coeff_floor:
            # a reproducible counterexample to the open positivity question
            checks["coefficients_ok"] = True
            finding = True
        else:
            # the two routes disagree: a defect, not a discovery
            checks["coefficients_ok"] = False
    else:
        checks["coefficients_ok"] = True

    row = _plain(rep)
    row["checks"] = checks
    if confirmation is not None:
        row["confirmation"] = confirmation
    rows = [row]
    if ns.emit_coeffs:
        for t in t_list:
            for c in c_list if which == "g" else [0.0]:
                series = (
                    f_taylor(t, ns.order)
                    if which == "f"
                    else g_taylor(t, c, ns.order)
                )
                for k, v in enumerate(series.coeffs):
                    rows.append({"t": t, "c": c, "k": k, "coefficient": v})

    failed = not all(checks.values())
    if failed:
        code = _EXIT_FAIL
    elif finding:
        code = _EXIT_FINDING
    else:
        code = _EXIT_PASS
    summary = {
        "pass": 0 if failed or finding else 1,
        "fail": 1 if failed else 0,
        "finding": 1 if finding else 0,
    }
    return _finish(ns, "kernels", rows, summary, code)


def cmd_zeros(ns) -> RunReport:
    fid = _build_fid(ns, allow_control=True)
    mode = ns.mode
    if mode == "scan":
        if not ns.x or len(ns.x) != 2:
            raise ParameterError("zeros scan needs --x LO HI")
        lo, hi = _scalar(ns.x[0]), _scalar(ns.x[1])
        zl = scan_real_zeros(fid, lo, hi, ns.step)
        rows = [{"location": loc, "bracket_width": w} for loc, w in zl.zeros]
        rows.extend({"suspect_touch": s} for s in zl.suspect_touches)
        summary = {
            "pass": len(zl.zeros),
            "fail": 0,
            "finding": len(zl.suspect_touches),
        }
        return _finish(ns, "zeros", rows, summary, _EXIT_PASS)
    if not ns.rect or len(ns.rect) != 4:
        raise ParameterError("zeros %s needs --rect X0 X1 Y0 Y1" % mode)
    rect = Rectangle(*[_scalar(v) for v in ns.rect])
    if mode == "count":
        n = count_zeros_rectangle(fid, rect)
        rows = [{"rect": _plain(rect), "count": n}]
        summary = {"pass": 1, "fail": 0, "finding": 0}
        return _finish(ns, "zeros", rows, summary, _EXIT_PASS)
    cert = certify_reality(fid, rect, ns.step)
    rows = [_plain(cert)]
    ok = cert.certified
    code = _EXIT_PASS if ok else _EXIT_FAIL
    summary = {"pass": 1 if ok else 0, "fail": 0 if ok else 1, "finding": 0}
    return _finish(ns, "zeros", rows, summary, code)


def cmd_jensen(ns) -> RunReport:
    fid = _build_fid(ns, allow_control=True)
    xs = _expand(ns.x) if ns.x else [0.0]
    ys = _expand(ns.y) if ns.y else [0.0]
    rep = jensen_scan(fid, xs, ys)
    tol = ns.tol if ns.tol is not None else 1e-8
    floor = -tol * max(rep.scale, 1e-300)
    ok = rep.min_first >= floor and rep.min_second >= floor
    row = _plain(rep)
    row["tolerance_floor"] = floor
    row["pass"] = ok
    code = _EXIT_PASS if ok else _EXIT_FAIL
    summary = {"pass": 1 if ok else 0, "fail": 0 if ok else 1, "finding": 0}
    return _finish(ns, "jensen", [row], summary, code)


# ---------------------------------------------------------------------------
# report plumbing

_CSV_HEADERS = {
    "eval": ["x", "value"],
    "verify": [
        "identity",
        "a",
        "c",
        "x",
        "y",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "tol",
        "pass",
    ],
}


def _config_echo(ns, command) -> RunConfig:
    skip = {"func", "config", "format", "out"}
    params = {}
    for k, v in sorted(vars(ns).items()):
        if k in skip or v is None:
            continue
        params[k] = v
    return RunConfig(command=command, params=params, fmt=ns.format, out=ns.out)


def _finish(ns, command, rows, summary, code) -> RunReport:
    return RunReport(
        config=_config_echo(ns, command),
        rows=rows,
        summary=summary,
        wall_time_s=0.0,
        exit_code=code,
    )


def _emit(report: RunReport) -> str:
    cfg = report.config
    if cfg.fmt == "csv":
        headers = _CSV_HEADERS.get(cfg.command)
        if headers is None:
            headers = sorted({k for row in report.rows for k in row})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        for row in report.rows:
            out = []
            for h in headers:
                v = row.get(h, "")
                if isinstance(v, bool):
                    v = "true" if v else "false"
                elif isinstance(v, float):
                    v = "%.17g" % v
                elif v is None:
                    v = ""
                elif isinstance(v, (dict, list, tuple)):
                    v = json.dumps(_plain(v), sort_keys=True)
                out.append(v)
            w.writerow(out)
        return buf.getvalue()
    doc = {
        "schema": "1",
        "command": cfg.command,
        "config": _plain(cfg),
        "rows": _plain(report.rows),
        "summary": _plain(report.summary),
        "wall_time_s": report.wall_time_s,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(report: RunReport):
    text = _emit(report)
    if report.config.out:
        with open(report.config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None, help="JSON file mirroring flags")


def _add_fn(p):
    p.add_argument(
        "--fn",
        required=True,
        choices=(
            "k",
            "f",
            "xistar",
            "xistarstar",
            "xigeneral",
            "riemannxi",
            "control-z2p1",
        ),
    )
    p.add_argument("--a", type=_scalar, default=None)
    p.add_argument("--b", type=_scalar, default=None)
    p.add_argument("--c", type=_scalar, default=None)
    p.add_argument("--A", type=_scalar, default=None)
    p.add_argument("--B", type=_scalar, default=None)


def _build_parser():
    ap = _Parser(
        prog="realzeros",
        description="evaluate, cross-verify, and certify the package's "
        "entire functions",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="tabulate one function on a grid")
    _add_fn(p)
    p.add_argument("--x", nargs="+", default=None, help="grid (numbers or lo:hi:step)")
    p.add_argument("--z", nargs="+", default=None, help="explicit points")
    _add_common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="dual-route identity checks on a grid")
    p.add_argument(
        "--identity",
        required=True,
        choices=("kp", "mellin", "f2", "f3", "deriv", "xistar"),
    )
    p.add_argument("--a", nargs="+", default=None)
    p.add_argument("--c", nargs="+", default=None)
    p.add_argument("--x", nargs="+", default=None)
    p.add_argument("--y", nargs="+", default=None)
    p.add_argument("--cline", type=_scalar, default=None)
    p.add_argument("--height", type=_scalar, default=60.0)
    p.add_argument("--cstep", type=_scalar, default=0.05)
    p.add_argument("--tol", type=_scalar, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "kernels", help="scan kernel positivity and Taylor coefficients"
    )
    p.add_argument("--which", choices=("f", "g"), default="f")
    p.add_argument("--t", nargs="+", default=None)
    p.add_argument("--c", nargs="+", default=None)
    p.add_argument("--y", nargs="+", default=None)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--emit-coeffs", action="store_true", dest="emit_coeffs")
    _add_common(p)
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("zeros", help="scan, count, or certify zeros")
    p.add_argument("mode", choices=("scan", "count", "certify"))
    _add_fn(p)
    p.add_argument("--x", nargs="+", default=None, help="scan interval LO HI")
    p.add_argument("--rect", nargs=4, default=None, metavar=("X0", "X1", "Y0", "Y1"))
    p.add_argument("--step", type=_scalar, default=0.05)
    _add_common(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("jensen", help="scan the two boundary-curvature signs")
    _add_fn(p)
    p.add_argument("--x", nargs="+", default=None)
    p.add_argument("--y", nargs="+", default=None)
    p.add_argument("--tol", type=_scalar, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_jensen)
    return ap


def _inject_config(argv):
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        return argv  # argparse reports the missing value itself
    with open(argv[i + 1]) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ParameterError("config file must hold a JSON object")
    extra = []
    for k in sorted(data):
        v = data[k]
        flag = "--" + str(k).replace("_", "-")
        if isinstance(v, bool):
            if v:
                extra.append(flag)
            continue
        extra.append(flag)
        vals = v if isinstance(v, list) else [v]
        extra.extend(str(t) for t in vals)
    # positional tokens (subcommand, zeros mode) stay first so argparse
    # still sees them; explicit flags follow the config tokens and win
    split = len(argv)
    for idx, tok in enumerate(argv):
        if tok.startswith("-"):
            split = idx
            break
    return argv[:split] + extra + argv[split:]


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.time()
    try:
        argv = _inject_config(argv)
        ns = _build_parser().parse_args(argv)
        report = ns.func(ns)
        report.wall_time_s = time.time() - started
        _write(report)
        return report.exit_code
    except ParameterError as exc:
        print("parameter error: %s" % exc, file=sys.stderr)
        return _EXIT_PARAMS
    except NumericalError as exc:
        print("numerical failure: %s" % exc, file=sys.stderr)
        return _EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

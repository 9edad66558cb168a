"""Command-line front end.

Exit codes: 0 converged, 1 domain or evaluation error, 2 order cap reached
without the requested accuracy, 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import bailey as bailey_mod
from .distributions import FAMILIES, LerchDistribution
from .driver import ORDER_CAP, AccelerationResult, evaluate, format_trace
from .errors import CNCTError
from .lerch import evaluate_lerch
from .numerics import PrecisionContext
from .series import CATALOG_NAMES, catalog, plate_converges

EXIT_OK, EXIT_ERROR, EXIT_ORDER_CAP, EXIT_USAGE = 0, 1, 2, 64
DEEP_DIGITS = 60


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def decimal_arg(text: str) -> str:
    """Validate a decimal literal but keep the text, so big kernels see exact input."""
    try:
        float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None
    return text


def make_context(args) -> PrecisionContext:
    mode = args.precision or os.environ.get("CNCT_PRECISION")
    kw = dict(acc=args.acc, imax=args.imax)
    if not mode:
        return PrecisionContext(**kw)
    if mode == "native":
        return PrecisionContext(kernel_kind="native", **kw)
    if mode.startswith("big"):
        _, _, digits = mode.partition(":")
        if digits:
            try:
                return PrecisionContext(kernel_kind="big", working_digits=int(digits), **kw)
            except ValueError:
                raise UsageError(f"bad precision {mode!r}") from None
        return PrecisionContext(kernel_kind="big", **kw)
    raise UsageError(f"precision must be native or big:<digits>, got {mode!r}")


def fmt(ctx: PrecisionContext, x) -> str:
    if x is None:
        return ""
    return ctx.kernel.fmt(x, ctx.acc + 2)


def diagnostics(res: AccelerationResult) -> dict:
    return {
        "order_used": str(res.order_used),
        "terms_evaluated": str(res.terms_evaluated),
        "error_estimate": f"{res.error_estimate:.6g}",
        "terminated": res.terminated,
    }


def envelope(command, params, result, diag, fmt_name="json") -> str:
    return json.dumps({"command": command, "parameters": params, "result": result,
                       "diagnostics": diag, "format": fmt_name}, indent=2)


def _emit_value(args, ctx, res: AccelerationResult, params: dict) -> int:
    value = fmt(ctx, res.value)
    if args.json:
        print(envelope(args.command, params, value, diagnostics(res)))
    else:
        if getattr(args, "trace", False):
            print("order  T_CNC  x_n  error_estimate")
            print(format_trace(res, ctx.kernel, ctx.acc + 2))
        print(value)
        d = diagnostics(res)
        print(f"# order={d['order_used']} terms={d['terms_evaluated']} "
              f"error_estimate={d['error_estimate']} terminated={d['terminated']}",
              file=sys.stderr)
    return EXIT_ORDER_CAP if res.terminated == ORDER_CAP else EXIT_OK


def cmd_lerch(args) -> int:
    ctx = make_context(args)
    res = evaluate_lerch(args.z, args.s, args.v, ctx)
    return _emit_value(args, ctx, res, {"z": args.z, "s": args.s, "v": args.v,
                                        "acc": str(ctx.acc), "kernel": ctx.kernel_kind})


def cmd_zeta(args) -> int:
    ctx = make_context(args)
    res = evaluate_lerch(1, args.s, args.v, ctx)
    return _emit_value(args, ctx, res, {"s": args.s, "v": args.v, "acc": str(ctx.acc),
                                        "kernel": ctx.kernel_kind})


def parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise UsageError(f"parameter {part!r} is not key=value")
            decimal_arg(val)
            out[key.strip()] = val.strip()
    return out


def cmd_accelerate(args) -> int:
    ctx = make_context(args)
    params = parse_params(args.params)
    if args.series not in CATALOG_NAMES:
        raise CNCTError(f"unknown series {args.series!r}; catalog: {', '.join(CATALOG_NAMES)}")
    src = catalog(args.series, params, ctx)
    res = evaluate(src, ctx)
    return _emit_value(args, ctx, res, {"series": args.series, **params, "acc": str(ctx.acc),
                                        "kernel": ctx.kernel_kind})


def cmd_plate(args) -> int:
    ctx = make_context(args)
    params = {"p": args.p, "x": args.x}
    if args.b is not None:
        params["b"] = args.b
    if not plate_converges(args.kind, args.p, args.x, args.b):
        raise CNCTError("x = b requires p > 1 for convergence")
    src = catalog(f"plate-{args.kind.upper()}", params, ctx)
    res = evaluate(src, ctx)
    return _emit_value(args, ctx, res, {"kind": args.kind, **params, "acc": str(ctx.acc),
                                        "kernel": ctx.kernel_kind})


def parse_truncation(text):
    if text is None:
        return None
    a, sep, b = text.partition(":")
    if not sep:
        raise UsageError("--truncate expects a:b (b may be empty or 'inf')")
    try:
        lo = int(a)
        hi = None if b in ("", "inf") else int(b)
    except ValueError:
        raise UsageError(f"bad truncation {text!r}") from None
    if lo < 0 or (hi is not None and hi < lo):
        raise UsageError(f"truncation needs 0 <= a <= b, got {text!r}")
    return lo, hi


COLUMNS = {"pmf": ["pmf"], "cdf": ["cdf"], "hazard": ["hazard"],
           "all": ["pmf", "cdf", "survival", "hazard"]}


def cmd_dist(args) -> int:
    ctx = make_context(args)
    trunc = parse_truncation(args.truncate)
    need = {"zipf": ("s",), "zipf-mandelbrot": ("s", "v"), "good": ("z", "s"),
            "lerch": ("z", "s", "v")}[args.family]
    for name in need:
        if getattr(args, name) is None:
            raise CNCTError(f"family {args.family} needs --{name}")
    d = LerchDistribution(args.family, args.z or 1, args.s, args.v or 1, trunc, ctx)
    cols = COLUMNS[args.table]
    rows = []
    for n, pmf, cdf, surv, haz in d.table(args.n_max):
        vals = {"pmf": pmf, "cdf": cdf, "survival": surv, "hazard": haz}
        rows.append([str(n)] + [fmt(ctx, vals[c]) for c in cols])
    header = ["n"] + cols
    if args.json:
        params = {k: getattr(args, k) for k in ("family", "z", "s", "v") if getattr(args, k)}
        params.update({"table": args.table, "n_max": str(args.n_max),
                       "truncate": args.truncate or "", "acc": str(ctx.acc)})
        table = [dict(zip(header, r)) for r in rows]
        print(envelope("dist", params, table, {"norm_c_inv": fmt(ctx, d.norm_c_inv)}))
    elif args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print("  ".join(header))
        for r in rows:
            print("  ".join(r))
    return EXIT_OK


def cmd_bailey(args) -> int:
    if args.digits > DEEP_DIGITS and not args.deep:
        raise UsageError(f"--digits above {DEEP_DIGITS} needs --deep (runtime grows quickly)")
    report, res = bailey_mod.verify(args.digits)
    if args.json:
        print(envelope("bailey", {"digits": str(args.digits)}, report.as_dict(),
                       diagnostics(res)))
    else:
        print(report.render())
    return EXIT_ORDER_CAP if res.terminated == ORDER_CAP else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cnct", description="Combined nonlinear-condensation transformation tools")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, acc=13):
        sp.add_argument("--acc", type=int, default=acc, help="relative accuracy in digits")
        sp.add_argument("--imax", type=int, default=100, help="transform order cap")
        sp.add_argument("--precision", help="native or big:<digits> (env CNCT_PRECISION)")
        sp.add_argument("--json", action="store_true", help="single JSON document on stdout")

    sp = sub.add_parser("lerch", help="Lerch transcendent Phi(z, s, v)")
    sp.add_argument("--z", type=decimal_arg, required=True)
    sp.add_argument("--s", type=decimal_arg, required=True)
    sp.add_argument("--v", type=decimal_arg, required=True)
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_lerch)

    sp = sub.add_parser("zeta", help="Riemann zeta(s), or Hurwitz zeta(s, v) with --v")
    sp.add_argument("--s", type=decimal_arg, required=True)
    sp.add_argument("--v", type=decimal_arg, default="1")
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("dist", help="Zipf / Zipf-Mandelbrot / Good / Lerch tables")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--z", type=decimal_arg)
    sp.add_argument("--s", type=decimal_arg)
    sp.add_argument("--v", type=decimal_arg)
    sp.add_argument("--table", choices=sorted(COLUMNS), default="all")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--truncate", help="support window a:b in the family's own indexing")
    sp.add_argument("--csv", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_dist)

    sp = sub.add_parser("accelerate", help="accelerate a catalog series")
    sp.add_argument("--series", required=True, help="one of: " + ", ".join(CATALOG_NAMES))
    sp.add_argument("--params", action="append", help="k=v[,k=v...]")
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_accelerate)

    sp = sub.add_parser("bailey", help="verify the Au-Yeung/Bailey identity")
    sp.add_argument("--digits", type=int, default=50)
    sp.add_argument("--deep", action="store_true", help=f"allow more than {DEEP_DIGITS} digits")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bailey)

    sp = sub.add_parser("plate", help="plate-contact series R_p, T_p, U_p")
    sp.add_argument("--kind", choices=["R", "T", "U", "r", "t", "u"], required=True)
    sp.add_argument("--p", type=decimal_arg, required=True)
    sp.add_argument("--x", type=decimal_arg, required=True)
    sp.add_argument("--b", type=decimal_arg)
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_plate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cnct {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CNCTError as exc:
        print(f"cnct {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

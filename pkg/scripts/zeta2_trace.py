"""Per-order trace of the CNC transforms for zeta(2) with true errors and acceleration ratios.

    python3 scripts/zeta2_trace.py            # native doubles, acc=13
    python3 scripts/zeta2_trace.py --acc 30   # big numbers
"""
import argparse

import mpmath

from cnct import PrecisionContext
from cnct.driver import accelerate
from cnct.series import catalog_lerch, diagnostics


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", default="2", help="even integer s keeps the exact sum available")
    ap.add_argument("--acc", type=int, default=13)
    args = ap.parse_args()

    ctx = PrecisionContext(acc=args.acc)
    src = catalog_lerch(1, args.s, 1, ctx)
    res = accelerate(src, ctx)
    exact = src.exact_sum
    chi = diagnostics(src, res.transforms()).chi_estimates
    print(f"{'order':>5}  {'T_CNC':<{args.acc + 4}}  {'x_n':>9}  {'estimate':>9}  "
          f"{'true err':>9}  {'chi_n':>9}")
    for i, row in enumerate(res.transform_trace):
        err = abs((row.value - exact) / exact)
        x = "-" if row.x is None else f"{row.x:.3e}"
        e = "-" if row.error_estimate is None else f"{row.error_estimate:.3e}"
        c = f"{abs(chi[i]):.3e}" if i < len(chi) else "-"
        print(f"{row.order:>5}  {ctx.kernel.fmt(row.value, args.acc + 2):<{args.acc + 4}}  "
              f"{x:>9}  {e:>9}  {float(err):>9.3e}  {c:>9}")
    print(f"terminated={res.terminated} terms={res.terms_evaluated} "
          f"inner_terms={res.inner_terms} exact={mpmath.nstr(exact, args.acc + 2)}")


if __name__ == "__main__":
    main()

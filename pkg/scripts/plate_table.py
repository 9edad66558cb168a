"""Tabulate the plate-contact series R_1(x), T_1(x, b) and U_2(x, b) over a grid in x.

    python3 scripts/plate_table.py --b 1.0 --steps 10
"""
import argparse
import math

from cnct import PrecisionContext
from cnct.driver import evaluate
from cnct.series import catalog_plate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--acc", type=int, default=13)
    args = ap.parse_args()

    ctx = PrecisionContext(acc=args.acc)
    fmt = lambda v: ctx.kernel.fmt(v, args.acc + 2)
    # R_1 needs |r| < 1, so it is sampled at r = 0.99 x / b
    print("x,r,R_1(r),atanh(r),T_1(x;b),orders_T,terms_T,U_2(x;b),orders_U,terms_U")
    for i in range(args.steps + 1):
        x = args.b * i / args.steps * (0.999 if i == args.steps else 1)
        rr = 0.99 * x / args.b
        r = evaluate(catalog_plate("R", 1, rr, ctx=ctx), ctx)
        t = evaluate(catalog_plate("T", 1, x, args.b, ctx), ctx)
        u = evaluate(catalog_plate("U", 2, x, args.b, ctx), ctx)
        print(f"{x:.4f},{rr:.4f},{fmt(r.value)},{fmt(math.atanh(rr))},"
              f"{fmt(t.value)},{t.order_used},{t.terms_evaluated},"
              f"{fmt(u.value)},{u.order_used},{u.terms_evaluated}")


if __name__ == "__main__":
    main()

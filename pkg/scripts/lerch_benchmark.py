"""Accuracy and timing of lerch_phi against mpmath.lerchphi over a parameter grid.

    python3 scripts/lerch_benchmark.py
    python3 scripts/lerch_benchmark.py --acc 30
"""
import argparse
import itertools
import time

import mpmath

from cnct import PrecisionContext
from cnct.lerch import evaluate_lerch

ZS = ["-0.99", "-0.5", "0.01", "0.3", "0.9", "0.999", "0.999999", "1"]
SS = ["0.5", "1", "2", "3.5"]
VS = ["0.25", "1", "3.7", "-1.5"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--acc", type=int, default=13)
    args = ap.parse_args()

    ctx = PrecisionContext(acc=args.acc)
    k = ctx.kernel
    print("z,s,v,rel_err,order,terms,ms")
    worst = 0.0
    for z, s, v in itertools.product(ZS, SS, VS):
        if z == "1" and float(s) <= 1:
            continue
        if float(v) < 0 and float(s) != int(float(s)):
            continue
        t0 = time.perf_counter()
        zz, sv, vv = k.num(z), k.num(s), k.num(v)
        res = evaluate_lerch(zz, sv, vv, ctx)
        ms = (time.perf_counter() - t0) * 1e3
        with mpmath.workdps(args.acc + 20):
            # oracle at the kernel's own inputs: near z = 1 the function is ill-conditioned in z
            ref = mpmath.lerchphi(mpmath.mpf(zz), mpmath.mpf(sv), mpmath.mpf(vv))
            err = float(abs((mpmath.mpf(res.value) - ref) / ref))
        worst = max(worst, err)
        print(f"{z},{s},{v},{err:.2e},{res.order_used},{res.terms_evaluated},{ms:.2f}")
    print(f"# worst relative error {worst:.2e} at acc={args.acc}")


if __name__ == "__main__":
    main()

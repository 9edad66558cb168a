"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run inside the suite with ``pytest tests/test_acceptance.py -v`` or standalone
with ``python3 tests/test_acceptance.py``.
"""
import math
import random
import sys
import time
import warnings
from pathlib import Path

import mpmath
import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cnct import PrecisionContext  # noqa: E402
from cnct.bailey import naive_term_count, verify  # noqa: E402
from cnct.condensation import condensed, condensed_odd_shortcut  # noqa: E402
from cnct.distributions import FAMILIES  # noqa: E402
from cnct.driver import accelerate, evaluate  # noqa: E402
from cnct.lerch import evaluate_lerch  # noqa: E402
from cnct.levin import TransformTable, delta, forward_differences, levin_direct  # noqa: E402
from cnct.series import catalog_lerch, catalog_plate  # noqa: E402

from oracles import (brute_cdf, brute_mean, brute_sum_pmf, draws, make,  # noqa: E402
                     mean_horizon)

BAILEY_50 = "2.37254516203844567035681306914885258257561849954254"
_cache = {}


def _bailey50():
    if "bailey" not in _cache:
        _cache["bailey"] = verify(50)
    return _cache["bailey"]


def c1_bailey_digits():
    report, _ = _bailey50()
    got = report.lhs[:len(BAILEY_50)]
    ok = got == BAILEY_50 and report.elapsed_seconds < 300
    return ok, f"lhs={report.lhs[:54]}... match={report.matching_digits} " \
               f"t={report.elapsed_seconds:.2f}s"


def c2_digits_per_order():
    report, _ = _bailey50()
    r = report.digits_per_order
    return 0.5 <= r <= 1.5, f"{r:.3f} digits/order over the last 20 orders " \
                            f"(order_used={report.order_used})"


def c3_naive_cost():
    v = naive_term_count(200)
    return abs(v - 205) <= 1, f"log10 N = {v:.3f}"


def c4_zeta2():
    ctx = PrecisionContext(acc=13)
    src = catalog_lerch(1, 2, 1, ctx)
    t0 = time.perf_counter()
    res = accelerate(src, ctx)
    dt = time.perf_counter() - t0
    err = abs(res.value - math.pi ** 2 / 6) / (math.pi ** 2 / 6)
    ok = err < 1e-13 and res.order_used <= 30 and res.terms_evaluated <= 5000 and dt < 0.1
    return ok, f"rel err {err:.2e}, order {res.order_used}, terms {res.terms_evaluated}, " \
               f"{dt * 1e3:.2f} ms"


def c5_slow_lerch():
    z = 0.999999
    res = evaluate_lerch(z, 1, 1, PrecisionContext(acc=13))
    exact = -math.log1p(-z) / z
    err = abs(res.value - exact) / exact
    return err < 1e-12 and res.terms_evaluated < 10 ** 4, \
        f"rel err {err:.2e} with {res.terms_evaluated} terms"


def c6_condensation():
    ctx = PrecisionContext(acc=25, working_digits=40)
    sources = [catalog_lerch(1, 2, 1, ctx), catalog_lerch("0.9", "1.5", "0.5", ctx),
               catalog_plate("R", 1, "0.8", ctx=ctx)]
    worst_odd = 0
    for src in sources:
        for j in range(1, 9):
            direct = condensed(src, 2 * j - 1, ctx).value
            short = condensed_odd_shortcut(condensed(src, j - 1, ctx).value, src(j - 1))
            worst_odd = max(worst_odd, abs(direct - short) / abs(direct))
    # both sides carry the 10^-(acc+2) inner truncation
    odd_ok = worst_odd < mpmath.mpf(10) ** -(ctx.acc + 1)
    known = [("lerch", (1, 2, 1)), ("lerch", (1, 4, 1)), ("lerch", (1, 6, 1)),
             ("lerch", ("0.5", 1, 1)), ("lerch", ("0.99", 1, 1)), ("lerch", ("0.5", 0, 1)),
             ("plate", ("R", 1, "0.5")), ("plate", ("R", 1, "-0.9"))]
    worst_re = 0
    for acc_ctx in (PrecisionContext(acc=13), PrecisionContext(acc=25, working_digits=35)):
        for name, args in known:
            src = catalog_lerch(*args, acc_ctx) if name == "lerch" \
                else catalog_plate(*args, ctx=acc_ctx)
            res = accelerate(src, acc_ctx)
            e = abs(res.value - src.exact_sum) / abs(src.exact_sum)
            worst_re = max(worst_re, float(e * 10 ** acc_ctx.acc))
    ok = odd_ok and worst_re < 1
    return ok, f"odd-index worst rel {float(worst_odd):.1e}; reordering worst " \
               f"err/10^-acc {worst_re:.2f}"


def c7_levin():
    worst = mpmath.mpf(0)
    with mpmath.workdps(25):
        for trial in range(20):
            rng = random.Random(1000 + trial)
            lam = mpmath.mpf(rng.uniform(0.2, 0.95))
            p = mpmath.mpf(rng.uniform(0.5, 2.5))
            s, total = [], mpmath.mpf(rng.uniform(-1, 1))
            for j in range(16):
                total += (-lam) ** j / (j + 1) ** p
                s.append(total)
            w = forward_differences(s, 0, 14)
            t = TransformTable()
            for k in range(13):
                rec = t.push(s[k], w[k])
                worst = max(worst, abs(rec - levin_direct(1, s, w, k)) / abs(rec))
        rng = random.Random(7)
        hom = trans = mpmath.mpf(0)
        for _ in range(20):
            k = rng.randint(1, 10)
            a = mpmath.mpf(rng.uniform(-100, 100))
            c = mpmath.mpf(rng.uniform(-100, 100))
            base = delta(1, s, k)
            hom = max(hom, abs(delta(1, [a * x for x in s], k) - a * base) / abs(a * base))
            trans = max(trans, abs(delta(1, [x + c for x in s], k) - base - c) / abs(base + c))
        eps = mpmath.mpf(10) ** -20
    ok = worst < 1e-12 and hom < eps and trans < eps
    return ok, f"recursion/direct {float(worst):.1e}; homogeneity {float(hom):.1e}; " \
               f"translation {float(trans):.1e}"


def c8_distributions():
    fails = []
    n_draws = 10
    for fam in FAMILIES:
        for params in draws(fam, n_draws, seed=11):
            d = make(fam, params)
            if abs(brute_sum_pmf(d, d.quantile_tail(1e-10)) - 1) >= 1e-8:
                fails.append((fam, params, "normalization"))
            lo = d.support()[0]
            cum = brute_cdf(d, 50)
            if max(abs(d.cdf(n) - cum[i]) for i, n in enumerate(range(lo, 51))) >= 1e-10:
                fails.append((fam, params, "cdf"))
            if abs(d.pgf(1) - 1) >= 1e-12:
                fails.append((fam, params, "pgf"))
            t = make(fam, params, truncation=(lo, lo + 7))
            if t.cdf(lo + 7) != 1:
                fails.append((fam, params, "truncated cdf"))
        for params in draws(fam, n_draws, seed=12, for_mean=True):
            d = make(fam, params)
            ref = brute_mean(d, mean_horizon(d))
            if abs(d.mean() - ref) / abs(ref) >= 1e-8:
                fails.append((fam, params, "mean"))
    return not fails, f"{len(FAMILIES)} families x {n_draws} draws; failures: {fails[:3] or 'none'}"


def _safe_terms(kind, p, x, b, n):
    m = 2 * np.arange(n, dtype=np.float64) + 1
    sgn = 1 if kind == "T" else -1
    num = np.exp(m * (x - b)) * (1 + np.exp(-2 * x * m))
    return num / (1 + sgn * np.exp(-2 * b * m)) / m ** p


def c9_plate():
    out = []
    ok = True
    for kind, p, x, b in (("T", 1, 0.95, 1.0), ("U", 2, 0.5, 1.0)):
        naive = math.fsum(_safe_terms(kind, p, x, b, 10 ** 7))
        res = evaluate(catalog_plate(kind, p, x, b, PrecisionContext(acc=13)))
        err = abs(res.value - naive) / naive
        ok &= err < 1e-10
        out.append(f"{kind}_{p}({x},{b}) rel {err:.1e}")
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for ctx in (PrecisionContext(acc=13), PrecisionContext(acc=20)):
            for kind in ("T", "U"):
                v = catalog_plate(kind, 1, "0.95", "1.0", ctx)(2 ** 40)
                ok &= ctx.kernel.isfinite(v) and v >= 0
    out.append("index 2^40 finite")
    return ok, "; ".join(out)


def c10_alternating():
    src = catalog_lerch(-1, 1, 1, PrecisionContext(acc=13))
    res = evaluate(src)
    err = abs(res.value - math.log(2)) / math.log(2)
    return err < 1e-12 and src.count <= 20, f"rel err {err:.1e} using {src.count} terms"


CRITERIA = [
    ("C1", "Bailey identity, 50 digits", c1_bailey_digits),
    ("C2", "Bailey digits per order", c2_digits_per_order),
    ("C3", "naive cost estimate", c3_naive_cost),
    ("C4", "zeta(2) at acc=13", c4_zeta2),
    ("C5", "slowly convergent Lerch", c5_slow_lerch),
    ("C6", "condensation properties", c6_condensation),
    ("C7", "Levin properties", c7_levin),
    ("C8", "distribution suite", c8_distributions),
    ("C9", "plate series", c9_plate),
    ("C10", "alternating fast path", c10_alternating),
]


def _line(tag, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {tag} {title}: {detail}"


@pytest.mark.parametrize("tag,title,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(tag, title, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(tag, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for tag, title, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(tag, title, ok, detail), flush=True)
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)

"""High-precision check of the Au-Yeung sum

    sum_{k>=1} (1 + 1/2 + ... + 1/k)^2 / k^2 = 17/4 zeta(4)

in the gamma-reduced form sum_{k>=0} (psi(k+2)/(k+1))^2
= 17/4 zeta(4) - 4 gamma zeta(3) + gamma^2 zeta(2).  All zeta values come from
the CNCT itself, so the only external input is Euler's constant.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

from .driver import AccelerationResult, accelerate
from .errors import DomainError, ResourceLimitError
from .lerch import riemann_zeta
from .numerics import PrecisionContext, euler_gamma
from .series import TermSource, _BaileyTerms, catalog_bailey

DIGITS_CAP = 250
GUARD_ACC = 2      # transform accuracy above the digits asked for
GUARD_WORKING = 10  # working digits above the transform accuracy
RATE_WINDOW = 20   # orders at the end of the trace used for the digits-per-order rate


def bailey_context(digits: int, **kw) -> PrecisionContext:
    # the transform gains a little under one digit per order, and the condensed inner
    # terms shrink roughly like 2^-k, so both caps scale with the digits requested
    acc = digits + GUARD_ACC
    kw.setdefault("imax", max(100, 2 * digits + 20))
    kw.setdefault("inner_cap", max(512, 4 * (acc + 2) + 64))
    return PrecisionContext(acc=acc, working_digits=acc + GUARD_WORKING, kernel_kind="big", **kw)


def zeta_values(ctx: PrecisionContext):
    """(zeta(2), zeta(3), zeta(4)) by CNCT on the Dirichlet series."""
    return tuple(riemann_zeta(s, ctx) for s in (2, 3, 4))


def bailey_rhs(ctx: PrecisionContext):
    """17/4 zeta(4) - 4 gamma zeta(3) + gamma^2 zeta(2)."""
    z2, z3, z4 = zeta_values(ctx)
    g = euler_gamma(ctx)
    return 17 * z4 / 4 - 4 * g * z3 + g * g * z2


def psi_over_square_source(ctx: PrecisionContext) -> TermSource:
    """k -> psi(k+2)/(k+1)^2, which sums to 2 zeta(3) - gamma zeta(2)."""
    return TermSource(_BaileyTerms(ctx, power=1), ctx, name="psi/(k+1)^2")


def harmonic_square_source(ctx: PrecisionContext) -> TermSource:
    """k -> ((psi(k+2) + gamma)/(k+1))^2 = (H_{k+1}/(k+1))^2, which sums to 17/4 zeta(4)."""
    return TermSource(_BaileyTerms(ctx, add_gamma=True), ctx, name="H^2/k^2")


def common_decimals(a: str, b: str) -> int:
    """Number of equal characters after the decimal point before the first mismatch.

    Returns -1 when the integer parts differ.
    """
    ia, _, fa = a.partition(".")
    ib, _, fb = b.partition(".")
    if ia != ib:
        return -1
    n = 0
    for x, y in zip(fa, fb):
        if x != y:
            break
        n += 1
    return n


def correct_digits(values, exact, kernel) -> list:
    """-log10 of the relative error of each transform against ``exact``."""
    return [-kernel.log10abs((v - exact) / exact) for v in values]


def rate(correct_digits: list, start: int, stop: int) -> float:
    """Average digits gained per order between two trace positions."""
    return (correct_digits[stop] - correct_digits[start]) / (stop - start)


@dataclass
class VerificationReport:
    digits_requested: int
    lhs: str
    rhs: str
    matching_digits: int
    order_used: int
    terms_evaluated: int
    digits_per_order: float
    elapsed_seconds: float
    terminated: str = ""
    correct_digits: list = field(default_factory=list, repr=False)

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("correct_digits")
        d.pop("terminated")
        for key in ("digits_per_order", "elapsed_seconds"):
            d[key] = f"{d[key]:.6g}"
        for key in ("digits_requested", "matching_digits", "order_used", "terms_evaluated"):
            d[key] = str(d[key])
        return d

    def render(self) -> str:
        return "\n".join([
            f"digits requested : {self.digits_requested}",
            f"CNCT sum         : {self.lhs}",
            f"closed form      : {self.rhs}",
            f"matching digits  : {self.matching_digits}",
            f"order used       : {self.order_used}",
            f"terms evaluated  : {self.terms_evaluated}",
            f"digits per order : {self.digits_per_order:.3f}",
            f"elapsed seconds  : {self.elapsed_seconds:.2f}",
        ])


def verify(digits: int = 50, cap: int = DIGITS_CAP, ctx: PrecisionContext | None = None
           ) -> tuple[VerificationReport, AccelerationResult]:
    """Sum the psi-squared series by CNCT and compare with the closed form.

    The digits-per-order rate is measured over the final ``RATE_WINDOW`` orders
    (or the whole trace when it is shorter).
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    if digits > cap:
        raise ResourceLimitError(f"digits={digits} exceeds the verification cap {cap}")
    ctx = ctx or bailey_context(digits)
    t0 = time.perf_counter()
    result = accelerate(catalog_bailey(ctx), ctx)
    rhs = bailey_rhs(ctx)
    elapsed = time.perf_counter() - t0
    kern = ctx.kernel
    shown = digits + GUARD_ACC + 1
    lhs_s, rhs_s = kern.fmt(result.value, shown), kern.fmt(rhs, shown)
    correct = correct_digits(result.transforms(), rhs, kern)
    n = len(correct)
    window = min(RATE_WINDOW, n - 1)
    tail = correct[n - 1 - window:] if window > 0 else []
    ok = window > 0 and all(math.isfinite(c) for c in tail)
    dpo = rate(correct, n - 1 - window, n - 1) if ok else float("nan")
    report = VerificationReport(digits, lhs_s, rhs_s, common_decimals(lhs_s, rhs_s),
                                result.order_used, result.terms_evaluated, dpo, elapsed,
                                result.terminated, correct)
    return report, result


def naive_term_count(digits: float) -> float:
    """log10 N for the plain summation cost: (ln^2 N + ln N + 1)/N = 10^-digits.

    Solved by bisection in L = ln N on f(L) = ln(L^2 + L + 1) - L + digits ln 10.
    """
    if digits < 1:
        raise DomainError("digits must be >= 1")
    target = digits * math.log(10)

    def f(L):
        return math.log(L * L + L + 1) - L + target

    lo, hi = 1.0, 2.0
    while f(hi) > 0:
        hi *= 2
    # f is decreasing on [1, inf) and f(1) > 0
    for _ in range(200):
        mid = (lo + hi) / 2
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2 / math.log(10)

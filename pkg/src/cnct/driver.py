"""The CNCT driver: condensation feeding the delta transformation.

For a sign-uniform source the Van Wijngaarden partial sums S_i with remainder
estimates omega_i = S_{i+1} - S_i = (-1)^{i+1} A_{i+1} go into a
``TransformTable``; the transform of order m is T_CNC(m).  Iteration stops on
the geometric error model

    x_m = |T_m - T_{m-1}| / |T_{m-1} - T_{m-2}|
    (2 / x_m) * |T_m - T_{m-1}| / ((1 - x_m) |T_m|) < 10^-acc,

on an exact repeat T_m == T_{m-1}, or when the order cap is reached.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .condensation import AlternatingPartialSums
from .errors import DegenerateTransformError, DomainError, RemainderEstimateError
from .levin import TransformTable
from .numerics import PrecisionContext
from .series import TermSource

CONVERGED = "converged"
ZERO_DIFFERENCE = "zero-difference"
ORDER_CAP = "order-cap"
DEGENERATE = "degenerate"

MAX_CONSECUTIVE_DEGENERATE = 8


@dataclass
class TraceRow:
    order: int
    value: object
    x: float | None
    error_estimate: float | None


@dataclass
class AccelerationResult:
    value: object
    order_used: int
    error_estimate: float
    terminated: str
    terms_evaluated: int
    transform_trace: list = field(default_factory=list)
    inner_terms: int = 0

    @property
    def converged(self) -> bool:
        return self.terminated in (CONVERGED, ZERO_DIFFERENCE)

    def transforms(self) -> list:
        return [row.value for row in self.transform_trace]


def termination_check(t_prev2, t_prev1, t_curr, acc: int):
    """Return (stop, x_n, error_estimate) for three consecutive transforms.

    x_n >= 1 means the geometric model does not apply yet, so the criterion
    cannot fire; a zero earlier difference likewise skips this order.
    """
    d1 = abs(t_curr - t_prev1)
    if d1 == 0:
        return True, 0.0, 0.0
    d0 = abs(t_prev1 - t_prev2)
    if d0 == 0 or t_curr == 0:
        return False, None, None
    x = float(d1 / d0)
    if x >= 1:
        return False, x, None
    est = 2 * d0 * d0 / ((d0 - d1) * abs(t_curr))
    return est < _tolerance(t_curr, acc), x, float(est)


def _tolerance(like, acc):
    try:
        return (like * 0 + 1) / 10 ** acc
    except OverflowError:
        return 0.0


def _run(pairs, exhausted, ctx: PrecisionContext, counter, inner=lambda: 0):
    """Common transform loop over (s_i, omega_i) pairs starting at index n0."""
    kern = ctx.kernel
    table = TransformTable(kern.num(ctx.beta), ctx.n0)
    trace = []
    history = []  # (order, value) of non-degenerate transforms
    degenerate_run = 0
    last_order = ctx.imax - 1
    est = math.inf
    for order in range(last_order + 1):
        i = ctx.n0 + order
        s_i, omega = pairs(i)
        if omega == 0:
            if exhausted(i):
                # finite series: S_i is the exact sum
                trace.append(TraceRow(order, s_i, None, 0.0))
                return AccelerationResult(s_i, order, 0.0, CONVERGED, counter(), trace, inner())
            return _finish(history, trace, DEGENERATE, counter(), inner(), est)
        try:
            t = table.push(s_i, omega)
        except DegenerateTransformError:
            degenerate_run += 1
            if degenerate_run >= MAX_CONSECUTIVE_DEGENERATE:
                return _finish(history, trace, DEGENERATE, counter(), inner(), est)
            continue
        degenerate_run = 0
        history.append((order, t))
        x = None
        stop = False
        if len(history) >= 2 and t == history[-2][1]:
            trace.append(TraceRow(order, t, 0.0, 0.0))
            return AccelerationResult(t, order, 0.0, ZERO_DIFFERENCE, counter(), trace, inner())
        if len(history) >= 3:
            stop, x, e = termination_check(history[-3][1], history[-2][1], t, ctx.acc)
            if e is not None:
                est = e
            elif t != 0:
                est = float(abs((t - history[-2][1]) / t))
        trace.append(TraceRow(order, t, x, est if len(history) >= 2 else None))
        if stop:
            return AccelerationResult(t, order, est, CONVERGED, counter(), trace, inner())
    return _finish(history, trace, ORDER_CAP, counter(), inner(), est)


def _finish(history, trace, reason, count, inner, est):
    if not history:
        raise DegenerateTransformError("no transform could be formed")
    order, value = history[-1]
    return AccelerationResult(value, order, est, reason, count, trace, inner)


def accelerate(src: TermSource, ctx: PrecisionContext | None = None) -> AccelerationResult:
    """CNC transforms T_CNC(m) = delta_m^(n0)(beta, S_n0) of the condensed series."""
    ctx = ctx or src.ctx
    if not src.nonalternating:
        raise DomainError("accelerate() needs a sign-uniform source; use accelerate_alternating()")
    start = src.count
    vw = AlternatingPartialSums(src, ctx)

    def pairs(i):
        a_next = vw.A(i + 1)
        return vw.S(i), (a_next if (i + 1) % 2 == 0 else -a_next)

    return _run(pairs, vw.exhausted_after, ctx, lambda: src.count - start,
                lambda: vw.inner_terms)


def accelerate_alternating(src: TermSource, ctx: PrecisionContext | None = None
                           ) -> AccelerationResult:
    """Delta transformation applied directly to the partial sums of ``src``."""
    ctx = ctx or src.ctx
    start = src.count
    sums = []
    terms = []

    def term(k):
        while len(terms) <= k:
            terms.append(src(len(terms)))
        return terms[k]

    def pairs(i):
        while len(sums) <= i:
            j = len(sums)
            sums.append(term(0) if j == 0 else sums[-1] + term(j))
        return sums[i], term(i + 1)

    def exhausted(i):
        return src.support_end is not None and src.support_end <= i

    return _run(pairs, exhausted, ctx, lambda: src.count - start)


def evaluate(src: TermSource, ctx: PrecisionContext | None = None) -> AccelerationResult:
    """Route by the source's declared sign profile."""
    if src.nonalternating:
        return accelerate(src, ctx)
    return accelerate_alternating(src, ctx)


def format_trace(result: AccelerationResult, kernel, digits: int | None = None) -> str:
    """One line per order: ``order  T_CNC  x_n  error_estimate``."""
    lines = []
    for row in result.transform_trace:
        x = "-" if row.x is None else f"{row.x:.6g}"
        e = "-" if row.error_estimate is None else f"{row.error_estimate:.6g}"
        lines.append(f"{row.order}  {kernel.fmt(row.value, digits)}  {x}  {e}")
    return "\n".join(lines)


__all__ = ["AccelerationResult", "TraceRow", "accelerate", "accelerate_alternating",
           "evaluate", "termination_check", "format_trace", "RemainderEstimateError",
           "CONVERGED", "ZERO_DIFFERENCE", "ORDER_CAP", "DEGENERATE"]

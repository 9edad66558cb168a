"""Lerch's transcendent Phi(z, s, v) = sum_{n>=0} z^n / (n + v)^s and its special cases.

Routing:

* z == 0          -> v^-s
* 0 < z <= 0.05   -> plain summation with a geometric tail bound
* z > 0           -> CNCT (condensation + delta transformation)
* z < 0           -> delta transformation on the alternating partial sums
* v <= 0          -> shift to v + m > 0 with Phi(z,s,v) = z^m Phi(z,s,v+m) + sum_{n<m} z^n/(n+v)^s
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .driver import AccelerationResult, CONVERGED, ORDER_CAP, evaluate
from .errors import DomainError, PoleError
from .numerics import PrecisionContext
from .series import catalog_lerch

Z_SMALL = 0.05
DIRECT_CAP = 100_000


@dataclass(frozen=True)
class LerchParams:
    z: object
    s: object
    v: object

    def validate(self, kern):
        z, s, v = kern.num(self.z), kern.num(self.s), kern.num(self.v)
        if abs(z) > 1:
            raise DomainError("|z| <= 1 required (no analytic continuation)")
        if z == 1 and not s > 1:
            raise DomainError("z = 1 requires s > 1")
        if z == -1 and not s > 0:
            raise DomainError("z = -1 requires s > 0")
        if v <= 0 and v == int(v):
            raise PoleError("v must not be 0, -1, -2, ...")
        if v < 0 and s != int(s):
            raise DomainError("negative non-integer v requires integer s")
        return z, s, v


def lerch_shift(params: LerchParams, m: int, ctx: PrecisionContext | None = None):
    """Return ``(shifted, correction)`` with Phi(z,s,v) = z^m Phi(z,s,v+m) + correction."""
    if m < 1:
        raise DomainError("shift m must be >= 1")
    ctx = ctx or PrecisionContext()
    kern = ctx.kernel
    z, s, v = kern.num(params.z), kern.num(params.s), kern.num(params.v)
    corr = kern.num(0)
    zn = kern.num(1)
    for n in range(m):
        if n + v == 0:
            raise PoleError(f"pole at n = {n}: n + v == 0")
        corr += zn / _pow(kern, n + v, s)
        zn *= z
    return LerchParams(z, s, v + m), corr


def _pow(kern, base, s):
    # negative base only arises with integer s (checked by LerchParams)
    if base < 0:
        return kern.power(base, int(s))
    return kern.power(base, s)


def evaluate_lerch(z, s, v, ctx: PrecisionContext | None = None,
                   z_small: float = Z_SMALL) -> AccelerationResult:
    """Phi(z, s, v) together with the driver diagnostics."""
    ctx = ctx or PrecisionContext()
    kern = ctx.kernel
    z, s, v = LerchParams(z, s, v).validate(kern)
    if z == 0:
        return AccelerationResult(kern.num(1) / _pow(kern, v, s), 0, 0.0, CONVERGED, 1)
    if v <= 0:
        m = math.ceil(-v) + 1
        shifted, corr = lerch_shift(LerchParams(z, s, v), m, ctx)
        inner = evaluate_lerch(shifted.z, shifted.s, shifted.v, ctx, z_small)
        inner.value = kern.power(z, m) * inner.value + corr
        inner.terms_evaluated += m
        return inner
    if 0 < z <= z_small:
        return _direct(z, s, v, ctx)
    return evaluate(catalog_lerch(z, s, v, ctx), ctx)


def _direct(z, s, v, ctx):
    """Plain summation; the tail after term N is bounded by a_{N+1} / (1 - max(r, z))."""
    kern = ctx.kernel
    tol = ctx.inner_tol
    total = kern.num(0)
    prev = None
    for n in range(DIRECT_CAP):
        a = kern.power(z, n) / kern.power(n + v, s)
        total += a
        if prev is not None and prev > 0:
            r = max(a / prev, z)
            if r < 1 and a * r / (1 - r) < tol * abs(total):
                return AccelerationResult(total, 0, float(a * r / (1 - r) / total), CONVERGED,
                                          n + 1)
        prev = a
    return AccelerationResult(total, 0, math.inf, ORDER_CAP, DIRECT_CAP)


def lerch_phi(z, s, v, ctx: PrecisionContext | None = None):
    """Phi(z, s, v); warns when the transform hits its order cap.

    >>> round(lerch_phi(0.5, 2, 1, PrecisionContext(acc=12)), 10)
    1.1644810529
    """
    res = evaluate_lerch(z, s, v, ctx)
    if res.terminated == ORDER_CAP:
        acc = (ctx or PrecisionContext()).acc
        warnings.warn(f"Phi({z}, {s}, {v}): relative accuracy of {acc} digits not reached "
                      f"after {res.order_used + 1} transforms", RuntimeWarning, stacklevel=2)
    return res.value


def riemann_zeta(s, ctx: PrecisionContext | None = None):
    """zeta(s) = Phi(1, s, 1), s > 1."""
    return lerch_phi(1, s, 1, ctx)


def hurwitz_zeta(s, v, ctx: PrecisionContext | None = None):
    """zeta(s, v) = Phi(1, s, v), s > 1."""
    return lerch_phi(1, s, v, ctx)


def jonquiere(z, s, ctx: PrecisionContext | None = None):
    """F(z, s) = sum_{n>=1} z^n / n^s = z Phi(z, s, 1), |z| < 1."""
    ctx = ctx or PrecisionContext()
    zz = ctx.kernel.num(z)
    if not abs(zz) < 1:
        raise DomainError("Jonquiere's function needs |z| < 1")
    return zz * lerch_phi(zz, s, 1, ctx)

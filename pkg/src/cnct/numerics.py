"""Arithmetic kernels, precision settings, Bernoulli numbers, digamma and Euler's constant.

Two kernels implement the same small real-number contract:

* ``NativeKernel``: hardware doubles through :mod:`math` (about 15 digits).
* ``BigKernel``: arbitrary precision through a private :class:`mpmath.MPContext`,
  so concurrent evaluations at different precisions never touch global state.

Everything numeric in the package goes through ``ctx.kernel``.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources

from mpmath.ctx_mp import MPContext

from .errors import DomainError, ResourceLimitError

BERNOULLI_CAP = 200
GAMMA_DIGITS = 1100
DIGAMMA_THRESHOLD = 500
DIGAMMA_TERMS = 30


class NativeKernel:
    """Hardware double precision."""

    name = "native"
    digits = 15

    def __init__(self):
        self._memo = {}

    def num(self, x):
        if isinstance(x, Fraction):
            return x.numerator / x.denominator
        return float(x)

    def exp(self, x):
        return math.exp(x)

    def log(self, x):
        return math.log(x)

    def sqrt(self, x):
        return math.sqrt(x)

    def power(self, x, y):
        # float ** (huge int) raises OverflowError when converting y; go through floats
        try:
            return float(x) ** float(y)
        except OverflowError:
            return math.inf

    @property
    def pi(self):
        return math.pi

    @property
    def eps(self):
        return 2.220446049250313e-16

    def isfinite(self, x):
        return math.isfinite(x)

    def log10abs(self, x):
        return math.log10(abs(x)) if x else -math.inf

    def fmt(self, x, digits=None):
        digits = self.digits + 2 if digits is None else min(digits, 17)
        return f"{x:.{digits}g}"

    def memo(self, key, factory):
        try:
            return self._memo[key]
        except KeyError:
            return self._memo.setdefault(key, factory())


class BigKernel:
    """Arbitrary precision with ``digits`` significant decimal digits."""

    name = "big"

    def __init__(self, digits: int):
        if digits < 1:
            raise ValueError("digits must be positive")
        self.digits = digits
        self.mp = MPContext()
        self.mp.dps = digits
        self._memo = {}

    def num(self, x):
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def exp(self, x):
        return self.mp.exp(x)

    def log(self, x):
        return self.mp.log(x)

    def sqrt(self, x):
        return self.mp.sqrt(x)

    def power(self, x, y):
        return self.mp.power(x, y)

    @property
    def pi(self):
        return self.mp.pi

    @property
    def eps(self):
        return self.mp.eps

    def isfinite(self, x):
        return self.mp.isfinite(x)

    def log10abs(self, x):
        return float(self.mp.log10(abs(x))) if x else -math.inf

    def fmt(self, x, digits=None):
        digits = self.digits if digits is None else digits
        return self.mp.nstr(x, digits, strip_zeros=False, min_fixed=-5, max_fixed=6)

    def memo(self, key, factory):
        try:
            return self._memo[key]
        except KeyError:
            return self._memo.setdefault(key, factory())


@dataclass(frozen=True)
class PrecisionContext:
    """Accuracy target and transform settings for one evaluation.

    ``kernel`` is ``"native"``, ``"big"`` or ``"auto"``; auto picks native
    doubles for ``acc <= 13`` and big numbers otherwise.  For the big kernel
    ``working_digits`` defaults to ``acc + 10``.
    """

    acc: int = 14
    working_digits: int | None = None
    imax: int = 100
    beta: float = 1.0
    n0: int = 0
    kernel_kind: str = "auto"
    inner_cap: int = 512

    def __post_init__(self):
        if self.acc < 1:
            raise DomainError("acc must be >= 1")
        if self.imax < 2:
            raise DomainError("imax must be >= 2")
        if not self.beta > 0:
            raise DomainError("beta must be > 0")
        if self.n0 < 0:
            raise DomainError("n0 must be >= 0")
        if self.kernel_kind not in ("auto", "native", "big"):
            raise DomainError(f"unknown kernel {self.kernel_kind!r}")
        kind = self.kernel_kind
        if kind == "auto":
            kind = "native" if self.acc <= 13 and self.working_digits is None else "big"
        object.__setattr__(self, "kernel_kind", kind)
        if kind == "native":
            object.__setattr__(self, "working_digits", NativeKernel.digits)
        else:
            if self.working_digits is None:
                object.__setattr__(self, "working_digits", self.acc + 10)
            if self.working_digits < self.acc + 10:
                raise DomainError("working_digits must be >= acc + 10")

    @cached_property
    def kernel(self):
        if self.kernel_kind == "native":
            return NativeKernel()
        return BigKernel(self.working_digits)

    @cached_property
    def inner_tol(self):
        return self.kernel.num(f"1e-{self.acc + 2}")

    def with_(self, **changes) -> "PrecisionContext":
        """Copy with some fields replaced (kernel is rebuilt)."""
        base = dict(acc=self.acc, working_digits=self.working_digits, imax=self.imax,
                    beta=self.beta, n0=self.n0, kernel_kind=self.kernel_kind,
                    inner_cap=self.inner_cap)
        if "acc" in changes and "working_digits" not in changes and self.kernel_kind == "big":
            base["working_digits"] = None
        if "kernel_kind" in changes and changes["kernel_kind"] != self.kernel_kind:
            base["working_digits"] = None
        base.update(changes)
        return PrecisionContext(**base)


def big(digits: int, acc: int | None = None, **kw) -> PrecisionContext:
    """Shorthand for a big-number context with ``digits`` working digits."""
    if acc is None:
        acc = max(1, digits - 10)
    return PrecisionContext(acc=acc, working_digits=digits, kernel_kind="big", **kw)


def native(acc: int = 13, **kw) -> PrecisionContext:
    return PrecisionContext(acc=acc, kernel_kind="native", **kw)


# --------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def _bernoulli_upto(n: int) -> tuple:
    b = [Fraction(1)]
    for m in range(1, n + 1):
        if m > 1 and m % 2:
            b.append(Fraction(0))
            continue
        acc = Fraction(0)
        binom = 1  # C(m+1, j), updated incrementally
        for j in range(m):
            acc += binom * b[j]
            binom = binom * (m + 1 - j) // (j + 1)
        b.append(-acc / (m + 1))
    return tuple(b)


def bernoulli_numbers(m_max: int, cap: int = BERNOULLI_CAP) -> list[Fraction]:
    """Exact B_0 ... B_{2*m_max} from sum_{j<=m} C(m+1, j) B_j = 0.

    >>> b = bernoulli_numbers(2)
    >>> b[1], b[2], b[4]
    (Fraction(-1, 2), Fraction(1, 6), Fraction(-1, 30))
    """
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    if m_max > cap:
        raise ResourceLimitError(f"m_max={m_max} exceeds Bernoulli cap {cap}")
    return list(_bernoulli_upto(2 * m_max))


# --------------------------------------------------------------------------
# Euler's constant


@lru_cache(maxsize=1)
def _gamma_text() -> str:
    return resources.files("cnct").joinpath("data/euler_gamma.txt").read_text().strip()


def euler_gamma_text(digits: int) -> str:
    """Euler's constant rounded to ``digits`` decimals, as text."""
    if digits < 1:
        raise DomainError("digits must be >= 1")
    stored = _gamma_text()
    if digits > len(stored) - 2 - 1:
        raise ResourceLimitError(f"gamma is stored to {len(stored) - 2} decimals only")
    q = decimal.Decimal(1).scaleb(-digits)
    with decimal.localcontext() as dc:
        dc.prec = len(stored) + 5
        return str(decimal.Decimal(stored).quantize(q, rounding=decimal.ROUND_HALF_EVEN))


def euler_gamma(ctx: PrecisionContext):
    """gamma = 0.5772156649... at the working precision of ``ctx``."""
    if ctx.working_digits > GAMMA_DIGITS - 1:
        raise ResourceLimitError(f"gamma is stored to {GAMMA_DIGITS} decimals only")
    k = ctx.kernel
    return k.memo("gamma", lambda: k.num(euler_gamma_text(ctx.working_digits + 1)))


# --------------------------------------------------------------------------
# digamma


def _bernoulli_reals(kernel, terms):
    def build():
        b = bernoulli_numbers(terms)
        return [kernel.num(b[2 * s] / (2 * s)) for s in range(1, terms + 1)]
    return kernel.memo(("bern2s/2s", terms), build)


def digamma_asymptotic(x, ctx: PrecisionContext, terms: int = DIGAMMA_TERMS):
    """ln x - 1/(2x) - sum_{s=1}^{m-1} B_2s / (2s x^2s) with early truncation.

    Returns ``(value, last_term_ratio)``; the ratio is |last retained term| / |value|
    and lets callers decide whether ``x`` was large enough.
    """
    k = ctx.kernel
    coeffs = _bernoulli_reals(k, terms)
    x = k.num(x)
    x2inv = 1 / (x * x)
    value = k.log(x) - 1 / (2 * x)
    tol = ctx.inner_tol
    p = x2inv
    last = 0
    for c in coeffs[: terms - 1]:
        last = c * p
        value -= last
        if abs(last) < tol * abs(value) * k.num("1e-2"):
            break
        p *= x2inv
    ratio = abs(last / value) if value else abs(last)
    return value, ratio


def digamma(x, ctx: PrecisionContext, threshold: int = DIGAMMA_THRESHOLD,
            terms: int = DIGAMMA_TERMS):
    """psi(x) for real x > 0.

    Integers and half-integers below ``threshold`` use the upward recursion
    psi(x+1) = psi(x) + 1/x from psi(1) = -gamma or psi(1/2) = -gamma - 2 ln 2.
    Other arguments are shifted up past ``threshold`` with the same recursion
    and finished with the Bernoulli asymptotic series.
    """
    k = ctx.kernel
    if isinstance(x, Fraction):
        xf = x
    elif isinstance(x, int):
        xf = Fraction(x)
    else:
        xf = None
    xr = k.num(x)
    if not xr > 0:
        raise DomainError("digamma is only implemented for x > 0")
    if xf is not None and xf < threshold and (2 * xf).denominator == 1:
        return _digamma_recursive(xf, ctx)
    shift = k.num(0)
    while True:
        if xr < threshold:
            n = math.ceil(threshold - xr)
            for i in range(n):
                shift += 1 / (xr + i)
            xr = xr + n
        val, ratio = digamma_asymptotic(xr, ctx, terms)
        if ratio < ctx.inner_tol:
            return val - shift
        # asymptotic tail too coarse at this argument: push it further out
        n = int(threshold)
        for i in range(n):
            shift += 1 / (xr + i)
        xr = xr + n


def _digamma_recursive(x: Fraction, ctx: PrecisionContext):
    k = ctx.kernel
    g = euler_gamma(ctx)
    if x.denominator == 1:
        n = int(x)
        return harmonic(n - 1, ctx) - g
    # half-integer x = n + 1/2
    n = int(x - Fraction(1, 2))
    val = -g - 2 * k.log(k.num(2))
    for i in range(1, n + 1):
        val += k.num(2) / (2 * i - 1)
    return val


def harmonic(n: int, ctx: PrecisionContext):
    """H_n = 1 + 1/2 + ... + 1/n accumulated in the kernel (H_0 = 0)."""
    k = ctx.kernel
    total = k.num(0)
    for i in range(1, n + 1):
        total += 1 / k.num(i)
    return total

"""The Lerch family of discrete distributions.

==================  =========  ===================  ==================
family              support    pmf                  c^-1
==================  =========  ===================  ==================
zipf                1, 2, ...  c n^-s               Phi(1, s, 1)
zipf-mandelbrot     0, 1, ...  c (n+v)^-s           Phi(1, s, v)
good                1, 2, ...  c z^n n^-s           z Phi(z, s, 1)
lerch               0, 1, ...  c z^n (n+v)^-s       Phi(z, s, v)
==================  =========  ===================  ==================

Every family is stored in the 0-based Lerch form: with m = n - offset, the
support-from-1 families become Lerch(z, s, v=1), the factor z^offset cancels
in every ratio and only the p.g.f. keeps a leading y^offset.  Truncation to
[a, b] (in the family's own indexing) uses the bracket
z^a Phi(z,s,v+a) - z^(b+1) Phi(z,s,v+b+1); b = None means unbounded.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError
from .lerch import LerchParams, lerch_phi
from .numerics import PrecisionContext

FAMILIES = ("zipf", "zipf-mandelbrot", "good", "lerch")


@dataclass(frozen=True)
class LerchDistribution:
    family: str
    z: object = 1
    s: object = 2
    v: object = 1
    truncation: tuple | None = None
    ctx: PrecisionContext = field(default_factory=lambda: PrecisionContext(acc=13),
                                  compare=False, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        kern = self.ctx.kernel
        z, s, v = kern.num(self.z), kern.num(self.s), kern.num(self.v)
        if self.family in ("zipf", "zipf-mandelbrot"):
            z = kern.num(1)
        if self.family in ("zipf", "good"):
            v = kern.num(1)
        if not z > 0:
            raise DomainError("z must be > 0 for a probability distribution")
        if not v > 0:
            raise DomainError("v must be > 0 for a probability distribution")
        LerchParams(z, s, v).validate(kern)
        object.__setattr__(self, "_params", (z, s, v))
        object.__setattr__(self, "_memo", {})
        if self.truncation is not None:
            a, b = self.truncation
            if a < self.offset or (b is not None and b < a):
                raise DomainError(f"invalid truncation [{a}, {b}]")
        if not self.norm_c_inv > 0:
            raise DomainError("normalization constant is not positive")

    # -- internal form -----------------------------------------------------

    @property
    def offset(self) -> int:
        return 1 if self.family in ("zipf", "good") else 0

    @property
    def kernel(self):
        return self.ctx.kernel

    @property
    def lower(self) -> int:
        """First support point in the internal 0-based index."""
        return 0 if self.truncation is None else self.truncation[0] - self.offset

    @property
    def upper(self):
        if self.truncation is None or self.truncation[1] is None:
            return None
        return self.truncation[1] - self.offset

    def _tail(self, m: int, s_shift: int = 0, y=1):
        """(yz)^m Phi(yz, s - s_shift, v + m) = sum_{k>=m} (yz)^k / (k+v)^(s - s_shift)."""
        key = (m, s_shift, y)
        memo = self._memo
        if key not in memo:
            z, s, v = self._params
            w = z * y if y != 1 else z
            if w == 0:
                val = self.kernel.num(0) if m > 0 else \
                    self.kernel.num(1) / self.kernel.power(v, s - s_shift)
            else:
                val = self.kernel.power(w, m) * lerch_phi(w, s - s_shift, v + m, self.ctx)
            memo[key] = val
        return memo[key]

    def _bracket(self, lo: int, s_shift: int = 0, y=1):
        """sum_{k=lo}^{upper} (yz)^k / (k+v)^(s - s_shift) via tail differences."""
        val = self._tail(lo, s_shift, y)
        if self.upper is not None:
            val = val - self._tail(self.upper + 1, s_shift, y)
        return val

    @property
    def norm_c_inv(self):
        """c^-1 in the internal form (the z^offset front factor is left out)."""
        return self._bracket(self.lower)

    def support(self):
        lo = self.lower + self.offset
        hi = None if self.upper is None else self.upper + self.offset
        return lo, hi

    def _check(self, n: int) -> int:
        lo, hi = self.support()
        if n < lo or (hi is not None and n > hi):
            raise DomainError(f"n = {n} outside the support [{lo}, {hi if hi is not None else 'inf'}]")
        return n - self.offset

    # -- public functions ----------------------------------------------------

    def pmf(self, n: int):
        m = self._check(n)
        z, s, v = self._params
        k = self.kernel
        return k.power(z, m) / k.power(m + v, s) / self.norm_c_inv

    def cdf(self, n: int):
        # 1 - z^(m+1) Phi(z,s,v+m+1) / Phi(z,s,v); with truncation the bracket
        # difference vanishes identically at n = b, so F(b) == 1 exactly
        return 1 - self.survival(n)

    def survival(self, n: int):
        """S(n) = 1 - F(n), evaluated from the upper tail directly."""
        m = self._check(n)
        return self._bracket(m + 1) / self.norm_c_inv

    def hazard(self, n: int):
        """h(n) = p(n) / (1 - F(n))."""
        surv = self.survival(n)
        if surv == 0:
            raise DomainError(f"hazard undefined at n = {n}: 1 - F(n) = 0")
        return self.pmf(n) / surv

    def pgf(self, y):
        k = self.kernel
        y = k.num(y)
        if abs(y) > 1:
            raise DomainError("pgf needs |y| <= 1")
        lead = k.power(y, self.offset) if self.offset else k.num(1)
        return lead * self._bracket(self.lower, 0, y) / self.norm_c_inv

    def _moment_check(self, order: int):
        z, s, _ = self._params
        if self.upper is None and z == 1 and not s - order > 1:
            raise DomainError(f"moment of order {order} does not exist for s = {s} with z = 1")

    def mean(self):
        """E[N] = Phi(z, s-1, v) / Phi(z, s, v) - v + offset (with truncation brackets)."""
        self._moment_check(1)
        v = self._params[2]
        return self._bracket(self.lower, 1) / self.norm_c_inv - v + self.offset

    def variance(self):
        """Var N = E[(M+v)^2] - E[M+v]^2 with E[(M+v)^j] = bracket(s-j) / bracket(s)."""
        self._moment_check(2)
        c = self.norm_c_inv
        m1 = self._bracket(self.lower, 1) / c
        m2 = self._bracket(self.lower, 2) / c
        return m2 - m1 * m1

    def quantile_tail(self, q) -> int:
        """Smallest support point n with survival(n) <= q."""
        lo, hi = self.support()
        if hi is not None and q <= 0:
            return hi
        if self.survival(lo) <= q:
            return lo
        step = 1
        a = lo
        while True:
            b = a + step
            if hi is not None and b >= hi:
                b = hi
                break
            if self.survival(b) <= q:
                break
            a, step = b, step * 2
        while b - a > 1:
            mid = (a + b) // 2
            if self.survival(mid) <= q:
                b = mid
            else:
                a = mid
        return b

    def table(self, n_max: int):
        """Rows (n, pmf, cdf, survival, hazard) over the support up to n_max."""
        lo, hi = self.support()
        last = n_max if hi is None else min(n_max, hi)
        rows = []
        for n in range(lo, last + 1):
            surv = self.survival(n)
            haz = self.pmf(n) / surv if surv != 0 else None
            rows.append((n, self.pmf(n), self.cdf(n), surv, haz))
        return rows


def zipf(s, ctx=None, truncation=None):
    return LerchDistribution("zipf", 1, s, 1, truncation, ctx or PrecisionContext(acc=13))


def zipf_mandelbrot(s, v, ctx=None, truncation=None):
    return LerchDistribution("zipf-mandelbrot", 1, s, v, truncation, ctx or PrecisionContext(acc=13))


def good(z, s, ctx=None, truncation=None):
    return LerchDistribution("good", z, s, 1, truncation, ctx or PrecisionContext(acc=13))


def lerch(z, s, v, ctx=None, truncation=None):
    return LerchDistribution("lerch", z, s, v, truncation, ctx or PrecisionContext(acc=13))


__all__ = ["FAMILIES", "LerchDistribution", "zipf", "zipf_mandelbrot", "good", "lerch"]

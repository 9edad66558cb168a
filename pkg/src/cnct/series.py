"""Term sources, the series catalog and convergence diagnostics."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import DomainError, PoleError, UnsupportedDiagnosticsError
from .numerics import (DIGAMMA_THRESHOLD, PrecisionContext, bernoulli_numbers, digamma,
                       digamma_asymptotic, euler_gamma)

NONALTERNATING = "nonalternating"
ALTERNATING = "alternating"


class TermSource:
    """Random-access series terms k -> a(k), k >= 0, with an evaluation counter.

    ``support_end`` marks a finite series: a(k) == 0 for every k > support_end.
    Condensation relies on it to stop inner sums that would otherwise see only
    zeros.  ``exact_sum`` is optional and only used by diagnostics and tests.
    """

    def __init__(self, term, ctx: PrecisionContext, *, sign: str = NONALTERNATING,
                 exact_sum=None, support_end: int | None = None, name: str = "custom"):
        if sign not in (NONALTERNATING, ALTERNATING):
            raise ValueError(f"unknown sign profile {sign!r}")
        self._term = term
        self.ctx = ctx
        self.sign = sign
        self.exact_sum = exact_sum
        self.support_end = support_end
        self.name = name
        self._count = 0
        self._lock = threading.Lock()

    def __call__(self, k: int):
        if k < 0:
            raise IndexError("term index must be >= 0")
        with self._lock:
            self._count += 1
        return self._term(k)

    def __repr__(self):
        return f"TermSource({self.name!r}, {self.sign})"

    @property
    def count(self) -> int:
        return self._count

    def reset_count(self):
        with self._lock:
            self._count = 0

    @property
    def nonalternating(self) -> bool:
        return self.sign == NONALTERNATING

    def partial_sums(self, n: int) -> list:
        """s_0 ... s_n by plain accumulation."""
        out = []
        total = self.ctx.kernel.num(0)
        for k in range(n + 1):
            total += self(k)
            out.append(total)
        return out


def from_callable(fn, ctx: PrecisionContext, **kw) -> TermSource:
    """Wrap a plain function of (k, kernel) as a TermSource."""
    kern = ctx.kernel
    return TermSource(lambda k: fn(k, kern), ctx, **kw)


# --------------------------------------------------------------------------
# catalog


def _zeta_even(n2: int, kern):
    # zeta(2n) = (-1)^(n+1) B_2n (2 pi)^(2n) / (2 (2n)!)
    b = bernoulli_numbers(max(1, n2 // 2))[n2]
    coef = Fraction((-1) ** (n2 // 2 + 1)) * b / (2 * factorial(n2))
    return kern.num(coef) * (2 * kern.pi) ** n2


def catalog_lerch(z, s, v, ctx: PrecisionContext | None = None) -> TermSource:
    """k -> z^k / (k + v)^s, the defining series of Lerch's transcendent."""
    ctx = ctx or PrecisionContext()
    kern = ctx.kernel
    z, s, v = kern.num(z), kern.num(s), kern.num(v)
    if abs(z) > 1:
        raise DomainError("|z| must be <= 1")
    if not v > 0:
        raise DomainError("v must be > 0 for the raw series (shift negative v first)")
    if z == 1 and not s > 1:
        raise DomainError("z = 1 requires s > 1")
    one = kern.num(1)

    if z == 1:
        def term(k):
            return one / kern.power(k + v, s)
    elif z == 0:
        def term(k):
            return one / kern.power(v, s) if k == 0 else kern.num(0)
    else:
        def term(k):
            return kern.power(z, k) / kern.power(k + v, s)

    exact = None
    if z == 0:
        exact = one / kern.power(v, s)
    elif z == 1 and v == 1 and s == int(s) and int(s) % 2 == 0:
        exact = _zeta_even(int(s), kern)
    elif v == 1 and s == 1 and abs(z) < 1:
        exact = -kern.log(1 - z) / z
    elif s == 0 and abs(z) < 1:
        exact = one / (1 - z)
    sign = NONALTERNATING if z >= 0 else ALTERNATING
    return TermSource(term, ctx, sign=sign, exact_sum=exact,
                      support_end=0 if z == 0 else None, name=f"lerch(z={z}, s={s}, v={v})")


def catalog_dirichlet(s, ctx: PrecisionContext | None = None) -> TermSource:
    """zeta(s) = sum 1/(k+1)^s."""
    return catalog_lerch(1, s, 1, ctx)


class _BaileyTerms:
    """(psi(k+2)/(k+1))^2 with psi by recursion below the switch and asymptotics above."""

    def __init__(self, ctx: PrecisionContext, threshold: int = DIGAMMA_THRESHOLD, power: int = 2,
                 add_gamma: bool = False):
        self.ctx = ctx
        self.kern = ctx.kernel
        self.threshold = threshold
        self.power = power
        self.add_gamma = add_gamma
        self.gamma = euler_gamma(ctx)
        self._psi = [-self.gamma]  # psi(1), psi(2), ... memoized along the chain
        self._lock = threading.Lock()

    def psi_int(self, n: int):
        """psi(n) for integer n >= 1."""
        if n < self.threshold:
            with self._lock:
                while len(self._psi) < n:
                    m = len(self._psi)  # psi(m+1) = psi(m) + 1/m
                    self._psi.append(self._psi[-1] + 1 / self.kern.num(m))
                return self._psi[n - 1]
        val, ratio = digamma_asymptotic(self.kern.num(n), self.ctx)
        if ratio >= self.ctx.inner_tol:
            return digamma(self.kern.num(n), self.ctx)
        return val

    def __call__(self, k: int):
        psi = self.psi_int(k + 2)
        if self.add_gamma:
            psi = psi + self.gamma
        if self.power == 2:
            return (psi / (k + 1)) ** 2
        return psi / self.kern.num(k + 1) ** 2


def catalog_bailey(ctx: PrecisionContext | None = None) -> TermSource:
    """k -> (psi(k+2)/(k+1))^2; sums to 17/4 zeta(4) - 4 gamma zeta(3) + gamma^2 zeta(2)."""
    ctx = ctx or PrecisionContext()
    return TermSource(_BaileyTerms(ctx), ctx, name="bailey")


def catalog_plate(kind: str, p, x, b=None, ctx: PrecisionContext | None = None) -> TermSource:
    """Plate-contact series R_p(x), T_p(x, b), U_p(x, b).

    T and U are evaluated only in the overflow-safe exponential form
    e^{(2k+1)(x-b)} (1 + e^{-2x(2k+1)}) / (1 +/- e^{-2b(2k+1)}) / (2k+1)^p.
    """
    ctx = ctx or PrecisionContext()
    kern = ctx.kernel
    kind = kind.upper()
    p, x = kern.num(p), kern.num(x)
    one = kern.num(1)
    if not p > 0:
        raise DomainError("p must be > 0")
    if kind == "R":
        if abs(x) > 1 or (abs(x) == 1 and not p > 1):
            raise DomainError("R_p(x) needs |x| < 1, or |x| = 1 with p > 1")

        def term(k):
            m = 2 * k + 1
            return kern.power(x, m) / kern.power(m, p)

        exact = kern.log((1 + x) / (1 - x)) / 2 if p == 1 and abs(x) < 1 else None
        # x^(2k+1) keeps the sign of x: the series is sign-uniform for either sign
        return TermSource(term, ctx, exact_sum=exact, support_end=0 if x == 0 else None,
                          name=f"plate-R(p={p}, x={x})")
    if kind not in ("T", "U"):
        raise DomainError(f"unknown plate series kind {kind!r}")
    if b is None:
        raise DomainError("b is required for T and U")
    b = kern.num(b)
    if kind == "U" and b == 0:
        raise PoleError("U_p(x, b) has a pole at b = 0")
    if not b > 0:
        raise DomainError("b must be > 0")
    if x < 0 or x > b:
        raise DomainError("T and U need 0 <= x <= b")
    sgn = 1 if kind == "T" else -1

    def term(k):
        m = 2 * k + 1
        num = kern.exp(m * (x - b)) * (1 + kern.exp(-2 * x * m))
        den = 1 + sgn * kern.exp(-2 * b * m)
        return num / den / kern.power(m, p)

    return TermSource(term, ctx, name=f"plate-{kind}(p={p}, x={x}, b={b})")


def plate_converges(kind: str, p, x, b=None) -> bool:
    """False for T_p(b, b) and U_p(b, b) with p <= 1, whose terms decay like 1/(2k+1)^p."""
    if kind.upper() == "R" or b is None:
        return True
    return not (float(x) == float(b) and float(p) <= 1)


CATALOG_NAMES = ("lerch", "dirichlet", "bailey", "plate-R", "plate-T", "plate-U")


def catalog(name: str, params: dict, ctx: PrecisionContext | None = None) -> TermSource:
    """Build a catalog source by CLI name; ``params`` values may be decimal strings."""
    ctx = ctx or PrecisionContext()
    try:
        if name == "lerch":
            return catalog_lerch(params["z"], params["s"], params["v"], ctx)
        if name == "dirichlet":
            return catalog_dirichlet(params["s"], ctx)
        if name == "bailey":
            return catalog_bailey(ctx)
        if name in ("plate-R", "plate-T", "plate-U"):
            return catalog_plate(name[-1], params["p"], params["x"], params.get("b"), ctx)
    except KeyError as exc:
        raise DomainError(f"series {name!r} needs parameter {exc.args[0]!r}") from None
    raise DomainError(f"unknown series {name!r}; catalog: {', '.join(CATALOG_NAMES)}")


# --------------------------------------------------------------------------
# diagnostics


@dataclass
class ConvergenceDiagnostics:
    rho_estimates: list = field(default_factory=list)
    chi_estimates: list = field(default_factory=list)
    classification: str = ""
    accelerated: bool = False


def classify(rho: float, delta: float = 0.05) -> str:
    if abs(rho) > 1 + delta:
        return "divergent"
    if abs(rho) < 1 - delta:
        return "linear"
    return "logarithmic"


def diagnostics(src: TermSource, transformed=(), n_raw: int | None = None,
                delta: float = 0.05, tail: int = 5) -> ConvergenceDiagnostics:
    """rho_n = (s_{n+1} - s)/(s_n - s) for raw sums and chi_n = (s'_n - s)/(s_n - s).

    Acceleration is reported when the last ``tail`` values of |chi_n| are
    non-increasing and the final one is below the first of that window.
    """
    if src.exact_sum is None:
        raise UnsupportedDiagnosticsError("diagnostics need a source with a known exact sum")
    s = src.exact_sum
    transformed = list(transformed)
    n = max(len(transformed), n_raw or 0, 2)
    sums = src.partial_sums(n)
    rho = []
    for a, b in zip(sums, sums[1:]):
        if a == s:
            break
        rho.append(float((b - s) / (a - s)))
    chi = []
    for t, a in zip(transformed, sums):
        if a == s:
            break
        chi.append(float((t - s) / (a - s)))
    out = ConvergenceDiagnostics(rho, chi, classify(rho[-1], delta) if rho else "")
    if len(chi) >= tail:
        w = [abs(c) for c in chi[-tail:]]
        out.accelerated = all(b <= a for a, b in zip(w, w[1:])) and w[-1] < w[0]
    return out

"""Van Wijngaarden condensation: a sign-uniform series becomes an alternating one.

    sum_k a(k) = sum_j (-1)^j A_j,   A_j = sum_k 2^k a(2^k (j+1) - 1)

Odd-index condensed sums are obtained for free from A_{2j+1} = (A_j - a(j)) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, NonConvergenceError, ResourceLimitError
from .numerics import PrecisionContext
from .series import TermSource

# doubles cannot represent term indices beyond this many bits
NATIVE_INDEX_BITS = 1020


@dataclass
class CondensedTail:
    j: int
    value: object
    inner_terms_used: int
    converged: bool


def condensed(src: TermSource, j: int, ctx: PrecisionContext | None = None) -> CondensedTail:
    """A_j, summing b_k = 2^k a(2^k (j+1) - 1) until b_k / partial < 10^-(acc+2)."""
    ctx = ctx or src.ctx
    if j < 0:
        raise DomainError("condensed index must be >= 0")
    kern = ctx.kernel
    tol = ctx.inner_tol
    total = kern.num(0)
    for k in range(ctx.inner_cap):
        idx = ((j + 1) << k) - 1
        if src.support_end is not None and idx > src.support_end:
            return CondensedTail(j, total, k, True)
        if ctx.kernel_kind == "native" and idx.bit_length() > NATIVE_INDEX_BITS:
            raise ResourceLimitError(f"term index 2^{k}*{j + 1}-1 not representable as a double")
        b = src(idx) * (1 << k)
        total += b
        # a zero partial sum gives no scale for the ratio test; keep summing
        if total != 0 and abs(b) < tol * abs(total):
            return CondensedTail(j, total, k + 1, True)
    raise NonConvergenceError(
        f"condensed series A_{j} did not meet the ratio test within {ctx.inner_cap} terms")


def condensed_odd_shortcut(A_half, a_half):
    """A_{i+1} = (A_{i/2} - a(i/2)) / 2 for even i."""
    return (A_half - a_half) / 2


@dataclass
class AlternatingPartialSums:
    """Lazily extended S_n = sum_{j<=n} (-1)^j A_j with the A_j cache."""

    src: TermSource
    ctx: PrecisionContext
    values: list = field(default_factory=list)
    a_cache: list = field(default_factory=list)
    inner_terms: int = 0

    def A(self, j: int):
        while len(self.a_cache) <= j:
            self._next_A()
        return self.a_cache[j]

    def _next_A(self):
        j = len(self.a_cache)
        if j % 2 == 1:
            half = (j - 1) // 2
            value = condensed_odd_shortcut(self.a_cache[half], self.src(half))
        else:
            tail = condensed(self.src, j, self.ctx)
            self.inner_terms += tail.inner_terms_used
            value = tail.value
        self.a_cache.append(value)

    def S(self, n: int):
        while len(self.values) <= n:
            i = len(self.values)
            term = self.A(i) if i % 2 == 0 else -self.A(i)
            self.values.append(term if i == 0 else self.values[-1] + term)
        return self.values[n]

    def exhausted_after(self, i: int) -> bool:
        """True when A_j == 0 for every j > i (finite sources only)."""
        end = self.src.support_end
        return end is not None and end <= i


def vw_partial_sums(src: TermSource, n_max: int, ctx: PrecisionContext | None = None):
    """S_0 ... S_{n_max} of the Van Wijngaarden transformed series."""
    if not src.nonalternating:
        raise DomainError("condensation needs a sign-uniform (nonalternating) source")
    ps = AlternatingPartialSums(src, ctx or src.ctx)
    ps.S(n_max)
    return ps

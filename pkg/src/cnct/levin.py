"""Levin-type sequence transformations and the delta transformation.

    S_k^(n)(beta, s, w) = Delta^k[(n+beta)_{k-1} s_n/w_n] / Delta^k[(n+beta)_{k-1} / w_n]

``levin_direct`` evaluates the binomial double sum literally; ``TransformTable``
runs the same transform as an in-place recursion, one new sequence element per
order, which is what the CNCT driver uses.
"""
from __future__ import annotations

from math import comb

from .errors import DegenerateTransformError, DomainError, RemainderEstimateError


def _one_like(x):
    return x * 0 + 1


def pochhammer_ratios(beta, n: int, k: int, one=1):
    """r_j = (beta+n+j)_{k-1} / (beta+n+k)_{k-1} for j = 0..k, as running products."""
    r = [one] * (k + 1)
    if k >= 2:
        # r_k = 1 and r_j = r_{j+1} (beta+n+j) / (beta+n+j+k-1)
        for j in range(k - 1, -1, -1):
            r[j] = r[j + 1] * (beta + n + j) / (beta + n + j + k - 1)
    return r


def levin_direct(beta, s, omega, k: int, n: int = 0):
    """Evaluate S_k^(n)(beta, s_n, omega_n) from its explicit binomial sums."""
    if k < 0 or n < 0:
        raise DomainError("k and n must be >= 0")
    if not beta > 0:
        raise DomainError("beta must be > 0")
    if k == 0:
        return s[n]
    one = _one_like(s[n])
    r = pochhammer_ratios(one * beta, n, k, one)
    num = one * 0
    den = one * 0
    for j in range(k + 1):
        w = omega[n + j]
        if w == 0:
            raise RemainderEstimateError(f"remainder estimate omega_{n + j} is zero")
        c = comb(k, j) * r[j] / w
        if j % 2:
            c = -c
        num += c * s[n + j]
        den += c
    if den == 0:
        raise DegenerateTransformError(f"zero denominator at order {k}")
    return num / den


def forward_differences(s, start: int, count: int):
    """[s_{j+1} - s_j for j in start .. start+count-1]."""
    return [s[j + 1] - s[j] for j in range(start, start + count)]


def delta(beta, s, k: int, n: int = 0):
    """delta_k^(n)(beta, s_n): the Levin-type transform with omega_j = s_{j+1} - s_j."""
    if len(s) < n + k + 2:
        raise DomainError(f"delta of order {k} at n={n} needs {n + k + 2} sequence elements")
    omega = [None] * n + forward_differences(s, n, k + 1)
    return levin_direct(beta, s, omega, k, n)


class TransformTable:
    """Running numerator/denominator state of the delta (or any Levin-type) transform.

    After the m-th ``push`` (m = 0, 1, ...) the table holds order m with initial
    element ``n0``; the value is ``num[0] / den[0]``.
    """

    def __init__(self, beta=1, n0: int = 0):
        if not beta > 0:
            raise DomainError("beta must be > 0")
        self.beta = beta
        self.n0 = n0
        self.num = []
        self.den = []

    @property
    def order(self) -> int:
        return len(self.num) - 1

    def factor(self, i: int, o: int):
        """Recursion weight for order ``i`` at inner offset ``o`` (1 <= o <= i)."""
        if i == 1:
            return 1
        b = self.beta + self.n0
        return (b + i - 1) * (b + i - 2) / ((b + i + o - 2) * (b + i + o - 3))

    def push(self, s_new, omega_new):
        """Append s_new/omega_new and 1/omega_new, update in place, return the new transform."""
        if omega_new == 0:
            raise RemainderEstimateError("remainder estimate is zero")
        self.num.append(s_new / omega_new)
        self.den.append(1 / omega_new)
        i = len(self.num) - 1
        num, den = self.num, self.den
        for pos in range(i - 1, -1, -1):
            f = self.factor(i, i - pos)
            num[pos] = num[pos + 1] - f * num[pos]
            den[pos] = den[pos + 1] - f * den[pos]
        if den[0] == 0:
            raise DegenerateTransformError(f"zero denominator at order {i}")
        return num[0] / den[0]

    def value(self):
        if not self.den or self.den[0] == 0:
            raise DegenerateTransformError("no transform available")
        return self.num[0] / self.den[0]


def table_push(table: TransformTable, s_new, omega_new):
    return table, table.push(s_new, omega_new)

"""Brute-force oracles and random parameter draws shared by the test modules."""
import math
import random

import numpy as np

from cnct import PrecisionContext
from cnct.distributions import LerchDistribution

CTX = PrecisionContext(acc=13)


def draws(family, count, seed=0, for_mean=False):
    """Random admissible parameter triples (z, s, v) for ``family``."""
    rng = random.Random(f"{family}-{seed}")
    lo_s = 4.0 if for_mean else 2.5
    out = []
    for _ in range(count):
        if family == "zipf":
            out.append((1, round(rng.uniform(lo_s, 6.0), 3), 1))
        elif family == "zipf-mandelbrot":
            out.append((1, round(rng.uniform(lo_s, 6.0), 3), round(rng.uniform(0.1, 10), 3)))
        elif family == "good":
            out.append((round(rng.uniform(0.1, 0.95), 3), round(rng.uniform(-1.0, 3.0), 3), 1))
        else:
            out.append((round(rng.uniform(0.1, 0.95), 3), round(rng.uniform(-1.0, 3.0), 3),
                        round(rng.uniform(0.1, 10), 3)))
    return out


def make(family, params, truncation=None):
    z, s, v = params
    return LerchDistribution(family, z, s, v, truncation, CTX)


def weights(d, n_hi):
    """Unnormalized masses z^m (m+v)^-s for support points lo..n_hi (float64)."""
    z, s, v = (float(x) for x in d._params)
    lo = d.support()[0]
    m = np.arange(lo - d.offset, n_hi - d.offset + 1, dtype=np.float64)
    return np.exp(m * math.log(z) - s * np.log(m + v))


def brute_sum_pmf(d, n_hi):
    return float(np.sum(weights(d, n_hi))) / d.norm_c_inv


def brute_cdf(d, n_max):
    w = weights(d, n_max)
    return np.cumsum(w) / d.norm_c_inv


def brute_mean(d, n_hi):
    lo = d.support()[0]
    n = np.arange(lo, n_hi + 1, dtype=np.float64)
    w = weights(d, n_hi)
    return float(np.sum(n * w) / np.sum(w))


def mean_horizon(d):
    """Support point beyond which the neglected mean tail is below 1e-12 relative."""
    z = float(d._params[0])
    if z < 1:
        return int(40 / -math.log10(z)) + 50
    return 10 ** 6

import random

import mpmath
import pytest
from hypothesis import given, strategies as st

from cnct import DegenerateTransformError, DomainError, RemainderEstimateError
from cnct.levin import TransformTable, delta, forward_differences, levin_direct, table_push

from conftest import rel


def alt_harmonic(n, dps=30):
    with mpmath.workdps(dps):
        out, total = [], mpmath.mpf(0)
        for j in range(n):
            total += mpmath.mpf(-1) ** j / (j + 1)
            out.append(total)
        return out


def random_alternating(rng, n):
    # s_j = s + sum of terms with alternating signs and random geometric/algebraic decay
    with mpmath.workdps(25):
        lam = mpmath.mpf(rng.uniform(0.2, 0.95))
        p = mpmath.mpf(rng.uniform(0.5, 2.5))
        c = mpmath.mpf(rng.uniform(0.5, 2.0))
        out, total = [], mpmath.mpf(rng.uniform(-1, 1))
        for j in range(n):
            total += c * (-lam) ** j / (j + 1) ** p
            out.append(total)
        return out


def test_order_zero():
    s = [1.0, 2.0, 3.0]
    assert levin_direct(1, s, [1, 1, 1], 0, 1) == 2.0
    assert delta(1, s, 0, 0) == 1.0


def test_order_one_closed_form():
    s, w = [1.0, 0.5], [0.7, -0.3]
    want = (s[1] / w[1] - s[0] / w[0]) / (1 / w[1] - 1 / w[0])
    assert levin_direct(1, s, w, 1) == pytest.approx(want, rel=1e-15)


def test_alternating_harmonic_direct():
    with mpmath.workdps(30):
        s = alt_harmonic(20)
        w = [None] * 0 + forward_differences(s, 0, 19)
        assert abs(levin_direct(1, s, w, 10) - mpmath.log(2)) < 1e-9
        assert abs(delta(1, s, 12) - mpmath.log(2)) < 1e-11


def test_constant_sequence_rejected():
    with pytest.raises(RemainderEstimateError):
        delta(1, [2.0] * 6, 3)


def test_delta_needs_enough_terms():
    with pytest.raises(DomainError):
        delta(1, [1.0, 2.0], 3)


def test_table_first_push():
    t = TransformTable()
    assert t.push(0.75, 0.25) == 0.75
    assert t.order == 0 and t.value() == 0.75


def test_table_matches_delta_on_alternating_harmonic():
    with mpmath.workdps(30):
        s = alt_harmonic(20)
        t = TransformTable()
        for j in range(13):
            v = t.push(s[j], s[j + 1] - s[j])
        assert rel(v, delta(1, s, 12)) < 1e-13


@pytest.mark.parametrize("trial", range(20))
def test_recursion_equals_direct_random(trial):
    rng = random.Random(1000 + trial)
    beta = rng.choice([1, 1, 0.5, 1.5, 2.7])
    n0 = rng.choice([0, 0, 1, 3])
    with mpmath.workdps(25):
        s = random_alternating(rng, n0 + 16)
        w = [None] * n0 + forward_differences(s, n0, 14)
        t = TransformTable(mpmath.mpf(beta), n0)
        for k in range(13):
            rec = t.push(s[n0 + k], w[n0 + k])
            assert rel(rec, levin_direct(mpmath.mpf(beta), s, w, k, n0)) < 1e-12


@given(alpha=st.floats(min_value=-1e3, max_value=1e3).filter(lambda a: abs(a) > 1e-3),
       k=st.integers(min_value=1, max_value=10))
def test_homogeneity(alpha, k):
    with mpmath.workdps(30):
        s = alt_harmonic(k + 2)
        a = mpmath.mpf(alpha)
        assert rel(delta(1, [a * x for x in s], k), a * delta(1, s, k)) < 1e-25


@given(c=st.floats(min_value=-1e3, max_value=1e3), k=st.integers(min_value=1, max_value=10))
def test_translation_covariance(c, k):
    with mpmath.workdps(30):
        s = alt_harmonic(k + 2)
        cc = mpmath.mpf(c)
        lhs = delta(1, [x + cc for x in s], k)
        assert abs(lhs - (delta(1, s, k) + cc)) < 1e-25 * max(1, abs(cc))


@given(s=st.floats(min_value=-10, max_value=10), c=st.floats(min_value=0.1, max_value=10))
def test_geometric_model_exact(s, c):
    with mpmath.workdps(30):
        seq = [mpmath.mpf(s) + mpmath.mpf(c) * mpmath.mpf(-0.5) ** n for n in range(4)]
        assert abs(delta(1, seq, 2) - mpmath.mpf(s)) < 1e-26 * max(1, abs(s))


def test_degenerate_is_recoverable():
    t = TransformTable()
    t.push(1.0, 1.0)
    with pytest.raises(DegenerateTransformError):
        t.push(1.0, 1.0)   # identical numerator/denominator rows cancel to 0/0
    assert t.push(0.5, -0.5) is not None


def test_zero_omega_and_bad_beta():
    with pytest.raises(RemainderEstimateError):
        TransformTable().push(1.0, 0)
    with pytest.raises(RemainderEstimateError):
        levin_direct(1, [1.0, 2.0], [1.0, 0.0], 1)
    with pytest.raises(DomainError):
        TransformTable(beta=0)


def test_table_push_helper():
    t, v = table_push(TransformTable(), 2.0, 1.0)
    assert v == 2.0 and t.order == 0

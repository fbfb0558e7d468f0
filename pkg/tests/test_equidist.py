import math

import numpy as np
import pytest

from primegaps.balanced import StarSetSpec, count_star
from primegaps.equidist import (
    STAR_SET_WINDOW,
    DiscrepancyConfig,
    bv_prime_discrepancy,
    bv_star_discrepancy,
    q_max_from_log_power,
    weighted_discrepancy,
)
from primegaps.sieve import build_factor_table, log_integral, primes_up_to

# pinned totals, cross-checked by the structural tests below
BV_PRIME_1E5_Q50 = 893.3927885
BV_STAR_1E5_Q50 = 30841.48836
BV_MOBIUS_1E5_Q20 = 5996.08824


def test_config_validation():
    with pytest.raises(ValueError):
        DiscrepancyConfig(N=100, q_max=0)
    with pytest.raises(ValueError):
        DiscrepancyConfig(N=100, q_max=10, target="nope")
    with pytest.raises(ValueError):
        DiscrepancyConfig(N=100, q_max=10, target=STAR_SET_WINDOW)
    with pytest.raises(ValueError):
        DiscrepancyConfig(N=100, q_max=100)


def test_q_max_from_log_power():
    assert q_max_from_log_power(10**8, 2.0) == int(10**4 / math.log(10**8) ** 2)
    assert q_max_from_log_power(10, 10.0) == 1  # clamped


def test_prime_rows_small_moduli(table_full_1e5):
    N = 10**5
    cfg = DiscrepancyConfig(N=N, q_max=50)
    rep = bv_prime_discrepancy(cfg, table_full_1e5)
    ps = [int(p) for p in primes_up_to(N)]
    li = log_integral(N)
    # q = 1: single class, deviation |pi(N) - Li(N)|
    assert rep.per_q[0].q == 1
    assert math.isclose(rep.per_q[0].max_abs_dev, abs(len(ps) - li), rel_tol=1e-12)
    # q = 2: only class 1 is coprime; count odd primes by hand
    odd = sum(1 for p in ps if p % 2 == 1)
    assert rep.per_q[1].worst_a == 1
    assert math.isclose(rep.per_q[1].max_abs_dev, abs(odd - li / 1), rel_tol=1e-12)
    # q = 3 by hand
    c1 = sum(1 for p in ps if p % 3 == 1)
    c2 = sum(1 for p in ps if p % 3 == 2)
    expect = max(abs(c1 - li / 2), abs(c2 - li / 2))
    assert math.isclose(rep.per_q[2].max_abs_dev, expect, rel_tol=1e-12)
    assert math.isclose(rep.total, math.fsum(r.max_abs_dev for r in rep.per_q), rel_tol=1e-15)
    assert math.isclose(rep.total, BV_PRIME_1E5_Q50, abs_tol=5e-4)


def test_prime_partition_identity(table_full_1e5):
    # per-class counts partition the primes for every q
    N = 10**5
    ps = np.array([int(p) for p in primes_up_to(N)])
    for q in (2, 6, 30, 47):
        counts = np.bincount(ps % q, minlength=q)
        assert counts.sum() == len(ps)
        # non-coprime classes hold only the primes dividing q
        for a in range(q):
            if math.gcd(a, q) > 1:
                assert counts[a] == sum(1 for p in ps if p % q == a and q % p == 0)


def test_prime_total_monotone_in_q_max(table_full_1e5):
    N = 10**5
    t20 = bv_prime_discrepancy(DiscrepancyConfig(N=N, q_max=20), table_full_1e5).total
    t50 = bv_prime_discrepancy(DiscrepancyConfig(N=N, q_max=50), table_full_1e5).total
    assert t50 > t20 > 0


def test_prime_scale_sanity(table_full_1e4, table_full_1e6):
    # with the q_max clamp from the log-power rule, the total stays far
    # below the trivial bound q_max * pi(N)
    for N, t in ((10**4, table_full_1e4), (10**6, table_full_1e6)):
        qm = q_max_from_log_power(N, 3.0)
        rep = bv_prime_discrepancy(DiscrepancyConfig(N=N, q_max=qm), t)
        pi_n = int((t.omega[: N - t.lo + 1] == 1).sum())
        assert rep.total < 0.05 * qm * pi_n


def test_star_discrepancy_counts_match_count_star(table_win_1e5):
    N = 10**5
    spec = StarSetSpec(N=N, r=2, eps=0.3)
    cfg = DiscrepancyConfig(N=N, q_max=50, target=STAR_SET_WINDOW, spec=spec)
    rep = bv_star_discrepancy(cfg, table_win_1e5)
    count, _ = count_star(spec, table_win_1e5)
    # q = 1: the single class holds the whole set
    assert math.isclose(
        rep.per_q[0].max_abs_dev, abs(count - rep.per_q[0].main_term), rel_tol=1e-12
    )
    assert rep.per_q[0].alt_max_abs_dev is not None
    assert math.isclose(rep.total, BV_STAR_1E5_Q50, abs_tol=5e-3)
    with pytest.raises(ValueError):
        bv_star_discrepancy(DiscrepancyConfig(N=N, q_max=10), table_win_1e5)
    with pytest.raises(ValueError):
        bv_prime_discrepancy(cfg, table_win_1e5)


def test_weighted_zero_coefficients(table_full_1e4):
    N = 10**4
    cfg = DiscrepancyConfig(N=N, q_max=10)
    m_max = int(N**0.5)
    rep = weighted_discrepancy(cfg, 0.5, np.zeros(m_max), table_full_1e4)
    assert rep.total == 0.0


def test_weighted_m1_reduces_to_prime_case(table_full_1e4):
    # alpha close to 1 gives m_max = 1 and f(1) = 1: the weighted sum is the
    # plain prime discrepancy with main term Li(N)/phi(q)
    N = 10**4
    cfg = DiscrepancyConfig(N=N, q_max=15)
    wrep = weighted_discrepancy(cfg, 0.999, np.ones(1), table_full_1e4)
    prep = bv_prime_discrepancy(cfg, table_full_1e4)
    for wr, pr in zip(wrep.per_q, prep.per_q):
        assert math.isclose(wr.max_abs_dev, pr.max_abs_dev, rel_tol=1e-10)
    assert math.isclose(wrep.total, prep.total, rel_tol=1e-10)


def test_weighted_validation(table_full_1e4):
    N = 10**4
    cfg = DiscrepancyConfig(N=N, q_max=5)
    with pytest.raises(ValueError):
        weighted_discrepancy(cfg, 1.5, np.ones(10), table_full_1e4)
    with pytest.raises(ValueError):
        weighted_discrepancy(cfg, 0.5, np.ones(3), table_full_1e4)  # too short
    bad = np.ones(int(N**0.5))
    bad[0] = 2.0
    with pytest.raises(ValueError):
        weighted_discrepancy(cfg, 0.5, bad, table_full_1e4)


def test_weighted_mobius_pinned(table_full_1e5):
    from primegaps.sieve import factorize, mobius

    N = 10**5
    m_max = int(N**0.5)
    ft = build_factor_table(2, m_max + 1)
    f = np.array([1.0] + [float(mobius(factorize(ft, m))) for m in range(2, m_max + 1)])
    cfg = DiscrepancyConfig(N=N, q_max=20)
    rep = weighted_discrepancy(cfg, 0.5, f, table_full_1e5)
    assert math.isclose(rep.total, BV_MOBIUS_1E5_Q20, abs_tol=5e-3)


def test_weighted_hand_check_q3(table_full_1e4):
    # recompute the q = 3 row of a two-term weighted sum from scratch
    N = 10**4
    f = np.zeros(100)
    f[0], f[2] = 1.0, -0.5  # f(1) = 1, f(3) = -1/2
    cfg = DiscrepancyConfig(N=N, q_max=3)
    rep = weighted_discrepancy(cfg, 0.5, f, table_full_1e4)
    ps = [int(p) for p in primes_up_to(N)]
    li = log_integral
    best = -1.0
    for a in (1, 2):
        s = sum(1 for p in ps if p % 3 == a) - li(N) / 2
        # m = 3 shares a factor with q: primes drop out, main term stays
        s -= -0.5 * li(N / 3) / 2
        best = max(best, abs(s))
    assert math.isclose(rep.per_q[2].max_abs_dev, best, rel_tol=1e-10)

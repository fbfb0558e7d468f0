"""Classification and counting of balanced numbers and star sets.

An integer n >= 2 is eps-balanced when every pair of its prime divisors
p, q satisfies min(p, q) >= max(p, q)^(1-eps); equivalently, when
(1 - eps) * ln P^+(n) <= ln P^-(n).  At eps = 0 this picks out exactly
the primes and prime powers.  The star set over a window [N, 2N) keeps
the n with exactly r prime factors (with multiplicity), all lying in the
prime interval [N^a1, N^a2] with a1 = (1 - eps/2)/r, a2 = (1 + eps/2)/r.

Boundary comparisons are done in log space with a fixed tie tolerance so
that regression counts are floating-point deterministic; ties count as
inside.  n = 1 is not eps-balanced for any eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import density
from .sieve import FactorTable, Factorization

#: Tie tolerance for log-space boundary comparisons; ties count as inside.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class BalanceClassification:
    n: int
    omega_big: int
    threshold: float  # minimal eps for which n is eps-balanced
    is_prime: bool


@dataclass(frozen=True)
class StarSetSpec:
    """Window-base N, factor count r and width eps of a star set.

    The derived exponents a1 = (1 - eps/2)/r and a2 = (1 + eps/2)/r bound
    the prime interval I = [N^a1, N^a2].
    """

    N: int
    r: int
    eps: float

    def __post_init__(self):
        if self.N < 2:
            raise ValueError(f"window base must be >= 2, got N={self.N}")
        if self.r < 1:
            raise ValueError(f"need r >= 1, got r={self.r}")
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"need eps in (0, 1), got eps={self.eps}")

    @property
    def a1(self) -> float:
        return (1.0 - self.eps / 2.0) / self.r

    @property
    def a2(self) -> float:
        return (1.0 + self.eps / 2.0) / self.r


def is_eps_balanced(f: Factorization, eps: float) -> bool:
    """True iff P^-(n) >= P^+(n)^(1-eps), with ties counting as balanced."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"need eps in [0, 1), got {eps}")
    if f.n < 2:
        raise ValueError("n = 1 is not classified; balance needs n >= 2")
    return (1.0 - eps) * math.log(f.p_plus) <= math.log(f.p_minus) + TIE_TOL


def classify(f: Factorization) -> BalanceClassification:
    """Balance threshold and prime-factor count for one integer."""
    if f.n < 2:
        raise ValueError("n = 1 is not classified; balance needs n >= 2")
    if f.p_minus == f.p_plus:
        threshold = 0.0  # prime or prime power
    else:
        threshold = 1.0 - math.log(f.p_minus) / math.log(f.p_plus)
    return BalanceClassification(
        n=f.n, omega_big=f.omega_big, threshold=threshold, is_prime=f.omega_big == 1
    )


def in_star_set(f: Factorization, spec: StarSetSpec) -> bool:
    """Membership of one integer in the star set over [N, 2N)."""
    n, N = f.n, spec.N
    if not N <= n < 2 * N:
        return False
    if f.omega_big != spec.r:
        return False
    ln_n = math.log(N)
    return (
        math.log(f.p_minus) >= spec.a1 * ln_n - TIE_TOL
        and math.log(f.p_plus) <= spec.a2 * ln_n + TIE_TOL
    )


def in_ptilde(f: Factorization, spec: StarSetSpec) -> bool:
    """Primes in [N, 2N) together with the star-set members."""
    n, N = f.n, spec.N
    if N <= n < 2 * N and f.omega_big == 1:
        return True
    return in_star_set(f, spec)


def _window_slice(table: FactorTable, N: int) -> slice:
    if table.lo > N or table.hi < 2 * N:
        raise ValueError(
            f"table [{table.lo}, {table.hi}) does not cover window [{N}, {2 * N})"
        )
    return slice(N - table.lo, 2 * N - table.lo)


def star_mask(spec: StarSetSpec, table: FactorTable) -> np.ndarray:
    """Boolean star-set mask over the window offsets [N, 2N) of the table."""
    sl = _window_slice(table, spec.N)
    ln_n = math.log(spec.N)
    om = table.omega[sl]
    lpmin = np.log(table.p_minus[sl].astype(np.float64))
    lpmax = np.log(table.p_plus[sl].astype(np.float64))
    return (
        (om == spec.r)
        & (lpmin >= spec.a1 * ln_n - TIE_TOL)
        & (lpmax <= spec.a2 * ln_n + TIE_TOL)
    )


def ptilde_mask(spec: StarSetSpec, table: FactorTable) -> np.ndarray:
    """Mask over [N, 2N): window primes together with star-set members."""
    sl = _window_slice(table, spec.N)
    return (table.omega[sl] == 1) | star_mask(spec, table)


def count_star(spec: StarSetSpec, table: FactorTable) -> tuple[int, float]:
    """Exact star-set count over [N, 2N) plus the C0(r, eps) * N / ln N prediction."""
    count = int(star_mask(spec, table).sum())
    c0v = density.c0(spec.r, spec.eps).value
    predicted = c0v * spec.N / math.log(spec.N)
    return count, predicted


def balanced_mask(N: int, r: int, eps: float, table: FactorTable) -> np.ndarray:
    """Mask over [N, 2N) of eps-balanced numbers with exactly r prime factors."""
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"need eps in [0, 1), got {eps}")
    sl = _window_slice(table, N)
    om = table.omega[sl]
    lpmin = np.log(table.p_minus[sl].astype(np.float64))
    lpmax = np.log(table.p_plus[sl].astype(np.float64))
    return (om == r) & ((1.0 - eps) * lpmax <= lpmin + TIE_TOL)


def count_eps_r(N: int, r: int, eps: float, table: FactorTable) -> int:
    """#{N <= n < 2N : n eps-balanced, Omega(n) = r} by full scan."""
    return int(balanced_mask(N, r, eps, table).sum())

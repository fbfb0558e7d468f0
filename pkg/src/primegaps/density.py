"""The star-set density constant C0(r, eps), its upper bound and tail sum.

C0(r, eps) is the integral of 1/(a_1 ... a_{r-1} (1 - sum a_i)) over the
box [a1, a2]^{r-1}, restricted by the indicator a1 <= 1 - sum a_i <= a2
(the last prime exponent must land in the same interval as the others;
for r = 2 the restriction is automatic since a1 + a2 = 1).  Routes:

- r = 2: closed form 2 * ln((1 + eps/2) / (1 - eps/2));
- r = 3: adaptive 2-D quadrature on the constrained region;
- r >= 4: seeded Monte Carlo over the box with the indicator.

The integrand is smooth and bounded on the box for eps < 1 (the last
coordinate stays >= a1 > 0), so no singularity handling is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

CLOSED_FORM = "closed_form"
QUADRATURE = "quadrature"
MONTE_CARLO = "monte_carlo"

_MC_CHUNK = 1 << 19


@dataclass(frozen=True)
class DensityResult:
    r: int
    eps: float
    value: float
    method: str
    abs_error_estimate: float


def _check_args(r: int, eps: float) -> None:
    if r < 2:
        raise ValueError(f"density constant needs r >= 2, got r={r}")
    if not 0.0 <= eps < 1.0:
        raise ValueError(f"need eps in [0, 1), got eps={eps}")


def _bounds(r: int, eps: float) -> tuple[float, float]:
    return (1.0 - eps / 2.0) / r, (1.0 + eps / 2.0) / r


def c0_closed_form_r2(eps: float) -> float:
    """Antiderivative ln(a/(1-a)) evaluated at a2 and a1 (note 1 - a2 = a1)."""
    return 2.0 * math.log((1.0 + eps / 2.0) / (1.0 - eps / 2.0))


def c0_quadrature(r: int, eps: float) -> DensityResult:
    """C0 by adaptive quadrature; supported for r = 2 and r = 3."""
    _check_args(r, eps)
    if eps == 0.0:
        return DensityResult(r, eps, 0.0, QUADRATURE, 0.0)
    a1, a2 = _bounds(r, eps)
    if r == 2:
        val, err = integrate.quad(
            lambda a: 1.0 / (a * (1.0 - a)), a1, a2, epsabs=1e-13, epsrel=1e-13
        )
        return DensityResult(r, eps, float(val), QUADRATURE, float(err))
    if r == 3:
        # alpha2 runs over [a1, a2] clipped so that 1 - alpha1 - alpha2
        # stays inside [a1, a2] as well.
        def gfun(x):
            return max(a1, 1.0 - a2 - x)

        def hfun(x):
            return max(gfun(x), min(a2, 1.0 - a1 - x))

        val, err = integrate.dblquad(
            lambda y, x: 1.0 / (x * y * (1.0 - x - y)),
            a1,
            a2,
            gfun,
            hfun,
            epsabs=1e-12,
            epsrel=1e-12,
        )
        return DensityResult(r, eps, float(val), QUADRATURE, float(err))
    raise ValueError(f"quadrature route supports r in {{2, 3}}, got r={r}")


def c0_monte_carlo(r: int, eps: float, samples: int = 2_000_000, seed: int = 0) -> DensityResult:
    """C0 by seeded Monte Carlo over the (r-1)-dimensional box.

    Sampling is chunked in a fixed order with one PCG64 stream, so the
    result is deterministic for a given (samples, seed).
    """
    _check_args(r, eps)
    if eps == 0.0:
        return DensityResult(r, eps, 0.0, MONTE_CARLO, 0.0)
    a1, a2 = _bounds(r, eps)
    dim = r - 1
    volume = (a2 - a1) ** dim
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(_MC_CHUNK, samples - done)
        u = rng.uniform(a1, a2, size=(m, dim))
        last = 1.0 - u.sum(axis=1)
        ok = (last >= a1) & (last <= a2)
        vals = np.zeros(m)
        if ok.any():
            vals[ok] = 1.0 / (np.prod(u[ok], axis=1) * last[ok])
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    std_err = volume * math.sqrt(var / samples)
    return DensityResult(r, eps, volume * mean, MONTE_CARLO, 3.0 * std_err)


def c0(r: int, eps: float, mc_samples: int = 2_000_000, seed: int = 0) -> DensityResult:
    """C0(r, eps) by the preferred route for each r."""
    _check_args(r, eps)
    if eps == 0.0:
        return DensityResult(r, eps, 0.0, CLOSED_FORM, 0.0)
    if r == 2:
        return DensityResult(r, eps, c0_closed_form_r2(eps), CLOSED_FORM, 0.0)
    if r == 3:
        return c0_quadrature(r, eps)
    return c0_monte_carlo(r, eps, samples=mc_samples, seed=seed)


def c0_upper_bound(r: int, eps: float) -> float:
    """The elementary bound r * eps^(r-1) / (1 - eps/2)^r."""
    if r < 2:
        raise ValueError(f"need r >= 2, got r={r}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"need eps in (0, 1), got eps={eps}")
    return r * eps ** (r - 1) / (1.0 - eps / 2.0) ** r


def _upper_bound_tail(eps: float, r_max: int) -> float:
    """Closed form for sum_{r > r_max} r * eps^(r-1) / (1 - eps/2)^r."""
    y = eps / (1.0 - eps / 2.0)
    if y >= 1.0:
        raise ValueError(f"tail series diverges for eps={eps}")
    m = r_max + 1
    # sum_{r >= m} r y^r = y^m (m - (m-1) y) / (1-y)^2
    series = y**m * (m - (m - 1) * y) / (1.0 - y) ** 2
    return series / eps


def c0_tail_sum(
    eps: float, r_max: int, mc_samples: int = 1_000_000, seed: int = 0
) -> tuple[float, float]:
    """Sum of C0(r, eps) for r = 2..r_max, plus an analytic bound on the rest.

    The tail bound comes from the elementary upper bound summed in closed
    form.  For eps <= 0.05 the combined value is checked against the 3*eps
    budget that makes the balanced composites negligible next to the primes.
    """
    if not 0.0 < eps <= 0.1:
        raise ValueError(f"tail sum is asserted for eps in (0, 0.1], got {eps}")
    if r_max < 3:
        raise ValueError(f"need r_max >= 3, got {r_max}")
    total = math.fsum(
        c0(r, eps, mc_samples=mc_samples, seed=seed + r).value for r in range(2, r_max + 1)
    )
    tail = _upper_bound_tail(eps, r_max)
    if eps <= 0.05 and not total + tail < 3.0 * eps:
        raise ArithmeticError(
            f"density tail budget violated: sum={total} tail={tail} vs 3*eps={3 * eps}"
        )
    return total, tail

"""Discrepancy sums over arithmetic progressions, computed exactly.

For each modulus q up to a cutoff, the target set (primes up to N, or the
star-set members of a window [N, 2N)) is counted in every residue class;
the report records, per q, the worst deviation over classes coprime to q
from the expected main term, and the sum of those maxima over q.  A third
variant weights the inner prime counts by a bounded coefficient f(m) over
products m * p <= N.

The cutoffs that theory phrases through log powers are explicit
parameters here; `q_max_from_log_power` is a convenience derivation only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import balanced, density
from .sieve import FactorTable, euler_phi_int, log_integral

PRIMES_LE_N = "primes_le_N"
STAR_SET_WINDOW = "star_set_window"


@dataclass(frozen=True)
class DiscrepancyConfig:
    N: int
    q_max: int
    target: str = PRIMES_LE_N
    spec: balanced.StarSetSpec | None = None

    def __post_init__(self):
        if self.q_max < 1:
            raise ValueError(f"need q_max >= 1, got {self.q_max}")
        if self.target not in (PRIMES_LE_N, STAR_SET_WINDOW):
            raise ValueError(f"unknown target {self.target!r}")
        if self.target == STAR_SET_WINDOW and self.spec is None:
            raise ValueError("star-set target needs a StarSetSpec")
        if self.target == PRIMES_LE_N and self.q_max >= self.N:
            raise ValueError(f"q_max={self.q_max} must stay below N={self.N}")


def q_max_from_log_power(N: int, C: float) -> int:
    """floor(sqrt(N) / ln^C N), clamped to at least 1."""
    return max(1, int(math.sqrt(N) / math.log(N) ** C))


@dataclass(frozen=True)
class QRow:
    q: int
    worst_a: int
    max_abs_dev: float
    main_term: float  # expected per-class count for this q
    alt_max_abs_dev: float | None = None  # under the window-matched main term
    alt_main_term: float | None = None


@dataclass(frozen=True)
class DiscrepancyReport:
    per_q: tuple[QRow, ...]
    total: float
    main_term_used: float


def _coprime_residues(q: int) -> list[int]:
    return [a for a in range(q) if math.gcd(a, q) == 1]


def _per_class_counts(values: np.ndarray, q: int) -> np.ndarray:
    return np.bincount(values % q, minlength=q)


def _max_dev_row(counts: np.ndarray, q: int, main: float) -> tuple[int, float]:
    worst_a, worst = 0, -1.0
    for a in _coprime_residues(q):
        dev = abs(float(counts[a]) - main)
        if dev > worst:
            worst_a, worst = a, dev
    return worst_a, worst


def _target_values(cfg: DiscrepancyConfig, table: FactorTable) -> np.ndarray:
    if cfg.target == PRIMES_LE_N:
        if table.lo > 2 or table.hi <= cfg.N:
            raise ValueError(f"table must cover [2, {cfg.N}]")
        upto = cfg.N - table.lo + 1
        return table.lo + np.flatnonzero(table.omega[:upto] == 1)
    spec = cfg.spec
    assert spec is not None
    mask = balanced.star_mask(spec, table)
    return spec.N + np.flatnonzero(mask)


def bv_prime_discrepancy(cfg: DiscrepancyConfig, table: FactorTable) -> DiscrepancyReport:
    """Worst-class prime-count deviation from Li(N)/phi(q), summed over q."""
    if cfg.target != PRIMES_LE_N:
        raise ValueError("config target must be primes_le_N")
    primes = _target_values(cfg, table)
    li_n = log_integral(cfg.N)
    rows = []
    for q in range(1, cfg.q_max + 1):
        counts = _per_class_counts(primes, q)
        main = li_n / euler_phi_int(q)
        worst_a, dev = _max_dev_row(counts, q, main)
        rows.append(QRow(q=q, worst_a=worst_a, max_abs_dev=dev, main_term=main))
    total = math.fsum(r.max_abs_dev for r in rows)
    return DiscrepancyReport(per_q=tuple(rows), total=total, main_term_used=li_n)


def bv_star_discrepancy(cfg: DiscrepancyConfig, table: FactorTable) -> DiscrepancyReport:
    """Star-set analogue with main term C0(r, eps) * Li(N) / phi(q).

    The window-matched alternative C0 * (Li(2N) - Li(N)) / phi(q) is
    reported alongside, since the set is counted over [N, 2N).
    """
    if cfg.target != STAR_SET_WINDOW or cfg.spec is None:
        raise ValueError("config target must be star_set_window with a spec")
    spec = cfg.spec
    members = _target_values(cfg, table)
    c0v = density.c0(spec.r, spec.eps).value
    li_n = log_integral(spec.N)
    li_window = log_integral(2 * spec.N) - li_n
    rows = []
    for q in range(1, cfg.q_max + 1):
        counts = _per_class_counts(members, q)
        phi_q = euler_phi_int(q)
        main = c0v * li_n / phi_q
        alt_main = c0v * li_window / phi_q
        worst_a, dev = _max_dev_row(counts, q, main)
        _, alt_dev = _max_dev_row(counts, q, alt_main)
        rows.append(
            QRow(
                q=q,
                worst_a=worst_a,
                max_abs_dev=dev,
                main_term=main,
                alt_max_abs_dev=alt_dev,
                alt_main_term=alt_main,
            )
        )
    total = math.fsum(r.max_abs_dev for r in rows)
    return DiscrepancyReport(per_q=tuple(rows), total=total, main_term_used=c0v * li_n)


def weighted_discrepancy(
    cfg: DiscrepancyConfig, alpha: float, f: np.ndarray, table: FactorTable
) -> DiscrepancyReport:
    """Bounded-coefficient discrepancy over products m * p <= N.

    f is indexed so that f[m - 1] weights m, for m = 1 .. floor(N^(1-alpha));
    every |f(m)| must be <= 1.  The per-(q, a) deviation is

        | sum_m f(m) ( #{p <= N/m : m p == a mod q} - Li(N/m)/phi(q) ) |,

    maximized over a coprime to q; classes with gcd(m, q) > 1 contribute
    no primes but keep their main term, exactly as the sum is written.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"need alpha in (0, 1), got {alpha}")
    N = cfg.N
    m_max = int(N ** (1.0 - alpha))
    f = np.asarray(f, dtype=np.float64)
    if f.size < m_max:
        raise ValueError(f"need f values for m = 1..{m_max}, got {f.size}")
    if not np.all(np.isfinite(f[:m_max])) or np.abs(f[:m_max]).max(initial=0.0) > 1.0 + 1e-12:
        raise ValueError("f must be finite with |f(m)| <= 1")
    primes = _target_values(
        DiscrepancyConfig(N=N, q_max=cfg.q_max, target=PRIMES_LE_N), table
    )
    li_n = log_integral(N)
    rows = []
    for q in range(1, cfg.q_max + 1):
        phi_q = euler_phi_int(q)
        acc = np.zeros(q, dtype=np.float64)  # acc[a] = sum_m f(m) * count_m(a)
        base = 0.0  # sum_m f(m) * Li(N/m)/phi(q)
        idx = np.arange(q)
        for m in range(1, m_max + 1):
            fm = float(f[m - 1])
            base += fm * log_integral(max(N / m, 2.0)) / phi_q
            if fm == 0.0 or math.gcd(m, q) > 1:
                continue
            cut = np.searchsorted(primes, N // m, side="right")
            cm = _per_class_counts(primes[:cut], q)
            inv = pow(m, -1, q) if q > 1 else 0
            acc += fm * cm[(idx * inv) % q]
        worst_a, worst = 0, -1.0
        for a in _coprime_residues(q):
            dev = abs(acc[a] - base)
            if dev > worst:
                worst_a, worst = a, dev
        rows.append(QRow(q=q, worst_a=worst_a, max_abs_dev=worst, main_term=base))
    total = math.fsum(r.max_abs_dev for r in rows)
    return DiscrepancyReport(per_q=tuple(rows), total=total, main_term_used=li_n)

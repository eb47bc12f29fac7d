"""Seedable variate generation for the Poisson, broad-Sibuya and DS laws.

DS sampling goes through the compound representation: a Poisson number of
broad-Sibuya jumps. Broad-Sibuya draws use inverse CDF over a lazily grown
cumulative table with geometric doubling; draws landing beyond the capped
table fall back to exact inversion of the closed-form survival function
(the tables a doubling-only scheme would need for small alpha are
astronomically large). Poisson and binomial primitives are delegated to
numpy's Generator (transformed rejection / BTPE: O(1) at large rates).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

from .errors import DomainError
from .genfun import stability_mu, translate_params
from .params import BSibParams, DSParams, ds_to_compound
from .pmf import PmfTable, bsib_pmf_array, ds_pmf

__all__ = [
    "RngStream",
    "ExperimentResult",
    "sample_poisson",
    "sample_bsib",
    "sample_ds",
    "thin",
    "translate",
    "stability_experiment",
    "pool_counts",
    "tv_against_table",
]

_MASK64 = (1 << 64) - 1

_TABLE_INIT = 64
_TABLE_CAP = 1 << 16

# numpy's binomial takes int64 trials; beyond that use the normal limit,
# whose error is far below double resolution at such counts.
_BINOMIAL_EXACT_MAX = (1 << 62) - 1


class RngStream:
    """Deterministic random stream: same seed, same build, same sequence.

    Wraps a PCG64 generator behind a SeedSequence so that :meth:`split`
    yields statistically independent child streams. Instances are
    single-owner: do not share one stream across threads.
    """

    def __init__(self, seed: int, _ss: SeedSequence | None = None):
        self.seed = int(seed) & _MASK64
        self._ss = SeedSequence(self.seed) if _ss is None else _ss
        self._gen = Generator(PCG64(self._ss))

    @property
    def spawn_key(self) -> tuple[int, ...]:
        return tuple(self._ss.spawn_key)

    def split(self, n_children: int = 2) -> list["RngStream"]:
        """Derive independent child streams; parent remains usable."""
        return [RngStream(self.seed, _ss=child) for child in self._ss.spawn(n_children)]

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return float(self._gen.random())

    def poisson(self, rate: float) -> int:
        return int(self._gen.poisson(rate))

    def binomial(self, n: int, prob: float) -> int:
        return int(self._gen.binomial(n, prob))

    def normal(self) -> float:
        return float(self._gen.standard_normal())

    def __repr__(self) -> str:  # pragma: no cover
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"


def sample_poisson(rate: float, rng: RngStream) -> int:
    """One Poisson(rate) variate; rate = 0 returns 0."""
    rate = float(rate)
    if not (math.isfinite(rate) and rate >= 0.0):
        raise DomainError(f"Poisson rate must be finite and >= 0, got {rate}")
    if rate == 0.0:
        return 0
    return rng.poisson(rate)


class _BsibTable:
    """Lazily grown inverse-CDF table for one broad-Sibuya law."""

    __slots__ = ("params", "cum")

    def __init__(self, b: BSibParams):
        self.params = b
        self._rebuild(_TABLE_INIT)

    def _rebuild(self, size: int) -> None:
        self.cum = np.cumsum(bsib_pmf_array(self.params, size)[1:])

    def draw(self, u: float) -> int:
        while u > self.cum[-1] and self.cum.size < _TABLE_CAP:
            self._rebuild(min(2 * self.cum.size, _TABLE_CAP))
        if u <= self.cum[-1]:
            return int(np.searchsorted(self.cum, u, side="right")) + 1
        return self._tail_quantile(u)

    def _tail_quantile(self, u: float) -> int:
        # smallest n with S(n) <= 1-u, from the closed-form survival:
        # S(n) = rho/n at alpha = 1, else (1-rho) Gamma(n+1-a)/(Gamma(1-a) n!)
        alpha, rho = self.params.alpha, self.params.rho
        target = 1.0 - u
        if alpha == 2.0:  # support is {1, 2}; only float dust lands here
            return 2
        if alpha == 1.0:
            return max(2, math.ceil(rho / target))
        log_target = math.log(target)
        const = math.log(abs(1.0 - rho)) - math.lgamma(1.0 - alpha)

        def log_survival(n: int) -> float:
            return const + math.lgamma(n + 1.0 - alpha) - math.lgamma(n + 1.0)

        lo = int(self.cum.size)
        if log_survival(lo) <= log_target:
            return lo + 1
        hi = 2 * lo
        while log_survival(hi) > log_target:
            lo = hi
            hi *= 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if log_survival(mid) > log_target:
                lo = mid
            else:
                hi = mid
        return hi


_bsib_tables: dict[tuple[float, float], _BsibTable] = {}


def sample_bsib(b: BSibParams, rng: RngStream) -> int:
    """One broad-Sibuya variate (support {1, 2, ...}) by inverse CDF."""
    key = (b.alpha, b.rho)
    table = _bsib_tables.get(key)
    if table is None:
        table = _bsib_tables[key] = _BsibTable(b)
    return table.draw(rng.random())


def sample_ds(p: DSParams, rng: RngStream) -> int:
    """One DS variate: Poisson count of broad-Sibuya jumps."""
    if p.gamma == 0.0:
        return sample_poisson(p.delta, rng)
    c = ds_to_compound(p)
    count = sample_poisson(c.lam, rng)
    total = 0
    for _ in range(count):
        total += sample_bsib(c.summand, rng)
    return total


def thin(x: int, a: float, rng: RngStream) -> int:
    """Binomial thinning a o x: keep each of x unit counts with probability a."""
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise DomainError(f"thinning fraction must lie in [0, 1], got {a}")
    x = int(x)
    if x < 0:
        raise DomainError(f"cannot thin a negative count, got {x}")
    if a == 0.0 or x == 0:
        return 0
    if a == 1.0:
        return x
    if x <= _BINOMIAL_EXACT_MAX:
        return rng.binomial(x, a)
    mean = x * a
    sd = math.sqrt(x * a * (1.0 - a))
    draw = int(round(mean + sd * rng.normal()))
    return min(max(draw, 0), x)


def translate(x: int, m: float, rng: RngStream) -> int:
    """Poisson translation x (+) m: add an independent Poisson(m) count."""
    m = float(m)
    if not (math.isfinite(m) and m >= 0.0):
        raise DomainError(
            f"sampling can only realize nonnegative translations, got {m}"
        )
    return int(x) + sample_poisson(m, rng)


@dataclass(frozen=True)
class ExperimentResult:
    """Outcome of the Monte-Carlo stability check."""

    n_samples: int
    mu: float
    tv_distance: float
    chi_square_stat: float
    bins_used: int


def pool_counts(
    observed: np.ndarray, expected: np.ndarray, min_expected: float = 5.0
) -> tuple[np.ndarray, np.ndarray]:
    """Merge consecutive bins until every pooled bin expects >= min_expected."""
    obs_pooled: list[float] = []
    exp_pooled: list[float] = []
    acc_obs = acc_exp = 0.0
    for o, e in zip(observed, expected):
        acc_obs += float(o)
        acc_exp += float(e)
        if acc_exp >= min_expected:
            obs_pooled.append(acc_obs)
            exp_pooled.append(acc_exp)
            acc_obs = acc_exp = 0.0
    if acc_exp > 0.0:
        if exp_pooled:
            obs_pooled[-1] += acc_obs
            exp_pooled[-1] += acc_exp
        else:
            obs_pooled.append(acc_obs)
            exp_pooled.append(acc_exp)
    return np.asarray(obs_pooled), np.asarray(exp_pooled)


def _support_cut(table: PmfTable, n_samples: int) -> int:
    # individual bins up to: 1-1e-6 coverage, but never past the point where
    # expected counts drop below ~5 (fine bins in a heavy tail inflate TV)
    coverage_cut = int(np.searchsorted(table._cum, 1.0 - 1e-6, side="left"))
    coverage_cut = min(coverage_cut, len(table) - 1)
    heavy = np.nonzero(n_samples * table.masses >= 5.0)[0]
    count_cut = int(heavy[-1]) if heavy.size else 0
    return max(0, min(coverage_cut, count_cut))


def tv_against_table(
    values: np.ndarray, table: PmfTable, n_samples: int
) -> tuple[float, float, int]:
    """Total variation and Pearson statistic of samples against a PMF table.

    Bins are the individual support points 0..N plus one pooled tail bin,
    with N chosen by :func:`_support_cut`; the chi-square statistic uses a
    further pooling to expected counts >= 5. Returns (tv, chi2, bins_used).
    values must fit int64; heavy-tail draws beyond that should be pre-clamped
    to anything past the table length (they land in the tail bin regardless).
    """
    cut = _support_cut(table, n_samples)
    clipped = np.minimum(np.asarray(values, dtype=np.int64), cut + 1)
    counts = np.bincount(np.maximum(clipped, 0), minlength=cut + 2).astype(np.float64)
    target = np.append(table.masses[: cut + 1], 1.0 - float(table._cum[cut]))
    empirical = counts / n_samples
    tv = 0.5 * float(np.sum(np.abs(empirical - target)))
    obs, exp = pool_counts(counts, n_samples * target)
    positive = exp > 0.0
    chi2 = float(np.sum((obs[positive] - exp[positive]) ** 2 / exp[positive]))
    return tv, chi2, cut + 2


def stability_experiment(
    p: DSParams,
    rho: float,
    n_samples: int,
    rng: RngStream,
    mu_override: float | None = None,
) -> ExperimentResult:
    """Monte-Carlo check of the defining stability identity.

    Draws X1, X2 from p, forms thin(X1, rho) + thin(X2, (1-rho^a)^{1/a}), and
    measures the total variation distance of the empirical law against the
    PMF of p translated by the closed-form shift (or by mu_override, to
    demonstrate detection of a wrong shift).
    """
    rho = float(rho)
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must lie in (0, 1), got {rho}")
    n_samples = int(n_samples)
    if n_samples < 1000:
        raise DomainError(f"need at least 1000 samples, got {n_samples}")

    mu = stability_mu(p, rho) if mu_override is None else float(mu_override)
    target_params = translate_params(p, mu)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # heavy tails cannot meet 1e-6 coverage
        table = ds_pmf(target_params, n_max=10_000, tail_bound=1e-6)

    frac2 = (1.0 - rho**p.alpha) ** (1.0 / p.alpha)
    values = np.empty(n_samples, dtype=np.int64)
    cut = _support_cut(table, n_samples)
    for i in range(n_samples):
        y = thin(sample_ds(p, rng), rho, rng) + thin(sample_ds(p, rng), frac2, rng)
        values[i] = min(y, cut + 1)  # huge heavy-tail draws all land in the tail bin
    tv, chi2, bins_used = tv_against_table(values, table, n_samples)
    return ExperimentResult(
        n_samples=n_samples,
        mu=mu,
        tv_distance=tv,
        chi_square_stat=chi2,
        bins_used=bins_used,
    )

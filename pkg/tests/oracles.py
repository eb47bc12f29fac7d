"""Independent reference implementations used as test oracles.

Nothing here goes through the package's recursion or inversion code paths:
Poisson masses come from scipy, Hermite masses from a direct two-stream
convolution sum, and Sibuya masses from exact rational arithmetic.
"""

import math
from fractions import Fraction

from scipy import stats


def poisson_pmf(lam: float, n: int) -> float:
    return float(stats.poisson.pmf(n, lam))


def hermite_pmf(a1: float, a2: float, n: int) -> float:
    """Poi(a1) on unit jumps convolved with Poi(a2) on double jumps."""
    terms = []
    for k in range(n // 2 + 1):
        j = n - 2 * k
        if a1 == 0.0 and j > 0:
            continue
        if a2 == 0.0 and k > 0:
            continue
        log_term = -a1 - a2
        if j > 0:
            log_term += j * math.log(a1) - math.lgamma(j + 1)
        if k > 0:
            log_term += k * math.log(a2) - math.lgamma(k + 1)
        terms.append(math.exp(log_term))
    return math.fsum(terms)


def sibuya_pmf_exact(alpha: Fraction, n: int) -> Fraction:
    """Sibuya mass (-1)^{n+1} C(alpha, n) by exact binomial-series arithmetic."""
    value = alpha
    for j in range(1, n):
        value *= j - alpha
    return value / math.factorial(n)


def bsib_pmf_exact(alpha: Fraction, rho: Fraction, n: int) -> Fraction:
    """Broad-Sibuya mass with rational alpha, rho, exactly."""
    if n == 1:
        return rho + (1 - rho) * alpha
    return (1 - rho) * sibuya_pmf_exact(alpha, n)


def chi2_pvalue(stat: float, dof: int) -> float:
    return float(stats.chi2.sf(stat, dof))

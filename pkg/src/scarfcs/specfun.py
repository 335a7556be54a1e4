"""Special-function layer: log-gamma, generalized hypergeometric series,
Jacobi polynomials, and their X1 exceptional extension.

Everything downstream (weight sequences, normalizations, eigenfunctions)
is built out of gamma-function ratios and pFq partial sums, so magnitudes
here are assembled in log space and exponentiated once per term.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConvergenceError, DomainError

# Series controls shared by every consumer: stop once the next term
# drops below REL_EPS of the running sum, but never before MIN_TERMS
# terms have been taken, and give up at MAX_TERMS.
REL_EPS = 1e-16
MIN_TERMS = 8
MAX_TERMS = 10_000

# exp() overflows just above exp(709); refuse earlier with context.
_LOG_OVERFLOW = 700.0


def log_gamma(x):
    """log Gamma(x) for x > 0, log |Gamma(x)| otherwise.

    Non-positive integers are poles and raise DomainError.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise DomainError(f"log_gamma pole at x = {x:g}")
    return math.lgamma(x)


@dataclass(frozen=True)
class HypergeometricSpec:
    """Parameter block for pFq(numerator; denominator; z).

    p <= q + 1 is required; p = q + 1 series additionally need z < 1 at
    evaluation time. Denominator entries at non-positive integers are
    poles of every term past some index and are rejected up front.
    """

    numerator_params: tuple
    denominator_params: tuple

    def __post_init__(self):
        num = tuple(float(a) for a in self.numerator_params)
        den = tuple(float(b) for b in self.denominator_params)
        object.__setattr__(self, "numerator_params", num)
        object.__setattr__(self, "denominator_params", den)
        if len(num) > len(den) + 1:
            raise DomainError(
                f"pFq with p = {len(num)} > q + 1 = {len(den) + 1} "
                "diverges for every z != 0")
        for b in den:
            if b <= 0.0 and b == math.floor(b):
                raise DomainError(
                    f"denominator parameter {b:g} is a non-positive integer")


@dataclass(frozen=True)
class SeriesResult:
    """A converged partial sum plus convergence bookkeeping."""

    value: float
    terms_used: int
    truncation_error_estimate: float


def hypergeometric(spec, z):
    """Evaluate pFq(spec; z) for z >= 0 by direct summation.

    Term magnitudes are tracked in log space with explicit signs so
    large-parameter regimes neither overflow nor silently lose the sign
    pattern. Returns a SeriesResult; the error estimate is the first
    omitted term.
    """
    z = float(z)
    if z < 0.0:
        raise DomainError("series evaluation requires z >= 0")
    num = spec.numerator_params
    den = spec.denominator_params
    if len(num) == len(den) + 1 and z >= 1.0:
        raise DomainError(
            f"p = q + 1 series has radius of convergence 1; got z = {z:g}")
    if z == 0.0:
        return SeriesResult(1.0, 1, 0.0)

    log_z = math.log(z)
    log_t = 0.0        # log |current term|
    sign = 1.0
    total = 1.0        # term for n = 0
    n = 0
    while n < MAX_TERMS:
        # ratio term_{n+1} / term_n = prod(a + n) / prod(b + n) * z / (n + 1)
        log_ratio = log_z - math.log(n + 1.0)
        ratio_sign = 1.0
        terminated = False
        for a in num:
            f = a + n
            if f == 0.0:
                terminated = True
                break
            if f < 0.0:
                ratio_sign = -ratio_sign
            log_ratio += math.log(abs(f))
        if terminated:
            # a numerator parameter hit a non-positive integer: the
            # series is a polynomial ending exactly here
            return SeriesResult(total, n + 1, 0.0)
        for b in den:
            f = b + n
            if f < 0.0:
                ratio_sign = -ratio_sign
            log_ratio -= math.log(abs(f))
        log_t += log_ratio
        sign *= ratio_sign
        if log_t > _LOG_OVERFLOW:
            raise ConvergenceError(
                f"series term overflow at index {n + 1} (log|t| = {log_t:.1f})")
        term = sign * math.exp(log_t)
        n += 1
        if n >= MIN_TERMS and abs(term) < REL_EPS * abs(total):
            return SeriesResult(total, n, abs(term))
        total += term
    raise ConvergenceError(
        f"series did not converge within {MAX_TERMS} terms at z = {z:g}")


def hypergeometric_derivative(spec, z, order=1):
    """d^order/dz^order of pFq at z via the parameter-shift identity

        d/dz pFq(a; b; z) = (prod a_i / prod b_j) pFq(a+1; b+1; z),

    applied once or twice. Only orders 1 and 2 are supported.
    """
    if order not in (1, 2):
        raise DomainError(f"derivative order must be 1 or 2, got {order!r}")
    num = spec.numerator_params
    den = spec.denominator_params
    scale = 1.0
    for _ in range(int(order)):
        fac = 1.0
        for a in num:
            fac *= a
        for b in den:
            fac /= b
        scale *= fac
        num = tuple(a + 1.0 for a in num)
        den = tuple(b + 1.0 for b in den)
    shifted = HypergeometricSpec(num, den)
    return scale * hypergeometric(shifted, z).value


def _as_grid(x):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("polynomial argument must lie in [-1, 1]")
    return arr


def jacobi_p(n, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x) via the three-term recurrence.

    x may be a scalar or an array; the return type matches.
    """
    if n < 0 or n != int(n):
        raise DomainError("degree n must be a non-negative integer")
    if a <= -1.0 or b <= -1.0:
        raise DomainError("Jacobi parameters must both exceed -1")
    arr = _as_grid(x)
    vals = kernels.jacobi_table(int(n), float(a), float(b), arr)[int(n)]
    return float(vals[0]) if np.ndim(x) == 0 else vals


def x1_jacobi(n, alpha, beta, s):
    """X1 exceptional Jacobi polynomial paired with level n.

    A degree-(n+1) combination of P_n and P_{n-1} at parameters
    (alpha - beta - 1/2, alpha + beta - 1/2):

        -1/2 (s - c) P_n + (c P_n - P_{n-1}) / (2 alpha - 1 + 2 n),

    with c = (2 alpha - 1) / (2 beta). Requires 0 < beta < alpha - 1 so
    the weight denominator 2 alpha - 1 - 2 beta s never vanishes on
    [-1, 1].
    """
    if n < 0 or n != int(n):
        raise DomainError("level n must be a non-negative integer")
    alpha = float(alpha)
    beta = float(beta)
    if not (0.0 < beta < alpha - 1.0):
        raise DomainError("requires 0 < beta < alpha - 1")
    arr = _as_grid(s)
    n = int(n)
    a = alpha - beta - 0.5
    b = alpha + beta - 0.5
    table = kernels.jacobi_table(max(n, 1), a, b, arr)
    pn = table[n]
    pm = table[n - 1] if n >= 1 else np.zeros_like(arr)
    c = (2.0 * alpha - 1.0) / (2.0 * beta)
    vals = -0.5 * (arr - c) * pn + (c * pn - pm) / (2.0 * alpha - 1.0 + 2.0 * n)
    return float(vals[0]) if np.ndim(s) == 0 else vals

"""Trigonometric Scarf well on (-pi/2, pi/2) and its rational extension.

Units hbar = 2m = 1. Both models share the spectrum E_n = (n + alpha)^2:
the rational model deforms potential and eigenfunctions through the
denominator D(x) = 2 alpha - 1 - 2 beta sin(x) without moving a single
level. Eigenfunction prefactors are assembled in log space; closed-form
normalization constants are audited against a 400-node Gauss-Legendre
norm and replaced by the measured value whenever the two disagree
(see norm_audit).
"""

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from . import kernels, quadrature, specfun
from .errors import DomainError

HALF_PI = math.pi / 2.0

VERIFY_ORDER = 400     # quadrature order for the normalization audit
NORM_TRUST_TOL = 1e-6  # closed form kept only if |ratio - 1| <= this


class ModelKind(enum.Enum):
    CONVENTIONAL = "conventional"
    RATIONAL = "rational"


@dataclass(frozen=True)
class PotentialParams:
    """Well parameters. The rational denominator 2a-1-2b*sin(x) must stay
    positive, hence beta < alpha - 1; alpha > 1 keeps the ground state
    normalizable with margin."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not self.alpha > 1.0:
            raise DomainError(f"alpha must exceed 1, got {self.alpha:g}")
        if not 0.0 < self.beta < self.alpha - 1.0:
            raise DomainError(
                f"beta must lie in (0, alpha - 1), got beta = {self.beta:g} "
                f"with alpha = {self.alpha:g}")


@dataclass(frozen=True)
class EigenstateId:
    """One bound state of one model."""

    model: ModelKind
    params: PotentialParams
    n: int

    def __post_init__(self):
        if not isinstance(self.model, ModelKind):
            raise DomainError(f"model must be a ModelKind, got {self.model!r}")
        if self.n < 0 or self.n != int(self.n):
            raise DomainError("quantum number n must be a non-negative integer")
        object.__setattr__(self, "n", int(self.n))


def _interior(x):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(np.abs(arr) >= HALF_PI):
        raise DomainError("x must lie strictly inside (-pi/2, pi/2)")
    return arr


def _match(x, arr):
    return float(arr[0]) if np.ndim(x) == 0 else arr


def potential(model, params, x):
    """V(x). Diverges at both walls; x must stay strictly interior."""
    arr = _interior(x)
    al, be = params.alpha, params.beta
    sec = 1.0 / np.cos(arr)
    tan = np.tan(arr)
    v = (al * (al - 1.0) + be * be) * sec * sec - be * (2.0 * al - 1.0) * sec * tan
    if model is ModelKind.RATIONAL:
        d1 = 2.0 * al - 1.0 - 2.0 * be * np.sin(arr)
        v = (v + 2.0 * (2.0 * al - 1.0) / d1
             - 2.0 * ((2.0 * al - 1.0) ** 2 - 4.0 * be * be) / (d1 * d1))
    return _match(x, v)


def superpotential(model, params, x):
    """W(x) in the factorization V - alpha^2 = W^2 - W'."""
    arr = _interior(x)
    al, be = params.alpha, params.beta
    w = al * np.tan(arr) - be / np.cos(arr)
    if model is ModelKind.RATIONAL:
        s = np.sin(arr)
        d1 = 2.0 * al - 1.0 - 2.0 * be * s
        d2 = 2.0 * al + 1.0 - 2.0 * be * s
        w = w - 2.0 * be * np.cos(arr) * (1.0 / d1 - 1.0 / d2)
    return _match(x, w)


def superpotential_derivative(model, params, x):
    """Analytic W'(x), the term that distinguishes the SUSY partners."""
    arr = _interior(x)
    al, be = params.alpha, params.beta
    s = np.sin(arr)
    c = np.cos(arr)
    sec2 = 1.0 / (c * c)
    dw = al * sec2 - be * s * sec2
    if model is ModelKind.RATIONAL:
        d1 = 2.0 * al - 1.0 - 2.0 * be * s
        d2 = 2.0 * al + 1.0 - 2.0 * be * s
        dw = dw - 2.0 * be * (-s * (1.0 / d1 - 1.0 / d2)
                              + 2.0 * be * c * c * (1.0 / (d1 * d1)
                                                    - 1.0 / (d2 * d2)))
    return _match(x, dw)


def energy(params, n):
    """E_n = (n + alpha)^2, identical for both models (isospectral)."""
    if n < 0 or n != int(n):
        raise DomainError("n must be a non-negative integer")
    return (int(n) + params.alpha) ** 2


def level_spacing(params, k):
    """E_k - E_{k-1} = 2k + 2 alpha - 1, the shape-invariance remainder."""
    if k < 1 or k != int(k):
        raise DomainError("k must be a positive integer")
    return energy(params, int(k)) - energy(params, int(k) - 1)


def shape_invariance_residual(model, params, x):
    """Pointwise defect of the shape-invariance identity

        [W^2 + W'](x; alpha) - [W^2 - W'](x; alpha + 1) - (2 alpha + 1).

    Zero (to rounding) for both models; the remainder 2 alpha + 1 equals
    level_spacing at k = 1.
    """
    arr = _interior(x)
    shifted = PotentialParams(params.alpha + 1.0, params.beta)
    w1 = superpotential(model, params, arr)
    dw1 = superpotential_derivative(model, params, arr)
    w2 = superpotential(model, shifted, arr)
    dw2 = superpotential_derivative(model, shifted, arr)
    res = (w1 * w1 + dw1) - (w2 * w2 - dw2) - (2.0 * params.alpha + 1.0)
    return _match(x, res)


def log_normalization_constant(state):
    """log of the closed-form normalization constant, as shipped.

    These are the textbook expressions; norm_audit measures how well
    they hold. For the conventional model the quadrature norm reveals a
    systematic n-dependent ratio, so eigenfunction() does not use this
    value blindly (see _verified_log_norm).
    """
    al, be = state.params.alpha, state.params.beta
    n = state.n
    lg = specfun.log_gamma
    if state.model is ModelKind.CONVENTIONAL:
        # sqrt( n! (2n + a) Gamma(n + 2a)
        #       / (2^(2a) Gamma(a - b + n + 1/2) Gamma(a + b + n + 1/2)) )
        return 0.5 * (lg(n + 1.0) + math.log(2.0 * n + al) + lg(n + 2.0 * al)
                      - 2.0 * al * math.log(2.0)
                      - lg(al - be + n + 0.5) - lg(al + be + n + 0.5))
    # beta / 2^(a-2) * sqrt( n! (2n + 2a) Gamma(n + 2a)
    #     / ((n + a - b + 1/2)(n + a + b + 1/2)
    #        Gamma(n + a - b - 1/2) Gamma(n + a + b - 1/2)) )
    return (math.log(be) - (al - 2.0) * math.log(2.0)
            + 0.5 * (lg(n + 1.0) + math.log(2.0 * n + 2.0 * al)
                     + lg(n + 2.0 * al)
                     - math.log(n + al - be + 0.5) - math.log(n + al + be + 0.5)
                     - lg(n + al - be - 0.5) - lg(n + al + be - 0.5)))


def normalization_constant(state):
    """Closed-form N_n itself; see log_normalization_constant."""
    return math.exp(log_normalization_constant(state))


def _log_abs_parts(model, params, n_max, x):
    """log|u_n(x)| and sign(u_n(x)) for the unnormalized eigenfunctions
    u_n, n = 0..n_max, stacked as (n_max + 1, len(x)) arrays."""
    al, be = params.alpha, params.beta
    s = np.sin(x)
    a = al - be - 0.5
    b = al + be - 0.5
    with np.errstate(divide="ignore"):
        log_pref = (0.5 * (al - be) * np.log1p(-s)
                    + 0.5 * (al + be) * np.log1p(s))
    if model is ModelKind.CONVENTIONAL:
        poly = kernels.jacobi_table(n_max, a, b, s)
    else:
        table = kernels.jacobi_table(max(n_max, 1), a, b, s)
        c = (2.0 * al - 1.0) / (2.0 * be)
        poly = np.empty((n_max + 1, s.shape[0]))
        for n in range(n_max + 1):
            pm = table[n - 1] if n >= 1 else 0.0
            poly[n] = (-0.5 * (s - c) * table[n]
                       + (c * table[n] - pm) / (2.0 * al - 1.0 + 2.0 * n))
        log_pref = log_pref - np.log(2.0 * al - 1.0 - 2.0 * be * s)
    with np.errstate(divide="ignore"):
        log_abs = log_pref[None, :] + np.log(np.abs(poly))
    return log_abs, np.sign(poly)


@functools.lru_cache(maxsize=4096)
def _verified_log_norm(model, alpha, beta, n):
    """(log N used by eigenfunction, closed/quadrature ratio).

    Measures the true norm of the unnormalized eigenfunction with the
    400-node rule, in log space to survive extreme prefactors, and keeps
    the closed form only when it matches to NORM_TRUST_TOL.
    """
    params = PotentialParams(alpha, beta)
    rule = quadrature.gauss_legendre(VERIFY_ORDER)
    log_abs, _ = _log_abs_parts(model, params, n, rule.nodes)
    la = log_abs[n]
    peak = float(np.max(la))
    integral = float(np.dot(rule.weights, np.exp(2.0 * (la - peak))))
    log_quad = -(peak + 0.5 * math.log(integral))
    log_closed = log_normalization_constant(
        EigenstateId(model, params, n))
    ratio = math.exp(log_closed - log_quad)
    log_used = log_closed if abs(ratio - 1.0) <= NORM_TRUST_TOL else log_quad
    return log_used, ratio


def verified_log_norm(state):
    """Audited log-normalization for one state: (log N, ratio)."""
    return _verified_log_norm(state.model, state.params.alpha,
                              state.params.beta, state.n)


def norm_audit(model, params, n_values):
    """Closed-form vs quadrature normalization for each requested level.

    Returns a list of dicts with keys n, closed, quadrature, ratio.
    The ratio column is the interesting one: 1.0 means the closed form
    is confirmed; a drifting value means it is wrong and the quadrature
    constant is in force.
    """
    rows = []
    for n in n_values:
        state = EigenstateId(model, params, int(n))
        log_used, ratio = verified_log_norm(state)
        closed = normalization_constant(state)
        rows.append({
            "n": int(n),
            "closed": closed,
            "quadrature": closed / ratio,
            "ratio": ratio,
        })
    return rows


def eigenfunction(state, x):
    """Normalized bound-state wavefunction psi_n(x).

    Uses the audited normalization constant, so the result integrates
    to one regardless of closed-form defects.
    """
    arr = _interior(x)
    log_used, _ = verified_log_norm(state)
    log_abs, sign = _log_abs_parts(state.model, state.params, state.n, arr)
    vals = sign[state.n] * np.exp(log_used + log_abs[state.n])
    return _match(x, vals)


def eigenfunction_table(model, params, n_max, x):
    """psi_n(x) for all n = 0..n_max, stacked (n_max + 1, len(x)).

    Shares one polynomial table across levels; this is what the carpet
    and expansion code paths consume.
    """
    if n_max < 0 or n_max != int(n_max):
        raise DomainError("n_max must be a non-negative integer")
    arr = _interior(x)
    n_max = int(n_max)
    log_abs, sign = _log_abs_parts(model, params, n_max, arr)
    out = np.empty_like(log_abs)
    for n in range(n_max + 1):
        log_used, _ = _verified_log_norm(model, params.alpha, params.beta, n)
        out[n] = sign[n] * np.exp(log_used + log_abs[n])
    return out

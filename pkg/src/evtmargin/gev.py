"""Generalised extreme value distribution: evaluation, MLE fitting, sampling.

Shape convention::

    G(x) = exp(-(1 + tau * (x - mu) / sigma) ** (-1 / tau))

so ``tau > 0`` is the heavy-tailed Frechet case, ``tau == 0`` Gumbel and
``tau < 0`` the bounded Weibull case. (scipy's ``genextreme`` uses
``c = -tau``.)

Lower tails are modelled by fitting the maxima of the *negated* minima, so
every fitted parameter set describes a loss magnitude directly.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize

from .timeseries import DataError

TAU_EPS = 1e-6
MIN_FIT_SIZE = 20
MAX_ITER = 10_000
XTOL = 1e-10
EULER_GAMMA = 0.5772156649015329

_PENALTY = 1e100


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class GevParams:
    tau: float
    sigma: float
    mu: float
    se_tau: float | None = None
    se_sigma: float | None = None
    se_mu: float | None = None
    n_fit: int = 0
    loglik: float | None = None

    def __post_init__(self):
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")
        if not (math.isfinite(self.tau) and math.isfinite(self.mu)):
            raise ValueError("tau and mu must be finite")
        for name in ("se_tau", "se_sigma", "se_mu"):
            v = getattr(self, name)
            if v is not None and not v >= 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def lower_bound(self) -> float:
        return self.mu - self.sigma / self.tau if self.tau > 0 else -math.inf

    @property
    def upper_bound(self) -> float:
        return self.mu - self.sigma / self.tau if self.tau < 0 else math.inf

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "GevParams":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__ if k in d})


def _log1p_over(z, tau):
    """log1p(tau*z)/tau, with a power series in tau*z when |tau| < TAU_EPS."""
    if abs(tau) >= TAU_EPS:
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.log1p(tau * z) / tau
    if tau == 0.0:
        return z
    a = tau * z
    series = z * (1 - a / 2 + a * a / 3 - a ** 3 / 4 + a ** 4 / 5)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(np.abs(a) < 1e-3, series, np.log1p(a) / tau)


def _expm1_over(y, tau):
    """expm1(tau*y)/tau, series near tau = 0 like :func:`_log1p_over`."""
    if abs(tau) >= TAU_EPS:
        return np.expm1(tau * y) / tau
    if tau == 0.0:
        return y
    b = tau * y
    series = y * (1 + b / 2 + b * b / 6 + b ** 3 / 24 + b ** 4 / 120)
    return np.where(np.abs(b) < 1e-3, series, np.expm1(b) / tau)


def _log_t(tau, sigma, mu, x):
    """log of t(x) = (1 + tau z)^(-1/tau); NaN outside the support."""
    z = (np.asarray(x, dtype=float) - mu) / sigma
    out = -_log1p_over(z, tau)
    return np.where(1.0 + tau * z > 0.0, out, np.nan)


def _outside(tau, sigma, mu, x):
    z = (np.asarray(x, dtype=float) - mu) / sigma
    return 1.0 + tau * z <= 0.0


def _ret(a):
    return float(a) if np.ndim(a) == 0 else a


def cdf(params: GevParams, x):
    """P(X <= x). Zero below the lower endpoint (tau > 0), one above the upper (tau < 0)."""
    tau = params.tau
    lt = _log_t(tau, params.sigma, params.mu, x)
    with np.errstate(over="ignore"):
        g = np.exp(-np.exp(lt))
    out = _outside(tau, params.sigma, params.mu, x)
    g = np.where(out, 0.0 if tau > 0 else 1.0, g)
    return _ret(g)


def sf(params: GevParams, x):
    """Survival function 1 - cdf, computed without cancellation in the upper tail."""
    tau = params.tau
    lt = _log_t(tau, params.sigma, params.mu, x)
    with np.errstate(over="ignore"):
        s = -np.expm1(-np.exp(lt))
    out = _outside(tau, params.sigma, params.mu, x)
    s = np.where(out, 1.0 if tau > 0 else 0.0, s)
    return _ret(s)


def cdf_min(params: GevParams, x):
    """P(Min <= x) for params fitted to the negated block minima."""
    return sf(params, -np.asarray(x, dtype=float))


def logpdf(params: GevParams, x):
    lt = _log_t(params.tau, params.sigma, params.mu, x)
    with np.errstate(over="ignore", invalid="ignore"):
        v = -math.log(params.sigma) + (params.tau + 1.0) * lt - np.exp(lt)
    v = np.where(np.isnan(lt), -np.inf, v)
    return _ret(v)


def pdf(params: GevParams, x):
    return _ret(np.exp(logpdf(params, x)))


def _ppf(tau, sigma, mu, q):
    with np.errstate(divide="ignore"):
        log_y = np.log(-np.log(q))
    with np.errstate(over="ignore", invalid="ignore"):
        return mu + sigma * _expm1_over(-log_y, tau)


def quantile(params: GevParams, q):
    """Inverse cdf, ``mu + sigma/tau * ((-ln q)^(-tau) - 1)``; requires 0 < q < 1."""
    qa = np.asarray(q, dtype=float)
    if not np.all((qa > 0) & (qa < 1)):
        raise ValueError("quantile probability must lie strictly inside (0, 1)")
    return _ret(_ppf(params.tau, params.sigma, params.mu, qa))


def loglik(params: GevParams, data) -> float:
    """Sum of log densities; ``-inf`` if any point lies outside the support."""
    x = np.asarray(data, dtype=float)
    if x.size == 0:
        raise DataError("loglik of empty data")
    return float(np.sum(logpdf(params, x)))


def _negll(theta, x):
    tau, sigma, mu = theta
    if not sigma > 0:
        return _PENALTY * (1.0 - sigma)
    z = (x - mu) / sigma
    arg = tau * z
    bad = arg <= -1.0
    if bad.any():
        return _PENALTY * (1.0 + float(np.sum(-1.0 - arg[bad])))
    lt = -_log1p_over(z, tau)
    return x.size * math.log(sigma) - (tau + 1.0) * float(lt.sum()) + float(np.exp(lt).sum())


def moment_start(data) -> tuple[float, float, float]:
    """Gumbel moment estimates, with the shape nudged into the Frechet region."""
    x = np.asarray(data, dtype=float)
    sigma0 = float(np.std(x, ddof=1)) * math.sqrt(6.0) / math.pi
    mu0 = float(np.mean(x)) - EULER_GAMMA * sigma0
    return 0.1, sigma0, mu0


def _hessian(f, theta):
    theta = np.asarray(theta, dtype=float)
    k = theta.size
    h = np.maximum(1e-5, 1e-4 * np.abs(theta))
    f0 = f(theta)
    H = np.empty((k, k))
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        H[i, i] = (f(theta + ei) - 2 * f0 + f(theta - ei)) / h[i] ** 2
        for j in range(i + 1, k):
            ej = np.zeros(k)
            ej[j] = h[j]
            H[i, j] = H[j, i] = (f(theta + ei + ej) - f(theta + ei - ej)
                                 - f(theta - ei + ej) + f(theta - ei - ej)) / (4 * h[i] * h[j])
    return H


def standard_errors(data, theta) -> tuple[float | None, float | None, float | None]:
    """Standard errors from the inverse observed information matrix.

    Returns ``None`` entries if the numerical Hessian is not positive definite
    or any finite-difference stencil point leaves the support.
    """
    x = np.asarray(data, dtype=float)
    H = _hessian(lambda th: _negll(th, x), theta)
    if not np.all(np.isfinite(H)) or np.abs(H).max() >= _PENALTY / 1e10:
        return None, None, None
    try:
        np.linalg.cholesky(H)
    except np.linalg.LinAlgError:
        return None, None, None
    cov = np.linalg.inv(H)
    d = np.diag(cov)
    if np.any(d <= 0):
        return None, None, None
    return tuple(float(v) for v in np.sqrt(d))


def fit(data, max_iter: int = MAX_ITER, xtol: float = XTOL) -> GevParams:
    """Maximum-likelihood GEV fit by Nelder-Mead from a moment-based start.

    The simplex is restarted from its own optimum until the objective stops
    improving, which guards against premature collapse. Points outside the
    support get a large finite penalty so the search can retreat.
    """
    x = np.asarray(data, dtype=float)
    if x.size < MIN_FIT_SIZE:
        raise DataError(f"need at least {MIN_FIT_SIZE} extremes to fit, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DataError("non-finite values in fit data")
    if np.ptp(x) == 0:
        raise DataError("degenerate sample: all extremes are equal")

    theta = np.array(moment_start(x))
    fbest = _negll(theta, x)
    used = 0
    for _ in range(20):
        scale = max(abs(theta[1]), 1e-8)
        simplex = np.vstack([theta,
                             theta + [0.05, 0, 0],
                             theta + [0, 0.1 * scale, 0],
                             theta + [0, 0, 0.1 * scale]])
        res = minimize(_negll, theta, args=(x,), method="Nelder-Mead",
                       options=dict(initial_simplex=simplex, xatol=xtol, fatol=xtol,
                                    maxiter=max_iter - used, maxfev=4 * max_iter))
        used += res.nit
        improved = fbest - res.fun
        if res.fun <= fbest:
            theta, fbest = res.x, res.fun
        if not res.success:
            if used >= max_iter:
                raise ConvergenceError(f"GEV fit did not converge within {max_iter} iterations")
            continue
        if improved <= 1e-9 * max(1.0, abs(fbest)):
            break
    if fbest >= _PENALTY:
        raise ConvergenceError("GEV fit never reached a feasible point")

    tau, sigma, mu = (float(v) for v in theta)
    se = standard_errors(x, theta)
    return GevParams(tau, sigma, mu, *se, n_fit=int(x.size), loglik=-float(fbest))


def sample(params: GevParams, count: int, seed: int | np.random.Generator) -> np.ndarray:
    """Inverse-cdf draws from a seeded PCG64 stream."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    u = rng.random(int(count))
    return _ppf(params.tau, params.sigma, params.mu, u)

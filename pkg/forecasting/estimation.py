"""
Conditional-sum-of-squares estimation of SARIMA coefficients.

Residuals follow the classical conditional recursion: the first p' = len(phi_full)
differenced values only serve as AR lags, shocks before the first emitted
residual are zero, and the output is front-padded with p' zeros so it lines up
with the differenced series.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from django.conf import settings
from scipy.linalg import solve_toeplitz
from scipy.optimize import minimize
from scipy.signal import lfilter

from .differencing import difference
from .exceptions import DimensionMismatch, SeriesTooShort
from .lag_poly import LagPolynomial
from .series import FittedModel, SarimaModel, TimeSeries, intercept_from_mean

logger = logging.getLogger(__name__)

OPTIMIZER = 'scipy.optimize.minimize:Nelder-Mead'
YULE_WALKER_BOUND = 0.99


@dataclass(frozen=True)
class FitConfig:
    max_iterations: int = field(default_factory=lambda: getattr(settings, 'SARIMA_MAX_ITERATIONS', 500))
    tolerance: float = field(default_factory=lambda: getattr(settings, 'SARIMA_TOLERANCE', 1e-8))
    include_mean: bool = None
    initial_coefficients: tuple = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}")

    def mean_for(self, order):
        """Whether a mean is estimated; defaults to True exactly when d = sd = 0"""
        if self.include_mean is None:
            return not order.is_differenced
        if self.include_mean and order.is_differenced:
            raise ValueError(f"A mean cannot be estimated for the differenced order {order}")
        return bool(self.include_mean)


def css_residuals(model, dx):
    """e_t = dx_t - mu - sum phi*_i dx_{t-i} - sum theta*_j e_{t-j}, zero-padded in front"""
    dx = np.asarray(dx, dtype=float)
    phi = model.phi_full
    p = len(phi)
    n = len(dx)
    if n <= p:
        raise SeriesTooShort(f"differenced series of length {n} needs more than {p} values")

    w = np.zeros(n)
    ar_part = dx[p:] - intercept_from_mean(model)
    for i, c in enumerate(phi, start=1):
        if c != 0.0:
            ar_part = ar_part - c * dx[p - i:n - i]
    w[p:] = ar_part

    if not model.theta_full:
        return w
    # (1 + theta*(B)) e = w with zero initial conditions
    return lfilter([1.0], np.concatenate(([1.0], model.theta_full)), w)


def css_objective(model, dx):
    """Conditional sum of squares over the emitted residuals"""
    residuals = css_residuals(model, dx)
    emitted = residuals[len(model.phi_full):]
    return float(emitted @ emitted)


def _effective_length(order, dx):
    return len(dx) - (order.p + order.period * order.sp)


def _model_from_vector(vector, order, include_mean, sigma2=1.0):
    p, q, sp, sq = order.p, order.q, order.sp, order.sq
    cuts = np.cumsum([p, q, sp, sq])
    return SarimaModel(
        order=order,
        phi=tuple(vector[:cuts[0]]),
        theta=tuple(vector[cuts[0]:cuts[1]]),
        sphi=tuple(vector[cuts[1]:cuts[2]]),
        stheta=tuple(vector[cuts[2]:cuts[3]]),
        mean=float(vector[cuts[3]]) if include_mean else None,
        sigma2=sigma2,
    )


def _autocovariance(x, max_lag):
    x = x - x.mean()
    n = len(x)
    return np.array([x[:n - k] @ x[k:] / n for k in range(max_lag + 1)])


def yule_walker(x, n_lags, step=1):
    """AR coefficients at lags step, 2*step, ... from the sample autocovariances"""
    x = np.asarray(x, dtype=float)
    if n_lags == 0:
        return np.zeros(0)
    if len(x) <= n_lags * step:
        return np.zeros(n_lags)
    acov = _autocovariance(x, n_lags * step)[::step]
    if acov[0] <= 0:
        return np.zeros(n_lags)
    coeffs = solve_toeplitz(acov[:n_lags], acov[1:n_lags + 1])
    return np.clip(coeffs, -YULE_WALKER_BOUND, YULE_WALKER_BOUND)


def start_vector(order, dx, include_mean):
    """Documented optimizer start: Yule-Walker AR, zero MA, sample mean"""
    parts = [
        yule_walker(dx, order.p),
        np.zeros(order.q),
        yule_walker(dx, order.sp, step=order.period),
        np.zeros(order.sq),
    ]
    if include_mean:
        parts.append([float(np.mean(dx))])
    return np.concatenate(parts)


def stationarity_warnings(model):
    """Roots of the expanded AR and MA polynomials must lie outside the unit circle"""
    warnings = []
    checks = (
        (LagPolynomial.ar(model.phi_full), 'AR polynomial is not stationary'),
        (LagPolynomial.ma(model.theta_full), 'MA polynomial is not invertible'),
    )
    for polynomial, message in checks:
        polynomial = polynomial.canonical()
        if not polynomial.order:
            continue
        roots = np.polynomial.polynomial.polyroots(polynomial.coefficients())
        if np.any(np.abs(roots) <= 1.0):
            warnings.append(message)
    return warnings


def _as_series(data):
    return data if isinstance(data, TimeSeries) else TimeSeries(tuple(data))


def _assemble(model, series, dx, n_free, metadata, sigma2=None):
    """Residuals, variance and likelihood for a model whose coefficients are fixed"""
    floor = getattr(settings, 'SARIMA_SIGMA2_FLOOR', 1e-12)
    residuals = css_residuals(model, dx)
    n_eff = _effective_length(model.order, dx)
    emitted = residuals[len(model.phi_full):]
    objective = float(emitted @ emitted)

    if sigma2 is None:
        sigma2 = objective / n_eff
        if sigma2 < floor:
            if model.order.n_coefficients:
                logger.warning(f"Degenerate fit for {model.order}: residual variance {sigma2}, flooring at {floor}")
                metadata.setdefault('warnings', []).append('residual variance floored')
            sigma2 = floor

    model = SarimaModel(
        order=model.order, phi=model.phi, theta=model.theta, sphi=model.sphi,
        stheta=model.stheta, mean=model.mean, sigma2=sigma2,
    )
    loglik = -n_eff / 2.0 * (math.log(2.0 * math.pi * max(objective / n_eff, floor)) + 1.0)
    aic = -2.0 * loglik + 2.0 * (n_free + 1)

    metadata['objective'] = objective
    metadata['n_eff'] = n_eff
    for message in stationarity_warnings(model):
        logger.warning(f"{model.order}: {message}")
        metadata.setdefault('warnings', []).append(message)

    return FittedModel(
        model=model,
        data=series,
        residuals=tuple(residuals),
        loglik_css=loglik,
        aic=aic,
        metadata=metadata,
    )


def fit(data, order, cfg=None):
    """
    Estimate (phi, theta, Phi, Theta[, mean]) by minimizing the conditional sum of squares.

    Non-convergence does not raise: the best point found is returned with
    ``metadata['converged']`` set to False.
    """
    cfg = cfg or FitConfig()
    series = _as_series(data)
    include_mean = cfg.mean_for(order)
    dx, _ = difference(series.values, order.d, order.sd, order.period)

    n_free = order.n_coefficients + int(include_mean)
    n_eff = _effective_length(order, dx)
    if n_eff < max(1, 10 * n_free):
        raise SeriesTooShort(
            f"{n_eff} usable observations for {n_free} free parameters of {order} (need {10 * n_free})"
        )

    if cfg.initial_coefficients is not None:
        x0 = np.asarray(cfg.initial_coefficients, dtype=float)
        if len(x0) != n_free:
            raise DimensionMismatch(f"initial_coefficients has {len(x0)} values, {order} needs {n_free}")
    else:
        x0 = start_vector(order, dx, include_mean)

    def objective(vector):
        with np.errstate(over='ignore', invalid='ignore'):
            value = css_objective(_model_from_vector(vector, order, include_mean), dx)
        return value if np.isfinite(value) else np.inf

    start_objective = objective(x0)
    logger.info(f"Fitting {order} by CSS on {n_eff} observations (start objective {start_objective:.6g})")

    metadata = {
        'method': 'css',
        'optimizer': OPTIMIZER,
        'start': [float(v) for v in x0],
        'include_mean': include_mean,
    }

    if n_free == 0:
        best = x0
        metadata.update(converged=True, iterations=0, evaluations=1)
    else:
        result = minimize(
            objective,
            x0,
            method='Nelder-Mead',
            options={
                'maxiter': cfg.max_iterations,
                'fatol': cfg.tolerance * max(1.0, abs(start_objective)),
            },
        )
        best = result.x if result.fun <= start_objective else x0
        metadata.update(
            converged=bool(result.success),
            iterations=int(result.nit),
            evaluations=int(result.nfev),
        )
        if not result.success:
            logger.warning(f"CSS fit of {order} did not converge after {result.nit} iterations: {result.message}")
            metadata.setdefault('warnings', []).append('optimizer did not converge')

    fitted = _assemble(_model_from_vector(best, order, include_mean), series, dx, n_free, metadata)
    logger.info(
        f"Fitted {order}: objective {fitted.metadata['objective']:.6g}, "
        f"sigma2 {fitted.model.sigma2:.6g}, iterations {fitted.metadata['iterations']}"
    )
    return fitted


def load_model(coefficients, order, sigma2, data):
    """
    Build a FittedModel from known coefficients without optimizing.

    ``coefficients`` maps phi/theta/sphi/stheta to sequences and may hold a mean.
    """
    coefficients = dict(coefficients or {})
    unknown = set(coefficients) - {'phi', 'theta', 'sphi', 'stheta', 'mean'}
    if unknown:
        raise DimensionMismatch(f"unknown coefficient names: {', '.join(sorted(unknown))}")

    model = SarimaModel(
        order=order,
        phi=tuple(coefficients.get('phi', ())),
        theta=tuple(coefficients.get('theta', ())),
        sphi=tuple(coefficients.get('sphi', ())),
        stheta=tuple(coefficients.get('stheta', ())),
        mean=coefficients.get('mean'),
        sigma2=sigma2,
    )
    series = _as_series(data)
    dx, _ = difference(series.values, order.d, order.sd, order.period)
    n_free = order.n_coefficients + int(model.mean is not None)
    metadata = {'method': 'frozen', 'optimizer': None, 'converged': True, 'iterations': 0}
    return _assemble(model, series, dx, n_free, metadata, sigma2=model.sigma2)

"""
Conditional simulation of SARIMA continuations.

A continuation is generated by running the model recursion forward from the
newest differenced observations and the newest residuals, then integrating the
differenced path back to the original scale. Forecasts are the same recursion
driven by zero innovations.

Random numbers: path i of an ensemble with seed u draws from a Philox
generator keyed by SeedSequence(u, spawn_key=(i,)), so each path has its own
substream and the ensemble does not depend on how paths are spread over
threads. Innovations are standard_normal() * sqrt(sigma2).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd
from django.conf import settings

from .differencing import difference, integrate
from .exceptions import HorizonError, InvalidProbability, SeriesTooShort
from .series import intercept_from_mean

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimulationRequest:
    horizon: int
    n_paths: int = 1
    seed: int = None
    zero_innovations: bool = False

    def __post_init__(self):
        if self.horizon < 1:
            raise HorizonError(f"horizon must be at least 1, got {self.horizon}")
        if self.n_paths < 1:
            raise ValueError(f"n_paths must be at least 1, got {self.n_paths}")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.zero_innovations and self.n_paths != 1:
            logger.info("Zero innovations requested, forcing a single path")
            object.__setattr__(self, 'n_paths', 1)


@dataclass(frozen=True, eq=False)
class SimulationEnsemble:
    """m x n matrix of simulated continuations on the original scale"""

    paths: np.ndarray
    start: Fraction
    frequency: int
    seed: int = None
    mean: np.ndarray = field(init=False, compare=False)
    sd: np.ndarray = field(init=False, compare=False)

    def __post_init__(self):
        paths = np.array(self.paths, dtype=float, copy=True)
        if paths.ndim != 2:
            raise ValueError("paths must be a horizon x n_paths matrix")
        paths.setflags(write=False)
        object.__setattr__(self, 'paths', paths)
        mean = paths.mean(axis=1)
        sd = paths.std(axis=1, ddof=1) if paths.shape[1] > 1 else np.zeros(paths.shape[0])
        mean.setflags(write=False)
        sd.setflags(write=False)
        object.__setattr__(self, 'mean', mean)
        object.__setattr__(self, 'sd', sd)

    @property
    def horizon(self):
        return self.paths.shape[0]

    @property
    def n_paths(self):
        return self.paths.shape[1]

    def times(self):
        return [float(self.start + Fraction(k, self.frequency)) for k in range(self.horizon)]

    def to_frame(self):
        """Wide matrix: one row per horizon, one column per path"""
        frame = pd.DataFrame(
            self.paths,
            columns=[f"path_{i + 1}" for i in range(self.n_paths)],
        )
        frame.insert(0, 'time', self.times())
        return frame

    def to_long_frame(self, forecast=None):
        """Plot data: path, time, value plus forecast and ensemble mean per time"""
        times = self.times()
        frame = pd.DataFrame({
            'path': np.repeat(np.arange(1, self.n_paths + 1), self.horizon),
            'time': np.tile(times, self.n_paths),
            'value': self.paths.T.reshape(-1),
            'ensemble_mean': np.tile(self.mean, self.n_paths),
        })
        if forecast is not None:
            frame['forecast'] = np.tile(np.asarray(forecast, dtype=float), self.n_paths)
        return frame


@dataclass(frozen=True, eq=False)
class _PathContext:
    """Everything a path needs from the fitted model, computed once per ensemble"""

    phi: np.ndarray
    theta: np.ndarray
    mu: float
    lag_seed: np.ndarray
    shock_seed: np.ndarray
    state: object


def _path_context(fitted):
    model = fitted.model
    order = model.order
    phi = np.asarray(model.phi_full, dtype=float)
    theta = np.asarray(model.theta_full, dtype=float)
    p, q = len(phi), len(theta)

    dx, state = difference(fitted.data.values, order.d, order.sd, order.period)
    residuals = np.asarray(fitted.residuals, dtype=float)
    if len(dx) < p or len(residuals) < q:
        raise SeriesTooShort(
            f"differenced series of length {len(dx)} cannot seed {p} AR lags and {q} MA lags"
        )

    return _PathContext(
        phi=phi,
        theta=theta,
        mu=intercept_from_mean(model),
        lag_seed=dx[len(dx) - p:].copy(),
        shock_seed=residuals[len(residuals) - q:].copy(),
        state=state,
    )


def _run_path(context, innovations):
    phi, theta = context.phi, context.theta
    p, q = len(phi), len(theta)
    m = len(innovations)

    x = np.empty(p + m)
    x[:p] = context.lag_seed
    e = np.empty(q + m)
    e[:q] = context.shock_seed
    e[q:] = innovations

    # Reversed views give the newest lag first, matching phi_1, theta_1
    for k in range(m):
        value = e[q + k]
        if q:
            value += theta @ e[k:q + k][::-1]
        if p:
            value += phi @ x[k:p + k][::-1]
        x[p + k] = value + context.mu

    return integrate(x[p:], context.state)


def simulate_path(fitted, m, innovations):
    """
    One continuation of ``fitted.data`` driven by the given innovations.

    Deterministic: the same innovations always give the same path.
    """
    if m < 1:
        raise HorizonError(f"horizon must be at least 1, got {m}")
    innovations = np.asarray(innovations, dtype=float)
    if innovations.shape != (m,):
        raise ValueError(f"expected {m} innovations, got {innovations.shape}")
    return _run_path(_path_context(fitted), innovations)


def forecast(fitted, m):
    """Conditional expectation: the continuation with every innovation set to zero"""
    return simulate_path(fitted, m, np.zeros(m))


def path_generator(seed, path_index):
    """Independent random stream for one path of a seeded ensemble"""
    sequence = np.random.SeedSequence(seed, spawn_key=(path_index,))
    return np.random.Generator(np.random.Philox(sequence))


def _draw_seed():
    seed = int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])
    logger.warning(f"No seed given, drew seed {seed} from OS entropy")
    return seed


def _simulate_block(context, request, seed, sd, indices):
    m = request.horizon
    block = np.empty((m, len(indices)))
    for column, path_index in enumerate(indices):
        if request.zero_innovations:
            innovations = np.zeros(m)
        else:
            innovations = path_generator(seed, int(path_index)).standard_normal(m) * sd
        block[:, column] = _run_path(context, innovations)
    return block


def simulate_ensemble(fitted, request, workers=None):
    """
    Simulate ``request.n_paths`` independent continuations.

    With a seed the result is bit-identical for any number of workers.
    """
    if workers is None:
        workers = getattr(settings, 'SARIMA_WORKERS', 1)
    workers = max(1, int(workers))

    context = _path_context(fitted)
    seed = request.seed
    if seed is None and not request.zero_innovations:
        seed = _draw_seed()
    sd = float(np.sqrt(fitted.model.sigma2))
    n = request.n_paths

    logger.info(
        f"Simulating {n} paths of length {request.horizon} for {fitted.order} "
        f"(seed={seed}, workers={workers})"
    )

    # Contiguous blocks, reassembled in path order
    blocks = [chunk for chunk in np.array_split(np.arange(n), min(workers, n)) if len(chunk)]
    if workers == 1 or len(blocks) == 1:
        results = [_simulate_block(context, request, seed, sd, blocks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(
                lambda indices: _simulate_block(context, request, seed, sd, indices), blocks
            ))

    return SimulationEnsemble(
        paths=np.hstack(results),
        start=fitted.data.next_start,
        frequency=fitted.data.frequency,
        seed=seed,
    )


def ensemble_summary(ensemble, quantiles):
    """
    Per-horizon empirical quantiles (linear interpolation of order statistics).

    Returns a DataFrame with a time column and one column per probability.
    """
    probabilities = [float(q) for q in quantiles]
    for q in probabilities:
        if not 0.0 < q < 1.0:
            raise InvalidProbability(f"quantile probability {q} is outside (0, 1)")

    table = pd.DataFrame({'time': ensemble.times()})
    if probabilities:
        values = np.quantile(ensemble.paths, probabilities, axis=1, method='linear')
        for q, row in zip(probabilities, values):
            table[f"q{q:g}"] = row
    return table

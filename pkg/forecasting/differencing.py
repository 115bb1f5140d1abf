"""
Ordinary and seasonal differencing with exact inversion.

On the way down seasonal differencing (lag s, sd passes) is applied first and
ordinary differencing (lag 1, d passes) second; integration runs in the
reverse order. The state keeps, for every intermediate series, the values a
continuation needs as seeds:

    xi_seasonal  sd blocks of s values, block k = last s values of the series
                 after k seasonal passes
    xi_ordinary  d values, entry k = last value of the seasonally differenced
                 series after k ordinary passes
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import SeriesTooShort, StateMismatch


@dataclass(frozen=True)
class DifferencingState:
    d: int
    sd: int
    s: int
    xi_ordinary: tuple = ()
    xi_seasonal: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, 'xi_ordinary', tuple(float(v) for v in self.xi_ordinary))
        object.__setattr__(self, 'xi_seasonal', tuple(float(v) for v in self.xi_seasonal))

    @property
    def span(self):
        """Number of observations consumed by differencing"""
        return self.d + self.sd * self.s

    def is_consistent(self):
        return (
            self.d >= 0 and self.sd >= 0 and self.s >= 1
            and len(self.xi_ordinary) == self.d
            and len(self.xi_seasonal) == self.sd * self.s
        )


def _seasonal_diff(x, s):
    return x[s:] - x[:-s]


def differencing_state(x, d, sd, s):
    """Seeds found at the end of ``x``; needs at least d + sd*s values"""
    x = np.asarray(x, dtype=float)
    if len(x) < d + sd * s:
        raise SeriesTooShort(f"{len(x)} values cannot seed d={d}, sd={sd}, s={s}")

    xi_seasonal = []
    level = x
    for _ in range(sd):
        xi_seasonal.extend(level[len(level) - s:])
        level = _seasonal_diff(level, s)

    xi_ordinary = []
    for _ in range(d):
        xi_ordinary.append(level[-1])
        level = np.diff(level)

    return DifferencingState(d, sd, s, tuple(xi_ordinary), tuple(xi_seasonal))


def difference(x, d, sd, s):
    """
    Difference ``x`` seasonally sd times then ordinarily d times.

    Returns (dx, state) where dx has len(x) - d - sd*s values and state holds the
    seeds at the end of ``x`` needed to integrate a continuation of dx.
    """
    x = np.asarray(x, dtype=float)
    if len(x) <= d + sd * s:
        raise SeriesTooShort(
            f"series of length {len(x)} is too short for d={d}, sd={sd}, s={s}"
        )

    dx = x
    for _ in range(sd):
        dx = _seasonal_diff(dx, s)
    for _ in range(d):
        dx = np.diff(dx)

    return dx, differencing_state(x, d, sd, s)


def _seasonal_cumsum(seed, values, s):
    # out[j] = out[j - s] + values[j], with out[-s..-1] = seed; one cumulative sum per season slot
    out = np.empty(len(values), dtype=float)
    for r in range(min(s, len(values))):
        out[r::s] = seed[r] + np.cumsum(values[r::s])
    return out


def integrate(dx, state):
    """
    Invert ``difference`` for a continuation: ordinary stages first, seasonal second.

    Only the continuation values are returned, the seeds are stripped.
    """
    if not state.is_consistent():
        raise StateMismatch(
            f"xi lengths ({len(state.xi_ordinary)}, {len(state.xi_seasonal)}) do not match "
            f"d={state.d}, sd={state.sd}, s={state.s}"
        )

    values = np.asarray(dx, dtype=float)
    for k in reversed(range(state.d)):
        values = state.xi_ordinary[k] + np.cumsum(values)

    s = state.s
    for k in reversed(range(state.sd)):
        seed = state.xi_seasonal[k * s:(k + 1) * s]
        values = _seasonal_cumsum(seed, values, s)

    return values

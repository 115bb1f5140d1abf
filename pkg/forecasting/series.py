"""
Core data types shared by the forecasting engine.

Everything here is immutable after construction so a fitted model can be handed
to several simulation threads at once.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

import numpy as np

from .exceptions import DimensionMismatch
from .lag_poly import expand_ar, expand_ma


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10 ** 6)
    return Fraction(value)


@dataclass(frozen=True)
class TimeSeries:
    """Equally spaced observations; observation k sits at start + k/frequency"""

    values: tuple
    start: Fraction = Fraction(1)
    frequency: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'values', tuple(float(v) for v in self.values))
        object.__setattr__(self, 'start', _as_fraction(self.start))
        if int(self.frequency) != self.frequency or self.frequency < 1:
            raise ValueError(f"Frequency must be a positive integer, got {self.frequency!r}")
        object.__setattr__(self, 'frequency', int(self.frequency))

    def __len__(self):
        return len(self.values)

    @property
    def array(self):
        return np.asarray(self.values, dtype=float)

    def time_at(self, k):
        return self.start + Fraction(k, self.frequency)

    @property
    def end(self):
        return self.time_at(len(self.values) - 1)

    @property
    def next_start(self):
        """Time origin of a continuation of this series"""
        return self.end + Fraction(1, self.frequency)

    def times(self):
        return [float(self.time_at(k)) for k in range(len(self.values))]

    def continuation_times(self, m):
        """Times of the m observations following the series"""
        return [float(self.time_at(len(self.values) + k)) for k in range(m)]

    def to_dict(self):
        return {
            'values': list(self.values),
            'start': str(self.start),
            'frequency': self.frequency,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            values=tuple(data['values']),
            start=Fraction(data.get('start', '1')),
            frequency=int(data.get('frequency', 1)),
        )


@dataclass(frozen=True)
class SarimaOrder:
    """(p, d, q)(sp, sd, sq)[s] model orders"""

    p: int = 0
    d: int = 0
    q: int = 0
    sp: int = 0
    sd: int = 0
    sq: int = 0
    s: int = 1

    def __post_init__(self):
        for name in ('p', 'd', 'q', 'sp', 'sd', 'sq', 's'):
            value = getattr(self, name)
            if int(value) != value:
                raise ValueError(f"Order {name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
            if value < 0:
                raise ValueError(f"Order {name} must be non-negative, got {value}")
        if self.s < 1:
            raise ValueError(f"Season length must be at least 1, got {self.s}")

    @property
    def is_seasonal(self):
        return bool(self.sp or self.sd or self.sq)

    @property
    def period(self):
        """Effective season length (1 for non-seasonal models)"""
        return self.s if self.is_seasonal else 1

    @property
    def is_differenced(self):
        return bool(self.d or self.sd)

    @property
    def n_coefficients(self):
        return self.p + self.q + self.sp + self.sq

    @property
    def lags_needed(self):
        """Observations consumed by differencing"""
        return self.d + self.period * self.sd

    def __str__(self):
        text = f"({self.p},{self.d},{self.q})"
        if self.is_seasonal:
            text += f"({self.sp},{self.sd},{self.sq})[{self.s}]"
        return text

    def to_dict(self):
        return {name: getattr(self, name) for name in ('p', 'd', 'q', 'sp', 'sd', 'sq', 's')}

    @classmethod
    def from_dict(cls, data):
        return cls(**{name: int(data.get(name, 1 if name == 's' else 0))
                      for name in ('p', 'd', 'q', 'sp', 'sd', 'sq', 's')})


@dataclass(frozen=True)
class SarimaModel:
    """
    Estimated SARIMA coefficients.

    MA coefficients use the plus-sign convention x_t = ... + e_t + theta_1 e_{t-1}.
    ``mean`` is the process mean of the (undifferenced) series and is only
    allowed when d = sd = 0. ``phi_full``/``theta_full`` are derived on
    construction and cannot be passed in.
    """

    order: SarimaOrder
    phi: tuple = ()
    theta: tuple = ()
    sphi: tuple = ()
    stheta: tuple = ()
    mean: float = None
    sigma2: float = 1.0
    phi_full: tuple = field(init=False)
    theta_full: tuple = field(init=False)

    def __post_init__(self):
        for name, expected in (('phi', self.order.p), ('theta', self.order.q),
                               ('sphi', self.order.sp), ('stheta', self.order.sq)):
            coeffs = tuple(float(c) for c in getattr(self, name))
            if len(coeffs) != expected:
                raise DimensionMismatch(
                    f"{name} has {len(coeffs)} coefficients but the order {self.order} needs {expected}"
                )
            object.__setattr__(self, name, coeffs)

        if self.mean is not None:
            if self.order.is_differenced:
                raise ValueError("A differenced model cannot carry a mean")
            object.__setattr__(self, 'mean', float(self.mean))

        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be positive, got {self.sigma2!r}")
        object.__setattr__(self, 'sigma2', float(self.sigma2))

        s = self.order.s
        object.__setattr__(self, 'phi_full', tuple(expand_ar(self.phi, self.sphi, s)))
        object.__setattr__(self, 'theta_full', tuple(expand_ma(self.theta, self.stheta, s)))

    def to_dict(self):
        return {
            'order': self.order.to_dict(),
            'phi': list(self.phi),
            'theta': list(self.theta),
            'sphi': list(self.sphi),
            'stheta': list(self.stheta),
            'mean': self.mean,
            'sigma2': self.sigma2,
            # Informational only, recomputed by from_dict
            'phi_full': list(self.phi_full),
            'theta_full': list(self.theta_full),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            order=SarimaOrder.from_dict(data['order']),
            phi=tuple(data.get('phi', ())),
            theta=tuple(data.get('theta', ())),
            sphi=tuple(data.get('sphi', ())),
            stheta=tuple(data.get('stheta', ())),
            mean=data.get('mean'),
            sigma2=data['sigma2'],
        )


@dataclass(frozen=True)
class FittedModel:
    """A SarimaModel together with the series it conditions on"""

    model: SarimaModel
    data: TimeSeries
    residuals: tuple
    loglik_css: float
    aic: float
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        residuals = tuple(float(r) for r in self.residuals)
        expected = len(self.data) - self.model.order.lags_needed
        if len(residuals) != expected:
            raise DimensionMismatch(
                f"{len(residuals)} residuals for a differenced series of length {expected}"
            )
        object.__setattr__(self, 'residuals', residuals)
        object.__setattr__(self, 'metadata', MappingProxyType(dict(self.metadata)))

    @property
    def order(self):
        return self.model.order

    def to_dict(self):
        return {
            'model': self.model.to_dict(),
            'data': self.data.to_dict(),
            'residuals': list(self.residuals),
            'loglik_css': self.loglik_css,
            'aic': self.aic,
            'metadata': dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            model=SarimaModel.from_dict(data['model']),
            data=TimeSeries.from_dict(data['data']),
            residuals=tuple(data['residuals']),
            loglik_css=float(data['loglik_css']),
            aic=float(data['aic']),
            metadata=data.get('metadata') or {},
        )


def intercept_from_mean(model):
    """Constant term of the recursion: mean * (1 - sum(phi_full)), 0 without a mean"""
    if model.mean is None:
        return 0.0
    return model.mean * (1.0 - sum(model.phi_full))

"""
Lag polynomial algebra for seasonal ARIMA models.

All sign bookkeeping lives here. An AR polynomial with coefficients c
represents (1 - c_1 B - ... - c_L B^L); an MA polynomial represents
(1 + c_1 B + ... + c_L B^L). The simulation and estimation modules only ever
see the expanded vectors and use them in the recursion

    x_t = mu + sum_i phi*_i x_{t-i} + e_t + sum_j theta*_j e_{t-j}

so MA coefficients enter with a PLUS sign. Textbooks that write the MA
polynomial as (1 - theta B) have the opposite sign.
"""

from dataclasses import dataclass

import numpy as np

AR = 'ar'
MA = 'ma'


@dataclass(frozen=True)
class LagPolynomial:
    """Polynomial in the backshift operator, stored by lag 1..L"""

    coeffs: tuple = ()
    kind: str = AR

    def __post_init__(self):
        if self.kind not in (AR, MA):
            raise ValueError(f"Unknown lag polynomial kind: {self.kind!r}")
        object.__setattr__(self, 'coeffs', tuple(float(c) + 0.0 for c in self.coeffs))

    @classmethod
    def ar(cls, coeffs):
        return cls(tuple(coeffs), AR)

    @classmethod
    def ma(cls, coeffs):
        return cls(tuple(coeffs), MA)

    @classmethod
    def seasonal(cls, coeffs, s, kind=AR):
        """Spread seasonal coefficients to lags s, 2s, ..."""
        if s < 1:
            raise ValueError("Season length must be at least 1")
        spread = [0.0] * (s * len(coeffs))
        for j, c in enumerate(coeffs, start=1):
            spread[j * s - 1] = c
        return cls(tuple(spread), kind)

    @property
    def order(self):
        return len(self.coeffs)

    @property
    def _sign(self):
        return -1.0 if self.kind == AR else 1.0

    def coefficients(self):
        """Full polynomial in ascending powers of B, leading 1 included"""
        return np.concatenate(([1.0], self._sign * np.asarray(self.coeffs, dtype=float)))

    def canonical(self):
        """Same polynomial with trailing zero lags removed"""
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        return LagPolynomial(tuple(coeffs), self.kind)

    def evaluate(self, z):
        return np.polynomial.polynomial.polyval(z, self.coefficients())

    def __mul__(self, other):
        if not isinstance(other, LagPolynomial):
            return NotImplemented
        if other.kind != self.kind:
            raise ValueError("Cannot multiply AR and MA lag polynomials")
        # np.convolve keeps the full length, trailing zero lags included
        product = np.convolve(self.coefficients(), other.coefficients())
        return LagPolynomial(tuple(self._sign * product[1:]), self.kind)


def expand_ar(phi, sphi, s):
    """
    Expand (1 - sum phi_i B^i)(1 - sum Phi_j B^{js}) into one AR vector.

    Returns p + s*sp coefficients; the interaction lag i + js carries -phi_i*Phi_j.
    """
    if s < 1:
        raise ValueError("Season length must be at least 1")
    if not sphi:
        return [float(c) for c in phi]
    product = LagPolynomial.ar(phi) * LagPolynomial.seasonal(sphi, s, AR)
    return list(product.coeffs)


def expand_ma(theta, stheta, s):
    """
    Expand (1 + sum theta_i B^i)(1 + sum Theta_j B^{js}) into one MA vector.

    Returns q + s*sq coefficients; the interaction lag i + js carries +theta_i*Theta_j.
    """
    if s < 1:
        raise ValueError("Season length must be at least 1")
    if not stheta:
        return [float(c) for c in theta]
    product = LagPolynomial.ma(theta) * LagPolynomial.seasonal(stheta, s, MA)
    return list(product.coeffs)

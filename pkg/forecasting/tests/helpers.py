import numpy as np
from scipy.signal import lfilter

from ..io_utils import airline_series
from ..estimation import load_model
from ..reference_fits import AIRLINE_NON_SEASONAL, AIRLINE_SEASONAL


def arma_sample(phi_full, theta_full, n, rng, mean=0.0, sigma=1.0, burn=500):
    """Stationary ARMA draw with the plus-sign MA convention"""
    noise = rng.normal(scale=sigma, size=n + burn)
    ar = np.concatenate(([1.0], -np.asarray(phi_full, dtype=float)))
    ma = np.concatenate(([1.0], np.asarray(theta_full, dtype=float)))
    return lfilter(ma, ar, noise)[burn:] + mean


def frozen_airline(reference):
    return load_model(reference['coefficients'], reference['order'], reference['sigma2'], airline_series())


def frozen_seasonal():
    return frozen_airline(AIRLINE_SEASONAL)


def frozen_non_seasonal():
    return frozen_airline(AIRLINE_NON_SEASONAL)

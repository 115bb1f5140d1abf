"""
Published exact-likelihood fits of the airline passengers series and their
12-month forecasts for 1961. They are used as frozen inputs, so reproduction
checks do not depend on the CSS optimizer.
"""

from .series import SarimaOrder

AIRLINE_SEASONAL = {
    'label': 'seasonal',
    'order': SarimaOrder(p=1, d=1, q=1, sp=0, sd=1, sq=0, s=12),
    'coefficients': {'phi': [-0.3009], 'theta': [-0.0073]},
    'standard_errors': {'phi': [0.3835], 'theta': [0.4133]},
    'sigma2': 137.0,
    'forecast': [
        444.3670, 418.2566, 446.2898, 488.2798, 499.2828, 562.2819,
        649.2822, 633.2821, 535.2821, 488.2821, 417.2821, 459.2821,
    ],
    'ensemble_mean': [
        444.2828, 418.1049, 446.0237, 487.9601, 498.8899, 562.0800,
        648.9706, 633.0297, 535.0563, 487.9923, 417.1746, 459.2555,
    ],
}

AIRLINE_NON_SEASONAL = {
    'label': 'non-seasonal',
    'order': SarimaOrder(p=1, d=0, q=1),
    'coefficients': {'phi': [0.9373], 'theta': [0.4264], 'mean': 281.5426},
    'standard_errors': {'phi': [0.0302], 'theta': [0.0911], 'mean': 53.6135},
    'sigma2': 968.5,
    'forecast': [
        453.9038, 443.0989, 432.9713, 423.4785, 414.5809, 406.2410,
        398.4239, 391.0969, 384.2292, 377.7920, 371.7583, 366.1029,
    ],
    'ensemble_mean': [
        453.9091, 443.5161, 432.8683, 422.7560, 414.1958, 406.3113,
        398.7037, 391.8506, 384.9362, 378.4532, 372.7470, 367.1855,
    ],
}

AIRLINE_FITS = (AIRLINE_SEASONAL, AIRLINE_NON_SEASONAL)

import math

import numpy as np
import pandas as pd

from ...estimation import FitConfig, fit, load_model
from ...forms import SimulationForm
from ...io_utils import airline_series, frame_to_csv
from ...reference_fits import AIRLINE_FITS
from ...simulation import SimulationRequest, forecast, simulate_ensemble
from ..base import SarimaCommand


class Command(SarimaCommand):
    help = (
        'Rerun the airline passengers experiment: for the seasonal (1,1,1)(0,1,0)[12] and the '
        '(1,0,1)-with-mean models, compare forecasts with the mean of simulated continuations.'
    )

    def add_arguments(self, parser):
        parser.add_argument('--paths', type=int, default=10000)
        parser.add_argument('--seed', type=int, default=4321)
        parser.add_argument('--horizon', type=int, default=12)
        parser.add_argument('--examples', type=int, default=5, help='example continuations printed per model')
        parser.add_argument('--refit', action='store_true',
                            help='estimate coefficients by CSS instead of using the published ones')
        parser.add_argument('--workers', type=int, default=None)

    def run(self, *args, **options):
        form = self.validate(SimulationForm, {
            'horizon': options['horizon'],
            'paths': options['paths'],
            'seed': options['seed'],
            'workers': options['workers'],
        })
        request = form.to_request()
        series = airline_series()

        for reference in AIRLINE_FITS:
            if options['refit']:
                fitted = fit(series, reference['order'], FitConfig())
            else:
                fitted = load_model(reference['coefficients'], reference['order'], reference['sigma2'], series)

            self.stdout.write(f"# {reference['label']} ARIMA{fitted.order}")
            self.stdout.write(f"# coefficients: {self._describe(fitted.model)}")

            expected = forecast(fitted, request.horizon)
            ensemble = simulate_ensemble(fitted, request, workers=form.cleaned_data['workers'])
            bound = 4.0 * ensemble.sd / math.sqrt(ensemble.n_paths)

            table = pd.DataFrame({
                'time': ensemble.times(),
                'forecast': expected,
                'ensemble_mean': ensemble.mean,
                'difference': ensemble.mean - expected,
                'bound': bound,
                'within_bound': np.abs(ensemble.mean - expected) <= bound,
            })
            published = reference['forecast'][:request.horizon]
            if len(published) == request.horizon:
                table['published_forecast'] = published
            self.stdout.write(frame_to_csv(table), ending='')

            if options['examples'] > 0:
                examples = simulate_ensemble(
                    fitted,
                    SimulationRequest(horizon=request.horizon, n_paths=options['examples'], seed=request.seed),
                )
                self.stdout.write(f"# {options['examples']} example continuations")
                self.stdout.write(frame_to_csv(examples.to_frame()), ending='')
            self.stdout.write('')

    @staticmethod
    def _describe(model):
        parts = []
        for name in ('phi', 'theta', 'sphi', 'stheta'):
            values = getattr(model, name)
            if values:
                parts.append(f"{name}=[{', '.join(f'{v:.4f}' for v in values)}]")
        if model.mean is not None:
            parts.append(f"mean={model.mean:.4f}")
        parts.append(f"sigma2={model.sigma2:.4g}")
        return ' '.join(parts)

from ...forms import SimulationForm
from ...io_utils import frame_to_csv, load_model_file
from ...simulation import ensemble_summary, forecast, simulate_ensemble
from ..base import SarimaCommand


class Command(SarimaCommand):
    help = (
        'Simulate random continuations of the series a model was fitted to. '
        'Prints an m x n CSV matrix, a quantile table (--quantiles) or long-format plot data (--plot-data).'
    )

    def add_arguments(self, parser):
        parser.add_argument('model', help='model JSON written by the fit command')
        parser.add_argument('--horizon', type=int, required=True, help='number of steps ahead')
        parser.add_argument('--paths', type=int, default=1, help='number of continuations')
        parser.add_argument('--seed', type=int, default=None,
                            help='unsigned 64-bit seed (falls back to SARIMA_SEED)')
        parser.add_argument('--quantiles', default=None, help='comma separated probabilities, e.g. 0.05,0.5,0.95')
        parser.add_argument('--zero-innovations', action='store_true',
                            help='drive the recursion with zero shocks (reproduces the forecast)')
        parser.add_argument('--plot-data', action='store_true',
                            help='long format: path, time, value, ensemble_mean, forecast')
        parser.add_argument('--workers', type=int, default=None, help='simulation threads')
        parser.add_argument('-o', '--output', default=None)

    def run(self, *args, **options):
        if options['quantiles'] and options['plot_data']:
            raise self.usage_error('--quantiles and --plot-data cannot be combined')

        form = self.validate(SimulationForm, {
            'horizon': options['horizon'],
            'paths': options['paths'],
            'seed': options['seed'],
            'zero_innovations': options['zero_innovations'],
            'quantiles': options['quantiles'],
            'workers': options['workers'],
        })
        request = form.to_request()

        fitted = load_model_file(options['model'])
        ensemble = simulate_ensemble(fitted, request, workers=form.cleaned_data['workers'])

        if form.cleaned_data['quantiles']:
            frame = ensemble_summary(ensemble, form.cleaned_data['quantiles'])
        elif options['plot_data']:
            frame = ensemble.to_long_frame(forecast(fitted, request.horizon))
        else:
            frame = ensemble.to_frame()
        self.emit(frame_to_csv(frame), options['output'])

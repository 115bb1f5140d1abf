from ...estimation import fit
from ...forms import FitOptionsForm, SarimaOrderForm
from ...io_utils import dump_model, read_series
from ..base import SarimaCommand

ORDER_NAMES = ('p', 'd', 'q', 'sp', 'sd', 'sq')


class Command(SarimaCommand):
    help = 'Fit a SARIMA model to a CSV series by conditional sum of squares and print the model JSON.'

    def add_arguments(self, parser):
        parser.add_argument('input', help='CSV file with a value column (optionally time,value)')
        parser.add_argument(
            'order', nargs=6, type=int, metavar=('p', 'd', 'q', 'P', 'D', 'Q'),
            help='non-seasonal and seasonal orders',
        )
        parser.add_argument('--s', type=int, default=None, help='season length')
        parser.add_argument('--start', default=None, help='time of the first observation, e.g. 1949')
        parser.add_argument('--frequency', type=int, default=None, help='observations per period')

        mean = parser.add_mutually_exclusive_group()
        mean.add_argument('--mean', dest='include_mean', action='store_const', const=True,
                          help='estimate a process mean (default when d = D = 0)')
        mean.add_argument('--no-mean', dest='include_mean', action='store_const', const=False,
                          help='fix the process mean at zero')

        parser.add_argument('--max-iterations', type=int, default=None)
        parser.add_argument('--tolerance', type=float, default=None)
        parser.add_argument('--initial-coefficients', default=None,
                            help='comma separated start vector: phi, theta, Phi, Theta[, mean]')
        parser.add_argument('-o', '--output', default=None, help='write the model JSON here instead of stdout')

    def run(self, *args, **options):
        order_form = self.validate(SarimaOrderForm, {**dict(zip(ORDER_NAMES, options['order'])), 's': options['s']})
        order = order_form.to_order()

        fit_form = self.validate(FitOptionsForm, {
            'max_iterations': options['max_iterations'],
            'tolerance': options['tolerance'],
            'include_mean': options['include_mean'],
            'initial_coefficients': options['initial_coefficients'],
            'start': options['start'],
            'frequency': options['frequency'],
        })
        if fit_form.cleaned_data['include_mean'] and order.is_differenced:
            raise self.usage_error(f"--mean is not allowed for the differenced order {order}")

        series = read_series(
            options['input'],
            start=fit_form.cleaned_data['start'],
            frequency=fit_form.cleaned_data['frequency'],
        )
        fitted = fit(series, order, fit_form.to_config())

        if not fitted.metadata.get('converged', True):
            self.stderr.write(
                f"warning: fit did not converge after {fitted.metadata.get('iterations')} iterations, "
                f"returning the best point found"
            )
        self.emit(dump_model(fitted), options['output'])

import pandas as pd

from ...forms import ForecastForm
from ...io_utils import frame_to_csv, load_model_file
from ...simulation import forecast
from ..base import SarimaCommand


class Command(SarimaCommand):
    help = 'Print the m-step forecasts of a fitted model as time,forecast CSV.'

    def add_arguments(self, parser):
        parser.add_argument('model', help='model JSON written by the fit command')
        parser.add_argument('--horizon', type=int, required=True, help='number of steps ahead')
        parser.add_argument('-o', '--output', default=None)

    def run(self, *args, **options):
        form = self.validate(ForecastForm, {'horizon': options['horizon']})
        m = form.cleaned_data['horizon']

        fitted = load_model_file(options['model'])
        frame = pd.DataFrame({
            'time': fitted.data.continuation_times(m),
            'forecast': forecast(fitted, m),
        })
        self.emit(frame_to_csv(frame), options['output'])

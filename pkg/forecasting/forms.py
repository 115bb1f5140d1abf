from fractions import Fraction

from django import forms
from django.conf import settings
from django.core.exceptions import ValidationError

from .estimation import FitConfig
from .series import SarimaOrder
from .simulation import SimulationRequest

U64_MAX = 2 ** 64 - 1


def _parse_float_list(text, field_name):
    """Comma or space separated floats"""
    if text in (None, ''):
        return []
    items = [item for item in str(text).replace(',', ' ').split() if item]
    try:
        return [float(item) for item in items]
    except ValueError:
        raise ValidationError(f"{field_name} must be a list of numbers, got {text!r}", code='invalid')


class SarimaOrderForm(forms.Form):
    """(p, d, q)(sp, sd, sq)[s] as given on the command line"""

    p = forms.IntegerField(min_value=0)
    d = forms.IntegerField(min_value=0)
    q = forms.IntegerField(min_value=0)
    sp = forms.IntegerField(min_value=0)
    sd = forms.IntegerField(min_value=0)
    sq = forms.IntegerField(min_value=0)
    s = forms.IntegerField(min_value=1, required=False)

    def clean(self):
        cleaned_data = super().clean()
        seasonal = any(cleaned_data.get(name) for name in ('sp', 'sd', 'sq'))
        if seasonal and not cleaned_data.get('s'):
            raise ValidationError({'s': 'A seasonal order needs a season length (--s).'})
        if not cleaned_data.get('s'):
            cleaned_data['s'] = 1
        return cleaned_data

    def to_order(self):
        return SarimaOrder(**{name: self.cleaned_data[name] for name in ('p', 'd', 'q', 'sp', 'sd', 'sq', 's')})


class FitOptionsForm(forms.Form):
    max_iterations = forms.IntegerField(min_value=1, required=False)
    tolerance = forms.FloatField(required=False)
    include_mean = forms.NullBooleanField(required=False)
    initial_coefficients = forms.CharField(required=False)
    start = forms.CharField(required=False)
    frequency = forms.IntegerField(min_value=1, required=False)

    def clean_tolerance(self):
        tolerance = self.cleaned_data.get('tolerance')
        if tolerance is not None and tolerance <= 0:
            raise ValidationError('Tolerance must be positive.')
        return tolerance

    def clean_initial_coefficients(self):
        values = _parse_float_list(self.cleaned_data.get('initial_coefficients'), 'initial coefficients')
        return tuple(values) or None

    def clean_start(self):
        start = self.cleaned_data.get('start')
        if not start:
            return None
        try:
            return Fraction(start)
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"Start must be a number or fraction, got {start!r}")

    def to_config(self):
        data = self.cleaned_data
        return FitConfig(
            max_iterations=data.get('max_iterations') or getattr(settings, 'SARIMA_MAX_ITERATIONS', 500),
            tolerance=data.get('tolerance') or getattr(settings, 'SARIMA_TOLERANCE', 1e-8),
            include_mean=data.get('include_mean'),
            initial_coefficients=data.get('initial_coefficients'),
        )


class ForecastForm(forms.Form):
    horizon = forms.IntegerField(min_value=1)


class SimulationForm(forms.Form):
    """Flags of the simulate command"""

    horizon = forms.IntegerField(min_value=1)
    paths = forms.IntegerField(min_value=1)
    seed = forms.IntegerField(min_value=0, max_value=U64_MAX, required=False)
    zero_innovations = forms.BooleanField(required=False)
    quantiles = forms.CharField(required=False)
    workers = forms.IntegerField(min_value=1, required=False)

    def clean_seed(self):
        seed = self.cleaned_data.get('seed')
        if seed is None:
            # Environment fallback (SARIMA_SEED)
            seed = getattr(settings, 'SARIMA_SEED', None)
            if seed is not None and not 0 <= seed <= U64_MAX:
                raise ValidationError('SARIMA_SEED must be an unsigned 64-bit integer.')
        return seed

    def clean_quantiles(self):
        quantiles = _parse_float_list(self.cleaned_data.get('quantiles'), 'quantiles')
        for q in quantiles:
            if not 0.0 < q < 1.0:
                raise ValidationError(f"Quantile probabilities must lie in (0, 1), got {q}.")
        return quantiles

    def clean(self):
        cleaned_data = super().clean()
        if cleaned_data.get('zero_innovations') and cleaned_data.get('paths', 1) != 1:
            raise ValidationError({'paths': 'Zero innovations produce the forecast path: use --paths 1.'})
        return cleaned_data

    def to_request(self):
        data = self.cleaned_data
        return SimulationRequest(
            horizon=data['horizon'],
            n_paths=data['paths'],
            seed=data.get('seed'),
            zero_innovations=bool(data.get('zero_innovations')),
        )

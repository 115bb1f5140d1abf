"""
Series files, model persistence and CSV output helpers
"""

import json
import logging
import math
from fractions import Fraction
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings
from django.core.serializers.json import DjangoJSONEncoder

from .exceptions import ModelFileError, SeriesFileError
from .series import FittedModel, TimeSeries

logger = logging.getLogger(__name__)

MODEL_FORMAT = 'sarima-fitted-model'
MODEL_FORMAT_VERSION = 1


def read_series(path, start=None, frequency=None):
    """
    Read a CSV series with either a ``value`` column or ``time,value`` columns.

    Args:
        path: CSV file path or buffer
        start: time origin, overrides the time column when given
        frequency: observations per period, overrides the time column when given
    """
    try:
        frame = pd.read_csv(path, float_precision='round_trip')
    except pd.errors.EmptyDataError:
        logger.warning(f"{path} is empty")
        return TimeSeries((), start=start or Fraction(1), frequency=int(frequency or 1))
    except (OSError, pd.errors.ParserError, UnicodeDecodeError) as e:
        raise SeriesFileError(f"cannot read {path}: {e}") from None

    columns = [str(c).strip().lower() for c in frame.columns]
    frame.columns = columns
    if 'value' not in columns:
        raise SeriesFileError(f"{path} has no 'value' column (found: {', '.join(columns) or 'none'})")

    values = pd.to_numeric(frame['value'], errors='coerce')
    if values.isna().any():
        bad_row = int(values.isna().idxmax()) + 2
        raise SeriesFileError(f"{path} line {bad_row}: missing or non-numeric value")

    if 'time' in columns and len(frame) > 0:
        times, monthly = _decimal_times(frame['time'], path)
        implied = _frequency_from_times(times, path) if len(times) > 1 else (12 if monthly else 1)
        if frequency is None:
            frequency = implied
        if start is None:
            start = Fraction(float(times.iloc[0])).limit_denominator(10 ** 6)

    series = TimeSeries(
        values=tuple(values.tolist()),
        start=start if start is not None else Fraction(1),
        frequency=int(frequency or 1),
    )
    logger.info(f"Read {len(series)} observations from {path} (start {series.start}, frequency {series.frequency})")
    return series


def _decimal_times(column, path):
    """Decimal times from a column of decimal years or YYYY-MM months, plus whether it was months"""
    times = pd.to_numeric(column, errors='coerce')
    if not times.isna().any():
        return times, False
    months = pd.to_datetime(column.astype(str), format='%Y-%m', errors='coerce')
    if months.isna().any():
        raise SeriesFileError(f"{path}: time column must hold decimal times or YYYY-MM months")
    return months.dt.year + (months.dt.month - 1) / 12.0, True


def _frequency_from_times(times, path):
    """Observations per period of an equally spaced, increasing time column"""
    steps = np.diff(times.to_numpy(dtype=float))
    step = steps[0]
    if not step > 0 or not np.allclose(steps, step, rtol=1e-6, atol=0.0):
        raise SeriesFileError(f"{path}: time column must increase in equal steps")
    frequency = round(1.0 / step)
    if frequency < 1 or not math.isclose(frequency * step, 1.0, rel_tol=1e-6):
        raise SeriesFileError(f"{path}: time step {step:g} is not a whole fraction of a period")
    return frequency


def write_series(series, path=None):
    """Write a ``time,value`` CSV; returns the text when no path is given"""
    frame = pd.DataFrame({'time': series.times(), 'value': list(series.values)})
    return frame_to_csv(frame, path)


def frame_to_csv(frame, path=None):
    # Floats go out in shortest round-trip form
    return frame.to_csv(path, index=False, lineterminator='\n')


def airline_series():
    """Monthly international airline passengers, January 1949 to December 1960"""
    return read_series(settings.SARIMA_AIRLINE_DATA, start=Fraction(1949), frequency=12)


def dump_model(fitted, path=None):
    """Serialize a FittedModel as JSON; returns the text when no path is given"""
    payload = {
        'format': MODEL_FORMAT,
        'version': MODEL_FORMAT_VERSION,
        **fitted.to_dict(),
    }
    text = json.dumps(payload, cls=DjangoJSONEncoder, indent=2) + '\n'
    if path is None:
        return text
    Path(path).write_text(text)
    logger.info(f"Model {fitted.order} written to {path}")
    return text


def loads_model(text, source='model'):
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelFileError(f"{source} is not valid JSON: {e}") from None
    if not isinstance(payload, dict) or payload.get('format') != MODEL_FORMAT:
        raise ModelFileError(f"{source} is not a fitted SARIMA model file")
    try:
        return FittedModel.from_dict(payload)
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFileError(f"{source} is malformed: {e}") from None


def load_model_file(path):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ModelFileError(f"cannot read {path}: {e}") from None
    return loads_model(text, source=str(path))

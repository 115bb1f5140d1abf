"""
Error types raised by the forecasting engine.

Every error carries a stable ``code`` string; the management commands print it
in their one-line diagnostics and map the whole family to the data-error exit code.
"""


class ForecastingError(ValueError):
    """Base class for every data error raised by the engine"""

    code = 'forecasting-error'

    def __init__(self, message=None):
        super().__init__(message or self.code)

    def __str__(self):
        message = super().__str__()
        if message == self.code:
            return message
        return f"{self.code}: {message}"


class SeriesTooShort(ForecastingError):
    code = 'series-too-short'


class StateMismatch(ForecastingError):
    """Differencing state whose seed vectors disagree with its orders"""

    code = 'state-mismatch'


class HorizonError(ForecastingError):
    code = 'horizon-zero'


class DimensionMismatch(ForecastingError):
    """Coefficient vectors whose lengths disagree with the model order"""

    code = 'dimension-mismatch'


class InvalidProbability(ForecastingError):
    code = 'invalid-probability'


class ModelFileError(ForecastingError):
    code = 'bad-model-file'


class SeriesFileError(ForecastingError):
    code = 'parse-failure'

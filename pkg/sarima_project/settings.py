import os
from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# ==============================================================================
# CORE SETTINGS
# ==============================================================================

# No web surface is served, the key only satisfies Django's startup checks
SECRET_KEY = config('SECRET_KEY', default='sarima-condsim-insecure-development-key')
DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# ==============================================================================
# APPLICATION DEFINITION
# ==============================================================================

DJANGO_APPS = []

LOCAL_APPS = [
    'forecasting.apps.ForecastingConfig',
]

INSTALLED_APPS = DJANGO_APPS + LOCAL_APPS

# Command-line only: no URLconf, middleware or templates
MIDDLEWARE = []

# Nothing is persisted in a database, models travel as JSON files
DATABASES = {}

USE_TZ = True
TIME_ZONE = 'UTC'

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# ==============================================================================
# SIMULATION SETTINGS
# ==============================================================================

# Fallback seed for `simulate` when --seed is not given (unsigned 64-bit)
SARIMA_SEED = config('SARIMA_SEED', default=None, cast=lambda v: int(v) if v not in (None, '') else None)

# Threads used by simulate_ensemble when the caller does not choose
SARIMA_WORKERS = config('SARIMA_WORKERS', default=1, cast=int)

# ==============================================================================
# ESTIMATION SETTINGS
# ==============================================================================

SARIMA_MAX_ITERATIONS = config('SARIMA_MAX_ITERATIONS', default=500, cast=int)
SARIMA_TOLERANCE = config('SARIMA_TOLERANCE', default=1e-8, cast=float)

# Variance floor for degenerate (constant) series
SARIMA_SIGMA2_FLOOR = config('SARIMA_SIGMA2_FLOOR', default=1e-12, cast=float)

# ==============================================================================
# DATA
# ==============================================================================

# Monthly international airline passengers 1949-1960 (144 values)
SARIMA_AIRLINE_DATA = config(
    'SARIMA_AIRLINE_DATA',
    default=str(BASE_DIR / 'forecasting' / 'data' / 'airline.csv'),
)

# ==============================================================================
# LOGGING
# ==============================================================================

SARIMA_LOG_LEVEL = config('SARIMA_LOG_LEVEL', default='INFO')
SARIMA_LOG_FILE = config('SARIMA_LOG_FILE', default=None)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {message}',
            'style': '{',
        },
    },
    'handlers': {
        # StreamHandler writes to stderr, stdout is reserved for CSV/JSON output
        'console': {
            'level': SARIMA_LOG_LEVEL,
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'forecasting': {
            'handlers': ['console'],
            'level': SARIMA_LOG_LEVEL,
            'propagate': False,
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
}

# Add file logging when a destination is configured
if SARIMA_LOG_FILE and os.access(Path(SARIMA_LOG_FILE).parent, os.W_OK):
    LOGGING['handlers']['file'] = {
        'level': SARIMA_LOG_LEVEL,
        'class': 'logging.FileHandler',
        'filename': SARIMA_LOG_FILE,
        'formatter': 'verbose',
    }
    LOGGING['loggers']['forecasting']['handlers'].append('file')

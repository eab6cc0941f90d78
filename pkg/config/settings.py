"""
Django settings for the modkernel project.

There is no HTTP surface: Django provides settings, logging, form validation
of run configurations and the management-command CLI.
"""

from pathlib import Path
import os

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")

SECRET_KEY = os.getenv("DJANGO_SECRET_KEY", "modkernel-local-only-no-sessions-or-signing")

DEBUG = os.getenv("DEBUG", "False") == "True"

# Application definition
INSTALLED_APPS = [
    "core.apps.CoreConfig",
    "tfa.apps.TfaConfig",
]

# No models, no database
DATABASES = {}

# Internationalization
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# Numerical tunables
MODKERNEL_FRAME_ACCEPTANCE_RATIO = float(os.getenv("MODKERNEL_FRAME_ACCEPTANCE_RATIO", "1e-8"))
MODKERNEL_DEFAULT_SEED = int(os.getenv("MODKERNEL_DEFAULT_SEED", "42"))
MODKERNEL_SEARCH_TRIALS = int(os.getenv("MODKERNEL_SEARCH_TRIALS", "64"))
MODKERNEL_ASCENT_STEPS = int(os.getenv("MODKERNEL_ASCENT_STEPS", "200"))
MODKERNEL_POWER_ITERATION_CAP = int(os.getenv("MODKERNEL_POWER_ITERATION_CAP", "20000"))
MODKERNEL_POWER_ITERATION_TOL = float(os.getenv("MODKERNEL_POWER_ITERATION_TOL", "1e-12"))
MODKERNEL_GAUSSIAN_PERIODS = int(os.getenv("MODKERNEL_GAUSSIAN_PERIODS", "3"))
MODKERNEL_MAX_MODULUS = int(os.getenv("MODKERNEL_MAX_MODULUS", "64"))
MODKERNEL_ENUMERATION_CAP = int(os.getenv("MODKERNEL_ENUMERATION_CAP", "4096"))

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

# Logging configuration
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        "tfa": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
        "core": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}

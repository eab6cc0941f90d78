"""
Development settings for modkernel.

Verbose logging and smaller searches for quick iteration.
"""

from .settings import *

DEBUG = True

MODKERNEL_SEARCH_TRIALS = int(os.getenv("MODKERNEL_SEARCH_TRIALS", "16"))

# Debug logging for development
LOGGING["root"]["level"] = "DEBUG"
LOGGING["loggers"]["tfa"]["level"] = "DEBUG"
LOGGING["loggers"]["core"]["level"] = "DEBUG"

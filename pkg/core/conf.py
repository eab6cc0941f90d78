"""
Settings lookup that keeps the numerical modules importable outside Django.
"""

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


def get_setting(name, default):
    """
    Read a tunable from Django settings.

    Args:
        name: Settings attribute, e.g. "MODKERNEL_DEFAULT_SEED"
        default: Value used when settings are absent or unconfigured

    Returns:
        The configured value or the default
    """
    try:
        return getattr(settings, name, default)
    except ImproperlyConfigured:
        return default

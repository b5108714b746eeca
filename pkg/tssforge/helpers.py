import os

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


DEFAULTS = {
    'TSSFORGE_CAP': 10 ** 6,
    'TSSFORGE_TABLE_CAP': 2048,
    'TSSFORGE_ASSOC_EXHAUSTIVE_LIMIT': 512,
    'TSSFORGE_ASSOC_SAMPLES': 10 ** 5,
    'TSSFORGE_ASSOC_SEED': 0,
    'TSSFORGE_BUDGET': 10 ** 6,
    'TSSFORGE_JOBS': 1,
}

CAP_ENVIRONMENT_VARIABLE = 'TSSFORGE_CAP'


def get_setting(name):
    """
    Returns the configured value for one of the ``TSSFORGE_*`` settings,
    falling back to the package default when Django settings have not been
    configured (or do not define the setting.)
    """
    if settings.configured:
        return getattr(settings, name, DEFAULTS[name])
    return DEFAULTS[name]


def _positive_int(value, source):
    try:
        value = int(value)
    except (TypeError, ValueError):
        raise ImproperlyConfigured('%s must be an integer, got %r' % (source, value))
    if value < 1:
        raise ImproperlyConfigured('%s must be positive, got %r' % (source, value))
    return value


def get_order_cap(override=None):
    """
    Returns the group order cap. An explicit ``override`` takes precedence over
    the ``TSSFORGE_CAP`` environment variable, which takes precedence over the
    ``TSSFORGE_CAP`` setting.
    """
    if override is not None:
        return _positive_int(override, 'cap')
    value = os.environ.get(CAP_ENVIRONMENT_VARIABLE)
    if value:
        return _positive_int(value, 'the %s environment variable' % CAP_ENVIRONMENT_VARIABLE)
    return _positive_int(get_setting('TSSFORGE_CAP'), 'TSSFORGE_CAP')


def get_budget(override=None):
    if override is not None:
        return _positive_int(override, 'budget')
    return _positive_int(get_setting('TSSFORGE_BUDGET'), 'TSSFORGE_BUDGET')


def get_jobs(override=None):
    if override is not None:
        return _positive_int(override, 'jobs')
    return _positive_int(get_setting('TSSFORGE_JOBS'), 'TSSFORGE_JOBS')


VERBOSITY_LEVELS = {0: 'WARNING', 1: 'WARNING', 2: 'INFO', 3: 'DEBUG'}


def configure(verbosity=1):
    """
    Configures Django for standalone use of the package (the command line
    entry point), unless settings have already been configured by a project.
    """
    import django

    if settings.configured:
        return

    settings.configure(
        INSTALLED_APPS=(
            'tssforge',
        ),
        TEMPLATES=[{
            'BACKEND': 'django.template.backends.django.DjangoTemplates',
            'APP_DIRS': True,
        }],
        USE_TZ=True,
        LOGGING={
            'version': 1,
            'disable_existing_loggers': False,
            'handlers': {
                'console': {
                    'level': 'DEBUG',
                    'class': 'logging.StreamHandler',
                    'stream': 'ext://sys.stderr',
                },
            },
            'loggers': {
                'tssforge': {
                    'handlers': ['console'],
                    'level': VERBOSITY_LEVELS.get(verbosity, 'DEBUG'),
                    'propagate': False,
                },
            },
        },
    )
    django.setup()

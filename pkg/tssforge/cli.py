"""
The ``tssforge`` command line.

Standard output carries only the serialized report; usage errors and log
messages go to standard error. Exit codes: 0 success, 1 usage error or
unreadable input, 2 incomplete computation (budget or cap), 3 a witness
against a proven bound or a failed certificate.
"""
import logging
import sys
import time

from django.core.exceptions import ImproperlyConfigured
from django.core.management.base import CommandError

from tssforge.commands import PROG, exit_status, read_catalog, site  # NOQA
from tssforge.exceptions import CapExceeded, CertificateError, TssForgeError
from tssforge.helpers import VERBOSITY_LEVELS, configure


logger = logging.getLogger(__name__)


USAGE_ERROR = 1


def emit(report, format='json', include_timing=False):
    """
    Serializes a report with the report view of its command.
    """
    return site.get(report.verb).get_report_view().render(
        report, format=format, include_timing=include_timing)


def _usage(parser, stderr, error):
    stderr.write(parser.format_usage())
    stderr.write('%s: %s\n' % (PROG, error))
    return USAGE_ERROR


def run(argv, stdout=None, stderr=None):
    """
    Runs one command, writing its report to ``stdout``.

    :returns: the exit code.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = site.create_parser()
    try:
        options = vars(parser.parse_args(argv))
    except CommandError as e:
        return _usage(parser, stderr, e)
    except SystemExit as e:
        # --help
        return e.code or 0

    logging.getLogger('tssforge').setLevel(VERBOSITY_LEVELS[options['verbosity']])
    command = site.get(options.pop('verb'))
    started = time.perf_counter()
    try:
        report = command.run(options)
    except CommandError as e:
        return _usage(parser, stderr, e)
    except (CertificateError, CapExceeded) as e:
        logger.error('%s failed: %s', command.verb, e)
        report = command.failure_report(options, e)
    except (TssForgeError, ImproperlyConfigured) as e:
        stderr.write('%s: %s\n' % (PROG, e))
        return USAGE_ERROR
    report.wall_ms = int(round((time.perf_counter() - started) * 1000))

    stdout.write(emit(report, options['output'], include_timing=options['timing']))
    return exit_status(report)


def main():
    configure()
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()

import csv
import hashlib
import io
import json

from django.core.exceptions import ImproperlyConfigured
from django.core.serializers.json import DjangoJSONEncoder
from django.template.loader import get_template, select_template

from tssforge.utils import mark_strings_safe


SCHEMA_VERSION = '1'

FORMATS = ('json', 'csv', 'text')

#: Parameters that only affect how a command runs, never what it computes.
EXECUTION_PARAMETERS = ('jobs', 'output', 'verbosity', 'timing')


def canonical_json(value):
    return json.dumps(value, sort_keys=True, separators=(',', ':'), cls=DjangoJSONEncoder)


def normalize_parameters(parameters):
    """
    Returns the command echo for a set of parsed parameters: execution-only
    parameters and unset values are dropped and group specifications are
    written back as text.
    """
    normalized = {}
    for key, value in parameters.items():
        if key in EXECUTION_PARAMETERS or value is None or value is False:
            continue
        if isinstance(value, (list, tuple)):
            value = [str(item) for item in value]
            if not value:
                continue
        elif not isinstance(value, (bool, int)):
            value = str(value)
        normalized[key] = value
    return normalized


class Report(object):
    """
    The result of running one command.

    ``results`` is the list of rows the command produced (the rows flattened
    by CSV output) and ``summary`` the remaining verb-specific values. Both
    contain only strings, exact integers, booleans and ``None``.
    """
    def __init__(self, verb, parameters, results=None, summary=None, status='consistent',
                 warnings=(), errors=(), incomplete=False, wall_ms=None):
        self.verb = verb
        self.parameters = normalize_parameters(parameters)
        self.results = list(results or [])
        self.summary = dict(summary or {})
        self.status = status
        self.warnings = list(warnings)
        self.errors = list(errors)
        self.incomplete = incomplete
        self.wall_ms = wall_ms

    @property
    def payload(self):
        return {
            'status': self.status,
            'summary': self.summary,
            'results': self.results,
        }

    @property
    def fingerprint(self):
        """
        The SHA-256 of the canonical JSON of :attr:`payload`.
        """
        return hashlib.sha256(canonical_json(self.payload).encode('utf-8')).hexdigest()

    def as_dict(self, include_timing=False):
        data = {
            'schema_version': SCHEMA_VERSION,
            'command': {
                'verb': self.verb,
                'parameters': self.parameters,
            },
            'diagnostics': {
                'warnings': self.warnings,
                'errors': self.errors,
                'incomplete': self.incomplete,
            },
            'fingerprint': self.fingerprint,
        }
        data.update(self.payload)
        if include_timing and self.wall_ms is not None:
            data['timing'] = {'wall_ms': self.wall_ms}
        return data

    def __repr__(self):
        return '<Report %s status=%s rows=%d>' % (self.verb, self.status, len(self.results))


class ReportView(object):
    """
    Base class for serializing a :class:`Report` in one of the output
    formats.
    """
    #: The columns of CSV output, in order. Rows are taken from the report
    #: results.
    csv_columns = ()

    def get_context_data(self, **kwargs):
        """
        Returns the context that will be used for rendering text reports.

        :rtype: :class:`dict`
        """
        return kwargs

    def get_csv_rows(self, report):
        return report.results

    def render_json(self, report, include_timing=False):
        return json.dumps(report.as_dict(include_timing=include_timing), sort_keys=True,
                          indent=2, cls=DjangoJSONEncoder) + '\n'

    def render_csv(self, report):
        stream = io.StringIO()
        writer = csv.DictWriter(stream, fieldnames=self.csv_columns, extrasaction='ignore',
                                lineterminator='\n')
        writer.writeheader()
        for row in self.get_csv_rows(report):
            writer.writerow(dict((key, _csv_value(value)) for key, value in row.items()))
        return stream.getvalue()

    def render_text(self, report, include_timing=False):
        raise NotImplementedError  # Must be implemented by subclasses.

    def render(self, report, format='json', include_timing=False):
        """
        Serializes the report.

        :param format: one of ``json``, ``csv`` or ``text``.
        :rtype: :class:`str`
        """
        if format == 'json':
            return self.render_json(report, include_timing=include_timing)
        if format == 'csv':
            return self.render_csv(report)
        if format == 'text':
            return self.render_text(report, include_timing=include_timing)
        raise ValueError('unknown output format %r' % (format,))


def _csv_value(value):
    if isinstance(value, (list, tuple)):
        return ';'.join(str(item) for item in value)
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    return value


class TemplatedReportView(ReportView):
    """
    A report view that renders text output with a Django template.
    """
    #: A template name (or list of template names) that will be used to render
    #: text output. :attr:`.text_template` takes precedence over this value, if
    #: set.
    text_template_name = None

    def _get_template(self, value):
        if isinstance(value, (list, tuple)):
            return select_template(value)
        else:
            return get_template(value)

    def _get_text_template(self):
        if getattr(self, '_text_template', None) is not None:
            return self._text_template

        if self.text_template_name is None:
            raise ImproperlyConfigured('A `text_template` or '
                '`text_template_name` must be provided to render this '
                'report as text.')

        return self._get_template(self.text_template_name)

    def _set_text_template(self, template):
        self._text_template = template

    text_template = property(_get_text_template, _set_text_template)

    def render_text(self, report, include_timing=False):
        """
        Renders the report with :attr:`.text_template`. The context holds the
        report as ``report`` and its serialized form as ``data``.
        """
        context = self.get_context_data(
            report=report,
            data=report.as_dict(include_timing=include_timing),
            verb=report.verb,
            status=report.status,
        )
        return self.text_template.render(mark_strings_safe(context))


class BoundsReportView(TemplatedReportView):
    csv_columns = ('theorem', 'n', 'bound')
    text_template_name = 'tssforge/reports/bounds.txt'


class TssVerifyReportView(TemplatedReportView):
    csv_columns = ('first', 'second', 'witness')
    text_template_name = 'tssforge/reports/tss_verify.txt'


class TssSearchReportView(TemplatedReportView):
    csv_columns = ('first', 'second', 'witness')
    text_template_name = 'tssforge/reports/tss_search.txt'


class SharpReportView(TemplatedReportView):
    csv_columns = ('first', 'second', 'witness')
    text_template_name = 'tssforge/reports/sharp.txt'


class HomsReportView(TemplatedReportView):
    csv_columns = ('images', 'cyclic', 'transitive', 'image_order', 'surjective',
                   'f_x', 'f_x_prime')
    text_template_name = 'tssforge/reports/homs.txt'


class AuditReportView(TemplatedReportView):
    csv_columns = ('group', 'order', 'bound', 'total', 'cyclic', 'non_cyclic', 'status')
    text_template_name = 'tssforge/reports/audit.txt'


class ValidateGroupReportView(TemplatedReportView):
    csv_columns = ('representative', 'size', 'element_order')
    text_template_name = 'tssforge/reports/validate_group.txt'

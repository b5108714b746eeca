import abc
import logging
import os
from collections import namedtuple

from django.core.management.base import CommandError, CommandParser

from tssforge import forms, reports
from tssforge.braids import (INCOMPLETE, WITNESS_FOUND, audit_catalog, classify,
                             cyclicity_criterion, enumerate_homs, image_sizes_allowed,
                             relation_transcript)
from tssforge.constructions import builtin_catalog, make_sharp_group
from tssforge.exceptions import CertificateError, GroupFormatError, TssForgeError
from tssforge.groups import (is_perfect, is_solvable, is_transitive, load_cayley,
                             load_perm_group, parse_elements)
from tssforge.helpers import get_jobs
from tssforge.tss import (proposition_bound, search_tss, stabilizer_certificate,
                          thm1_bound, thm2_bound, torsion_certificate,
                          verify_totally_symmetric)
from tssforge.utils import docstring_summary


logger = logging.getLogger(__name__)


PROG = 'tssforge'

OUTPUT_FORMATS = reports.FORMATS

CERTIFICATE_FAILURE = 'certificate-failure'

CATALOG_LOADERS = {
    '.cayley': load_cayley,
    '.perm': load_perm_group,
}


class UsageError(CommandError):
    pass


Catalog = namedtuple('Catalog', ('groups', 'diagnostics'))


def read_catalog(path, cap=None, exhaustive=False):
    """
    Loads every ``.cayley`` and ``.perm`` file of a directory, sorted by file
    name. A file that fails to load becomes a diagnostic naming the file;
    the remaining files are still loaded.

    :raises GroupFormatError: if the directory cannot be read.
    :rtype: :class:`Catalog`
    """
    try:
        names = sorted(os.listdir(path))
    except OSError as e:
        raise GroupFormatError('cannot read catalog directory: %s' % e.strerror, path=path)

    groups = []
    diagnostics = []
    for name in names:
        loader = CATALOG_LOADERS.get(os.path.splitext(name)[1])
        if loader is None:
            logger.debug('Skipping %s in catalog %s', name, path)
            continue
        try:
            if loader is load_cayley:
                group = loader(os.path.join(path, name), cap=cap, exhaustive=exhaustive)
            else:
                group = loader(os.path.join(path, name), cap=cap)
        except TssForgeError as e:
            logger.warning('Could not load %s: %s', name, e)
            diagnostics.append('%s: %s' % (name, e))
            continue
        groups.append(group)
    if not groups and not diagnostics:
        diagnostics.append('catalog %s contains no group files' % path)
        logger.warning('Catalog %s contains no group files', path)
    return Catalog(groups, diagnostics)


def add_common_arguments(parser):
    parser.add_argument('--cap', type=int, help='maximum group order')
    parser.add_argument('--budget', type=int, help='search nodes per partition')
    parser.add_argument('--jobs', type=int, help='worker processes')
    parser.add_argument('--output', choices=OUTPUT_FORMATS, default='json')
    parser.add_argument('--exhaustive-assoc', action='store_true',
                        help='check the associativity of every Cayley table exhaustively')
    parser.add_argument('--permutation-action', action='store_true',
                        help='realize sharp groups as permutation groups')
    parser.add_argument('--timing', action='store_true',
                        help='include wall-clock timing in the report')
    parser.add_argument('--verbosity', type=int, choices=(0, 1, 2, 3), default=1)


class CommandSite(object):
    def __init__(self):
        self.__commands = {}

    def __iter__(self):
        """
        Returns an iterator of the registered commands, sorted by verb.
        """
        for verb in sorted(self.__commands):
            yield self.__commands[verb]

    def register(self, cls):
        """
        Adds a command to the index.
        """
        command = cls(site=self)
        logger.debug('Registering %r with %r', command, self)
        self.__commands[command.verb] = command
        return cls

    def get(self, verb):
        try:
            return self.__commands[verb]
        except KeyError:
            raise UsageError('unknown verb %r' % (verb,))

    def create_parser(self, prog=PROG, called_from_command_line=False):
        parser = CommandParser(
            prog=prog,
            description='Totally symmetric sets and braid group homomorphisms into finite groups.',
            called_from_command_line=called_from_command_line,
        )
        subparsers = parser.add_subparsers(dest='verb', metavar='verb')
        subparsers.required = True
        for command in self:
            subparser = subparsers.add_parser(command.verb, help=command.description,
                                              description=command.description)
            add_common_arguments(subparser)
            command.add_arguments(subparser)
        return parser


class Command(abc.ABC):
    @property
    @abc.abstractmethod
    def verb(self):
        """
        The verb naming this command on the command line.
        """

    #: The form validating the parameters of this command.
    form_class = forms.CommandForm

    #: The report view class used to serialize reports of this command.
    report_view = reports.TemplatedReportView

    def __init__(self, site):
        self.site = site

    def __repr__(self):
        return '<%s: %s>' % (type(self).__name__, self.verb)

    @property
    def description(self):
        """
        The first paragraph of the command class' docstring.
        """
        return docstring_summary(type(self))

    def add_arguments(self, parser):
        pass

    def get_form(self, options):
        data = {}
        for name in self.form_class.base_fields:
            value = options.get(name)
            # Unset options and store_true flags left off; 0 is a value.
            if value is not None and value is not False:
                data[name] = value
        return self.form_class(data=data)

    def get_report_view(self):
        return self.report_view()

    def clean(self, options):
        """
        Validates the parameters, returning the keyword arguments for
        :meth:`execute`.

        :raises UsageError: if the parameters are invalid.
        """
        form = self.get_form(options)
        if not form.is_valid():
            messages = []
            for field, errors in sorted(form.errors.items()):
                prefix = '' if field == '__all__' else '--%s: ' % field.replace('_', '-')
                messages.extend(prefix + error for error in errors)
            raise UsageError('; '.join(messages))
        return form.get_command_kwargs()

    def run(self, options):
        parameters = self.clean(options)
        jobs = get_jobs(options.get('jobs'))
        logger.info('Running %s with %r', self.verb, parameters)
        return self.execute(parameters, jobs=jobs)

    def execute(self, parameters, jobs=1):
        raise NotImplementedError  # Must be implemented by subclasses.

    def report(self, parameters, **kwargs):
        return reports.Report(self.verb, parameters, **kwargs)

    def failure_report(self, options, error):
        """
        Returns the report for a run that ended with ``error``.
        """
        if isinstance(error, CertificateError):
            return self.report(options, status=CERTIFICATE_FAILURE,
                               summary={'dump': error.dump}, errors=[str(error)])
        return self.report(options, status=INCOMPLETE, errors=[str(error)], incomplete=True)

    @staticmethod
    def build_group(spec, parameters):
        return spec.build(cap=parameters.get('cap'),
                          sharp_permutation_action=parameters.get('permutation_action', False),
                          exhaustive_assoc=parameters.get('exhaustive_assoc', False))


def format_elements(G, elements):
    return [G.format_element(element) for element in elements]


def witness_rows(witness):
    G = witness.ambient
    return [{
        'first': index + 1,
        'second': index + 2,
        'witness': G.format_element(h),
    } for index, h in enumerate(witness.transposition_witnesses)]


def certificates(G, witness):
    return {
        'torsion': dict(torsion_certificate(G, witness)._asdict()),
        'stabilizer': dict(stabilizer_certificate(G, witness)._asdict()),
    }


class BoundsCommand(Command):
    """
    Evaluates the lower bound on the order of finite groups receiving a
    non-cyclic homomorphism from B_n (theorem 1) or a non-trivial one from its
    commutator subgroup (theorem 2).
    """
    verb = 'bounds'
    form_class = forms.BoundsForm
    report_view = reports.BoundsReportView

    def add_arguments(self, parser):
        parser.add_argument('--theorem')
        parser.add_argument('--n', type=int)

    def execute(self, parameters, jobs=1):
        theorem, n = parameters['theorem'], parameters['n']
        bound = thm1_bound(n) if theorem == 1 else thm2_bound(n)
        return self.report(parameters, summary={'k': n // 2},
                           results=[{'theorem': theorem, 'n': n, 'bound': bound}])


class TssVerifyCommand(Command):
    """
    Checks whether a set of elements is totally symmetric and, if it is,
    prints its transposition witnesses and order certificates.
    """
    verb = 'tss-verify'
    form_class = forms.TssVerifyForm
    report_view = reports.TssVerifyReportView

    def add_arguments(self, parser):
        parser.add_argument('--group', '-g')
        parser.add_argument('--elements')

    def execute(self, parameters, jobs=1):
        G = self.build_group(parameters['group'], parameters)
        elements = parse_elements(G, parameters['elements'])
        result = verify_totally_symmetric(G, elements)
        summary = {
            'group': G.name,
            'order': G.order,
            'elements': format_elements(G, elements),
            'totally_symmetric': result.ok,
        }
        if not result.ok:
            summary['failure'] = {'reason': result.reason, 'indices': list(result.indices)}
            return self.report(parameters, summary=summary)
        summary.update(certificates(G, result))
        return self.report(parameters, summary=summary, results=witness_rows(result))


class TssSearchCommand(Command):
    """
    Searches a group for a largest totally symmetric set inside a single
    conjugacy class.
    """
    verb = 'tss-search'
    form_class = forms.TssSearchForm
    report_view = reports.TssSearchReportView

    def add_arguments(self, parser):
        parser.add_argument('--group', '-g')
        parser.add_argument('--max-size', type=int)

    def execute(self, parameters, jobs=1):
        G = self.build_group(parameters['group'], parameters)
        result = search_tss(G, max_size=parameters.get('max_size'),
                            budget=parameters.get('budget'), jobs=jobs)
        witness = result.best
        summary = {
            'group': G.name,
            'order': G.order,
            'size': witness.size,
            'set': format_elements(G, witness.elements),
            'proposition_bound': proposition_bound(witness.size),
            'complete': result.complete,
            'nodes': result.nodes,
        }
        summary.update(certificates(G, witness))
        return self.report(parameters, summary=summary, results=witness_rows(witness),
                           status='consistent' if result.complete else INCOMPLETE,
                           incomplete=not result.complete)


class SharpCommand(Command):
    """
    Constructs the extremal group of order 2^(n-1) n! and certifies its
    distinguished totally symmetric set.
    """
    verb = 'sharp'
    form_class = forms.SharpForm
    report_view = reports.SharpReportView

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int)

    def execute(self, parameters, jobs=1):
        sharp = make_sharp_group(parameters['n'],
                                 permutation_action=parameters.get('permutation_action', False),
                                 cap=parameters.get('cap'))
        G = sharp.handle
        witness = verify_totally_symmetric(G, sharp.distinguished_tss)
        summary = {
            'n': sharp.n,
            'order': G.order,
            'expected_order': sharp.expected_order,
            'realization': G.backing,
            'degree': getattr(G, 'degree', None),
            'distinguished_tss': format_elements(G, sharp.distinguished_tss),
        }
        summary.update(certificates(G, witness))
        return self.report(parameters, summary=summary, results=witness_rows(witness))


class HomsCommand(Command):
    """
    Enumerates the homomorphisms from the braid group B_n into a finite group.
    """
    verb = 'homs'
    form_class = forms.HomsForm
    report_view = reports.HomsReportView

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int)
        parser.add_argument('--target')
        parser.add_argument('--non-cyclic-only', action='store_true')
        parser.add_argument('--up-to-conjugacy', action='store_true')
        parser.add_argument('--transitive-only', action='store_true')
        parser.add_argument('--surjective-only', action='store_true')

    def execute(self, parameters, jobs=1):
        G = self.build_group(parameters['target'], parameters)
        enumeration = enumerate_homs(
            parameters['n'], G,
            non_cyclic_only=parameters.get('non_cyclic_only', False),
            up_to_conjugacy=parameters.get('up_to_conjugacy', False),
            transitive_only=parameters.get('transitive_only', False),
            surjective_only=parameters.get('surjective_only', False),
            budget=parameters.get('budget'), jobs=jobs)
        rows = [self.describe(hom) for hom in enumeration.homs]
        summary = {
            'n': enumeration.n,
            'target': G.name,
            'order': G.order,
            'total': enumeration.total,
            'cyclic': enumeration.cyclic,
            'non_cyclic': enumeration.non_cyclic,
            'matched': enumeration.matched,
            'complete': enumeration.complete,
            'nodes': enumeration.nodes,
        }
        return self.report(parameters, summary=summary, results=rows,
                           status='consistent' if enumeration.complete else INCOMPLETE,
                           incomplete=not enumeration.complete)

    @staticmethod
    def describe(hom):
        G = hom.target
        classification = classify(hom)
        criterion = cyclicity_criterion(hom)
        dump = {'images': hom.format_images(), 'transcript': relation_transcript(hom)}
        if criterion.applicable and not criterion.equivalent:
            raise CertificateError('t1 = t3 disagrees with cyclicity for %r' % (hom,), dump=dump)
        if not image_sizes_allowed(hom, classification):
            raise CertificateError('image of a totally symmetric set has impossible size '
                                   'for %r' % (hom,), dump=dump)
        for verification in (classification.f_x_verification,
                             classification.f_x_prime_verification):
            if verification is not None and not verification.ok:
                raise CertificateError('image of a totally symmetric set is not totally '
                                       'symmetric for %r' % (hom,), dump=dump)
        return {
            'images': hom.format_images(),
            'cyclic': hom.cyclic,
            'transitive': hom.transitive,
            'image_order': hom.image_order,
            'surjective': hom.surjective,
            'f_x': format_elements(G, classification.f_x),
            'f_x_prime': format_elements(G, classification.f_x_prime),
            't1_equals_t3': criterion.first_equals_third,
        }


class AuditCommand(Command):
    """
    Audits a catalog of finite groups against the lower bound on groups
    receiving non-cyclic homomorphisms from B_n.
    """
    verb = 'audit'
    form_class = forms.AuditForm
    report_view = reports.AuditReportView

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int)
        parser.add_argument('--catalog', help='directory of .cayley and .perm files')
        parser.add_argument('--group', '-g', action='append',
                            help='a group specification to audit (repeatable)')
        parser.add_argument('--builtin', action='store_true',
                            help='audit every built-in group of order below the bound')
        parser.add_argument('--complete-catalog', action='store_true',
                            help='declare the catalog complete for the perfect group scan')

    def execute(self, parameters, jobs=1):
        n = parameters['n']
        cap = parameters.get('cap')
        groups = []
        diagnostics = []
        if parameters.get('catalog'):
            catalog = read_catalog(parameters['catalog'], cap=cap,
                                   exhaustive=parameters.get('exhaustive_assoc', False))
            groups.extend(catalog.groups)
            diagnostics.extend(catalog.diagnostics)
        for spec in parameters.get('group') or ():
            groups.append(self.build_group(spec, parameters))
        if parameters.get('builtin'):
            groups.extend(builtin_catalog(thm1_bound(n), cap=cap))

        audit = audit_catalog(n, groups, complete_catalog=parameters.get('complete_catalog', False),
                              budget=parameters.get('budget'), jobs=jobs)
        for record in audit.records:
            diagnostics.extend('%s: %s' % (record.name, message) for message in record.diagnostics)
        rows = []
        for record in audit.records:
            enumeration = record.enumeration
            rows.append({
                'group': record.name,
                'order': record.order,
                'bound': record.bound,
                'region': record.region,
                'perfect': record.perfect,
                'solvable': record.solvable,
                'total': enumeration.total if enumeration else None,
                'cyclic': enumeration.cyclic if enumeration else None,
                'non_cyclic': enumeration.non_cyclic if enumeration else None,
                'non_cyclic_surjective': record.non_cyclic_surjections,
                'complete': enumeration.complete if enumeration else None,
                'status': record.status,
            })
        summary = {
            'n': n,
            'bound': audit.bound,
            'excluded': audit.excluded,
            'witnesses': [{
                'group': hom.target.name,
                'images': hom.format_images(),
                'transcript': relation_transcript(hom),
            } for hom in audit.witnesses],
            'question1_evidence': [{
                'group': hom.target.name,
                'images': hom.format_images(),
            } for hom in audit.question1_evidence],
            'perfect_scan': audit.perfect_scan,
        }
        return self.report(parameters, summary=summary, results=rows, status=audit.status,
                           warnings=diagnostics,
                           errors=['%s: %s' % error for error in audit.errors],
                           incomplete=audit.status == INCOMPLETE)


class ValidateGroupCommand(Command):
    """
    Builds a group from its specification and prints its order, structure and
    conjugacy classes.
    """
    verb = 'validate-group'
    form_class = forms.ValidateGroupForm
    report_view = reports.ValidateGroupReportView

    def add_arguments(self, parser):
        parser.add_argument('--group', '-g')

    def execute(self, parameters, jobs=1):
        G = self.build_group(parameters['group'], parameters)
        summary = {
            'group': G.name,
            'order': G.order,
            'backing': G.backing,
            'degree': getattr(G, 'degree', None),
            'generators': format_elements(G, G.generators),
            'classes': len(G.classes),
            'abelian': G.is_abelian(),
            'perfect': is_perfect(G),
            'solvable': is_solvable(G),
            'transitive': is_transitive(G) if G.backing == 'permutation' else None,
        }
        rows = [{
            'representative': G.format_element(conjugacy_class.representative),
            'size': conjugacy_class.size,
            'element_order': G.element_order(conjugacy_class.representative),
        } for conjugacy_class in G.classes]
        return self.report(parameters, summary=summary, results=rows)


def exit_status(report):
    """
    Returns the process exit code for a report: 3 for the outcomes that
    contradict a proven bound, 2 when the computation is incomplete.
    """
    if report.status in (WITNESS_FOUND, CERTIFICATE_FAILURE):
        return 3
    if report.incomplete:
        return 2
    return 0


#: The default command site.
site = CommandSite()

site.register(AuditCommand)
site.register(BoundsCommand)
site.register(HomsCommand)
site.register(SharpCommand)
site.register(TssSearchCommand)
site.register(TssVerifyCommand)
site.register(ValidateGroupCommand)

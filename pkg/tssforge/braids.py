"""
Homomorphisms from the braid group ``B_n`` into finite groups.

A homomorphism is given by the images ``t_1, ..., t_(n-1)`` of the standard
generators, subject to the Artin relations ``t_i t_(i+1) t_i = t_(i+1) t_i
t_(i+1)`` and ``t_i t_j = t_j t_i`` for ``|i - j| >= 2``. A homomorphism is
cyclic (factors through the abelianization) exactly when all images are equal.
"""
import logging
import math
from collections import namedtuple

from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from tssforge.exceptions import (CertificateError, InvalidArgument,
                                 TssForgeError, UnsupportedBacking)
from tssforge.groups import centralizer, is_perfect, is_solvable
from tssforge.helpers import get_budget
from tssforge.parallel import map_partitions
from tssforge.tss import thm1_bound, verify_totally_symmetric
from tssforge.utils import distinct


logger = logging.getLogger(__name__)


RelationCheck = namedtuple('RelationCheck', ('holds', 'violation'))


def _braid(G, a, b):
    return G.multiply(G.multiply(a, b), a) == G.multiply(G.multiply(b, a), b)


def braid_relations_hold(n, images, G):
    """
    Checks the braid relations for the images ``t_1, ..., t_(n-1)``.

    :returns: a :class:`RelationCheck`; ``violation`` is the first failing
        1-based index pair ``(i, j)``, or ``None``.
    """
    images = tuple(images)
    if len(images) != n - 1:
        raise InvalidArgument('B_%d needs %d generator images, got %d'
                              % (n, n - 1, len(images)))
    G.check(*images)
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if j == i + 1:
                holds = _braid(G, images[i], images[j])
            else:
                holds = G.commute(images[i], images[j])
            if not holds:
                return RelationCheck(False, (i + 1, j + 1))
    return RelationCheck(True, None)


def _images_are_transitive(images):
    return bool(SympyPermutationGroup([image.sympy for image in images]).is_transitive())


class BraidHom(object):
    """
    A homomorphism ``B_n -> target`` sending ``sigma_i`` to ``images[i - 1]``.

    ``transitive`` is ``None`` for table-backed targets.
    """
    def __init__(self, n, target, images, image_order=None, transitive=None):
        self.n = n
        self.target = target
        self.images = tuple(images)
        self.cyclic = all(image == self.images[0] for image in self.images)
        if image_order is None:
            image_order = target.generated_subgroup_order(self.images)
        self.image_order = image_order
        if transitive is None and target.backing == 'permutation':
            transitive = _images_are_transitive(self.images)
        self.transitive = transitive

    @property
    def surjective(self):
        return self.image_order == self.target.order

    def key(self):
        return tuple(self.target.index(image) for image in self.images)

    def format_images(self):
        return [self.target.format_element(image) for image in self.images]

    def __eq__(self, other):
        return (isinstance(other, BraidHom) and self.n == other.n
                and self.target is other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.n, self.images))

    def __repr__(self):
        return '<BraidHom B_%d -> %s: %s>' % (self.n, self.target.name,
                                             ', '.join(self.format_images()))


def relation_transcript(h):
    """
    Returns one line per defining relation with both sides evaluated, so a
    homomorphism can be checked by hand.
    """
    G = h.target
    t = h.images
    lines = []
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if j == i + 1:
                left = G.multiply(G.multiply(t[i], t[j]), t[i])
                right = G.multiply(G.multiply(t[j], t[i]), t[j])
                relation = 't%d t%d t%d = t%d t%d t%d' % (i + 1, j + 1, i + 1, j + 1, i + 1, j + 1)
            else:
                left = G.multiply(t[i], t[j])
                right = G.multiply(t[j], t[i])
                relation = 't%d t%d = t%d t%d' % (i + 1, j + 1, j + 1, i + 1)
            lines.append('%s: %s %s %s' % (relation, G.format_element(left),
                                           '==' if left == right else '!=',
                                           G.format_element(right)))
    return lines


class HomEnumeration(object):
    """
    The result of :func:`enumerate_homs`.

    ``total``, ``cyclic`` and ``non_cyclic`` count every homomorphism
    ``B_n -> G``; ``matched`` counts the homomorphisms passing the filters (one
    per conjugacy orbit when enumerating up to conjugacy), and ``homs`` lists
    them in the fixed total order. When ``complete`` is false the budget ran out
    and the counts are lower bounds.
    """
    def __init__(self, n, target, homs, cyclic, non_cyclic, matched, complete, nodes):
        self.n = n
        self.target = target
        self.homs = homs
        self.cyclic = cyclic
        self.non_cyclic = non_cyclic
        self.matched = matched
        self.complete = complete
        self.nodes = nodes

    @property
    def total(self):
        return self.cyclic + self.non_cyclic

    def __repr__(self):
        return '<HomEnumeration B_%d -> %s total=%d non_cyclic=%d>' % (
            self.n, self.target.name, self.total, self.non_cyclic)


def _complete_partition(context, partition):
    G, n, budget = context
    class_index, second = partition
    members = sorted(G.classes[class_index].members, key=G.sort_key)
    first = members[0]
    if second is None:
        return [(G.index(first),)], True, 0

    braids = {}
    commutes = {}

    def braid(a, b):
        if (a, b) not in braids:
            braids[(a, b)] = _braid(G, members[a], members[b])
        return braids[(a, b)]

    def commute(a, b):
        if (a, b) not in commutes:
            commutes[(a, b)] = G.commute(members[a], members[b])
        return commutes[(a, b)]

    state = {'nodes': 0, 'complete': True}
    completions = []

    def extend(current):
        if len(current) == n - 1:
            completions.append(tuple(G.index(members[position]) for position in current))
            return True
        last = current[-1]
        for candidate in range(len(members)):
            state['nodes'] += 1
            if state['nodes'] > budget:
                return False
            if not braid(last, candidate):
                continue
            if not all(commute(earlier, candidate) for earlier in current[:-1]):
                continue
            if not extend(current + [candidate]):
                return False
        return True

    if not extend([0, members.index(second)]):
        state['complete'] = False
        logger.warning('Budget of %d nodes exhausted for B_%d -> %r at partition %r',
                       budget, n, G, partition)
    return completions, state['complete'], state['nodes']


def _partitions(G, n):
    partitions = []
    for class_index, conjugacy_class in enumerate(G.classes):
        if n == 2:
            partitions.append((class_index, None))
            continue
        first = conjugacy_class.representative
        for member in sorted(conjugacy_class.members, key=G.sort_key):
            if _braid(G, first, member):
                partitions.append((class_index, member))
    return partitions


def _transversal(G, representative):
    transversal = {}
    for g in G.elements:
        image = G.conjugate(g, representative)
        if image not in transversal:
            transversal[image] = g
    return transversal


def enumerate_homs(n, G, non_cyclic_only=False, up_to_conjugacy=False,
                   transitive_only=False, surjective_only=False, budget=None, jobs=1):
    """
    Enumerates the homomorphisms ``B_n -> G``.

    All ``t_i`` lie in one conjugacy class (the braid relation makes
    consecutive images conjugate), so ``t_1`` is fixed to each class
    representative in turn and the remaining images are found by backtracking
    over that class. Every homomorphism is conjugate to exactly one with ``t_1``
    a representative, so raw counts are ``|class| x completions``. Up to
    conjugacy, completions are reduced modulo the centralizer of ``t_1``.

    The search is split into partitions by ``(class of t_1, t_2)``; ``budget``
    bounds the nodes per partition and ``jobs`` the worker processes. Results do
    not depend on ``jobs``.
    """
    if n < 2:
        raise InvalidArgument('braid groups need n >= 2, got %d' % n)
    if transitive_only and G.backing != 'permutation':
        raise UnsupportedBacking('transitivity is only defined for permutation groups')
    budget = get_budget(budget)

    partitions = _partitions(G, n)
    results = map_partitions(_complete_partition, partitions, jobs=jobs, context=(G, n, budget))

    by_class = {}
    complete = True
    nodes = 0
    for (class_index, _), (completions, partition_complete, partition_nodes) in zip(partitions, results):
        by_class.setdefault(class_index, []).extend(completions)
        complete = complete and partition_complete
        nodes += partition_nodes

    cyclic = G.order
    non_cyclic = 0
    constant = 0
    homs = []
    for class_index in sorted(by_class):
        conjugacy_class = G.classes[class_index]
        seeds = sorted(set(by_class[class_index]))
        for seed in seeds:
            if all(position == seed[0] for position in seed):
                constant += 1
            else:
                non_cyclic += conjugacy_class.size

        if non_cyclic_only:
            seeds = [seed for seed in seeds if any(position != seed[0] for position in seed)]
        representative = conjugacy_class.representative
        if up_to_conjugacy:
            commuting = centralizer(G, representative).elements
        else:
            transversal = _transversal(G, representative)

        for seed in seeds:
            images = tuple(G.elements[position] for position in seed)
            if up_to_conjugacy:
                orbit = set(tuple(G.index(G.conjugate(c, image)) for image in images)
                            for c in commuting)
                if seed != min(orbit):
                    continue
            hom = BraidHom(n, G, images)
            if transitive_only and not hom.transitive:
                continue
            if surjective_only and not hom.surjective:
                continue
            if up_to_conjugacy:
                homs.append(hom)
                continue
            for member in sorted(conjugacy_class.members, key=G.sort_key):
                g = transversal[member]
                homs.append(BraidHom(n, G, [G.conjugate(g, image) for image in images],
                                     image_order=hom.image_order, transitive=hom.transitive))
    homs.sort(key=BraidHom.key)
    matched = len(homs)

    if complete and constant != len(G.classes):
        raise CertificateError('found %d constant seeds for %d conjugacy classes'
                               % (constant, len(G.classes)),
                               dump={'n': n, 'group': G.name})
    logger.debug('Enumerated B_%d -> %r: %d cyclic, %d non-cyclic, %d matched',
                 n, G, cyclic, non_cyclic, matched)
    return HomEnumeration(n, G, homs, cyclic, non_cyclic, matched, complete, nodes)


Classification = namedtuple('Classification', (
    'cyclic', 'transitive', 'image_order', 'surjective',
    'f_x', 'f_x_prime', 'f_x_verification', 'f_x_prime_verification'))


def classify(h):
    """
    Classifies a homomorphism and computes the images of the totally symmetric
    sets ``X = {sigma_1, sigma_3, ...}`` of ``B_n`` and
    ``X' = {sigma_1 sigma_3^-1, sigma_1 sigma_5^-1, ...}`` of its commutator
    subgroup. Both images are verified to be totally symmetric in the image of
    ``h``.
    """
    G = h.target
    k = h.n // 2
    t = h.images
    f_x = distinct(t[2 * i - 2] for i in range(1, k + 1))
    f_x_prime = distinct(G.multiply(t[0], G.inverse(t[2 * i - 2])) for i in range(2, k + 1))
    image = G.subgroup(t, name='im')
    return Classification(
        cyclic=h.cyclic,
        transitive=h.transitive,
        image_order=h.image_order,
        surjective=h.surjective,
        f_x=tuple(f_x),
        f_x_prime=tuple(f_x_prime),
        f_x_verification=verify_totally_symmetric(image, f_x) if f_x else None,
        f_x_prime_verification=verify_totally_symmetric(image, f_x_prime) if f_x_prime else None,
    )


def image_sizes_allowed(h, classification=None):
    """
    Returns whether ``|f(X)|`` is 1 or ``floor(n/2)`` and ``|f(X')|`` is 1 or
    ``floor(n/2) - 1``, as it must be for images of totally symmetric sets.
    """
    classification = classification or classify(h)
    k = h.n // 2
    x_ok = len(classification.f_x) in (1, k)
    prime_ok = len(classification.f_x_prime) in ((1, k - 1) if k >= 2 else (0,))
    return x_ok and prime_ok


CriterionReport = namedtuple('CriterionReport', ('applicable', 'first_equals_third', 'cyclic', 'equivalent'))


def cyclicity_criterion(h):
    """
    Compares ``t_1 == t_3`` with cyclicity. For ``n >= 5`` the two agree for
    every homomorphism, since the normal closure of ``sigma_1 sigma_3^-1`` is
    the commutator subgroup of ``B_n``.
    """
    if h.n < 5:
        return CriterionReport(False, None, None, None)
    first_equals_third = h.images[0] == h.images[2]
    return CriterionReport(True, first_equals_third, h.cyclic, first_equals_third == h.cyclic)


BELOW_BOUND = 'below-bound'
QUESTION_1 = 'question-1'
OUTSIDE_HYPOTHESIS = 'outside-hypothesis'

CONSISTENT = 'consistent'
WITNESS_FOUND = 'WITNESS-FOUND'
QUESTION_1_NEGATIVE = 'QUESTION-1-NEGATIVE'
INCOMPLETE = 'incomplete'
SKIPPED = 'skipped'


class AuditRecord(object):
    def __init__(self, n, group, bound, region, perfect, solvable, enumeration=None,
                 diagnostics=()):
        self.n = n
        self.group = group
        self.name = group.name
        self.order = group.order
        self.bound = bound
        self.region = region
        self.perfect = perfect
        self.solvable = solvable
        self.enumeration = enumeration
        self.diagnostics = list(diagnostics)

    @property
    def enumerated(self):
        return self.enumeration is not None

    @property
    def non_cyclic_homs(self):
        if self.enumeration is None:
            return []
        return [hom for hom in self.enumeration.homs if not hom.cyclic]

    @property
    def witnesses(self):
        if self.region == BELOW_BOUND:
            return self.non_cyclic_homs
        return []

    @property
    def non_cyclic_surjections(self):
        return sum(1 for hom in self.non_cyclic_homs if hom.surjective)

    @property
    def status(self):
        if self.enumeration is None:
            return SKIPPED
        if self.witnesses:
            return WITNESS_FOUND
        if self.region == QUESTION_1 and self.non_cyclic_homs:
            return QUESTION_1_NEGATIVE
        if not self.enumeration.complete:
            return INCOMPLETE
        return CONSISTENT


def audit_group(n, G, enumerate_above_bound=False, budget=None, jobs=1):
    """
    Audits ``G`` against the lower bound on groups receiving non-cyclic
    homomorphisms from ``B_n``.

    Below the bound every homomorphism must be cyclic; a non-cyclic one is
    recorded as a witness. Groups at or above the bound are only enumerated
    when ``enumerate_above_bound`` is set. For ``n < 5`` (outside the bound's
    hypothesis) the group is enumerated as a control and never yields
    witnesses. Perfectness and solvability are recorded in all cases.

    For n >= 5 a non-cyclic homomorphism into a solvable group is
    impossible. Below the bound it is still recorded as a witness and the
    contradiction is added to the record's diagnostics; above the bound it
    raises :class:`CertificateError`.
    """
    if n >= 5:
        bound = thm1_bound(n)
        region = BELOW_BOUND if G.order < bound else QUESTION_1
    else:
        bound = None
        region = OUTSIDE_HYPOTHESIS
    perfect = is_perfect(G)
    solvable = is_solvable(G)

    enumeration = None
    diagnostics = []
    if region != QUESTION_1 or enumerate_above_bound:
        enumeration = enumerate_homs(n, G, non_cyclic_only=True, up_to_conjugacy=True,
                                     budget=budget, jobs=jobs)
        for hom in enumeration.homs:
            report = cyclicity_criterion(hom)
            if report.applicable and not report.equivalent:
                raise CertificateError(
                    't1 = t3 disagrees with cyclicity for %r' % (hom,),
                    dump={'images': hom.format_images(),
                          'transcript': relation_transcript(hom)})
        if n >= 5 and solvable and enumeration.non_cyclic:
            message = ('non-cyclic homomorphism from B_%d into the solvable group %s'
                       % (n, G.name))
            if region != BELOW_BOUND:
                raise CertificateError(message, dump={'homs': [
                    {'images': hom.format_images(), 'transcript': relation_transcript(hom)}
                    for hom in enumeration.homs]})
            # Reported with the witnesses, which carry their own transcripts.
            diagnostics.append(message)

    record = AuditRecord(n, G, bound, region, perfect, solvable, enumeration, diagnostics)
    if record.status == WITNESS_FOUND:
        logger.error('Non-cyclic homomorphism B_%d -> %s below the bound %d',
                     n, G.name, bound)
    return record


PERFECT_SCAN_ORDER = 60


class AuditReport(object):
    def __init__(self, n, records, excluded, errors, perfect_scan=None):
        self.n = n
        self.bound = thm1_bound(n)
        self.records = records
        self.excluded = excluded
        self.errors = errors
        self.perfect_scan = perfect_scan

    @property
    def witnesses(self):
        return [hom for record in self.records for hom in record.witnesses]

    @property
    def question1_evidence(self):
        return [hom for record in self.records if record.region == QUESTION_1
                for hom in record.non_cyclic_homs]

    @property
    def status(self):
        if self.witnesses:
            return WITNESS_FOUND
        if any(record.status == INCOMPLETE for record in self.records):
            return INCOMPLETE
        return CONSISTENT


def audit_catalog(n, catalog, complete_catalog=False, budget=None, jobs=1):
    """
    Audits every catalog group of order less than ``n!``, separating groups
    below the bound (where a non-cyclic homomorphism would contradict it) from
    groups between the bound and ``n!`` (where one would show that ``S_n`` is
    not the smallest non-cyclic quotient of ``B_n``.)

    Errors while auditing a group are collected, not raised. For ``n = 5`` the
    report also lists the non-trivial perfect groups of order below 60; the scan
    is labeled exhaustive only when the caller declares the catalog complete.
    """
    if n < 5:
        raise InvalidArgument('catalog audits require n >= 5, got %d' % n)
    limit = math.factorial(n)
    records = []
    excluded = []
    errors = []
    scanned = []
    for G in catalog:
        if G.order >= limit:
            excluded.append(G.name)
            logger.info('Excluding %s (order %d >= %d!)', G.name, G.order, n)
            continue
        try:
            records.append(audit_group(n, G, enumerate_above_bound=True, budget=budget, jobs=jobs))
        except CertificateError:
            raise
        except TssForgeError as e:
            errors.append((G.name, str(e)))
            logger.warning('Could not audit %s: %s', G.name, e)

    perfect_scan = None
    if n == 5:
        for G in catalog:
            if G.order < PERFECT_SCAN_ORDER:
                scanned.append(G)
        perfect_scan = {
            'mode': 'exhaustive' if complete_catalog else 'sampled',
            'groups_scanned': len(scanned),
            'nontrivial_perfect': [G.name for G in scanned if G.order > 1 and is_perfect(G)],
        }
    return AuditReport(n, records, excluded, errors, perfect_scan)


def smallest_noncyclic_quotient(n, catalog, budget=None, jobs=1):
    """
    Returns ``(G, hom)`` for the smallest catalog group onto which ``B_n``
    maps non-cyclically, or ``None``.
    """
    for G in sorted(catalog, key=lambda group: group.order):
        enumeration = enumerate_homs(n, G, non_cyclic_only=True, up_to_conjugacy=True,
                                     surjective_only=True, budget=budget, jobs=jobs)
        if enumeration.homs:
            return G, enumeration.homs[0]
    return None

"""
Exact computation in finite groups given by permutation generators or by a
Cayley table.

Every group is fully enumerated when its handle is constructed: the element
list (sorted by a fixed total order), the identity and the conjugacy class
partition are computed once and never change afterwards, so handles can be
shared freely between threads and worker processes.
"""
import logging
import os
import re
from collections import namedtuple

import numpy
from django.utils.functional import cached_property
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from tssforge.exceptions import (AssociativityError, CapExceeded,
                                 GroupFormatError, InvalidArgument, NotInGroup,
                                 UnsupportedBacking)
from tssforge.helpers import get_order_cap, get_setting
from tssforge.permutations import Permutation, compose


logger = logging.getLogger(__name__)


class ConjugacyClass(namedtuple('ConjugacyClass', ('representative', 'members'))):
    __slots__ = ()

    @property
    def size(self):
        return len(self.members)

    def __contains__(self, element):
        return element in self.members


class CayleyTable(object):
    """
    A validated multiplication table on the indices ``0, ..., m - 1``.

    Validation finds a two-sided identity, checks associativity and computes
    two-sided inverses. Associativity is checked exhaustively up to
    ``TSSFORGE_ASSOC_EXHAUSTIVE_LIMIT`` elements, otherwise on
    ``TSSFORGE_ASSOC_SAMPLES`` seeded random triples (unless ``exhaustive`` is
    set.)
    """
    def __init__(self, table, exhaustive=False, path=None):
        array = numpy.array(table, dtype=numpy.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise GroupFormatError('a Cayley table must be a non-empty square array',
                                   path=path)
        order = array.shape[0]
        if array.min() < 0 or array.max() >= order:
            raise GroupFormatError('table entries must lie in 0..%d' % (order - 1),
                                   path=path)

        expected = numpy.arange(order)
        identities = [index for index in range(order)
                      if (array[index] == expected).all() and (array[:, index] == expected).all()]
        if not identities:
            raise GroupFormatError('table has no two-sided identity', path=path)

        self.order = order
        self.table = array
        self.identity_index = identities[0]
        self.path = path
        self.rows = array.tolist()

        # Associativity first: a single corrupted entry is reported as the
        # triple it breaks.
        self.check_associativity(exhaustive=exhaustive)

        inverses = []
        for index in range(order):
            candidates = numpy.flatnonzero(array[index] == self.identity_index)
            if not len(candidates) or self.rows[int(candidates[0])][index] != self.identity_index:
                raise GroupFormatError('element %d has no two-sided inverse' % index,
                                       path=path)
            inverses.append(int(candidates[0]))
        self.inverses = tuple(inverses)

    def check_associativity(self, exhaustive=False):
        limit = get_setting('TSSFORGE_ASSOC_EXHAUSTIVE_LIMIT')
        if exhaustive or self.order <= limit:
            triple = self._exhaustive_violation()
        else:
            triple = self._sampled_violation(get_setting('TSSFORGE_ASSOC_SAMPLES'),
                                             get_setting('TSSFORGE_ASSOC_SEED'))
        if triple is not None:
            raise AssociativityError(triple, path=self.path)

    def _exhaustive_violation(self):
        table = self.table
        order = self.order
        chunk = max(1, (1 << 22) // (order * order))
        for start in range(0, order, chunk):
            rows = table[start:start + chunk]
            left = table[rows]           # left[i, b, c] = (a_i * b) * c
            right = rows[:, table]       # right[i, b, c] = a_i * (b * c)
            mismatches = numpy.argwhere(left != right)
            if len(mismatches):
                i, b, c = mismatches[0]
                return (start + int(i), int(b), int(c))
        return None

    def _sampled_violation(self, samples, seed):
        generator = numpy.random.default_rng(seed)
        triples = generator.integers(0, self.order, size=(samples, 3))
        a, b, c = triples[:, 0], triples[:, 1], triples[:, 2]
        table = self.table
        mismatches = numpy.flatnonzero(table[table[a, b], c] != table[a, table[b, c]])
        if len(mismatches):
            return tuple(int(value) for value in triples[mismatches[0]])
        return None


class GroupHandle(object):
    """
    A finite group together with its complete element list.

    Subclasses provide the multiplication for a particular backing. Elements
    are sorted by :meth:`sort_key`, which fixes the total order used by every
    deterministic enumeration in the package.
    """
    #: One of ``'permutation'`` or ``'table'``.
    backing = None

    def __init__(self, generators, name=None, cap=None):
        cap = get_order_cap(cap)
        identity = self.identity_element()
        self.identity = identity
        self.generators = tuple(generator for generator in generators
                                if generator != identity)
        self.name = name
        self.cap = cap

        elements = self._closure(self.generators, cap)
        self.elements = tuple(sorted(elements, key=self.sort_key))
        self.order = len(self.elements)
        self._index = dict((element, index) for index, element in enumerate(self.elements))
        self.classes = self._compute_classes()
        self._class_index = {}
        for index, conjugacy_class in enumerate(self.classes):
            for member in conjugacy_class.members:
                self._class_index[member] = index
        logger.debug('Constructed %r', self)

    # Backing-specific operations.

    def identity_element(self):
        raise NotImplementedError  # Must be implemented by subclasses.

    def multiply(self, a, b):
        raise NotImplementedError  # Must be implemented by subclasses.

    def inverse(self, a):
        raise NotImplementedError  # Must be implemented by subclasses.

    def sort_key(self, element):
        raise NotImplementedError  # Must be implemented by subclasses.

    def format_element(self, element):
        raise NotImplementedError  # Must be implemented by subclasses.

    def parse_element(self, text):
        raise NotImplementedError  # Must be implemented by subclasses.

    def subgroup(self, generators, name=None):
        """
        Returns the subgroup generated by ``generators`` with the same backing.
        """
        raise NotImplementedError  # Must be implemented by subclasses.

    # Generic operations.

    def _closure(self, generators, cap):
        seen = set([self.identity])
        frontier = [self.identity]
        multiply = self.multiply
        while frontier:
            next_frontier = []
            for element in frontier:
                for generator in generators:
                    product = multiply(element, generator)
                    if product not in seen:
                        seen.add(product)
                        next_frontier.append(product)
                        if len(seen) > cap:
                            raise CapExceeded(cap, len(seen))
            frontier = next_frontier
        return seen

    def _compute_classes(self):
        classes = []
        assigned = set()
        for element in self.elements:
            if element in assigned:
                continue
            orbit = set([element])
            frontier = [element]
            while frontier:
                next_frontier = []
                for member in frontier:
                    for generator in self.generators:
                        image = self.conjugate(generator, member)
                        if image not in orbit:
                            orbit.add(image)
                            next_frontier.append(image)
                frontier = next_frontier
            assigned.update(orbit)
            classes.append(ConjugacyClass(element, frozenset(orbit)))
        return tuple(classes)

    def __contains__(self, element):
        try:
            return element in self._index
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return self.order

    def check(self, *elements):
        for element in elements:
            if element not in self:
                raise NotInGroup(self.describe_element(element), self)

    def describe_element(self, element):
        try:
            return self.format_element(element)
        except Exception:
            return repr(element)

    def index(self, element):
        """
        Returns the position of ``element`` in the fixed total order.
        """
        return self._index[element]

    def conjugate(self, h, g):
        return self.multiply(self.multiply(h, g), self.inverse(h))

    def commutator(self, a, b):
        return self.multiply(self.multiply(a, b),
                             self.multiply(self.inverse(a), self.inverse(b)))

    def power(self, g, exponent):
        if exponent < 0:
            g, exponent = self.inverse(g), -exponent
        result = self.identity
        base = g
        while exponent:
            if exponent & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            exponent >>= 1
        return result

    def element_order(self, g):
        order = 1
        current = g
        while current != self.identity:
            current = self.multiply(current, g)
            order += 1
        return order

    def commute(self, a, b):
        return self.multiply(a, b) == self.multiply(b, a)

    def is_abelian(self):
        return all(self.commute(a, b) for a in self.generators for b in self.generators)

    def class_of(self, element):
        return self.classes[self._class_index[element]]

    def generated_subgroup_order(self, elements):
        return len(self._closure(tuple(elements), self.cap))

    def subgroup_from_elements(self, members, name=None):
        """
        Returns a handle for a subgroup given by its complete element set,
        choosing a small generating set greedily in the fixed total order.
        """
        members = sorted(set(members), key=self.sort_key)
        generators = []
        reached = set([self.identity])
        for member in members:
            if member not in reached:
                generators.append(member)
                reached = self._closure(tuple(generators), self.cap)
        if len(reached) != len(members):
            raise InvalidArgument('the given elements do not form a subgroup')
        return self.subgroup(generators, name=name)

    def __repr__(self):
        return '<%s %s order=%d>' % (type(self).__name__, self.name or '?', self.order)


class PermutationGroup(GroupHandle):
    """
    A group of permutations of ``degree`` points, enumerated from its
    generators. :attr:`sympy_group` gives the same group as a
    :class:`sympy.combinatorics.PermutationGroup`.
    """
    backing = 'permutation'

    def __init__(self, degree, generators=(), name=None, cap=None):
        if degree < 1:
            raise InvalidArgument('degree must be at least 1')
        self.degree = degree
        generators = tuple(generators)
        for generator in generators:
            if not isinstance(generator, Permutation):
                raise InvalidArgument('%r is not a permutation' % (generator,))
            if generator.degree != degree:
                raise InvalidArgument('generator %s has degree %d, expected %d'
                                      % (generator, generator.degree, degree))
        super(PermutationGroup, self).__init__(generators, name=name, cap=cap)

    def identity_element(self):
        return Permutation.identity(self.degree)

    @cached_property
    def sympy_group(self):
        generators = [generator.sympy for generator in self.generators]
        if not generators:
            generators = [Permutation.identity(self.degree).sympy]
        return SympyPermutationGroup(generators)

    def multiply(self, a, b):
        return compose(a, b)

    def inverse(self, a):
        return a.inverse()

    def element_order(self, g):
        return g.order()

    def sort_key(self, element):
        return element.images

    def format_element(self, element):
        return str(element)

    def parse_element(self, text):
        try:
            element = Permutation.parse(text, self.degree)
        except InvalidArgument as e:
            raise InvalidArgument('cannot parse %r: %s' % (text, e))
        self.check(element)
        return element

    def subgroup(self, generators, name=None):
        return PermutationGroup(self.degree, generators, name=name, cap=self.cap)

    def __repr__(self):
        return '<PermutationGroup %s order=%d degree=%d>' % (
            self.name or '?', self.order, self.degree)


class CayleyGroup(GroupHandle):
    """
    A (sub)group of the group described by a :class:`CayleyTable`. Elements
    are table indices. Without explicit generators the whole table is used.
    """
    backing = 'table'

    def __init__(self, table, generators=None, name=None, cap=None):
        self.table = table
        self._rows = table.rows
        if generators is None:
            generators = self._generating_set(table)
        else:
            generators = tuple(int(generator) for generator in generators)
            for generator in generators:
                if not 0 <= generator < table.order:
                    raise InvalidArgument('%d is not an index of the table' % generator)
        super(CayleyGroup, self).__init__(generators, name=name, cap=cap)

    @staticmethod
    def _generating_set(table):
        rows = table.rows
        generators = []
        reached = set([table.identity_index])
        for element in range(table.order):
            if element in reached:
                continue
            generators.append(element)
            frontier = list(reached)
            while frontier:
                next_frontier = []
                for current in frontier:
                    for generator in generators:
                        product = rows[current][generator]
                        if product not in reached:
                            reached.add(product)
                            next_frontier.append(product)
                frontier = next_frontier
        return tuple(generators)

    def identity_element(self):
        return self.table.identity_index

    def multiply(self, a, b):
        return self._rows[a][b]

    def inverse(self, a):
        return self.table.inverses[a]

    def sort_key(self, element):
        return element

    def format_element(self, element):
        return '[%d]' % element

    def parse_element(self, text):
        match = re.match(r'^\s*\[\s*(\d+)\s*\]\s*$', text)
        if not match:
            raise InvalidArgument('cannot parse %r: table elements are written [k]' % text)
        element = int(match.group(1))
        self.check(element)
        return element

    def subgroup(self, generators, name=None):
        return CayleyGroup(self.table, generators=generators, name=name, cap=self.cap)


def parse_elements(G, text):
    """
    Parses a ``;``-separated element list in the element grammar of ``G``.
    """
    pieces = [piece for piece in text.split(';') if piece.strip()]
    return [G.parse_element(piece) for piece in pieces]


def conjugate_by(h, g, G):
    """
    Returns ``h * g * h^-1``.
    """
    G.check(h, g)
    return G.conjugate(h, g)


def generate_closure(generators, cap=None, degree=None, name=None):
    """
    Returns the permutation group generated by ``generators``. An empty
    generator list yields the trivial group of the given ``degree``.
    """
    generators = list(generators)
    if degree is None:
        if not generators:
            raise InvalidArgument('the degree is required for an empty generator list')
        degree = generators[0].degree
    return PermutationGroup(degree, generators, name=name, cap=cap)


def element_order(g, G):
    G.check(g)
    return G.element_order(g)


def conjugacy_classes(G):
    return list(G.classes)


def centralizer(G, g):
    G.check(g)
    members = [h for h in G.elements if G.commute(h, g)]
    return G.subgroup_from_elements(members, name='C(%s)' % G.format_element(g))


def normal_closure(G, elements, name=None):
    """
    Returns the smallest normal subgroup of ``G`` containing ``elements``.
    """
    G.check(*elements)
    generators = []
    reached = set([G.identity])
    pending = []
    for element in elements:
        if element not in reached:
            generators.append(element)
            reached = G._closure(tuple(generators), G.cap)
            pending.append(element)
    while pending:
        element = pending.pop()
        for generator in G.generators:
            image = G.conjugate(generator, element)
            if image not in reached:
                generators.append(image)
                reached = G._closure(tuple(generators), G.cap)
                pending.append(image)
    return G.subgroup(generators, name=name)


def derived_subgroup(G):
    """
    Returns the commutator subgroup, computed as the normal closure of the
    commutators of the generators (which equals the subgroup generated by all
    commutators.)
    """
    commutators = [G.commutator(a, b) for a in G.generators for b in G.generators]
    return normal_closure(G, commutators, name="%s'" % (G.name or 'G'))


def is_perfect(G):
    return derived_subgroup(G).order == G.order


def derived_series(G):
    """
    Returns the derived series ``G >= G' >= G'' >= ...`` up to the first
    repeated term.
    """
    series = [G]
    while True:
        derived = derived_subgroup(series[-1])
        if derived.order == series[-1].order:
            return series
        series.append(derived)


def is_solvable(G):
    return derived_series(G)[-1].order == 1


def is_transitive(G):
    if G.backing != 'permutation':
        raise UnsupportedBacking('transitivity is only defined for permutation groups')
    return bool(G.sympy_group.is_transitive())


def _content_lines(path):
    try:
        with open(path) as handle:
            lines = handle.read().splitlines()
    except (IOError, OSError) as e:
        raise GroupFormatError('cannot read file: %s' % e, path=path)
    for number, line in enumerate(lines, 1):
        stripped = line.strip()
        if stripped and not stripped.startswith('#'):
            yield number, stripped


def _read_header(lines, keyword, path):
    try:
        number, header = next(lines)
    except StopIteration:
        raise GroupFormatError('missing "%s" header' % keyword, path=path)
    match = re.match(r'^%s\s+(\d+)$' % keyword, header)
    if not match:
        raise GroupFormatError('expected "%s <size>", got %r' % (keyword, header),
                               path=path, line=number)
    size = int(match.group(1))
    if size < 1:
        raise GroupFormatError('size must be at least 1', path=path, line=number)
    return number, size


def _read_integers(line, number, path):
    try:
        return [int(piece) for piece in line.split()]
    except ValueError:
        raise GroupFormatError('expected integers, got %r' % line, path=path, line=number)


def _default_name(path):
    return os.path.basename(path)


def load_perm_group(path, cap=None, name=None):
    """
    Loads a permutation group file: a ``perm d`` header followed by one
    generator per line, written as ``d`` space-separated 1-based images.
    """
    lines = _content_lines(path)
    _, degree = _read_header(lines, 'perm', path)
    generators = []
    for number, line in lines:
        images = _read_integers(line, number, path)
        if len(images) != degree:
            raise GroupFormatError('expected %d images, got %d' % (degree, len(images)),
                                   path=path, line=number)
        try:
            generators.append(Permutation([image - 1 for image in images]))
        except InvalidArgument:
            raise GroupFormatError('generator is not a permutation of 1..%d' % degree,
                                   path=path, line=number)
    group = PermutationGroup(degree, generators, name=name or _default_name(path), cap=cap)
    logger.debug('Loaded %r from %s', group, path)
    return group


def load_cayley(path, cap=None, exhaustive=False, name=None):
    """
    Loads a Cayley table file: a ``cayley m`` header followed by ``m`` rows of
    ``m`` space-separated 0-based indices. Element 0 must be the identity.
    """
    lines = _content_lines(path)
    _, order = _read_header(lines, 'cayley', path)
    limit = get_order_cap(cap)
    if order > limit:
        raise CapExceeded(limit, order)
    rows = []
    for number, line in lines:
        row = _read_integers(line, number, path)
        if len(rows) == order:
            raise GroupFormatError('more than %d rows' % order, path=path, line=number)
        if len(row) != order:
            raise GroupFormatError('expected %d entries, got %d' % (order, len(row)),
                                   path=path, line=number)
        for entry in row:
            if not 0 <= entry < order:
                raise GroupFormatError('entry %d is outside 0..%d' % (entry, order - 1),
                                       path=path, line=number)
        rows.append(row)
    if len(rows) != order:
        raise GroupFormatError('expected %d rows, got %d' % (order, len(rows)), path=path)
    table = CayleyTable(rows, exhaustive=exhaustive, path=path)
    if table.identity_index != 0:
        raise GroupFormatError('element 0 must be the identity', path=path)
    group = CayleyGroup(table, name=name or _default_name(path), cap=cap)
    logger.debug('Loaded %r from %s', group, path)
    return group

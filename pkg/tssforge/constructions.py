"""
Constructors for standard finite groups, direct products, the extremal group
``S_n x| V`` and the textual group specification language::

    spec := factor ('x' factor)*
    factor := S<n> | A<n> | C<m> | Dih<m> | Sharp<n> | file:<path> | perm:<path>

Products bind left-associatively. ``Dih<m>`` is the dihedral group of order
``2m`` acting on ``m`` points. A ``file:`` or ``perm:`` factor takes the rest of
the text as its path, so it can only appear last.
"""
import itertools
import logging
import math
import re
from collections import namedtuple

import numpy
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import (AlternatingGroup, CyclicGroup, DihedralGroup,
                                              SymmetricGroup)

from tssforge.exceptions import (CapExceeded, CertificateError, GroupSpecError,
                                 InvalidArgument)
from tssforge.groups import (CayleyGroup, CayleyTable, PermutationGroup,
                             load_cayley, load_perm_group)
from tssforge.helpers import get_order_cap, get_setting
from tssforge.permutations import Permutation


logger = logging.getLogger(__name__)


SYMMETRIC = 'symmetric'
ALTERNATING = 'alternating'
CYCLIC = 'cyclic'
DIHEDRAL = 'dihedral'

KINDS = (SYMMETRIC, ALTERNATING, CYCLIC, DIHEDRAL)

SPEC_NAMES = {
    SYMMETRIC: 'S%d',
    ALTERNATING: 'A%d',
    CYCLIC: 'C%d',
    DIHEDRAL: 'Dih%d',
}

NAMED_GROUPS = {
    SYMMETRIC: SymmetricGroup,
    ALTERNATING: AlternatingGroup,
    CYCLIC: CyclicGroup,
    DIHEDRAL: DihedralGroup,
}


def standard_order(kind, size):
    if kind == SYMMETRIC:
        return math.factorial(size)
    if kind == ALTERNATING:
        return max(1, math.factorial(size) // 2)
    if kind == CYCLIC:
        return size
    if kind == DIHEDRAL:
        return 2 * size
    raise InvalidArgument('unknown group kind %r' % (kind,))


def from_sympy_group(group, degree=None, name=None, cap=None):
    """
    Returns the :class:`PermutationGroup` generated by the generators of a
    sympy permutation group, acting on ``degree`` points (by default the
    degree of ``group``).
    """
    if degree is None:
        degree = group.degree
    generators = [Permutation.from_sympy(generator, degree) for generator in group.generators]
    return PermutationGroup(degree, generators, name=name, cap=cap)


def make_standard(kind, size, cap=None):
    """
    Returns a permutation-backed symmetric, alternating, cyclic or dihedral
    group acting on ``size`` points.
    """
    if kind not in KINDS:
        raise InvalidArgument('unknown group kind %r' % (kind,))
    if size < 1:
        raise InvalidArgument('size must be at least 1, got %d' % size)
    if kind == DIHEDRAL and size < 3:
        raise InvalidArgument('Dih<m> acts on m points and needs m >= 3, got %d' % size)
    cap = get_order_cap(cap)
    order = standard_order(kind, size)
    if order > cap:
        raise CapExceeded(cap, 0, '%s has order %d, above the cap of %d'
                          % (SPEC_NAMES[kind] % size, order, cap))
    # sympy realizes A1 and A2 on a single point.
    return from_sympy_group(NAMED_GROUPS[kind](size), degree=size,
                            name=SPEC_NAMES[kind] % size, cap=cap)


def regular_image(G, element):
    """
    Returns the permutation of the positions of ``G.elements`` induced by left
    multiplication with ``element``.
    """
    return Permutation([G.index(G.multiply(element, other)) for other in G.elements])


def regular_permutation_group(G):
    """
    Returns the left regular representation of ``G`` on its own elements.
    """
    if G.backing == 'permutation':
        return G
    generators = [regular_image(G, generator) for generator in G.generators]
    return PermutationGroup(G.order, generators, name=G.name, cap=G.cap)


def make_direct_product(G, H, cap=None, name=None):
    """
    Returns ``G x H`` acting on the disjoint union of the point sets of the
    two factors (table-backed factors act regularly.)
    """
    cap = get_order_cap(cap)
    if G.order * H.order > cap:
        raise CapExceeded(cap, 0, 'the product has order %d, above the cap of %d'
                          % (G.order * H.order, cap))
    left = regular_permutation_group(G)
    right = regular_permutation_group(H)
    if name is None:
        name = '%sx%s' % (G.name, H.name)
    product = DirectProduct(left.sympy_group, right.sympy_group)
    return from_sympy_group(product, degree=left.degree + right.degree, name=name, cap=cap)


class SharpGroup(object):
    """
    The semidirect product ``S_n x| V`` with
    ``V = (Z/2)^n / <e_1 + ... + e_n>``, of order ``2^(n-1) n!``, together with
    its totally symmetric set ``{e_1, ..., e_n}`` (as elements of ``V``.)

    Elements of ``V`` are stored as the lift whose first coordinate is zero.
    """
    def __init__(self, n, handle, distinguished_tss):
        self.n = n
        self.handle = handle
        self.distinguished_tss = tuple(distinguished_tss)

    @property
    def expected_order(self):
        return sharp_order(self.n)

    def __repr__(self):
        return '<SharpGroup n=%d order=%d>' % (self.n, self.handle.order)


# Table-backed sharp groups up to this n are cross-checked against their
# regular permutation realization.
REGULAR_CHECK_LIMIT = 4


def sharp_order(n):
    return 2 ** (n - 1) * math.factorial(n)


def _canonical(vector, n):
    # Coordinate i is bit i; the two lifts differ by the all-ones vector.
    if vector & 1:
        return vector ^ ((1 << n) - 1)
    return vector


def _act(permutation, vector, n):
    # pi . e_i = e_pi(i)
    result = 0
    for i in range(n):
        if vector >> i & 1:
            result |= 1 << permutation[i]
    return _canonical(result, n)


def _sharp_table(n):
    permutations = list(itertools.permutations(range(n)))
    position = dict((permutation, index) for index, permutation in enumerate(permutations))
    composition = numpy.array(
        [[position[tuple(pi[rho[i]] for i in range(n))] for rho in permutations]
         for pi in permutations], dtype=numpy.int64)
    representatives = 1 << (n - 1)
    action = numpy.array(
        [[_act(pi, index << 1, n) >> 1 for index in range(representatives)]
         for pi in permutations], dtype=numpy.int64)

    # Element (pi, v) has index position[pi] * 2^(n-1) + v / 2, and
    # (pi, v)(rho, w) = (pi rho, v + pi.w).
    indices = numpy.arange(len(permutations) * representatives)
    pis = indices // representatives
    vectors = indices % representatives
    table = (composition[pis[:, None], pis[None, :]] * representatives
             + (vectors[:, None] ^ action[pis[:, None], vectors[None, :]]))
    return table


def _basis_representatives(n):
    return [_canonical(1 << i, n) >> 1 for i in range(n)]


def make_sharp_group(n, permutation_action=False, cap=None):
    """
    Returns the :class:`SharpGroup` for ``n >= 3``.

    By default the group is table-backed, which requires its order to be at
    most ``TSSFORGE_TABLE_CAP``. With ``permutation_action`` it is realized as
    the faithful affine action ``(pi, v).w = v + pi.w`` on the ``2^(n-1)``
    points of ``V``.
    """
    if n < 3:
        raise InvalidArgument(
            'the sharp group needs n >= 3: for n = %d the images of e_1 and e_2 '
            'in V coincide, so {e_1, ..., e_n} has fewer than n elements' % n)
    cap = get_order_cap(cap)
    order = sharp_order(n)
    if order > cap:
        raise CapExceeded(cap, 0, 'Sharp%d has order %d, above the cap of %d'
                          % (n, order, cap))

    basis = _basis_representatives(n)
    if permutation_action:
        degree = 1 << (n - 1)
        transposition = (1, 0) + tuple(range(2, n))
        rotation = tuple(range(1, n)) + (0,)
        generators = [
            Permutation([_act(transposition, point << 1, n) >> 1 for point in range(degree)]),
            Permutation([_act(rotation, point << 1, n) >> 1 for point in range(degree)]),
            Permutation([point ^ basis[0] for point in range(degree)]),
        ]
        handle = PermutationGroup(degree, generators, name='Sharp%d' % n, cap=cap)
        tss = [Permutation([point ^ vector for point in range(degree)]) for vector in basis]
    else:
        table_cap = get_setting('TSSFORGE_TABLE_CAP')
        if order > table_cap:
            raise CapExceeded(table_cap, 0,
                              'Sharp%d has order %d, above the table cap of %d; '
                              'use the permutation action instead' % (n, order, table_cap))
        handle = CayleyGroup(CayleyTable(_sharp_table(n)), name='Sharp%d' % n, cap=cap)
        tss = list(basis)

    sharp = SharpGroup(n, handle, tss)
    _check_sharp(sharp)
    logger.debug('Constructed %r', sharp)
    return sharp


def _check_sharp(sharp):
    from tssforge.tss import verify_totally_symmetric

    if sharp.handle.order != sharp.expected_order:
        raise CertificateError('Sharp%d has order %d, expected %d'
                               % (sharp.n, sharp.handle.order, sharp.expected_order),
                               dump={'n': sharp.n, 'order': sharp.handle.order})
    result = verify_totally_symmetric(sharp.handle, sharp.distinguished_tss)
    if not result.ok:
        raise CertificateError('the distinguished set of Sharp%d is not totally '
                               'symmetric: %s' % (sharp.n, result.reason),
                               dump={'n': sharp.n, 'reason': result.reason})
    if sharp.handle.backing == 'table' and sharp.n <= REGULAR_CHECK_LIMIT:
        _check_regular(sharp)


def regular_realization(sharp):
    """
    Returns the left regular realization of a table-backed sharp group
    together with the image of its distinguished set.
    """
    G = sharp.handle
    return (regular_permutation_group(G),
            [regular_image(G, element) for element in sharp.distinguished_tss])


def _check_regular(sharp):
    from tssforge.tss import verify_totally_symmetric

    regular, tss = regular_realization(sharp)
    result = verify_totally_symmetric(regular, tss)
    if (regular.order != sharp.handle.order
            or len(regular.classes) != len(sharp.handle.classes) or not result.ok):
        raise CertificateError(
            'the regular realization of Sharp%d disagrees with its table' % sharp.n,
            dump={'n': sharp.n, 'order': regular.order, 'classes': len(regular.classes),
                  'reason': getattr(result, 'reason', None)})
    logger.debug('Cross-checked Sharp%d against its regular realization', sharp.n)


Factor = namedtuple('Factor', ('kind', 'value', 'position'))

FACTOR_PATTERNS = (
    ('sharp', re.compile(r'Sharp(\d+)')),
    (DIHEDRAL, re.compile(r'Dih(\d+)')),
    (SYMMETRIC, re.compile(r'S(\d+)')),
    (ALTERNATING, re.compile(r'A(\d+)')),
    (CYCLIC, re.compile(r'C(\d+)')),
    ('file', re.compile(r'file:(.+)$', re.DOTALL)),
    ('perm', re.compile(r'perm:(.+)$', re.DOTALL)),
)


class GroupSpec(object):
    """
    A parsed group specification. Parsing only checks the syntax; groups are
    constructed by :meth:`build`.
    """
    def __init__(self, text):
        self.text = text
        self.factors = self._parse(text)

    @staticmethod
    def _parse(text):
        factors = []
        position = 0
        length = len(text)
        while True:
            while position < length and text[position].isspace():
                position += 1
            if position >= length:
                raise GroupSpecError('expected a group', text, position)
            for kind, pattern in FACTOR_PATTERNS:
                match = pattern.match(text, position)
                if match:
                    break
            else:
                raise GroupSpecError('unknown group kind', text, position)
            value = match.group(1)
            if kind in ('file', 'perm'):
                value = value.strip()
            else:
                value = int(value)
            factors.append(Factor(kind, value, position))
            position = match.end()
            while position < length and text[position].isspace():
                position += 1
            if position == length:
                return factors
            if text[position] != 'x':
                raise GroupSpecError("expected 'x' or the end of the specification",
                                     text, position)
            position += 1

    def build(self, cap=None, sharp_permutation_action=False, exhaustive_assoc=False):
        groups = [self._build_factor(factor, cap, sharp_permutation_action, exhaustive_assoc)
                  for factor in self.factors]
        result = groups[0]
        for index, group in enumerate(groups[1:], 2):
            name = self.text.strip() if index == len(groups) else None
            result = make_direct_product(result, group, cap=cap, name=name)
        return result

    @staticmethod
    def _build_factor(factor, cap, sharp_permutation_action, exhaustive_assoc):
        if factor.kind == 'sharp':
            return make_sharp_group(factor.value, permutation_action=sharp_permutation_action,
                                    cap=cap).handle
        if factor.kind == 'file':
            return load_cayley(factor.value, cap=cap, exhaustive=exhaustive_assoc,
                               name='file:%s' % factor.value)
        if factor.kind == 'perm':
            return load_perm_group(factor.value, cap=cap, name='perm:%s' % factor.value)
        return make_standard(factor.kind, factor.value, cap=cap)

    def __str__(self):
        return self.text

    def __repr__(self):
        return 'GroupSpec(%r)' % self.text


def parse_group_spec(spec, cap=None, sharp_permutation_action=False, exhaustive_assoc=False):
    """
    Builds the group named by a specification string (or :class:`GroupSpec`.)
    """
    if not isinstance(spec, GroupSpec):
        spec = GroupSpec(spec)
    return spec.build(cap=cap, sharp_permutation_action=sharp_permutation_action,
                      exhaustive_assoc=exhaustive_assoc)


def builtin_specs(max_order):
    """
    Returns the specifications of the built-in non-trivial groups of order
    less than ``max_order``: cyclic, dihedral, symmetric and alternating groups
    (skipping the coincidences S2 = C2 and A3 = C3), the sharp groups, and the
    direct products of two such factors.
    """
    factors = []
    for m in range(2, max_order):
        factors.append(('C%d' % m, m))
    for m in range(3, max_order):
        if 2 * m < max_order:
            factors.append(('Dih%d' % m, 2 * m))
    for n in itertools.count(3):
        order = math.factorial(n)
        if order >= max_order:
            break
        factors.append(('S%d' % n, order))
    for n in itertools.count(4):
        order = math.factorial(n) // 2
        if order >= max_order:
            break
        factors.append(('A%d' % n, order))
    specs = [(spec, order) for spec, order in factors]
    for n in itertools.count(3):
        order = sharp_order(n)
        if order >= max_order:
            break
        specs.append(('Sharp%d' % n, order))
    for (left, left_order), (right, right_order) in itertools.combinations_with_replacement(factors, 2):
        if left_order * right_order < max_order:
            specs.append(('%sx%s' % (left, right), left_order * right_order))
    specs.sort(key=lambda item: (item[1], item[0]))
    return [spec for spec, _ in specs]


def builtin_catalog(max_order, cap=None):
    return [parse_group_spec(spec, cap=cap) for spec in builtin_specs(max_order)]

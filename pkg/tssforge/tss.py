"""
Totally symmetric sets.

A finite subset ``{g_1, ..., g_n}`` of a group is totally symmetric when its
elements pairwise commute and every permutation ``sigma`` of the indices is
realized by a single conjugating element ``h``, that is
``h g_i h^-1 = g_sigma(i)`` for all ``i`` at once. Witnesses for the adjacent
transpositions suffice, since they generate the symmetric group and witnesses
compose (see :meth:`TssWitness.witness_for`.)
"""
import logging
import math
from collections import namedtuple

from tssforge.exceptions import CertificateError, InvalidArgument
from tssforge.helpers import get_budget
from tssforge.parallel import map_partitions


logger = logging.getLogger(__name__)


class TssFailure(namedtuple('TssFailure', ('reason', 'indices'))):
    """
    Why a set is not totally symmetric. ``indices`` are the 1-based positions
    of the offending elements.
    """
    __slots__ = ()
    ok = False


class TssWitness(object):
    """
    A verified totally symmetric set ``elements`` of ``ambient``, with
    ``transposition_witnesses[i]`` swapping elements ``i`` and ``i + 1`` by
    conjugation while fixing all the others.
    """
    ok = True

    def __init__(self, elements, transposition_witnesses, ambient):
        self.elements = tuple(elements)
        self.transposition_witnesses = tuple(transposition_witnesses)
        self.ambient = ambient

    @property
    def size(self):
        return len(self.elements)

    def realizes(self, h, sigma):
        """
        Returns whether ``h`` conjugates element ``i`` to element ``sigma[i]``
        for every ``i``.
        """
        G = self.ambient
        return all(G.conjugate(h, element) == self.elements[sigma[index]]
                   for index, element in enumerate(self.elements))

    def witness_for(self, sigma):
        """
        Returns an element realizing the permutation ``sigma`` of the indices
        (``sigma[i]`` is the image of ``i``), composed from the stored
        transposition witnesses.
        """
        sigma = list(sigma)
        if sorted(sigma) != list(range(self.size)):
            raise InvalidArgument('%r is not a permutation of 0..%d' % (sigma, self.size - 1))
        # Sorting sigma by adjacent swaps b_1, ..., b_k gives
        # sigma = t_bk ... t_b1, realized by h_bk ... h_b1.
        swaps = []
        for end in range(len(sigma) - 1, 0, -1):
            for index in range(end):
                if sigma[index] > sigma[index + 1]:
                    sigma[index], sigma[index + 1] = sigma[index + 1], sigma[index]
                    swaps.append(index)
        G = self.ambient
        h = G.identity
        for index in swaps:
            h = G.multiply(self.transposition_witnesses[index], h)
        return h

    def __repr__(self):
        return '<TssWitness size=%d in %r>' % (self.size, self.ambient)


def _transposition_witness(G, elements, index):
    a, b = elements[index], elements[index + 1]
    others = elements[:index] + elements[index + 2:]
    for h in G.elements:
        if (G.conjugate(h, a) == b and G.conjugate(h, b) == a
                and all(G.conjugate(h, other) == other for other in others)):
            return h
    return None


def verify_totally_symmetric(G, S):
    """
    Checks whether ``S`` is a totally symmetric subset of ``G``.

    :returns: a :class:`TssWitness` on success, otherwise a
        :class:`TssFailure` describing the first violated condition.
    """
    elements = tuple(S)
    if not elements:
        raise InvalidArgument('a totally symmetric set must be non-empty')
    G.check(*elements)
    if len(set(elements)) != len(elements):
        raise InvalidArgument('the elements of a totally symmetric set must be distinct')

    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if not G.commute(elements[i], elements[j]):
                return TssFailure('elements %d and %d do not commute' % (i + 1, j + 1),
                                  (i + 1, j + 1))

    witnesses = []
    for index in range(len(elements) - 1):
        h = _transposition_witness(G, elements, index)
        if h is None:
            return TssFailure('no element swaps elements %d and %d while fixing the others'
                              % (index + 1, index + 2), (index + 1, index + 2))
        witnesses.append(h)
    return TssWitness(elements, witnesses, G)


TssSearchResult = namedtuple('TssSearchResult', ('best', 'complete', 'nodes'))


class _BudgetExhausted(Exception):
    pass


def _search_class(context, class_index):
    G, max_size, budget = context
    members = sorted(G.classes[class_index].members, key=G.sort_key)
    state = {'nodes': 0, 'best': members[:1]}

    def extend(current, start):
        if len(current) > len(state['best']):
            state['best'] = list(current)
        if max_size is not None and len(current) >= max_size:
            return
        if proposition_bound(len(current) + 1) > G.order:
            return
        for position in range(start, len(members)):
            candidate = members[position]
            state['nodes'] += 1
            if state['nodes'] > budget:
                raise _BudgetExhausted
            if not all(G.commute(candidate, element) for element in current):
                continue
            extended = current + [candidate]
            if verify_totally_symmetric(G, extended).ok:
                extend(extended, position + 1)

    # Any totally symmetric set inside a class can be conjugated to one that
    # contains the class representative, which is the smallest member.
    complete = True
    try:
        extend(members[:1], 1)
    except _BudgetExhausted:
        complete = False
        logger.warning('Budget of %d nodes exhausted in class %d of %r', budget, class_index, G)
    return [G.index(element) for element in state['best']], complete, state['nodes']


def search_tss(G, max_size=None, budget=None, jobs=1):
    """
    Searches ``G`` for a largest totally symmetric set, one conjugacy class at
    a time (largest classes first), over increasing tuples of class members.

    ``budget`` bounds the number of candidate extensions tried per class. The
    result is the largest set found, ties broken by the fixed element order;
    ``complete`` is false when some class ran out of budget.
    """
    if max_size is not None and max_size < 1:
        raise InvalidArgument('max_size must be at least 1')
    budget = get_budget(budget)
    order = sorted(range(len(G.classes)),
                   key=lambda index: (-G.classes[index].size, index))
    results = map_partitions(_search_class, order, jobs=jobs, context=(G, max_size, budget))

    best = None
    complete = True
    nodes = 0
    for indices, class_complete, class_nodes in results:
        complete = complete and class_complete
        nodes += class_nodes
        if best is None or (-len(indices), indices) < (-len(best), best):
            best = indices
    witness = verify_totally_symmetric(G, [G.elements[index] for index in best])
    if not witness.ok:
        raise CertificateError('search produced a set that fails verification: %s'
                               % witness.reason, dump={'set': best})
    return TssSearchResult(witness, complete, nodes)


TorsionCertificate = namedtuple('TorsionCertificate', ('p', 'm', 'generated_order', 'bound'))

StabilizerCertificate = namedtuple('StabilizerCertificate', (
    'stabilizer_order', 'kernel_order', 'image_order', 'generated_order'))


def _dump(G, W, **extra):
    dump = {
        'group': G.name,
        'order': G.order,
        'set': [G.format_element(element) for element in W.elements],
    }
    dump.update(extra)
    return dump


def torsion_certificate(G, W):
    """
    Computes the common order ``m`` of the set, the least ``p`` in ``[1, m]``
    with all ``p``-th powers equal, and ``|<S>|``, and checks
    ``|<S>| >= p^(n-1) >= 2^(n-1)``.
    """
    elements = W.elements
    n = len(elements)
    orders = [G.element_order(element) for element in elements]
    if len(set(orders)) != 1:
        raise CertificateError('elements of a totally symmetric set have different orders',
                               dump=_dump(G, W, orders=orders))
    m = orders[0]
    first = elements[0]
    p = next(k for k in range(1, m + 1)
             if all(G.power(element, k) == G.power(first, k) for element in elements))
    generated = G.generated_subgroup_order(elements)
    bound = p ** (n - 1)
    certificate = TorsionCertificate(p, m, generated, bound)
    if (n >= 2 and p < 2) or not generated >= bound >= torsion_bound(n):
        raise CertificateError('torsion certificate failed: %r' % (certificate,),
                               dump=_dump(G, W, certificate=certificate._asdict()))
    return certificate


def stabilizer_certificate(G, W):
    """
    Computes the setwise stabilizer ``Gamma`` of the set under conjugation,
    the induced map ``phi: Gamma -> Sym(S)`` and its kernel, and checks that
    ``phi`` is onto, that ``<S>`` lies in the kernel and that
    ``|G| >= |Gamma| = |ker phi| n! >= 2^(n-1) n!``.
    """
    elements = W.elements
    n = len(elements)
    positions = dict((element, index) for index, element in enumerate(elements))
    identity = tuple(range(n))
    stabilizer_order = 0
    kernel_order = 0
    image = set()
    for g in G.elements:
        conjugates = [G.conjugate(g, element) for element in elements]
        if not all(conjugate in positions for conjugate in conjugates):
            continue
        stabilizer_order += 1
        permutation = tuple(positions[conjugate] for conjugate in conjugates)
        image.add(permutation)
        if permutation == identity:
            kernel_order += 1

    generated = G._closure(elements, G.cap)
    in_kernel = all(G.conjugate(x, element) == element for x in generated for element in elements)
    certificate = StabilizerCertificate(stabilizer_order, kernel_order, len(image), len(generated))
    if not (in_kernel
            and certificate.image_order == math.factorial(n)
            and certificate.generated_order <= kernel_order
            and stabilizer_order == kernel_order * certificate.image_order
            and G.order >= stabilizer_order >= proposition_bound(n)):
        raise CertificateError('stabilizer certificate failed: %r' % (certificate,),
                               dump=_dump(G, W, certificate=certificate._asdict(),
                                          generated_in_kernel=in_kernel))
    return certificate


def torsion_bound(n):
    """
    The least possible order of the subgroup generated by a totally symmetric
    set of ``n`` elements of finite order: ``2^(n-1)``.
    """
    if n < 1:
        raise InvalidArgument('n must be at least 1')
    return 2 ** (n - 1)


def proposition_bound(n):
    """
    The least possible order of a group containing a totally symmetric set of
    ``n`` elements of finite order: ``2^(n-1) n!``.
    """
    return torsion_bound(n) * math.factorial(n)


def _theorem_domain(n):
    if n < 5:
        raise InvalidArgument('the braid group bounds require n >= 5, got %d' % n)
    return n // 2


def thm1_bound(n):
    """
    ``2^(k-1) k!`` with ``k = floor(n/2)``: every finite group receiving a
    non-cyclic homomorphism from ``B_n`` has at least this order.
    """
    k = _theorem_domain(n)
    return 2 ** (k - 1) * math.factorial(k)


def thm2_bound(n):
    """
    ``2^(k-2) (k-1)!`` with ``k = floor(n/2)``: every finite group receiving a
    non-trivial homomorphism from the commutator subgroup of ``B_n`` has at
    least this order.
    """
    k = _theorem_domain(n)
    return 2 ** (k - 2) * math.factorial(k - 1)

"""
Permutations of ``{0, ..., d - 1}`` backed by :mod:`sympy.combinatorics`.

Products follow the convention ``(p * q)(x) = p(q(x))``: the right factor is
applied first. sympy applies the left factor first, so ``p * q`` here is
``q * p`` in sympy. Conjugation everywhere in the package is ``h * g * h^-1``.
Points are 0-based internally and 1-based in cycle notation.
"""
import re

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics.permutations import _af_invert, _af_rmul

from tssforge.exceptions import DegreeMismatch, InvalidArgument


CYCLE_PATTERN = re.compile(r'\(([^()]*)\)')


class Permutation(object):
    """
    An immutable permutation. The image tuple is kept for hashing and the
    fixed total order of group elements; cycle structure, order and inverses
    come from the wrapped sympy permutation.
    """
    __slots__ = ('images', '_sympy')

    def __init__(self, images):
        images = tuple(int(image) for image in images)
        if not images:
            raise InvalidArgument('a permutation must have degree at least 1')
        if sorted(images) != list(range(len(images))):
            raise InvalidArgument('%r is not a bijection on 0..%d'
                                  % (images, len(images) - 1))
        self.images = images
        self._sympy = None

    @classmethod
    def _trusted(cls, images):
        # Skips validation; ``images`` must already be a bijective tuple.
        permutation = cls.__new__(cls)
        permutation.images = images
        permutation._sympy = None
        return permutation

    @classmethod
    def from_sympy(cls, permutation, degree=None):
        """
        Wraps a sympy permutation, extending it by fixed points up to
        ``degree``.
        """
        images = list(permutation.array_form)
        if degree is not None:
            if degree < len(images):
                raise DegreeMismatch('cannot restrict a permutation of degree %d to %d'
                                     % (len(images), degree))
            images.extend(range(len(images), degree))
        return cls._trusted(tuple(images))

    @classmethod
    def identity(cls, degree):
        if degree < 1:
            raise InvalidArgument('a permutation must have degree at least 1')
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree):
        """
        Builds a permutation from 0-based cycles. Cycles that share points are
        composed with the rightmost cycle applied first.
        """
        result = cls.identity(degree)
        for cycle in cycles:
            cycle = list(cycle)
            if len(set(cycle)) != len(cycle):
                raise InvalidArgument('cycle %r repeats a point' % (tuple(cycle),))
            for point in cycle:
                if not 0 <= point < degree:
                    raise InvalidArgument('point %d is outside degree %d'
                                          % (point + 1, degree))
            if len(cycle) > 1:
                result = result * cls.from_sympy(SympyPermutation([cycle], size=degree))
        return result

    @classmethod
    def parse(cls, text, degree):
        """
        Parses 1-based cycle notation such as ``(1 2)(3 4)``; ``()`` is the
        identity. Points inside a cycle are separated by whitespace or commas.
        """
        stripped = re.sub(r'\s+', '', text)
        if not stripped:
            raise InvalidArgument('empty permutation')
        if CYCLE_PATTERN.sub('', text).strip():
            raise InvalidArgument('%r is not in cycle notation' % (text,))
        cycles = []
        for body in CYCLE_PATTERN.findall(text):
            points = [piece for piece in re.split(r'[\s,]+', body.strip()) if piece]
            try:
                cycles.append([int(point) - 1 for point in points])
            except ValueError:
                raise InvalidArgument('%r is not in cycle notation' % (text,))
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self):
        return len(self.images)

    @property
    def sympy(self):
        """
        The equivalent :class:`sympy.combinatorics.Permutation`.
        """
        if self._sympy is None:
            self._sympy = SympyPermutation(list(self.images))
        return self._sympy

    def __call__(self, point):
        return self.images[point]

    def __mul__(self, other):
        return compose(self, other)

    def inverse(self):
        return Permutation._trusted(tuple(_af_invert(self.images)))

    def is_identity(self):
        return self.sympy.is_Identity

    def cycles(self):
        """
        Returns the non-trivial cycles as 0-based tuples, each starting at its
        smallest point, ordered by that point.
        """
        return [tuple(cycle) for cycle in self.sympy.cyclic_form]

    def order(self):
        return int(self.sympy.order())

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        return (len(self.images), self.images) < (len(other.images), other.images)

    def __hash__(self):
        return hash(self.images)

    def __getstate__(self):
        return self.images

    def __setstate__(self, images):
        self.images = images
        self._sympy = None

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return '()'
        return ''.join('(%s)' % ' '.join(str(point + 1) for point in cycle)
                       for cycle in cycles)

    def __repr__(self):
        return 'Permutation(%r, degree=%d)' % (str(self), self.degree)


def compose(p, q):
    """
    Returns the permutation ``x -> p(q(x))``, which is ``q * p`` in sympy.
    """
    if len(p.images) != len(q.images):
        raise DegreeMismatch('cannot compose permutations of degree %d and %d'
                             % (len(p.images), len(q.images)))
    return Permutation._trusted(tuple(_af_rmul(p.images, q.images)))

import os

from django.test import SimpleTestCase

from tssforge.constructions import make_standard


FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


class GroupTestCase(SimpleTestCase):
    def symmetric(self, n):
        return make_standard('symmetric', n)

    def parse(self, G, text):
        return G.parse_element(text)

    def assertElementsEqual(self, G, elements, expected):
        """
        Compares elements with their cycle notation.
        """
        self.assertEqual([G.format_element(element) for element in elements], list(expected))

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from tssforge.braids import braid_relations_hold
from tssforge.constructions import make_sharp_group, make_standard
from tssforge.groups import conjugate_by, load_cayley, parse_elements
from tssforge.permutations import Permutation
from tssforge.tests.utils import fixture
from tssforge.tss import verify_totally_symmetric


S4 = make_standard('symmetric', 4)
SHARP4 = make_sharp_group(4)
SHARP4_WITNESS = verify_totally_symmetric(SHARP4.handle, SHARP4.distinguished_tss)
S6 = make_standard('symmetric', 6)
SHARP5 = make_sharp_group(5)
WITNESSES = (
    SHARP4_WITNESS,
    verify_totally_symmetric(S4, parse_elements(S4, '(1 2)(3 4);(1 3)(2 4);(1 4)(2 3)')),
    verify_totally_symmetric(S6, parse_elements(S6, '(1 2);(3 4);(5 6)')),
    verify_totally_symmetric(SHARP5.handle, SHARP5.distinguished_tss),
)
S3_TABLE = load_cayley(fixture('catalog', 's3.cayley'))

permutations = st.integers(min_value=1, max_value=7).flatmap(
    lambda degree: st.permutations(range(degree)).map(Permutation))

s4_elements = st.sampled_from(S4.elements)


def permutation_triples():
    return st.integers(min_value=1, max_value=6).flatmap(
        lambda degree: st.tuples(*[st.permutations(range(degree)).map(Permutation)] * 3))


class PermutationPropertyTestCase(SimpleTestCase):
    @settings(max_examples=200, deadline=None)
    @given(permutations)
    def test_cycle_notation_round_trip(self, permutation):
        self.assertEqual(Permutation.parse(str(permutation), permutation.degree), permutation)

    @settings(max_examples=200, deadline=None)
    @given(permutation_triples())
    def test_composition_is_associative(self, triple):
        a, b, c = triple
        self.assertEqual((a * b) * c, a * (b * c))

    @settings(max_examples=200, deadline=None)
    @given(permutations)
    def test_inverse(self, permutation):
        self.assertTrue((permutation * permutation.inverse()).is_identity())
        self.assertTrue((permutation.inverse() * permutation).is_identity())
        self.assertEqual(permutation.inverse().order(), permutation.order())


class GroupPropertyTestCase(SimpleTestCase):
    @settings(max_examples=100, deadline=None)
    @given(s4_elements, s4_elements)
    def test_conjugation_preserves_class_and_order(self, h, g):
        conjugate = S4.conjugate(h, g)
        self.assertIs(S4.class_of(conjugate), S4.class_of(g))
        self.assertEqual(S4.element_order(conjugate), S4.element_order(g))

    @settings(max_examples=100, deadline=None)
    @given(s4_elements, s4_elements)
    def test_conjugation_is_undone_by_the_inverse(self, h, g):
        self.assertEqual(conjugate_by(h, conjugate_by(S4.inverse(h), g, S4), S4), g)

    @settings(max_examples=100, deadline=None)
    @given(s4_elements)
    def test_element_grammar_round_trip(self, g):
        self.assertEqual(S4.parse_element(S4.format_element(g)), g)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(S3_TABLE.elements), st.sampled_from(S3_TABLE.elements))
    def test_table_inverse_of_product(self, a, b):
        G = S3_TABLE
        self.assertEqual(G.inverse(G.multiply(a, b)), G.multiply(G.inverse(b), G.inverse(a)))
        self.assertEqual(G.parse_element(G.format_element(a)), a)

    @settings(max_examples=100, deadline=None)
    @given(s4_elements, s4_elements)
    def test_braid_relation_agrees_with_products(self, a, b):
        expected = S4.multiply(S4.multiply(a, b), a) == S4.multiply(S4.multiply(b, a), b)
        self.assertEqual(braid_relations_hold(3, (a, b), S4).holds, expected)


class WitnessPropertyTestCase(SimpleTestCase):
    @settings(max_examples=50, deadline=None)
    @given(st.permutations(range(4)))
    def test_witness_for_realizes_any_permutation(self, sigma):
        h = SHARP4_WITNESS.witness_for(sigma)
        self.assertTrue(SHARP4_WITNESS.realizes(h, sigma))

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(WITNESSES).flatmap(
        lambda witness: st.tuples(st.just(witness), st.permutations(range(witness.size)))))
    def test_witness_for_any_totally_symmetric_set(self, case):
        witness, sigma = case
        h = witness.witness_for(sigma)
        self.assertTrue(witness.realizes(h, sigma))

import collections
import pickle

from django.test import SimpleTestCase
from django.test.utils import override_settings
from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup as SympyPermutationGroup

from tssforge.constructions import make_standard, parse_group_spec
from tssforge.exceptions import (AssociativityError, CapExceeded, DegreeMismatch,
                                 GroupFormatError, InvalidArgument, NotInGroup,
                                 UnsupportedBacking)
from tssforge.groups import (CayleyTable, PermutationGroup, centralizer, conjugacy_classes,
                             conjugate_by, derived_series, derived_subgroup, element_order,
                             generate_closure, is_perfect, is_solvable, is_transitive,
                             load_cayley, load_perm_group, normal_closure, parse_elements)
from tssforge.permutations import Permutation, compose
from tssforge.tests.utils import GroupTestCase, fixture


class PermutationTestCase(SimpleTestCase):
    def test_parse(self):
        permutation = Permutation.parse('(1 2)(3 4)', 4)
        self.assertEqual(permutation.images, (1, 0, 3, 2))
        self.assertEqual(str(permutation), '(1 2)(3 4)')

    def test_identity(self):
        self.assertEqual(str(Permutation.identity(3)), '()')
        self.assertEqual(Permutation.parse('()', 3), Permutation.identity(3))
        self.assertTrue(Permutation.parse('()', 3).is_identity())

    def test_separators(self):
        self.assertEqual(Permutation.parse(' ( 1, 3 ,2 ) ', 3),
                         Permutation.parse('(1 3 2)', 3))

    def test_cycles_start_at_smallest_point(self):
        self.assertEqual(str(Permutation.parse('(3 1 2)', 3)), '(1 2 3)')
        self.assertEqual(str(Permutation.parse('(4 5)(2 3)', 5)), '(2 3)(4 5)')

    def test_composition_applies_right_factor_first(self):
        p = Permutation.parse('(1 2)', 3)
        q = Permutation.parse('(2 3)', 3)
        self.assertEqual(str(p * q), '(1 2 3)')
        for point in range(3):
            self.assertEqual((p * q)(point), p(q(point)))
        # Overlapping cycles in one string follow the same convention.
        self.assertEqual(Permutation.parse('(1 2)(2 3)', 3), p * q)

    def test_degree_mismatch(self):
        self.assertRaises(DegreeMismatch, compose, Permutation.identity(2), Permutation.identity(3))

    def test_invalid(self):
        self.assertRaises(InvalidArgument, Permutation, (0, 0))
        self.assertRaises(InvalidArgument, Permutation, ())
        self.assertRaises(InvalidArgument, Permutation.parse, '1 2', 3)
        self.assertRaises(InvalidArgument, Permutation.parse, '(1 4)', 3)
        self.assertRaises(InvalidArgument, Permutation.parse, '(1 1)', 3)
        self.assertRaises(InvalidArgument, Permutation.parse, '(1 a)', 3)
        self.assertRaises(InvalidArgument, Permutation.parse, '', 3)

    def test_order_and_inverse(self):
        permutation = Permutation.parse('(1 2 3)(4 5)', 5)
        self.assertEqual(permutation.order(), 6)
        self.assertTrue((permutation * permutation.inverse()).is_identity())
        self.assertEqual(str(permutation.inverse()), '(1 3 2)(4 5)')

    def test_sympy_backing(self):
        p = Permutation.parse('(1 2)', 3)
        q = Permutation.parse('(2 3)', 3)
        self.assertEqual(p.sympy, SympyPermutation([[0, 1]], size=3))
        # sympy applies the left factor first.
        self.assertEqual(Permutation.from_sympy(q.sympy * p.sympy), p * q)
        self.assertEqual(Permutation.from_sympy(SympyPermutation([1, 0]), 4),
                         Permutation.parse('(1 2)', 4))
        self.assertRaises(DegreeMismatch, Permutation.from_sympy,
                          SympyPermutation([1, 2, 0]), 2)

    def test_pickle(self):
        permutation = Permutation.parse('(1 3 2)(4 5)', 5)
        permutation.order()  # caches the sympy permutation
        copy = pickle.loads(pickle.dumps(permutation))
        self.assertEqual(copy, permutation)
        self.assertEqual(hash(copy), hash(permutation))
        self.assertEqual(str(copy), '(1 3 2)(4 5)')


class GroupEngineTestCase(GroupTestCase):
    def setUp(self):
        self.S4 = self.symmetric(4)

    def test_symmetric_orders(self):
        for n, order in ((1, 1), (2, 2), (3, 6), (4, 24), (5, 120)):
            self.assertEqual(self.symmetric(n).order, order)

    def test_elements_are_sorted_and_distinct(self):
        elements = self.S4.elements
        self.assertEqual(len(set(elements)), 24)
        self.assertEqual(list(elements), sorted(elements, key=self.S4.sort_key))
        self.assertEqual(elements[0], self.S4.identity)
        for index, element in enumerate(elements):
            self.assertEqual(self.S4.index(element), index)

    def test_conjugacy_classes(self):
        classes = conjugacy_classes(self.S4)
        self.assertEqual(sorted(conjugacy_class.size for conjugacy_class in classes),
                         [1, 3, 6, 6, 8])
        self.assertEqual(sum(conjugacy_class.size for conjugacy_class in classes), 24)
        for conjugacy_class in classes:
            self.assertEqual(conjugacy_class.representative,
                             min(conjugacy_class.members, key=self.S4.sort_key))
            for member in conjugacy_class.members:
                self.assertIs(self.S4.class_of(member), conjugacy_class)

    def test_conjugate_by(self):
        h = self.parse(self.S4, '(1 2 3)')
        g = self.parse(self.S4, '(1 2)')
        self.assertEqual(str(conjugate_by(h, g, self.S4)), '(2 3)')

    def test_element_order(self):
        self.assertEqual(element_order(self.parse(self.S4, '(1 2 3 4)'), self.S4), 4)
        self.assertEqual(element_order(self.S4.identity, self.S4), 1)

    def test_orders_divide_the_group_order(self):
        groups = [self.S4, make_standard('alternating', 5), make_standard('dihedral', 6),
                  parse_group_spec('C3xS3'), load_cayley(fixture('catalog', 's3.cayley'))]
        for G in groups:
            for g in G.elements:
                self.assertEqual(G.order % element_order(g, G), 0, G.format_element(g))
            for conjugacy_class in G.classes:
                self.assertEqual(G.order % conjugacy_class.size, 0, G.name)

    def test_conjugation_by_an_inverse(self):
        for h in self.S4.elements:
            for g in self.S4.elements:
                self.assertEqual(
                    conjugate_by(h, conjugate_by(self.S4.inverse(h), g, self.S4), self.S4), g)

    def test_not_in_group(self):
        A4 = make_standard('alternating', 4)
        transposition = self.parse(self.S4, '(1 2)')
        self.assertRaises(NotInGroup, A4.check, transposition)
        self.assertRaises(NotInGroup, A4.parse_element, '(1 2)')
        self.assertRaises(NotInGroup, element_order, transposition, A4)

    def test_parse_elements(self):
        elements = parse_elements(self.S4, '(1 2)(3 4); (1 3)(2 4) ;(1 4)(2 3);')
        self.assertElementsEqual(self.S4, elements, ['(1 2)(3 4)', '(1 3)(2 4)', '(1 4)(2 3)'])

    def test_cap_exceeded(self):
        generators = [Permutation.parse('(1 2)', 5), Permutation.parse('(1 2 3 4 5)', 5)]
        with self.assertRaises(CapExceeded) as context:
            PermutationGroup(5, generators, cap=100)
        self.assertEqual(context.exception.cap, 100)
        self.assertGreater(context.exception.count, 100)

    def test_generate_closure(self):
        self.assertEqual(generate_closure([], degree=3).order, 1)
        self.assertRaises(InvalidArgument, generate_closure, [])
        group = generate_closure([Permutation.parse('(1 2 3)', 4)])
        self.assertEqual(group.order, 3)

    def test_centralizer(self):
        self.assertEqual(centralizer(self.S4, self.parse(self.S4, '(1 2)')).order, 4)
        self.assertEqual(centralizer(self.S4, self.S4.identity).order, 24)

    def test_normal_closure(self):
        self.assertEqual(normal_closure(self.S4, [self.parse(self.S4, '(1 2 3)')]).order, 12)
        self.assertEqual(normal_closure(self.S4, [self.parse(self.S4, '(1 2)(3 4)')]).order, 4)
        self.assertEqual(normal_closure(self.S4, [self.parse(self.S4, '(1 2)')]).order, 24)

    def test_derived_series(self):
        self.assertEqual(derived_subgroup(self.S4).order, 12)
        self.assertEqual([group.order for group in derived_series(self.S4)], [24, 12, 4, 1])
        self.assertTrue(is_solvable(self.S4))
        self.assertFalse(is_perfect(self.S4))

    def test_alternating_five_is_perfect(self):
        A5 = make_standard('alternating', 5)
        self.assertEqual(A5.order, 60)
        self.assertEqual(len(A5.classes), 5)
        self.assertTrue(is_perfect(A5))
        self.assertFalse(is_solvable(A5))

    def test_trivial_group_is_perfect_and_solvable(self):
        trivial = generate_closure([], degree=2)
        self.assertTrue(is_perfect(trivial))
        self.assertTrue(is_solvable(trivial))

    def test_is_transitive(self):
        self.assertTrue(is_transitive(self.S4))
        self.assertFalse(is_transitive(generate_closure([Permutation.parse('(1 2)', 4)])))
        table_group = load_cayley(fixture('catalog', 's3.cayley'))
        self.assertRaises(UnsupportedBacking, is_transitive, table_group)

    def test_sympy_group(self):
        self.assertEqual(self.S4.sympy_group.order(), 24)
        self.assertTrue(generate_closure([], degree=1).sympy_group.is_transitive())
        trivial = generate_closure([], degree=3)
        self.assertEqual(trivial.sympy_group.degree, 3)
        self.assertFalse(is_transitive(trivial))


class SympyOracleTestCase(SimpleTestCase):
    """
    Compares the group engine with an independent implementation.
    """
    specs = ('S4', 'A5', 'Dih5', 'C3xS3', 'A4xC2', 'Sharp3')

    def oracle(self, G):
        generators = [SympyPermutation(list(generator.images)) for generator in G.generators]
        return SympyPermutationGroup(*generators)

    def test_invariants(self):
        for spec in self.specs:
            G = parse_group_spec(spec, sharp_permutation_action=True)
            oracle = self.oracle(G)
            self.assertEqual(G.order, oracle.order(), spec)
            self.assertEqual(derived_subgroup(G).order, oracle.derived_subgroup().order(), spec)
            self.assertEqual(is_perfect(G), oracle.is_perfect, spec)
            self.assertEqual(is_solvable(G), oracle.is_solvable, spec)
            self.assertEqual(is_transitive(G), oracle.is_transitive(), spec)
            self.assertEqual(len(G.classes), len(oracle.conjugacy_classes()), spec)


class CayleyTestCase(GroupTestCase):
    def setUp(self):
        self.table_group = load_cayley(fixture('catalog', 's3.cayley'))
        self.perm_group = load_perm_group(fixture('catalog', 's3.perm'))

    def test_load(self):
        G = self.table_group
        self.assertEqual(G.order, 6)
        self.assertEqual(G.name, 's3.cayley')
        self.assertEqual(G.backing, 'table')
        self.assertEqual(G.identity, 0)
        self.assertFalse(G.is_abelian())
        self.assertEqual(len(G.classes), 3)

    def test_representations_agree(self):
        def profile(G):
            return (G.order,
                    sorted(conjugacy_class.size for conjugacy_class in G.classes),
                    collections.Counter(G.element_order(element) for element in G.elements),
                    is_perfect(G), is_solvable(G), derived_subgroup(G).order)

        self.assertEqual(self.perm_group.name, 's3.perm')
        self.assertEqual(profile(self.table_group), profile(self.perm_group))

    def test_element_grammar(self):
        G = self.table_group
        self.assertEqual(G.parse_element('[3]'), 3)
        self.assertEqual(G.parse_element(' [ 3 ] '), 3)
        self.assertEqual(G.format_element(3), '[3]')
        self.assertRaises(InvalidArgument, G.parse_element, '(1 2)')
        self.assertRaises(NotInGroup, G.parse_element, '[9]')

    def test_inverses(self):
        G = self.table_group
        for element in G.elements:
            self.assertEqual(G.multiply(element, G.inverse(element)), G.identity)

    def test_corrupted_table(self):
        path = fixture('broken', 'broken.cayley')
        with self.assertRaises(AssociativityError) as context:
            load_cayley(path)
        a, b, c = context.exception.triple
        self.assertIn('broken.cayley', str(context.exception))
        self.assertIn('not associative', str(context.exception))

        rows = [[0, 1, 2, 3, 4, 5],
                [1, 2, 0, 5, 4, 3],
                [2, 0, 1, 5, 3, 4],
                [3, 5, 4, 0, 2, 1],
                [4, 3, 5, 1, 0, 2],
                [5, 4, 3, 2, 1, 0]]
        self.assertNotEqual(rows[rows[a][b]][c], rows[a][rows[b][c]])

    def test_sampled_associativity(self):
        with override_settings(TSSFORGE_ASSOC_EXHAUSTIVE_LIMIT=2):
            self.assertRaises(AssociativityError, load_cayley, fixture('broken', 'broken.cayley'))
            self.assertEqual(load_cayley(fixture('catalog', 's3.cayley')).order, 6)

    def test_no_identity(self):
        self.assertRaises(GroupFormatError, CayleyTable, [[0, 0], [0, 0]])

    def test_malformed_perm_file(self):
        with self.assertRaises(GroupFormatError) as context:
            load_perm_group(fixture('broken', 'short.perm'))
        self.assertEqual(context.exception.line, 2)

    def test_missing_file(self):
        self.assertRaises(GroupFormatError, load_cayley, fixture('missing.cayley'))

    def test_cap(self):
        self.assertRaises(CapExceeded, load_cayley, fixture('catalog', 's3.cayley'), cap=5)
        self.assertRaises(CapExceeded, load_perm_group, fixture('catalog', 's3.perm'), cap=5)

    def test_cyclic_table(self):
        G = load_cayley(fixture('c4.cayley'))
        self.assertTrue(G.is_abelian())
        self.assertEqual(G.element_order(1), 4)
        self.assertEqual(derived_subgroup(G).order, 1)

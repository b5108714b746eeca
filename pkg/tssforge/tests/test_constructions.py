from unittest import mock

from django.test import SimpleTestCase
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import CyclicGroup, DihedralGroup, SymmetricGroup

from tssforge.constructions import (GroupSpec, builtin_catalog, builtin_specs, from_sympy_group,
                                    make_direct_product, make_sharp_group, make_standard,
                                    parse_group_spec, regular_image, regular_permutation_group,
                                    regular_realization, sharp_order)
from tssforge.exceptions import CapExceeded, CertificateError, GroupSpecError, InvalidArgument
from tssforge.groups import is_perfect, is_transitive, load_cayley
from tssforge.tests.utils import fixture
from tssforge.tss import stabilizer_certificate, torsion_certificate, verify_totally_symmetric


class StandardGroupTestCase(SimpleTestCase):
    def test_orders(self):
        expected = (
            ('symmetric', 4, 24, 'S4'),
            ('alternating', 4, 12, 'A4'),
            ('alternating', 5, 60, 'A5'),
            ('cyclic', 5, 5, 'C5'),
            ('cyclic', 1, 1, 'C1'),
            ('dihedral', 3, 6, 'Dih3'),
            ('dihedral', 4, 8, 'Dih4'),
        )
        for kind, size, order, name in expected:
            G = make_standard(kind, size)
            self.assertEqual(G.order, order, name)
            self.assertEqual(G.name, name)

    def test_small_groups_keep_their_degree(self):
        for kind, size in (('symmetric', 1), ('alternating', 1), ('alternating', 2), ('cyclic', 1)):
            G = make_standard(kind, size)
            self.assertEqual(G.degree, size)
            self.assertEqual(G.order, 1)
            self.assertEqual(len(G.generators), 0)
        self.assertEqual(make_standard('alternating', 3).degree, 3)

    def test_from_sympy_group(self):
        G = from_sympy_group(DihedralGroup(4), name='Dih4')
        self.assertEqual((G.order, G.degree, G.name), (8, 4, 'Dih4'))
        self.assertEqual(from_sympy_group(CyclicGroup(3), degree=5).degree, 5)

    def test_invalid(self):
        self.assertRaises(InvalidArgument, make_standard, 'dihedral', 2)
        self.assertRaises(InvalidArgument, make_standard, 'quaternion', 8)
        self.assertRaises(InvalidArgument, make_standard, 'cyclic', 0)

    def test_cap_is_checked_before_construction(self):
        with self.assertRaises(CapExceeded) as context:
            make_standard('symmetric', 10)
        self.assertEqual(context.exception.cap, 10 ** 6)
        self.assertRaises(CapExceeded, make_standard, 'symmetric', 5, cap=100)

    def test_direct_product(self):
        C2 = make_standard('cyclic', 2)
        C3 = make_standard('cyclic', 3)
        product = make_direct_product(C2, C3)
        self.assertEqual(product.order, 6)
        self.assertEqual(product.degree, 5)
        self.assertEqual(product.name, 'C2xC3')
        self.assertTrue(product.is_abelian())
        self.assertFalse(is_transitive(product))

    def test_direct_product_matches_sympy(self):
        product = make_direct_product(make_standard('symmetric', 3), make_standard('cyclic', 2))
        oracle = DirectProduct(SymmetricGroup(3), CyclicGroup(2))
        self.assertEqual(product.order, oracle.order())
        self.assertEqual(product.degree, oracle.degree)
        self.assertEqual(len(product.classes), len(oracle.conjugacy_classes()))

    def test_direct_product_with_a_table_factor(self):
        table_group = load_cayley(fixture('catalog', 's3.cayley'))
        product = make_direct_product(make_standard('cyclic', 2), table_group)
        self.assertEqual(product.order, 12)
        self.assertEqual(product.degree, 8)

    def test_regular_permutation_group(self):
        table_group = load_cayley(fixture('catalog', 's3.cayley'))
        regular = regular_permutation_group(table_group)
        self.assertEqual(regular.order, 6)
        self.assertEqual(regular.degree, 6)
        self.assertTrue(is_transitive(regular))


class GroupSpecTestCase(SimpleTestCase):
    def test_products_are_left_associative(self):
        G = parse_group_spec('C2xC2xC2')
        self.assertEqual(G.order, 8)
        self.assertEqual(G.name, 'C2xC2xC2')
        self.assertEqual(G.degree, 6)

    def test_square_of_s3(self):
        G = parse_group_spec('S3xS3')
        self.assertEqual(G.order, 36)
        self.assertEqual(len(G.classes), 9)

    def test_elementary_abelian_exponent(self):
        G = parse_group_spec('C2xC2xC2')
        self.assertTrue(G.is_abelian())
        self.assertEqual(set(G.element_order(g) for g in G.elements), set([1, 2]))

    def test_whitespace(self):
        self.assertEqual(parse_group_spec(' S3 x C2 ').order, 12)

    def test_factors(self):
        spec = GroupSpec('Sharp3xDih4xA4')
        self.assertEqual([factor.kind for factor in spec.factors],
                         ['sharp', 'dihedral', 'alternating'])
        self.assertEqual([factor.value for factor in spec.factors], [3, 4, 4])

    def test_errors(self):
        for text, position in (('S4 x', 4), ('Q8', 0), ('S4 C2', 3), ('', 0), ('S4xx', 3)):
            with self.assertRaises(GroupSpecError) as context:
                GroupSpec(text)
            self.assertEqual(context.exception.position, position, text)

    def test_files(self):
        path = fixture('catalog', 's3.cayley')
        G = parse_group_spec('file:%s' % path)
        self.assertEqual(G.order, 6)
        self.assertEqual(G.backing, 'table')
        self.assertEqual(G.name, 'file:%s' % path)

        product = parse_group_spec('C2xperm:%s' % fixture('catalog', 's3.perm'))
        self.assertEqual(product.order, 12)

    def test_builtin_specs(self):
        self.assertEqual(builtin_specs(4), ['C2', 'C3'])
        specs = builtin_specs(24)
        for spec in ('A4', 'S3', 'Dih4', 'C2xC2', 'C2xS3', 'C23'):
            self.assertIn(spec, specs)
        for spec in ('S4', 'Sharp3', 'C24', 'S2'):
            self.assertNotIn(spec, specs)
        self.assertEqual(len(specs), len(set(specs)))

    def test_builtin_catalog(self):
        catalog = builtin_catalog(24)
        orders = [G.order for G in catalog]
        self.assertEqual(orders, sorted(orders))
        self.assertLess(max(orders), 24)
        self.assertEqual([G.name for G in catalog], builtin_specs(24))


class BuiltinPerfectGroupTestCase(SimpleTestCase):
    def test_no_perfect_group_below_sixty(self):
        for G in builtin_catalog(60):
            self.assertFalse(is_perfect(G), G.name)

    def test_alternating_five(self):
        self.assertTrue(is_perfect(parse_group_spec('A5')))


class SharpGroupTestCase(SimpleTestCase):
    def assertSharp(self, sharp):
        n = sharp.n
        G = sharp.handle
        self.assertEqual(G.order, sharp_order(n))
        self.assertEqual(len(sharp.distinguished_tss), n)
        witness = verify_totally_symmetric(G, sharp.distinguished_tss)
        self.assertTrue(witness.ok)

        torsion = torsion_certificate(G, witness)
        self.assertEqual(torsion.p, 2)
        self.assertEqual(torsion.generated_order, 2 ** (n - 1))
        self.assertEqual(torsion.generated_order, torsion.bound)
        return witness

    def test_orders(self):
        for n, order in ((3, 24), (4, 192), (5, 1920), (6, 23040)):
            self.assertEqual(sharp_order(n), order)

    def test_table_realizations(self):
        for n in (3, 4, 5):
            sharp = make_sharp_group(n)
            self.assertEqual(sharp.handle.backing, 'table')
            self.assertEqual(sharp.expected_order, sharp_order(n))
            self.assertSharp(sharp)

    def test_stabilizer_meets_the_bound(self):
        sharp = make_sharp_group(4)
        witness = self.assertSharp(sharp)
        certificate = stabilizer_certificate(sharp.handle, witness)
        self.assertEqual(certificate.stabilizer_order, 192)
        self.assertEqual(certificate.kernel_order, 8)
        self.assertEqual(certificate.image_order, 24)

    def test_permutation_realization(self):
        sharp = make_sharp_group(4, permutation_action=True)
        self.assertEqual(sharp.handle.backing, 'permutation')
        self.assertEqual(sharp.handle.degree, 8)
        self.assertSharp(sharp)

    def test_regular_realization_agrees_with_the_table(self):
        for n in (3, 4):
            sharp = make_sharp_group(n)
            regular, tss = regular_realization(sharp)
            self.assertEqual(regular.backing, 'permutation')
            self.assertEqual(regular.degree, sharp_order(n))
            self.assertEqual(regular.order, sharp.handle.order)
            self.assertEqual(len(regular.classes), len(sharp.handle.classes))
            self.assertTrue(is_transitive(regular))
            self.assertTrue(verify_totally_symmetric(regular, tss).ok)
            G = sharp.handle
            a, b = G.elements[5], G.elements[17]
            self.assertEqual(regular_image(G, G.multiply(a, b)),
                             regular_image(G, a) * regular_image(G, b))

    def test_regular_realization_disagreement(self):
        S3 = make_standard('symmetric', 3)
        mismatch = (S3, [S3.identity])
        with mock.patch('tssforge.constructions.regular_realization', return_value=mismatch):
            with self.assertRaises(CertificateError) as context:
                make_sharp_group(3)
        self.assertEqual(context.exception.dump['order'], 6)

    def test_six_needs_the_permutation_action(self):
        self.assertRaises(CapExceeded, make_sharp_group, 6)
        sharp = make_sharp_group(6, permutation_action=True)
        self.assertEqual(sharp.handle.degree, 32)
        self.assertSharp(sharp)

    def test_invalid(self):
        self.assertRaises(InvalidArgument, make_sharp_group, 2)
        self.assertRaises(CapExceeded, make_sharp_group, 8, permutation_action=True)
        self.assertRaises(CapExceeded, make_sharp_group, 4, cap=100)

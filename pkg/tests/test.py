import sys
import os
import io
import json
import copy
import tempfile
import warnings

import unittest

import numpy as np
from sympy import QQ

sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))

from lieclass import LieClass, DEFAULTS
from lieclass.cli import run
from lieclass.geometry import (Chart, VectorField, Distribution, lie_bracket, weak_flag, strong_flag,
                               cauchy_characteristics, prolong_rank2, deprolong, spans_equal, symbol_algebra)
from lieclass.graded import GradedLieAlgebra, build_nk, jacobi_check, tanaka_prolong, verify_nk, verify_appendix_formula
from lieclass.jets import (multi_indices, jet_name, contact_field, contact_bracket, is_external_symmetry, jet_space,
                           prolong_contact_field, restrict_to_equation)
from lieclass.analysis import (Reduction, check_N, nondegeneracy_suite, verify_symmetry_of_distribution,
                               commutator_table, table_jacobi, grading_check, solve_polynomial_symmetries,
                               lbt_report, tanaka_upper_bound)
from lieclass.symmetries import (ek_generating_functions, fk_generating_functions, monge_field_names,
                                 monge_symmetries, monge_weights, monge_biweights, displayed_brackets)
from lieclass.utils import checkups, parse_expression, parse_rational
from lieclass.utils.exact import (to_rational, rational_string, differentiate, ExactMatrix, constant_combination,
                                  constant_rank)
from lieclass.utils.errors import (ParseError, DivisionByZeroError, CatalogError, StructureError,
                                   UnknownVariableError)
from lieclass.utils.family import Family, catalog, list_models, ek, fk, rkm, monge_y, monge_kl, goursat_pair
from lieclass.utils.family import hilbert_cartan, s8_2e2e1
from lieclass.utils.prepare_model import PrepareModel, load_json, load_model, validate_report
from lieclass.analysis import flag_report


MODELS = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'tutorials', 'models')


class TestExact(unittest.TestCase):
    '''
    Test the exact rational layer.

    It is tested
        - if rationals are read from strings, ints and QQ and printed back canonically
        - if a zero denominator raises DivisionByZeroError
        - if ExactMatrix returns the right rank, kernel and solution
        - if constant_combination finds constant coefficients and refuses non-constant ones
    '''
    def __init__(self,*args,**kwargs):
        super(TestExact, self).__init__(*args,**kwargs)
        self.chart = Chart('A', ('x', 'y'))

    def test_rationals(self):
        self.assertEqual(to_rational('3/6'), QQ(1, 2))
        self.assertEqual(to_rational(-4), QQ(-4))
        self.assertEqual(rational_string(QQ(-2, 4)), '-1/2')
        self.assertEqual(rational_string(QQ(6, 3)), '2')
        self.assertRaises(DivisionByZeroError, to_rational, '1/0')

    def test_matrix(self):
        matrix = ExactMatrix([[1, 2], [2, 4]])
        self.assertEqual(matrix.rank(), 1)
        self.assertEqual(matrix.kernel_basis(), [[QQ(-2), QQ(1)]])
        square = ExactMatrix([[1, 1], [0, 2]])
        self.assertEqual(square.solve([3, 4]), [QQ(1), QQ(2)])
        self.assertIsNone(ExactMatrix([[1, 1], [2, 2]]).inverse())

    def test_constant_combination(self):
        x = self.chart.coordinate('x')
        y = self.chart.coordinate('y')
        basis = [[x, self.chart.field.zero], [self.chart.field.zero, y]]
        self.assertEqual(constant_combination(basis, [2 * x, -y]), [QQ(2), QQ(-1)])
        self.assertIsNone(constant_combination(basis, [x * y, self.chart.field.zero]))


class TestProperties(unittest.TestCase):
    '''
    Randomized checks with a fixed seed.

    It is tested
        - if 200 random polynomials in four variables of degree up to 4 satisfy the ring axioms and Leibniz
        - if the Lie bracket of random polynomial fields is antisymmetric and satisfies Jacobi
    '''
    def __init__(self,*args,**kwargs):
        super(TestProperties, self).__init__(*args,**kwargs)
        self.names = ('x', 'y', 'z', 'w')
        self.chart = Chart('R', self.names)
        self.rng = np.random.default_rng(0)

    def random_polynomial(self, max_degree=4, terms=4):
        gens = self.chart.field.gens
        value = self.chart.field.zero
        for _ in range(terms):
            degree = int(self.rng.integers(0, max_degree + 1))
            exponents = self.rng.multinomial(degree, [0.25] * len(gens))
            monomial = self.chart.field.one
            for gen, e in zip(gens, exponents):
                monomial *= gen**int(e)
            value += int(self.rng.integers(-5, 6)) * monomial
        return value

    def random_field(self):
        return VectorField(self.chart, dict((name, self.random_polynomial(2, 2)) for name in self.names))

    def test_ring_axioms(self):
        for _ in range(200):
            f, g, h = self.random_polynomial(), self.random_polynomial(), self.random_polynomial()
            self.assertEqual((f + g) + h, f + (g + h))
            self.assertEqual((f * g) * h, f * (g * h))
            self.assertEqual(f * (g + h), f * g + f * h)
            self.assertEqual(f * g, g * f)

    def test_leibniz(self):
        for _ in range(200):
            f, g = self.random_polynomial(), self.random_polynomial()
            name = self.names[int(self.rng.integers(0, len(self.names)))]
            self.assertEqual(differentiate(f * g, name), differentiate(f, name) * g + f * differentiate(g, name))

    def test_bracket_identities(self):
        for _ in range(10):
            a, b, c = self.random_field(), self.random_field(), self.random_field()
            self.assertEqual(lie_bracket(a, b), -lie_bracket(b, a))
            jacobi = (lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a))
                      + lie_bracket(c, lie_bracket(a, b)))
            self.assertTrue(jacobi.is_zero())


class TestParser(unittest.TestCase):
    '''
    Test the expression grammar of model files.

    It is tested
        - if sums, products, powers and rational literals parse to the right rational function
        - if aliases (Greek letters, classical jet names) are accepted
        - if syntax errors report the 0-based position
        - if division by an identically zero expression raises DivisionByZeroError
    '''
    def __init__(self,*args,**kwargs):
        super(TestParser, self).__init__(*args,**kwargs)
        self.chart = Chart('A', ('x', 'y', 'lambda'))

    def test_values(self):
        field = self.chart.field
        x, y, lam = field.gens
        self.assertEqual(parse_expression('lambda^3/3 + 2*x*y', field), lam**3 / 3 + 2 * x * y)
        self.assertEqual(parse_expression('-(x - 1/2)', field), -x + QQ(1, 2))
        self.assertEqual(self.chart.parse('λ^2'), lam**2)
        self.assertEqual(parse_rational('-3/4'), QQ(-3, 4))

    def test_errors(self):
        field = self.chart.field
        with self.assertRaises(ParseError) as context:
            parse_expression('x + * y', field)
        self.assertEqual(context.exception.position, 4)
        with self.assertRaises(ParseError) as context:
            parse_expression('x + w', field)
        self.assertEqual(context.exception.position, 4)
        self.assertRaises(ParseError, parse_expression, '1/0', field)
        self.assertRaises(ParseError, parse_expression, '(x + y', field)
        self.assertRaises(DivisionByZeroError, parse_expression, 'x/(y - y)', field)
        self.assertRaises(ParseError, parse_rational, '2/0')
        self.assertRaises(UnknownVariableError, self.chart.coordinate, 'z')


class TestCheckups(unittest.TestCase):
    '''
    Test that missing configuration entries are completed from the defaults with one warning each.
    '''
    def test_checkups(self):
        with warnings.catch_warnings(record=True) as caught:
            config = checkups(DEFAULTS, {'seed': 3, 'solver': {'degree': 2}})
        self.assertEqual(config['seed'], 3)
        self.assertEqual(config['solver'], {'degree': 2, 'max_rows': 20000, 'max_cols': 4000})
        self.assertEqual(config['max_steps'], 12)
        # max_steps, max_degree, point_redraws, verbose, output_dir, solver.max_rows, solver.max_cols
        self.assertEqual(len(caught), 7)

    def test_complete_config(self):
        with warnings.catch_warnings(record=True) as caught:
            config = checkups(DEFAULTS, copy.deepcopy(DEFAULTS))
        self.assertEqual(config, DEFAULTS)
        self.assertEqual(len(caught), 0)


class TestGeometry(unittest.TestCase):
    '''
    Test the vector field calculus.

    It is tested
        - if the Lie bracket follows v(w^c) - w(v^c)
        - if weak and strong flags have the right growth vectors (integrable, Hilbert-Cartan, contact)
        - if Cauchy characteristics are found
        - if prolongation followed by de-prolongation returns the contact distribution
        - if de-prolongation of the Goursat distribution gives the contact distribution
    '''
    def __init__(self,*args,**kwargs):
        super(TestGeometry, self).__init__(*args,**kwargs)
        self.plane = Chart('P', ('x', 'y', 'z'))
        self.contact_chart = Chart('J1', ('x', 'u', 'p'))
        self.contact = Distribution(self.contact_chart, [VectorField(self.contact_chart, {'x': 1, 'u': 'p'}),
                                                         VectorField.coordinate(self.contact_chart, 'p')])
        self.goursat_chart = Chart('J2', ('x', 'u', 'p', 'r'))
        self.goursat = Distribution(self.goursat_chart,
                                    [VectorField(self.goursat_chart, {'x': 1, 'u': 'p', 'p': 'r'}),
                                     VectorField.coordinate(self.goursat_chart, 'r')])

    def test_bracket(self):
        dx = VectorField.coordinate(self.plane, 'x')
        field = VectorField(self.plane, {'y': 'x'})
        self.assertEqual(lie_bracket(dx, field), VectorField.coordinate(self.plane, 'y'))
        self.assertEqual(lie_bracket(field, dx), -VectorField.coordinate(self.plane, 'y'))
        self.assertTrue(lie_bracket(field, field).is_zero())

    def test_flags(self):
        integrable = Distribution(self.plane, [VectorField.coordinate(self.plane, 'x'),
                                               VectorField.coordinate(self.plane, 'y')])
        flag = weak_flag(integrable)
        self.assertEqual(flag.growth_vector, [2])
        self.assertTrue(flag.stabilized)
        self.assertEqual(weak_flag(hilbert_cartan()).growth_vector, [2, 1, 2])
        self.assertEqual(strong_flag(hilbert_cartan()).growth_vector, [2, 1, 2])
        self.assertEqual(weak_flag(self.contact).growth_vector, [2, 1])
        self.assertEqual(weak_flag(self.goursat).growth_vector, [2, 1, 1])

    def test_cauchy(self):
        self.assertEqual(cauchy_characteristics(self.contact).rank, 0)
        square = self.goursat + Distribution(self.goursat_chart, [VectorField.coordinate(self.goursat_chart, 'p')])
        cauchy = cauchy_characteristics(square)
        self.assertEqual(cauchy.rank, 1)
        self.assertTrue(cauchy.contains(VectorField.coordinate(self.goursat_chart, 'r')))

    def test_prolong_deprolong(self):
        chart, prolonged = prolong_rank2(self.contact)
        self.assertEqual(chart.coordinates, ('x', 'u', 'p', 't'))
        self.assertEqual(weak_flag(prolonged).growth_vector, [2, 1, 1])
        chart, reduced = deprolong(self.goursat)
        self.assertEqual(chart.coordinates, ('x', 'u', 'p'))
        self.assertTrue(spans_equal(reduced, self.contact))
        _, prolonged = prolong_rank2(self.contact)
        chart, reduced = deprolong(prolonged)
        self.assertEqual(chart.coordinates, self.contact_chart.coordinates)
        self.assertTrue(spans_equal(reduced, self.contact))

    def test_symbol(self):
        algebra = symbol_algebra(hilbert_cartan(), rng=np.random.default_rng(0))
        self.assertEqual(algebra.layer_dims(), [2, 1, 2])
        self.assertTrue(jacobi_check(algebra))


class TestGraded(unittest.TestCase):
    '''
    Test graded Lie algebras and the Tanaka prolongation.

    It is tested
        - if n_k has layer dimensions (2, 1, 2, ..., k-1) and satisfies Jacobi
        - if the Tanaka prolongation of n_3 is 14-dimensional and the one of n_4 stops at degree 1
        - if g_0 of n_k is 4-dimensional for k = 3, ..., 6 and g_1 vanishes for k >= 4
        - if the symbols of the reductions of E_3 and E_4 are recognized as n_4 and n_5
        - if a bracket table violating Jacobi is caught
        - if brackets leaving their layer are refused
        - if the derivation formulas on n_k hold
    '''
    def __init__(self,*args,**kwargs):
        super(TestGraded, self).__init__(*args,**kwargs)
        self.n3 = build_nk(3)
        self.n4 = build_nk(4)

    def test_nk(self):
        self.assertEqual(self.n3.layer_dims(), [2, 1, 2])
        self.assertEqual(self.n4.layer_dims(), [2, 1, 2, 3])
        self.assertTrue(jacobi_check(self.n4))
        self.assertTrue(self.n4.is_fundamental())
        self.assertTrue(verify_nk(self.n4, {'e10': 1}, {'e01': 1}))
        self.assertRaises(StructureError, build_nk, 1)

    def test_tanaka(self):
        result = tanaka_prolong(self.n3, 4)
        self.assertEqual(result.dims, {0: 4, 1: 2, 2: 1, 3: 2, 4: 0})
        self.assertEqual(result.dimension, 14)
        result = tanaka_prolong(self.n4, 1)
        self.assertEqual(result.dims, {0: 4, 1: 0})
        self.assertEqual(result.stabilized_at, 1)
        self.assertEqual(result.dimension, 12)
        self.assertIn('g0: 4, g1: 0', result.to_text())

    def test_tanaka_nk_family(self):
        self.assertEqual(tanaka_prolong(self.n3, 1).dims[0], 4)
        for k in (4, 5, 6):
            self.assertEqual(tanaka_prolong(build_nk(k), 1).dims, {0: 4, 1: 0}, k)

    def test_symbol_of_reduction(self):
        for k, dims in ((3, [2, 1, 2, 3]), (4, [2, 1, 2, 3, 4])):
            distribution = Reduction(ek(k)).distribution
            symbol = symbol_algebra(distribution, rng=np.random.default_rng(0))
            self.assertEqual(symbol.layer_dims(), dims)
            first = symbol.layer(-1)
            self.assertTrue(verify_nk(symbol, {first[0]: 1}, {first[1]: 1}), k)
            self.assertTrue(verify_nk(symbol, {first[1]: 1}, {first[0]: 1}), k)

    def test_jacobi_failure(self):
        algebra = GradedLieAlgebra({0: ['a', 'b', 'c']},
                                   {('a', 'b'): {'a': 1}, ('b', 'c'): {'b': 1}, ('a', 'c'): {'c': 1}})
        verdict = jacobi_check(algebra)
        self.assertFalse(verdict)
        self.assertEqual(verdict.witness['triple'], ['a', 'b', 'c'])

    def test_structure_errors(self):
        self.assertRaises(StructureError, GradedLieAlgebra, {-1: ['a', 'b'], -2: ['c']}, {('a', 'b'): {'a': 1}})
        self.assertRaises(StructureError, GradedLieAlgebra, {-1: ['a', 'a']})
        self.assertRaises(StructureError, tanaka_prolong, GradedLieAlgebra({-1: ['a'], -2: ['c']}), 2)

    def test_round_trip_and_formulas(self):
        self.assertEqual(GradedLieAlgebra.from_dict(self.n3.to_dict()), self.n3)
        self.assertTrue(verify_appendix_formula(3))
        verdict = verify_appendix_formula(4)
        self.assertTrue(verdict)
        self.assertEqual(verdict.details['residual_dimension'], 0)


class TestJets(unittest.TestCase):
    '''
    Test jet charts, equation charts and external symmetries.

    It is tested
        - if multi-indices and jet names are built in the documented order
        - if the chart of E_3 holds the intrinsic jets and the parameter
        - if the contact field of u is the scaling field
        - if the listed generating functions of E_3 and F_3 are external symmetries and a quadratic one is not
    '''
    def __init__(self,*args,**kwargs):
        super(TestJets, self).__init__(*args,**kwargs)
        self.e3 = ek(3)

    def test_names(self):
        self.assertEqual(multi_indices(2, 2), [(2, 0), (1, 1), (0, 2)])
        self.assertEqual(jet_name('u', (2, 1)), 'u_21')
        self.assertEqual(jet_name('u', (0, 0)), 'u')
        self.assertEqual(jet_name('u', (10, 1)), 'u_10_1')

    def test_chart(self):
        self.assertEqual(self.e3.coordinates,
                         ('x', 'y', 'u', 'u_10', 'u_01', 'u_20', 'u_11', 'u_02', 'lambda'))
        self.assertEqual(self.e3.cartan().rank, 3)
        self.assertEqual(self.e3.coordinate('p'), self.e3.coordinate('u_10'))

    def test_contact_field(self):
        field = contact_field('u')
        chart = jet_space(('x', 'y'), 1)
        self.assertEqual(field, VectorField(chart, {'u': 'u', 'u_10': 'u_10', 'u_01': 'u_01'}))
        self.assertEqual(contact_bracket('x', 'u_10'), 1)

    def test_external_symmetries(self):
        for name, f in ek_generating_functions(3):
            self.assertTrue(is_external_symmetry(self.e3, f), name)
        verdict = is_external_symmetry(self.e3, 'u_10*u_01')
        self.assertFalse(verdict)
        self.assertIn('residual', verdict.witness)
        f32 = fk(3, 2)
        functions = fk_generating_functions(3, 2)
        self.assertEqual(len(functions), 10)
        for name, f in functions:
            self.assertTrue(is_external_symmetry(f32, f), name)


class TestFamily(unittest.TestCase):
    '''
    Test the catalog of model systems.

    It is tested
        - if unknown names and out-of-range parameters raise CatalogError
        - if parameters are listed and missing ones are reported
        - if the builders return charts of the expected shape
    '''
    def test_registry(self):
        with self.assertRaises(CatalogError) as context:
            Family('nope')
        self.assertIn('unknown catalog model', str(context.exception))
        self.assertEqual(Family('rkm').get_params(), ['k', 'm'])
        self.assertEqual(Family('monge-y').get_params(), ['k', 'm'])
        self.assertRaises(CatalogError, Family('ek').build)
        self.assertEqual(len(list_models()), 16)
        self.assertEqual([name for name, _, _ in list_models()], sorted(Family.families))

    def test_ranges(self):
        self.assertRaises(CatalogError, rkm, 3, 3)
        self.assertRaises(CatalogError, ek, 1)
        self.assertRaises(CatalogError, monge_kl, '1,1')
        self.assertRaises(CatalogError, monge_kl, '0')
        self.assertRaises(CatalogError, goursat_pair, 3)

    def test_builders(self):
        self.assertEqual(catalog('ek', k=3).name, 'E_3')
        r = catalog('rkm', k=3, m=2)
        self.assertEqual(r.parameters, ('lambda', 'zeta1', 'zeta2'))
        y = monge_y(3)
        self.assertEqual(y.dependents, ('w0', 'w1', 'w2'))
        self.assertEqual(y.cartan().rank, 2)
        kl = monge_kl([0, 1, 2])
        self.assertEqual(kl.name, 'kl(0,1,2)')
        self.assertEqual(catalog('s8-order2', m_list='0,1').n, 2)


class TestSymmetries(unittest.TestCase):
    '''
    Test the symmetry basis of the Monge system Y_3.

    It is tested
        - if every listed field is a symmetry of the Cartan distribution
        - if the commutator table closes, satisfies Jacobi and contains the displayed relations
        - if grading and bi-grading hold, and a perturbed weight is caught with a witness naming T
    '''
    def __init__(self,*args,**kwargs):
        super(TestSymmetries, self).__init__(*args,**kwargs)
        self.k = 3
        self.chart = monge_y(self.k)
        self.distribution = self.chart.cartan()
        self.fields = monge_symmetries(self.chart, self.k)
        self.table = commutator_table(self.fields)

    def test_basis(self):
        self.assertEqual(len(self.fields), self.k * (self.k + 1) // 2 + 6)
        self.assertEqual([f.name for f in self.fields], monge_field_names(self.k))
        for field in self.fields:
            self.assertTrue(verify_symmetry_of_distribution(self.distribution, field), field.name)

    def test_non_symmetry(self):
        verdict = verify_symmetry_of_distribution(self.distribution, VectorField.coordinate(self.chart, 'lambda'))
        self.assertFalse(verdict)
        self.assertIn('residual', verdict.witness)

    def test_table(self):
        self.assertTrue(self.table.closed)
        self.assertTrue(table_jacobi(self.table))
        for (a, b), value in displayed_brackets(self.k).items():
            self.assertEqual(self.table.bracket(a, b), value, '[%s, %s]' % (a, b))
        self.assertEqual(self.table.bracket('X', 'S1'), {'X': QQ(1)})

    def test_gradings(self):
        weights = monge_weights(self.k)
        self.assertTrue(grading_check(self.table, weights))
        self.assertTrue(grading_check(self.table, monge_biweights(self.k), total=weights, name='bi-grading'))
        perturbed = dict(weights)
        perturbed['T'] = 1
        verdict = grading_check(self.table, perturbed)
        self.assertFalse(verdict)
        self.assertIn('T', verdict.witness['bracket'])


class TestAnalysis(unittest.TestCase):
    '''
    Test reductions, the non-degeneracy conditions and the polynomial symmetry solver.

    It is tested
        - if E_3 reduces to a rank 2 distribution on the slice y = 0 with growth (2,1,2,3)
        - if (N) passes for E_3 with s = 3 and fails for the Goursat pair
        - if the full suite passes for E_3 and stops at stage 'orders' for 2E2+E1
        - if the solver finds the symmetries of the contact distribution and of a line, degree 0 inside degree 1
        - if pushforwards to the reduction of E_3 respect contact brackets
        - if a weak flag cut at max_steps leaves the first integral count unknown
        - if the three-variable systems reduce to the expected dimensions, ranks and first integrals
    '''
    def __init__(self,*args,**kwargs):
        super(TestAnalysis, self).__init__(*args,**kwargs)
        self.e3 = ek(3)
        self.reduction = Reduction(self.e3)

    def test_reduction(self):
        self.assertEqual(self.reduction.Pi.rank, 1)
        self.assertEqual(self.reduction.chart.coordinates,
                         ('x', 'u', 'u_10', 'u_01', 'u_20', 'u_11', 'u_02', 'lambda'))
        self.assertEqual(self.reduction.distribution.rank, 2)
        self.assertEqual(weak_flag(self.reduction.distribution).growth_vector, [2, 1, 2, 3])
        self.assertEqual(strong_flag(self.reduction.distribution).growth_vector, [2, 1, 2, 3])

    def test_check_N(self):
        verdict, growth, s = check_N(self.reduction.distribution)
        self.assertTrue(verdict)
        self.assertEqual(s, 3)
        verdict, growth, s = check_N(Reduction(goursat_pair(1)).distribution)
        self.assertFalse(verdict)
        self.assertEqual(growth, [2, 1, 1, 1])
        self.assertIsNone(s)
        line = Chart('L', ('x', 'y'))
        self.assertRaises(StructureError, check_N, Distribution(line, [VectorField.coordinate(line, 'x')]))

    def test_suite(self):
        report = nondegeneracy_suite(self.e3)
        self.assertIsNone(report.stage)
        self.assertEqual(sorted(report.verdicts), ["(G')", '(N)', '(R)', '(R+)'])
        self.assertTrue(report.passed)
        report = nondegeneracy_suite(s8_2e2e1())
        self.assertEqual(report.stage, 'orders')
        self.assertFalse(report.passed)

    def test_solver(self):
        chart = Chart('J1', ('x', 'u', 'p'))
        contact = Distribution(chart, [VectorField(chart, {'x': 1, 'u': 'p'}), VectorField.coordinate(chart, 'p')])
        self.assertEqual(len(solve_polynomial_symmetries(contact, 0)), 2)
        fields = solve_polynomial_symmetries(contact, 1)
        self.assertEqual(len(fields), 5)
        for field in fields:
            self.assertTrue(verify_symmetry_of_distribution(contact, field))
        line = Chart('L', ('x',))
        self.assertEqual(len(solve_polynomial_symmetries(Distribution(line, [VectorField.coordinate(line, 'x')]), 2)), 3)
        self.assertRaises(StructureError, solve_polynomial_symmetries, contact, 1, {'x': 1})

    def test_solver_nesting(self):
        chart = Chart('J1', ('x', 'u', 'p'))
        contact = Distribution(chart, [VectorField(chart, {'x': 1, 'u': 'p'}), VectorField.coordinate(chart, 'p')])
        low = [f.as_row() for f in solve_polynomial_symmetries(contact, 0)]
        high = [f.as_row() for f in solve_polynomial_symmetries(contact, 1)]
        self.assertEqual(constant_rank(high + low), constant_rank(high))

    def test_pushforward_brackets(self):
        pairs = [('x', 'u_10'), ('y', 'u_01'), ('u_10', '4*u - x*u_10'), ('u_01', 'u + y*u_01'),
                 ('y*u_10 + 1/6*x^3', '2*y*u - x*y*u_10 - y^2*u_01 - 1/24*x^4')]

        def pushed(f):
            restricted, residual = restrict_to_equation(self.e3, prolong_contact_field(f, self.e3.order, self.e3.base))
            self.assertIsNotNone(restricted, residual)
            return self.reduction.push(restricted)

        for f, g in pairs:
            bracket = contact_bracket(f, g, self.e3.base)
            self.assertEqual(lie_bracket(pushed(f), pushed(g)), pushed(bracket), '[%s, %s]' % (f, g))

    def test_lbt_cut_flag(self):
        report = lbt_report(self.e3, ['1', 'x'], reduction=self.reduction, max_steps=1)
        self.assertIsNone(report.first_integrals)
        self.assertEqual(report.surjectivity_evidence, 'inconclusive')
        self.assertIn('first integrals of the reduction: unknown', report.to_text())
        report = lbt_report(self.e3, ['1', 'x'], reduction=self.reduction)
        self.assertEqual(report.first_integrals, 0)

    def test_three_variable_systems(self):
        for name, dim, first_integrals in (('s8-2nd-order', 6, 1), ('s8-3e3-3e2', 9, 1)):
            distribution = Reduction(catalog(name)).distribution
            flag = weak_flag(distribution)
            self.assertEqual(distribution.chart.dim, dim, name)
            self.assertEqual(distribution.rank, 2, name)
            self.assertTrue(flag.stabilized, name)
            self.assertEqual(distribution.chart.dim - flag.ranks[-1], first_integrals, name)
        distribution = Reduction(catalog('s8-order3', m_list='0,1,4')).distribution
        flag = weak_flag(distribution)
        self.assertEqual(flag.ranks[-1], distribution.chart.dim)
        bound = tanaka_upper_bound(distribution, rng=np.random.default_rng(0))
        self.assertIsNotNone(bound)
        self.assertGreaterEqual(bound, 15)


class TestPrepareModel(unittest.TestCase):
    '''
    Test model documents and report validation.

    It is tested
        - if distribution and equation documents are turned into the right objects
        - if invalid JSON raises ParseError
        - if validate_report accepts a genuine flags report and rejects a tampered one
    '''
    def __init__(self,*args,**kwargs):
        super(TestPrepareModel, self).__init__(*args,**kwargs)
        self.hilbert_cartan = load_model(os.path.join(MODELS, 'hilbert_cartan.json'))

    def test_documents(self):
        self.assertEqual(self.hilbert_cartan.kind, 'distribution')
        self.assertEqual(weak_flag(self.hilbert_cartan.model).growth_vector, [2, 1, 2])
        e3 = load_model(os.path.join(MODELS, 'e3.json'))
        self.assertEqual(e3.kind, 'equation')
        self.assertEqual(e3.model.coordinates, ek(3).coordinates)
        kl = load_model(os.path.join(MODELS, 'monge_kl.json')).model
        self.assertEqual(kl.coordinates, monge_kl([0, 1, 2]).coordinates)
        mixed = PrepareModel({'base': ['x'], 'dependents': ['w0', 'w1'], 'orders': [2, 1],
                              'parameters': ['lambda'], 'expressions': {'w0_2': 'lambda', 'w1_1': 'lambda^2/2'}})
        self.assertEqual(mixed.model.coordinates, ('x', 'w0', 'w0_1', 'w1', 'lambda'))
        self.assertRaises(StructureError, PrepareModel, {'generators': []})

    def test_parse_error(self):
        handle, path = tempfile.mkstemp(suffix='.json')
        with os.fdopen(handle, 'w') as f:
            f.write('{"chart": ["x", }')
        try:
            self.assertRaises(ParseError, load_json, path)
        finally:
            os.remove(path)

    def test_validate(self):
        report = flag_report(self.hilbert_cartan.model).to_dict()
        data = json.loads(json.dumps(report))
        self.assertTrue(validate_report(data))
        data['weak']['growth_vector'] = [2, 1, 1]
        self.assertFalse(validate_report(data))
        self.assertTrue(validate_report(json.loads(json.dumps(build_nk(3).to_dict()))))


class TestLieClass(unittest.TestCase):
    '''
    Test the session object.

    It is tested
        - if the configuration is completed and models are loaded from the catalog, files and objects
        - if flags, Cauchy characteristics and the symmetry checks of E_3 give the expected results
        - if a model source is required where one is needed
    '''
    def __init__(self,*args,**kwargs):
        super(TestLieClass, self).__init__(*args,**kwargs)
        self.session = LieClass(config=DEFAULTS, model='ek', params={'k': 3})

    def test_sources(self):
        self.assertEqual(self.session.name, 'ek(k=3)')
        self.assertTrue(self.session.is_equation)
        from_file = LieClass(config=DEFAULTS, model_file=os.path.join(MODELS, 'hilbert_cartan.json'))
        self.assertFalse(from_file.is_equation)
        self.assertEqual(from_file.distribution.rank, 2)
        self.assertRaises(StructureError, LieClass(config=DEFAULTS).flags)
        self.assertRaises(CatalogError, LieClass, config=DEFAULTS, model='nope')

    def test_analyses(self):
        report = self.session.flags()
        self.assertEqual(report.weak.growth_vector, [2, 1, 2, 3])
        self.assertEqual(self.session.cauchy().entries['rank'], 1)
        symmetries = self.session.check_symmetry()
        self.assertEqual(symmetries.dimension, 12)
        self.assertTrue(symmetries.passed)
        result = self.session.tanaka()
        self.assertEqual(result.dimension, 12)

    def test_listed_fields(self):
        fields, weights, biweights = self.session.listed_fields()
        self.assertEqual(len(fields), 12)
        for field in fields:
            self.assertTrue(verify_symmetry_of_distribution(self.session.distribution, field), field.name)
        grading = self.session.grading()
        self.assertTrue(grading.passed)


class TestCli(unittest.TestCase):
    '''
    Test the command line: exit codes, text and JSON output.
    '''
    def call(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        code = run(list(argv), stdout, stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def test_tanaka(self):
        code, out, _ = self.call('tanaka', '--builtin', 'nk', '--k', '4', '--max-degree', '1')
        self.assertEqual(code, 0)
        self.assertIn('g0: 4, g1: 0', out)
        code, out, _ = self.call('tanaka', '--file', os.path.join(MODELS, 'n3.json'), '--json')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['dimension'], 14)

    def test_flags(self):
        code, out, _ = self.call('flags', '--model', 'ek', '--k', '3', '--strong', '--json')
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data['strong']['growth_vector'], [2, 1, 2, 3])
        self.assertNotIn('weak', data)

    def test_errors(self):
        code, _, err = self.call('flags', '--model', 'unknown')
        self.assertEqual(code, 2)
        self.assertIn('unknown catalog model', err)
        code, _, err = self.call('flags', '--model', 'ek')
        self.assertEqual(code, 2)
        self.assertIn('--k', err)
        code, _, _ = self.call('flags')
        self.assertEqual(code, 2)

    def test_failed_checks(self):
        code, out, _ = self.call('nondeg', '--model', 'goursat-pair')
        self.assertEqual(code, 1)
        self.assertIn('(N): fail', out)
        code, _, _ = self.call('check-symmetry', '--file', os.path.join(MODELS, 'goursat_contact.json'),
                               '--fields', os.path.join(MODELS, 'contact_fields.json'))
        self.assertEqual(code, 1)

    def test_catalog(self):
        code, out, _ = self.call('catalog', '--json')
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)['models']), 16)

    def test_output_file(self):
        path = os.path.join(tempfile.mkdtemp(), 'reduction.json')
        code, out, _ = self.call('reduce', '--model', 'ek', '--k', '3', '--json', '--output', path)
        self.assertEqual(code, 0)
        with io.open(path, encoding='utf-8') as f:
            self.assertEqual(json.load(f), json.loads(out))


if __name__ == '__main__':
    unittest.main()

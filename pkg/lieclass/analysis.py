'''
Composite checks on model systems: reduction by Cauchy characteristics, the
non-degeneracy conditions, symmetry verification, commutator tables and gradings,
bounded-degree polynomial symmetry solving, Tanaka bounds and the restriction
map from external to internal symmetries.
'''
import numpy as np
from sympy import QQ

from .geometry import (VectorField, Distribution, Quotient, lie_bracket, spans_equal, distribution_from_forms,
                       weak_flag, strong_flag, bracket_stable_part, cauchy_characteristics, ad_closure,
                       symbol_algebra)
from .graded import GradedLieAlgebra, jacobi_check, tanaka_prolong, verify_nk
from .jets import prolong_contact_field, restrict_to_equation, prolong_point_field
from .utils.exact import coefficient_rows, constant_combination, constant_rank, ExactMatrix
from .utils.errors import (GenericityError, DivisionByZeroError, BudgetExceededError, StabilizationError,
                           StructureError, ConsistencyError, ChartMismatchError)
from .utils.reports import (Verdict, CommutatorTable, NondegeneracyReport, SymmetryReport, LBTReport,
                            FlagReport)


def minimal_order(equation):
    '''
    Smallest order among the jets given by expressions (the equations of the system).
    '''
    if not equation.expressions:
        return equation.order
    return min(sum(sigma) for _, sigma in equation.expressions)


class Reduction(object):
    '''
    The quotient (M, Δ) of an equation by the Cauchy characteristics Π of its Cartan distribution.

    Parameters
    ----------
        equation: EquationChart
        transversal: list of (coordinate, rational), optional
            The slice; defaults to x^2 = ... = x^n = 0, then the values 1, 2, 3 when a denominator vanishes.
        name: string
            Name of the quotient chart.

    Attributes
    -------
        cartan: Distribution
            C_E on the equation chart.
        Pi: Distribution
            Cauchy characteristics of C_E, rank n - 1.
        quotient: Quotient or None
            None for systems with one independent variable, where M = E.
        chart: Chart
        distribution: Distribution
            Δ on the chart.
    '''
    def __init__(self, equation, transversal=None, name='M'):
        self.equation = equation
        self.cartan = equation.cartan()
        n = equation.n
        if n == 1:
            self.Pi = Distribution(equation, [], name='Π')
            self.quotient = None
            self.transversal = []
            self.chart = equation
            self.distribution = self.cartan.independent()
            return
        self.Pi = cauchy_characteristics(self.cartan)
        self.Pi.name = 'Π'
        if self.Pi.rank != n - 1:
            raise GenericityError('Cauchy characteristics of %s have rank %d, expected %d'
                                  % (self.cartan.name, self.Pi.rank, n - 1), stage='cauchy')
        if transversal is not None:
            candidates = [list(transversal)]
        else:
            candidates = [[(x, value) for x in equation.base[1:]] for value in (0, 1, 2, 3)]
        error = None
        for slice_ in candidates:
            try:
                quotient = Quotient(self.Pi, slice_, name)
                distribution = quotient.reduce(self.cartan, verify=False)
            except (DivisionByZeroError, GenericityError) as e:
                error = e
                continue
            self.quotient = quotient
            self.transversal = quotient.transversal
            self.chart = quotient.chart
            self.distribution = distribution
            self.distribution.name = 'Δ'
            return
        raise GenericityError('no transversal slice found for %s: %s' % (equation.name, error), stage='reduce')

    def push(self, field):
        '''
        Pushforward of a field on the equation chart; the same slice is used for every field.
        '''
        if self.quotient is None:
            if field.chart != self.chart:
                raise ChartMismatchError('field does not live on the equation chart')
            return field
        return self.quotient.push(field)

    def to_dict(self):
        return {'equation': self.equation.name, 'chart': list(self.chart.coordinates),
                'Pi': self.Pi.to_dict(), 'slice': [[c, str(v)] for c, v in self.transversal],
                'distribution': self.distribution.to_dict()}


def reduce_equation(equation, transversal=None, name='M'):
    return Reduction(equation, transversal, name)


def flag_report(distribution, max_steps=12, model=None):
    return FlagReport(model or distribution.name, weak_flag(distribution, max_steps),
                      strong_flag(distribution, max_steps), distribution.chart)


def check_N(distribution, max_steps=12):
    """
    Non-linearity test: the rank 2 distribution is not Goursat.

    Returns
    -------
        verdict : Verdict
        growth : list of ints
            Strong growth vector.
        s : int or None
            First step (counted from 1, at least 3) where the strong flag grows by 2.
    """
    if distribution.rank != 2:
        raise StructureError('(N) needs a rank-2 distribution, got rank %d' % distribution.rank)
    flag = strong_flag(distribution, max_steps)
    growth = flag.growth_vector
    s = None
    for i in range(3, len(growth) + 1):
        if growth[i - 1] >= 2:
            s = i
            break
    if s is None and not flag.stabilized:
        raise StabilizationError('strong flag did not stabilize', flag.ranks)
    witness = None if s is not None else {'growth_vector': growth}
    return Verdict('(N)', s is not None, witness, {'strong_growth': growth}), growth, s


def _span(chart, *groups):
    return Distribution(chart, [field for group in groups for field in group]).independent()


def _brackets(first, second):
    return [lie_bracket(a, b) for a in first.generators for b in second.generators]


def nondegeneracy_suite(equation, max_steps=12, verbose=False):
    """
    Checks (N), (R), (R+) and (G) or (G') on an equation of class one.

    Parameters
    ----------
        equation : EquationChart
        max_steps : int
            Flag and closure length limit.
        verbose : boolean

    Returns
    -------
        report : NondegeneracyReport
            A failed genericity assumption stops the suite; its stage is recorded in the report.
    """
    report = NondegeneracyReport(equation.name)
    lowest = minimal_order(equation)
    if lowest <= 1:
        report.stage = 'orders'
        report.message = 'the system contains equations of order %d; all orders must exceed 1' % lowest
        return report
    k = equation.order
    n = equation.n
    try:
        if verbose:
            print('computing Cauchy characteristics of %s ...' % equation.name)
        reduction = reduce_equation(equation)
        verdict, growth, s = check_N(reduction.distribution, max_steps)
        report.verdicts['(N)'] = verdict
        report.strong_growth = growth
        report.s = s
        if s is None:
            return report
        if verbose:
            print('strong growth %s, s = %d' % (tuple(growth), s))
        chart = equation
        Pi = reduction.Pi
        flag = strong_flag(reduction.cartan, max_steps)

        def hat(i):
            return Pi if i == 0 else flag.step(i)

        box = cauchy_characteristics(hat(s)).intersection(hat(s - 3))
        upsilon = hat(s - 2).vertical_part(equation.base)
        ranks = {'box_{s-3}': (box.rank, n + s - 4), 'upsilon_{s-2}': (upsilon.rank, s - 2),
                 'upsilon_{s-2}+Pi': ((upsilon + Pi).rank, n + s - 3),
                 'nabla_{s-2}': (hat(s - 2).rank, n + s - 2)}
        report.ranks = dict((name, found) for name, (found, _) in ranks.items())
        for name, (found, expected) in sorted(ranks.items()):
            if found != expected:
                raise GenericityError('rank of %s is %d, expected %d' % (name, found, expected), stage='ranks')

        if verbose:
            print('checking rotation conditions ...')
        rotated = _span(chart, Pi.generators, upsilon.generators, _brackets(Pi, upsilon))
        target = hat(s - 2)
        passed = spans_equal(rotated, target)
        report.verdicts['(R)'] = Verdict('(R)', passed, None if passed else {'rank': rotated.rank,
                                                                             'expected': target.rank})
        previous = Pi
        witness = None if passed else {'step': 0}
        for i in range(1, n - 1):
            if witness is not None:
                break
            span = previous + upsilon
            current = bracket_stable_part(previous, upsilon.generators, span)
            report.ranks['Pi_%d' % i] = current.rank
            if current.rank != n - i - 1:
                witness = {'step': i, 'rank': current.rank, 'expected': n - i - 1}
                break
            rotated = _span(chart, current.generators, upsilon.generators, _brackets(current, upsilon))
            if not spans_equal(rotated, span):
                witness = {'step': i, 'rank': rotated.rank, 'expected': span.rank}
            previous = current
        report.verdicts['(R+)'] = Verdict('(R+)', witness is None, witness)

        if verbose:
            print('computing the ad-closure of nabla_%d ...' % (s - 1))
        closure = ad_closure(hat(s - 1), upsilon, max_steps)
        level = k - s + 2
        if level < lowest:
            target = distribution_from_forms(chart, equation.lift_forms(level), 'C_%d' % level)
            passed = spans_equal(closure, target)
            report.verdicts["(G')"] = Verdict("(G')", passed, None if passed else
                                              {'closure_rank': closure.rank, 'expected': target.rank},
                                              {'level': level})
        else:
            derived = strong_flag(closure, max_steps).step(k - s + 2)
            target = distribution_from_forms(chart, equation.lift_forms(1), 'C_1')
            passed = spans_equal(derived, target)
            report.verdicts['(G)'] = Verdict('(G)', passed, None if passed else
                                             {'derived_rank': derived.rank, 'expected': target.rank},
                                             {'steps': k - s + 1})
    except GenericityError as e:
        report.stage = e.stage or 'genericity'
        report.message = str(e)
    return report


def verify_symmetry_of_distribution(distribution, field):
    """
    theta([X, v]) = 0 for every generator v and every annihilating form theta.

    Returns
    -------
        verdict : Verdict
            Failing verdicts name the generator and the non-zero residual.
    """
    if field.chart != distribution.chart:
        raise ChartMismatchError('field and distribution live on different charts')
    name = 'symmetry %s' % (field.name or repr(field))
    forms = distribution.annihilator()
    for generator in distribution.independent().generators:
        bracket = lie_bracket(field, generator)
        for form in forms:
            residual = form(bracket)
            if residual:
                return Verdict(name, False, {'generator': repr(generator), 'residual': residual})
    return Verdict(name, True)


def point_prolongation(equation, components, name=None):
    '''
    Prolongs a point field given by its components on the base and dependent variables.
    '''
    field = prolong_point_field(equation, VectorField(equation, components))
    field.name = name
    return field


def commutator_table(fields):
    """
    Structure constants of named fields over QQ.

    Parameters
    ----------
        fields : list of VectorField
            Fields of one chart; unnamed fields are called Y1, Y2, ...

    Returns
    -------
        table : CommutatorTable
            Brackets outside the constant span are listed as escaped.
    """
    names = [f.name or 'Y%d' % (i + 1) for i, f in enumerate(fields)]
    rows = [f.as_row() for f in fields]
    constants = dict()
    escaped = []
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            bracket = lie_bracket(fields[i], fields[j])
            if bracket.is_zero():
                continue
            coefficients = constant_combination(rows, bracket.as_row())
            if coefficients is None:
                escaped.append((names[i], names[j]))
                continue
            value = dict((names[c], q) for c, q in enumerate(coefficients) if q)
            if value:
                constants[(names[i], names[j])] = value
    return CommutatorTable(names, constants, escaped)


def table_jacobi(table):
    '''
    Jacobi identity of a commutator table, checked on the ungraded algebra it defines.
    '''
    algebra = GradedLieAlgebra({0: table.names}, table.constants, 'table')
    return jacobi_check(algebra)


def _weight_sum(a, b):
    if isinstance(a, tuple):
        return tuple(x + y for x, y in zip(a, b))
    return a + b


def grading_check(table, weights, total=None, name='grading'):
    """
    w([a, b]) = w(a) + w(b) for every non-zero bracket of the table.

    Parameters
    ----------
        table : CommutatorTable
        weights : dictionary
            Basis name -> integer, or -> pair of integers for a bi-grading.
        total : dictionary, optional
            Single grading that the pairs must add up to.
    """
    weights = dict((n, tuple(w) if isinstance(w, list) else w) for n, w in weights.items())
    for label in table.names:
        if label not in weights:
            raise StructureError("no weight given for '%s'" % label)
    if total is not None:
        for label in table.names:
            if sum(weights[label]) != total[label]:
                return Verdict(name, False, {'element': label, 'expected': total[label],
                                             'found': sum(weights[label])})
    for a, b, value in table.nontrivial():
        expected = _weight_sum(weights[a], weights[b])
        for c in value:
            if weights[c] != expected:
                return Verdict(name, False, {'bracket': '[%s, %s]' % (a, b), 'expected': expected,
                                             'found': weights[c]})
    return Verdict(name, True)


def _monomials(chart, weights, limit):
    """
    Exponent vectors e with sum_c weights[c] e_c <= limit.
    """
    coordinates = chart.coordinates
    result = []

    def extend(position, prefix, used):
        if position == len(coordinates):
            result.append(tuple(prefix))
            return
        w = weights[coordinates[position]]
        power = 0
        while used + power * w <= limit:
            extend(position + 1, prefix + [power], used + power * w)
            power += 1

    if limit >= 0:
        extend(0, [], 0)
    return sorted(result, key=lambda e: (sum(e), tuple(-p for p in e)))


def solve_polynomial_symmetries(distribution, degree, weights=None, max_rows=20000, max_cols=4000, verbose=False):
    """
    All symmetries of a distribution with polynomial components up to a (weighted) degree.

    Parameters
    ----------
        distribution : Distribution
        degree : int
            Without weights, components have total degree <= degree. With positive coordinate weights,
            monomial m may appear in the d/dc component when wdeg(m) - w(c) <= degree.
        weights : dictionary, optional
            Coordinate -> positive integer.
        max_rows, max_cols : int
            Limits of the linear system.

    Returns
    -------
        fields : list of VectorField
            A basis, named Y1, Y2, ...; the ansatz condition theta([X, v]) = 0 is linear in the
            coefficients, whose QQ kernel is computed exactly.
    """
    chart = distribution.chart
    gens = chart.field.gens
    if weights is None:
        coordinate_weights = dict((c, 1) for c in chart.coordinates)
        limits = dict((c, degree) for c in chart.coordinates)
    else:
        missing = [c for c in chart.coordinates if c not in weights]
        if missing:
            raise StructureError("no weight given for coordinate '%s'" % missing[0])
        coordinate_weights = dict((c, int(weights[c])) for c in chart.coordinates)
        if any(w <= 0 for w in coordinate_weights.values()):
            raise ValueError('coordinate weights must be positive')
        limits = dict((c, degree + coordinate_weights[c]) for c in chart.coordinates)
    cache = dict()
    unknowns = []
    for c in chart.coordinates:
        limit = limits[c]
        if limit not in cache:
            cache[limit] = _monomials(chart, coordinate_weights, limit)
        unknowns.extend((c, exponents) for exponents in cache[limit])
    if len(unknowns) > max_cols:
        raise BudgetExceededError('%d unknown coefficients exceed max_cols = %d' % (len(unknowns), max_cols),
                                  (0, len(unknowns)))
    if verbose:
        print('polynomial ansatz with %d unknowns' % len(unknowns))
    forms = distribution.annihilator()
    generators = distribution.independent().generators
    identities = [(v, theta) for v in generators for theta in forms]
    # A[c] = sum_a theta_a d_c v^a for every identity
    derivatives = []
    for v, theta in identities:
        row = dict()
        for c in chart.coordinates:
            value = chart.field.zero
            for a, component in theta.components.items():
                partial = v.component(a).diff(gens[chart.index[c]])
                if partial:
                    value += component * partial
            row[c] = value
        derivatives.append(row)
    monomials = dict()
    columns = []
    for c, exponents in unknowns:
        if exponents not in monomials:
            m = chart.field.one
            for g, e in zip(gens, exponents):
                if e:
                    m *= g ** e
            monomials[exponents] = m
        m = monomials[exponents]
        column = []
        for (v, theta), row in zip(identities, derivatives):
            column.append(m * row[c] - v(m) * theta.component(c))
        columns.append(column)
    rows = coefficient_rows(columns)
    if len(rows) > max_rows:
        raise BudgetExceededError('%d equations exceed max_rows = %d' % (len(rows), max_rows),
                                  (len(rows), len(unknowns)))
    if verbose:
        print('solving a %d x %d system over QQ' % (len(rows), len(unknowns)))
    if rows:
        kernel = ExactMatrix(rows, ncols=len(unknowns), domain=QQ).kernel_basis()
    else:
        kernel = [[QQ.one if i == j else QQ.zero for i in range(len(unknowns))] for j in range(len(unknowns))]
    fields = []
    for n, vector in enumerate(kernel, start=1):
        components = dict()
        for (c, exponents), value in zip(unknowns, vector):
            if value:
                components[c] = components.get(c, chart.field.zero) + value * monomials[exponents]
        fields.append(VectorField(chart, components, name='Y%d' % n))
    return fields


def symbol_tanaka(distribution, point=None, rng=None, max_degree=4, max_depth=12, redraws=20, verbose=False):
    """
    Tanaka prolongation of the symbol of a distribution at a generic point.

    Returns
    -------
        result : TanakaResult
    """
    if point is None and rng is None:
        rng = np.random.default_rng(0)
    symbol = symbol_algebra(distribution, point, rng, max_depth, redraws)
    return tanaka_prolong(symbol, max_degree, verbose)


def tanaka_upper_bound(distribution, point=None, rng=None, max_degree=4, max_depth=12, redraws=20):
    '''
    Dimension of the Tanaka algebra of the symbol, or None when the cutoff is reached before a zero layer.
    '''
    result = symbol_tanaka(distribution, point, rng, max_degree, max_depth, redraws)
    return result.dimension if result.bounded else None


def symmetry_report(model, distribution, fields, weights=None, biweights=None, rng=None, max_degree=4,
                    max_depth=12, redraws=20):
    """
    Verifies a listed basis of symmetries and collects its structure.

    Returns
    -------
        report : SymmetryReport
            With the Jacobi check of the table, the gradings when weights are given and the Tanaka bound.
    """
    verdicts = dict()
    for i, field in enumerate(fields):
        verdicts[field.name or 'Y%d' % (i + 1)] = verify_symmetry_of_distribution(distribution, field)
    table = commutator_table(fields)
    gradings = {'jacobi': table_jacobi(table)}
    if weights is not None:
        gradings['grading'] = grading_check(table, weights, name='grading')
    if biweights is not None:
        gradings['bi-grading'] = grading_check(table, biweights, total=weights, name='bi-grading')
    bound = tanaka_upper_bound(distribution, None, rng, max_degree, max_depth, redraws)
    return SymmetryReport(model, table.names, verdicts, table, gradings, bound)


def lbt_report(equation, functions, reduction_basis=None, reduction=None, max_steps=12):
    """
    Restriction of external symmetries to internal symmetries of the reduction.

    Parameters
    ----------
        equation : EquationChart
            A system in one dependent variable u.
        functions : list of strings or (name, expression) pairs
            Generating functions of external symmetries.
        reduction_basis : list of VectorField, optional
            An independent basis of symmetries of the reduced distribution to compare the image with.
        reduction : Reduction, optional

    Returns
    -------
        report : LBTReport
            Raises StructureError when a function is not an external symmetry and ConsistencyError
            when a pushforward fails its own symmetry check.
    """
    reduction = reduction or reduce_equation(equation)
    pushforwards = []
    kernel = []
    rows = []
    for item in functions:
        name, f = item if isinstance(item, tuple) else (item, item)
        prolonged = prolong_contact_field(f, equation.order, equation.base)
        restricted, residual = restrict_to_equation(equation, prolonged)
        if restricted is None:
            raise StructureError('%s is not an external symmetry of %s (defect at %s)'
                                 % (name, equation.name, ', '.join(sorted(residual))))
        pushed = reduction.push(restricted)
        if pushed.is_zero():
            kernel.append(name)
            pushforwards.append((name, None))
            continue
        pushed.name = name
        if not verify_symmetry_of_distribution(reduction.distribution, pushed):
            raise ConsistencyError('pushforward of %s is not a symmetry of the reduction' % name)
        pushforwards.append((name, pushed))
        rows.append(pushed.as_row())
    rank = constant_rank(rows)
    flag = weak_flag(reduction.distribution, max_steps)
    first_integrals = reduction.chart.dim - flag.ranks[-1] if flag.stabilized else None
    matched = None
    if reduction_basis is not None:
        basis = [f.as_row() for f in reduction_basis]
        basis_rank = constant_rank(basis)
        union = constant_rank(rows + basis)
        passed = union == rank == basis_rank
        matched = Verdict('image spans the given basis', passed,
                          None if passed else {'image_rank': rank, 'basis_rank': basis_rank, 'union_rank': union})
    return LBTReport(equation.name, pushforwards, kernel, rank, first_integrals, matched)


def reduction_invariants(equation, rng=None, max_steps=12, max_degree=4, redraws=20):
    """
    Weak and strong growth of the reduction, layer dimensions of its symbol, the n_k test and
    the Tanaka dimensions.
    """
    reduction = reduce_equation(equation)
    distribution = reduction.distribution
    if rng is None:
        rng = np.random.default_rng(0)
    symbol = symbol_algebra(distribution, None, rng, max_steps, redraws)
    first = symbol.layer(-1)
    if len(first) == 2:
        nk = verify_nk(symbol, {first[0]: 1}, {first[1]: 1}).passed
    else:
        nk = False
    tanaka = tanaka_prolong(symbol, max_degree)
    return {'weak': weak_flag(distribution, max_steps).growth_vector,
            'strong': strong_flag(distribution, max_steps).growth_vector,
            'symbol': symbol.layer_dims(), 'n_k': nk,
            'tanaka': [n for _, n, _ in tanaka.positive_layers], 'tanaka_stabilized': tanaka.stabilized_at}


def compare_invariants(first, second, rng=None, max_steps=12, max_degree=4):
    '''
    Compares the reduction invariants of two equations; agreement is necessary for equivalence, not sufficient.
    '''
    one = reduction_invariants(first, rng, max_steps, max_degree)
    two = reduction_invariants(second, rng, max_steps, max_degree)
    differences = sorted(key for key in one if one[key] != two[key])
    witness = dict((key, [one[key], two[key]]) for key in differences) or None
    return Verdict('invariants of %s and %s agree' % (first.name, second.name), not differences, witness,
                   {'invariants': one})


def tangent_cone_pipeline(equation, m, max_steps=12):
    """
    The two-step reduction of R_k^m: first along <d/dzeta_j> after closing C_E under it, then
    along xi = D_y - lambda D_x.

    Parameters
    ----------
        equation : EquationChart
            catalog('rkm', k=k, m=m).
        m : int

    Returns
    -------
        result : dictionary
            'additions': fields added by the ad-closure; 'reduced': the intermediate distribution;
            'xi' and 'xi_cauchy': the field and its Cauchy verdict; 'plus': the final distribution
            (sliced at y = 0 even when xi is not Cauchy); 'weak_match' and 'chain_match': comparisons
            of 'plus' with the weak flag step m + 1 of <D_x, d/dlambda> and with the lambda chain
            <D_x, d/dlambda, ad_lambda D_x, ..., ad_lambda^m D_x>.
    """
    zetas = ['zeta%d' % (j + 1) for j in range(m)]
    C = equation.cartan().independent()
    P = Distribution(equation, [VectorField.coordinate(equation, z) for z in zetas], name='Z')
    closure = ad_closure(C, P, max_steps)
    additions = closure.generators[len(C.generators):]
    first = Quotient(P, [(z, 0) for z in zetas], 'M~')
    reduced = first.reduce(closure, verify=True)
    Dx = first.push(equation.total_derivative(0))
    Dy = first.push(equation.total_derivative(1))
    lam = first.chart.coordinate('lambda')
    xi = Dy - Dx.scale(lam)
    xi.name = 'ξ'
    cauchy = cauchy_characteristics(reduced)
    xi_cauchy = Verdict('ξ is a Cauchy characteristic', cauchy.contains(xi))
    second = Quotient(Distribution(first.chart, [xi]), [('y', 0)], 'M+')
    plus = second.reduce(reduced, verify=bool(xi_cauchy))
    chart = second.chart
    base_x = second.push(Dx)
    d_lambda = VectorField.coordinate(chart, 'lambda')
    base = Distribution(chart, [base_x, d_lambda], name='<D_x, ∂_λ>')
    flag = weak_flag(base, max_steps)
    weak_step = flag.step(m + 1) if (m + 1 <= len(flag) or flag.stabilized) else flag.steps[-1]
    chain = [base_x, d_lambda]
    current = base_x
    for _ in range(m):
        current = lie_bracket(d_lambda, current)
        chain.append(current)
    chain = Distribution(chart, chain, name='λ-chain')
    return {'closure': closure, 'additions': additions, 'reduced': reduced, 'xi': xi, 'xi_cauchy': xi_cauchy,
            'plus': plus, 'weak_step': weak_step, 'chain': chain,
            'weak_match': Verdict('Δ+ equals weak step %d' % (m + 1), spans_equal(plus, weak_step),
                                  details={'ranks': [plus.rank, weak_step.rank]}),
            'chain_match': Verdict('Δ+ equals the λ-chain', spans_equal(plus, chain),
                                   details={'ranks': [plus.rank, chain.rank]})}

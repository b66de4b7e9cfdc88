'''
Jet coordinates, parametrized PDE systems and contact vector fields.

Jets of a dependent variable u are named u_{sigma} after their multi-index
(u_21 = u_xxy on the base (x, y)); a system is an equation chart on which some
jets are replaced by expressions in the remaining jets and in parameters.
'''
import itertools

from sympy import QQ

from .geometry import Chart, VectorField, OneForm, Distribution, lie_bracket
from .utils.exact import ExactMatrix, substitute, format_function
from .utils.errors import StructureError, ParseError, UnknownVariableError
from .utils.reports import Verdict


CLASSICAL = {(1, 0): 'p', (0, 1): 'q', (2, 0): 'r', (1, 1): 's', (0, 2): 't',
             (3, 0): 'alpha', (2, 1): 'beta', (1, 2): 'gamma', (0, 3): 'delta'}


def multi_indices(n, order):
    '''
    Multi-indices of length n and weight order, in descending lexicographic order.
    '''
    return sorted((sigma for sigma in itertools.product(range(order + 1), repeat=n) if sum(sigma) == order),
                  reverse=True)


def graded_multi_indices(n, max_order):
    return [sigma for order in range(max_order + 1) for sigma in multi_indices(n, order)]


def unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def add_unit(sigma, i):
    return tuple(s + 1 if j == i else s for j, s in enumerate(sigma))


def jet_name(dependent, sigma):
    '''
    Coordinate name of a jet: 'u' for the zero index, 'u_21', or 'u_1_10' once an index reaches 10.
    '''
    if not any(sigma):
        return dependent
    if any(s >= 10 for s in sigma):
        return '%s_%s' % (dependent, '_'.join(str(s) for s in sigma))
    return '%s_%s' % (dependent, ''.join(str(s) for s in sigma))


def parse_multi_index(text, n):
    """
    Reads a multi-index written as '2,1' (or '21' when every entry is a single digit).
    """
    text = text.strip()
    parts = text.split(',') if ',' in text else list(text)
    if len(parts) != n or not all(part.strip().isdigit() for part in parts):
        raise ParseError('expected a multi-index with %d entries' % n, text, 0)
    return tuple(int(part) for part in parts)


class JetChart(Chart):
    '''
    A chart of jet coordinates, possibly with some jets given by expressions.

    Parameters
    ----------
        base: list of strings
            Independent variables x^1, ..., x^n.
        dependents: list of strings
            Dependent variables u^1, ..., u^m.
        orders: int or list of ints
            Jet order of each dependent (mixed jets when they differ).
        parameters: list of strings
            Extra coordinates that only enter expressions (lambda, zeta1, ...).
        expressions: dictionary
            (dependent, multi-index) -> expression string or rational function; these jets are not coordinates.
        name: string
            Chart label.

    Attributes
    -------
        jets: list of (dependent, multi-index)
            All jets up to the orders, ordered by dependent and graded multi-index.
        intrinsic: list of (dependent, multi-index)
            The jets that remain coordinates.
    '''
    def __init__(self, base, dependents='u', orders=1, parameters=(), expressions=None, name='J', aliases=None):
        self.base = tuple(base)
        self.dependents = (dependents,) if isinstance(dependents, str) else tuple(dependents)
        if isinstance(orders, int):
            orders = [orders] * len(self.dependents)
        if len(orders) != len(self.dependents):
            raise StructureError('one order per dependent variable is needed')
        self.orders = dict(zip(self.dependents, orders))
        self.parameters = tuple(parameters)
        n = len(self.base)
        self.jets = [(u, sigma) for u in self.dependents for sigma in graded_multi_indices(n, self.orders[u])]
        raw = dict(expressions or dict())
        for key in raw:
            if key not in self.jets:
                raise StructureError('expression for %s is not a jet of the chart' % jet_name(*key))
        self.intrinsic = [jet for jet in self.jets if jet not in raw]
        coordinates = list(self.base) + [jet_name(u, sigma) for u, sigma in self.intrinsic] + list(self.parameters)
        Chart.__init__(self, name, coordinates, self._aliases(aliases))
        self.expressions = dict((key, self.function(value)) for key, value in raw.items())

    def _aliases(self, extra):
        aliases = dict(extra or dict())
        n = len(self.base)
        if n == 2 and self.dependents == ('u',):
            for sigma, alias in CLASSICAL.items():
                aliases.setdefault(alias, jet_name('u', sigma))
        if all(len(b) == 1 for b in self.base):
            for u, sigma in self.jets:
                if any(sigma):
                    letters = ''.join(self.base[i] * s for i, s in enumerate(sigma))
                    aliases.setdefault('%s_%s' % (u, letters), jet_name(u, sigma))
        return aliases

    @property
    def n(self):
        return len(self.base)

    @property
    def order(self):
        return max(self.orders.values())

    def has_jet(self, dependent, sigma):
        return len(sigma) == self.n and sum(sigma) <= self.orders.get(dependent, -1)

    def value(self, dependent, sigma):
        '''
        The jet u_sigma as a function on the chart: its expression or its coordinate.
        '''
        key = (dependent, tuple(sigma))
        if key in self.expressions:
            return self.expressions[key]
        name = jet_name(dependent, sigma)
        if name not in self.index:
            raise UnknownVariableError(name, self.coordinates)
        return self.coordinate(name)

    def substitution(self):
        '''
        Jet name -> value for every jet up to the orders.
        '''
        return dict((jet_name(u, sigma), self.value(u, sigma)) for u, sigma in self.jets)

    def base_index(self, i):
        if isinstance(i, str):
            if i not in self.base:
                raise UnknownVariableError(i, self.base)
            return self.base.index(i)
        return i

    def total_derivative(self, i):
        """
        Truncated total derivative D_i = d/dx^i + sum u_{sigma+1_i} d/du_sigma over the intrinsic jets.

        Jets past the chart order are dropped; jets given by expressions are replaced by them.
        """
        i = self.base_index(i)
        components = {self.base[i]: 1}
        for u, sigma in self.intrinsic:
            following = add_unit(sigma, i)
            if self.has_jet(u, following):
                value = self.value(u, following)
                if value:
                    components[jet_name(u, sigma)] = value
        return VectorField(self, components, name='D_%s' % self.base[i])

    def lift_forms(self, l):
        """
        Contact forms theta_sigma = d(u_sigma) - sum_i u_{sigma+1_i} dx^i for |sigma| < l, pulled back to the chart.

        Identically vanishing forms are skipped.
        """
        if l < 1:
            raise ValueError('the lifted Cartan distribution needs l >= 1, got %d' % l)
        forms = []
        gens = self.field.gens
        for u, sigma in self.jets:
            if sum(sigma) >= min(l, self.orders[u]):
                continue
            value = self.value(u, sigma)
            components = dict()
            for coordinate in self.coordinates:
                derivative = value.diff(gens[self.index[coordinate]])
                if derivative:
                    components[coordinate] = derivative
            for i, x in enumerate(self.base):
                following = add_unit(sigma, i)
                components[x] = components.get(x, self.field.zero) - self.value(u, following)
            form = OneForm(self, components, name='θ_%s' % jet_name(u, sigma))
            if not form.is_zero():
                forms.append(form)
        return forms

    def cartan(self):
        '''
        <D_1, ..., D_n, d/d(parameter) for every parameter>.
        '''
        fields = [self.total_derivative(i) for i in range(self.n)]
        fields += [VectorField.coordinate(self, p) for p in self.parameters]
        return Distribution(self, fields, name='C_%s' % self.name)

    def to_dict(self):
        return {'base': list(self.base), 'dependents': list(self.dependents),
                'orders': [self.orders[u] for u in self.dependents], 'parameters': list(self.parameters),
                'expressions': dict((jet_name(u, sigma), format_function(value))
                                    for (u, sigma), value in self.expressions.items())}


class EquationChart(JetChart):
    '''
    An overdetermined PDE system in parametric form: every top-order jet is given by an expression.
    '''
    def __init__(self, base, dependents='u', orders=1, parameters=(), expressions=None, name='E', aliases=None):
        JetChart.__init__(self, base, dependents, orders, parameters, expressions, name, aliases)
        for u, sigma in self.intrinsic:
            if sum(sigma) == self.orders[u]:
                raise StructureError('top jet %s has no expression' % jet_name(u, sigma))

    @classmethod
    def from_top(cls, base, order, top, parameters=(), dependent='u', name='E'):
        """
        Builds a single-dependent system from its top-order expressions.

        Parameters
        ----------
            base : list of strings
            order : int
            top : dictionary
                Multi-index (tuple, or string such as '2,1') -> expression.
            parameters : list of strings
        """
        expressions = dict()
        for key, value in top.items():
            sigma = parse_multi_index(key, len(base)) if isinstance(key, str) else tuple(key)
            if sum(sigma) != order:
                raise StructureError('%s is not a top-order jet' % jet_name(dependent, sigma))
            expressions[(dependent, sigma)] = value
        return cls(base, dependent, order, parameters, expressions, name)


def total_derivative(equation, i):
    return equation.total_derivative(i)


def cartan_on_equation(equation):
    return equation.cartan()


def cartan_lift_annihilator(equation, l):
    return equation.lift_forms(l)


def default_base(n):
    if n == 2:
        return ('x', 'y')
    if n == 3:
        return ('x', 'y', 'z')
    return tuple('x%d' % (i + 1) for i in range(n))


def jet_space(base, k, dependent='u'):
    '''
    The plain jet chart J^k of one dependent variable.
    '''
    return JetChart(base, dependent, k, name='J%d' % k)


def contact_field(f, base=('x', 'y')):
    """
    The contact field X_f on J^1 of the generating function f.

    Parameters
    ----------
        f : string or rational function
            Function of x^i, u, u_{1_i}.
        base : list of strings

    Returns
    -------
        field : VectorField
            Components -f_{p_i} on x^i, f - sum p_i f_{p_i} on u, f_{x^i} + p_i f_u on p_i.
    """
    return prolong_contact_field(f, 1, base)


def _jet_function(chart, f):
    if isinstance(f, str):
        return chart.parse(f)
    return chart.function(f)


def prolong_contact_field(f, k, base=('x', 'y')):
    """
    Prolongation of X_f to J^k.

    The u_sigma component D_sigma(f) - sum_i f_{p_i} u_{sigma+1_i} is computed on J^{k+1}, where
    the order k+1 terms cancel, and the field is then written on J^k.

    Parameters
    ----------
        f : string or rational function
            Generating function on the first jets.
        k : int
            Target order, at least 1.
        base : list of strings

    Returns
    -------
        field : VectorField on jet_space(base, k)
    """
    if k < 1:
        raise ValueError('prolongation order must be at least 1')
    n = len(base)
    large = jet_space(base, k + 1)
    target = jet_space(base, k)
    f = _jet_function(large, f)
    gens = large.field.gens
    partial = dict((name, f.diff(gens[large.index[name]])) for name in large.coordinates)
    p = [jet_name('u', unit(n, i)) for i in range(n)]
    derivatives = [large.total_derivative(i) for i in range(n)]
    memo = {(0,) * n: f}
    components = dict()
    for i, x in enumerate(base):
        components[x] = -partial[p[i]]
    for sigma in graded_multi_indices(n, k):
        if sigma not in memo:
            i = [j for j, s in enumerate(sigma) if s][0]
            parent = tuple(s - 1 if j == i else s for j, s in enumerate(sigma))
            memo[sigma] = derivatives[i](memo[parent])
        value = memo[sigma]
        for i in range(n):
            if partial[p[i]]:
                value = value - partial[p[i]] * large.value('u', add_unit(sigma, i))
        components[jet_name('u', sigma)] = value
    field = VectorField(large, components)
    return field.transport(target)


def generating_function(field):
    """
    theta_0(X) = X^u - sum_i u_{1_i} X^{x^i} for a field on a jet chart of one dependent variable.
    """
    chart = field.chart
    n = len(chart.base)
    u = chart.dependents[0]
    value = field.component(u)
    for i, x in enumerate(chart.base):
        value = value - chart.value(u, unit(n, i)) * field.component(x)
    return value


def contact_bracket(f, g, base=('x', 'y')):
    '''
    Generating function of [X_f, X_g].
    '''
    return generating_function(lie_bracket(contact_field(f, base), contact_field(g, base)))


def _tangent_field(equation, components):
    """
    Completes jet components on an equation chart to a tangent field.

    Parameters
    ----------
        equation : JetChart
        components : dictionary
            Base and jet name -> rational function on the equation chart, for every jet.

    Returns
    -------
        field : VectorField or None
            Intrinsic components as given, parameter components solved from the expression jets.
        residual : dictionary
            Expression jet name -> non-zero defect when the components are not tangent.
    """
    gens = equation.field.gens
    intrinsic = list(equation.base) + [jet_name(u, sigma) for u, sigma in equation.intrinsic]
    given = dict((name, components.get(name, equation.field.zero)) for name in intrinsic)
    rows = []
    rhs = []
    names = []
    for (u, sigma), expression in equation.expressions.items():
        name = jet_name(u, sigma)
        value = components.get(name, equation.field.zero)
        for coordinate in intrinsic:
            if given[coordinate]:
                derivative = expression.diff(gens[equation.index[coordinate]])
                if derivative:
                    value = value - given[coordinate] * derivative
        rows.append([expression.diff(gens[equation.index[a]]) for a in equation.parameters])
        rhs.append(value)
        names.append(name)
    parameters = len(equation.parameters)
    residual = dict()
    solution = [equation.field.zero] * parameters
    if rows:
        matrix = ExactMatrix(rows, ncols=parameters, domain=equation.domain)
        pivots = matrix.independent_rows() if parameters else ()
        if pivots:
            sub = ExactMatrix([rows[r] for r in pivots], ncols=parameters, domain=equation.domain)
            solution = sub.solve([rhs[r] for r in pivots])
        for name, row, value in zip(names, matrix.rows, rhs):
            defect = value - sum((entry * s for entry, s in zip(row, solution)), equation.field.zero)
            if defect:
                residual[name] = defect
    if residual:
        return None, residual
    fields = dict(given)
    fields.update(zip(equation.parameters, solution))
    return VectorField(equation, fields), residual


def restrict_to_equation(equation, field):
    """
    Restriction of a field on a plain jet chart to an equation chart.

    Parameters
    ----------
        equation : JetChart
            The system; its jets must be coordinates of field.chart.
        field : VectorField
            A field on J^k with k the order of the system.

    Returns
    -------
        restricted : VectorField or None
            The tangent field on the equation chart, with solved parameter components.
        residual : dictionary
            Expression jet -> defect, empty when the field is tangent.
    """
    bindings = dict()
    for name in field.chart.coordinates:
        if name in equation.base:
            bindings[name] = equation.coordinate(name)
    values = equation.substitution()
    for name in field.chart.coordinates:
        if name not in bindings:
            if name not in values:
                raise UnknownVariableError(name, list(values))
            bindings[name] = values[name]
    components = dict()
    for name in field.chart.coordinates:
        component = field.component(name)
        if component:
            components[name] = substitute(component, bindings, equation.field)
    return _tangent_field(equation, components)


def is_external_symmetry(equation, f):
    """
    Checks that the prolonged contact field of f is tangent to the system.

    Returns
    -------
        verdict : Verdict
            Failing verdicts carry the first residual {jet: defect}.
    """
    field = prolong_contact_field(f, equation.order, equation.base)
    restricted, residual = restrict_to_equation(equation, field)
    label = f if isinstance(f, str) else format_function(f)
    if restricted is None:
        name = [jet_name(u, sigma) for u, sigma in equation.jets if jet_name(u, sigma) in residual][0]
        return Verdict('external symmetry %s' % label, False, {'jet': name, 'residual': residual[name]})
    return Verdict('external symmetry %s' % label, True)


def prolong_point_field(equation, field):
    """
    Prolongs the point part of a field to the jets of an equation chart.

    Parameters
    ----------
        equation : JetChart
        field : VectorField on the equation chart
            Only the components on base and dependent variables are read.

    Returns
    -------
        prolonged : VectorField
            Y^{u_{sigma+1_i}} = D_i(Y^{u_sigma}) - sum_l u_{sigma+1_l} D_i(Y^{x^l}) with truncated D_i,
            then completed by the parameter components; raises StructureError when the result is not
            tangent to the system.
    """
    if field.chart != equation:
        raise StructureError('the point field must live on the equation chart')
    n = equation.n
    derivatives = [equation.total_derivative(i) for i in range(n)]
    base_components = [field.component(x) for x in equation.base]
    base_derivatives = [[D(value) for value in base_components] for D in derivatives]
    components = dict((x, value) for x, value in zip(equation.base, base_components))
    for u in equation.dependents:
        values = {(0,) * n: field.component(u)}
        for sigma in graded_multi_indices(n, equation.orders[u]):
            if sigma not in values:
                i = [j for j, s in enumerate(sigma) if s][0]
                parent = tuple(s - 1 if j == i else s for j, s in enumerate(sigma))
                value = derivatives[i](values[parent])
                for l in range(n):
                    if base_derivatives[i][l]:
                        value = value - equation.value(u, add_unit(parent, l)) * base_derivatives[i][l]
                values[sigma] = value
            components[jet_name(u, sigma)] = values[sigma]
    prolonged, residual = _tangent_field(equation, components)
    if prolonged is None:
        raise StructureError('prolonged field is not tangent to %s at %s' % (equation.name, sorted(residual)))
    return prolonged

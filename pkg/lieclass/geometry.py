'''
Vector fields and distributions on coordinate charts.

A chart fixes an ordered list of coordinate names and the rational-function field
they generate. Vector fields, one-forms and distributions always belong to one
chart; every rank is a generic rank computed over the chart field.
'''
from sympy import QQ

from .graded import GradedLieAlgebra
from .utils.exact import (coordinate_field, lift, evaluate, format_function, substitute,
                          ExactMatrix, to_rational)
from .utils.errors import (ChartMismatchError, GenericityError, StabilizationError, StructureError,
                           DivisionByZeroError, UnknownVariableError)
from .utils.utils import parse_expression, generic_point


GREEK = {'lambda': 'λ', 'alpha': 'α', 'beta': 'β', 'gamma': 'γ', 'delta': 'δ', 'zeta': 'ζ', 'xi': 'ξ', 'eta': 'η'}


def display_name(name):
    '''
    Display spelling of a coordinate name: lambda -> λ, zeta2 -> ζ2.
    '''
    for word, letter in GREEK.items():
        if name == word or (name.startswith(word) and name[len(word):].isdigit()):
            return letter + name[len(word):]
    return name


class Chart(object):
    '''
    A coordinate chart: a name and an ordered list of unique coordinate names.

    Parameters
    ----------
        name: string
            Label of the chart (E, M, ...), used in reports only.
        coordinates: list of strings
            Coordinate names in declared order.
        aliases: dictionary, optional
            Alternative identifiers accepted when parsing expressions on this chart.

    Attributes
    -------
        field: FracField
            Rational functions in the coordinates over QQ, grlex order.
        index: dictionary
            Coordinate name -> position.
    '''
    def __init__(self, name, coordinates, aliases=None):
        self.name = name
        self.coordinates = tuple(coordinates)
        self.field = coordinate_field(self.coordinates)
        self.index = dict((coordinate, i) for i, coordinate in enumerate(self.coordinates))
        self.aliases = dict()
        for coordinate in self.coordinates:
            pretty = display_name(coordinate)
            if pretty != coordinate:
                self.aliases[pretty] = coordinate
        for alias, target in (aliases or dict()).items():
            if alias not in self.index and target in self.index:
                self.aliases[alias] = target

    @property
    def dim(self):
        return len(self.coordinates)

    @property
    def domain(self):
        return self.field.to_domain()

    def __eq__(self, other):
        return isinstance(other, Chart) and self.coordinates == other.coordinates

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.coordinates)

    def __repr__(self):
        return 'Chart(%s: %s)' % (self.name, ', '.join(display_name(c) for c in self.coordinates))

    def check(self, name):
        if name not in self.index:
            raise UnknownVariableError(name, self.coordinates)
        return name

    def coordinate(self, name):
        '''
        The coordinate function of the given name.
        '''
        return self.field.gens[self.index[self.check(self.aliases.get(name, name))]]

    def function(self, value):
        '''
        Brings an expression string, a rational or a rational function into the chart field.
        '''
        if isinstance(value, str):
            return parse_expression(value, self.field, self.aliases)
        return lift(value, self.field)

    def parse(self, text):
        return parse_expression(text, self.field, self.aliases)

    def without(self, names, name=None):
        return Chart(name or self.name, [c for c in self.coordinates if c not in names], self.aliases)

    def extended(self, names, name=None):
        return Chart(name or self.name, list(self.coordinates) + list(names), self.aliases)

    def fresh_name(self, stem):
        if stem not in self.index:
            return stem
        number = 1
        while '%s%d' % (stem, number) in self.index:
            number += 1
        return '%s%d' % (stem, number)

    def random_point(self, rng, accept=None, redraws=20, stage=None):
        return generic_point(self.coordinates, rng, accept, redraws, stage)


class VectorField(object):
    '''
    A derivation sum_c X^c d/dc with rational-function components; absent components are zero.
    '''
    def __init__(self, chart, components=None, name=None):
        self.chart = chart
        self.name = name
        self._components = dict()
        for coordinate, value in (components or dict()).items():
            coordinate = chart.check(chart.aliases.get(coordinate, coordinate))
            value = chart.function(value)
            if value:
                self._components[coordinate] = value

    @classmethod
    def coordinate(cls, chart, name):
        '''
        The coordinate field d/d(name).
        '''
        return cls(chart, {name: 1}, name='∂_' + display_name(name))

    @property
    def components(self):
        return dict(self._components)

    def component(self, name):
        return self._components.get(name, self.chart.field.zero)

    def is_zero(self):
        return not self._components

    def __call__(self, f):
        '''
        Applies the derivation to a function of the chart.
        '''
        f = self.chart.function(f)
        result = self.chart.field.zero
        gens = self.chart.field.gens
        for coordinate, value in self._components.items():
            derivative = f.diff(gens[self.chart.index[coordinate]])
            if derivative:
                result += value * derivative
        return result

    def _check(self, other):
        if not isinstance(other, VectorField):
            raise TypeError('expected a VectorField, got %r' % (other,))
        if other.chart != self.chart:
            raise ChartMismatchError('fields live on different charts: %r and %r' % (self.chart, other.chart))

    def __add__(self, other):
        self._check(other)
        components = dict(self._components)
        for coordinate, value in other._components.items():
            components[coordinate] = components.get(coordinate, self.chart.field.zero) + value
        return VectorField(self.chart, components)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return VectorField(self.chart, dict((c, -v) for c, v in self._components.items()))

    def scale(self, factor):
        '''
        Multiplies all components by a function or a rational.
        '''
        factor = self.chart.function(factor)
        return VectorField(self.chart, dict((c, factor * v) for c, v in self._components.items()))

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, VectorField) and other.chart == self.chart and other._components == self._components

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.chart, tuple(sorted((c, str(v)) for c, v in self._components.items()))))

    def bracket(self, other):
        return lie_bracket(self, other)

    def as_row(self):
        return [self.component(c) for c in self.chart.coordinates]

    def evaluate(self, point):
        values = []
        for coordinate in self.chart.coordinates:
            value = self._components.get(coordinate)
            values.append(evaluate(value, point) if value is not None else QQ.zero)
        return values

    def transport(self, chart, rename=None, bindings=None):
        """
        Rewrites the field on another chart.

        Parameters
        ----------
            chart : Chart
                Target chart.
            rename : dictionary, optional
                Source coordinate -> target coordinate, for components and for variables inside them.
            bindings : dictionary, optional
                Source coordinate -> value substituted inside components (e.g. a slice).

        Returns
        -------
            field : VectorField on chart
                Components on coordinates that are bound are dropped.
        """
        rename = rename or dict()
        values = dict(bindings or dict())
        for source, target in rename.items():
            if source not in values:
                values[source] = chart.coordinate(target)
        components = dict()
        for coordinate, value in self._components.items():
            if bindings and coordinate in bindings:
                continue
            target = rename.get(coordinate, coordinate)
            components[target] = substitute(value, values, chart.field)
        return VectorField(chart, components, name=self.name)

    def to_dict(self):
        return dict((c, format_function(v)) for c, v in sorted(self._components.items(),
                                                                key=lambda item: self.chart.index[item[0]]))

    def __repr__(self):
        if not self._components:
            return '0'
        terms = []
        for coordinate in self.chart.coordinates:
            if coordinate in self._components:
                text = format_function(self._components[coordinate])
                prefix = '' if text == '1' else ('-' if text == '-1' else '(%s)' % text)
                terms.append('%s∂_%s' % (prefix, display_name(coordinate)))
        return ' + '.join(terms)


def lie_bracket(v, w):
    """
    The commutator [v, w] with components v(w^c) - w(v^c).

    Parameters
    ----------
        v, w : VectorField
            Fields on the same chart.

    Returns
    -------
        bracket : VectorField
    """
    v._check(w)
    components = dict()
    for coordinate in v.chart.coordinates:
        value = v(w.component(coordinate)) - w(v.component(coordinate))
        if value:
            components[coordinate] = value
    return VectorField(v.chart, components)


def combine(coefficients, fields):
    '''
    The linear combination sum_j c_j fields[j] with function coefficients.
    '''
    if not fields:
        raise ValueError('cannot combine an empty list of fields')
    chart = fields[0].chart
    components = dict()
    for coefficient, field in zip(coefficients, fields):
        coefficient = chart.function(coefficient)
        if not coefficient:
            continue
        for coordinate, value in field._components.items():
            components[coordinate] = components.get(coordinate, chart.field.zero) + coefficient * value
    return VectorField(chart, components)


class OneForm(object):
    '''
    A differential one-form sum_c theta_c dc on a chart.
    '''
    def __init__(self, chart, components=None, name=None):
        self.chart = chart
        self.name = name
        self._components = dict()
        for coordinate, value in (components or dict()).items():
            coordinate = chart.check(chart.aliases.get(coordinate, coordinate))
            value = chart.function(value)
            if value:
                self._components[coordinate] = value

    @classmethod
    def differential(cls, chart, name):
        return cls(chart, {name: 1}, name='d' + display_name(name))

    @property
    def components(self):
        return dict(self._components)

    def component(self, name):
        return self._components.get(name, self.chart.field.zero)

    def is_zero(self):
        return not self._components

    def __call__(self, field):
        if field.chart != self.chart:
            raise ChartMismatchError('form and field live on different charts')
        result = self.chart.field.zero
        for coordinate, value in self._components.items():
            other = field._components.get(coordinate)
            if other is not None:
                result += value * other
        return result

    def as_row(self):
        return [self.component(c) for c in self.chart.coordinates]

    def __eq__(self, other):
        return isinstance(other, OneForm) and other.chart == self.chart and other._components == self._components

    def __ne__(self, other):
        return not self.__eq__(other)

    def to_dict(self):
        return dict((c, format_function(v)) for c, v in self._components.items())

    def __repr__(self):
        if not self._components:
            return '0'
        terms = []
        for coordinate in self.chart.coordinates:
            if coordinate in self._components:
                text = format_function(self._components[coordinate])
                prefix = '' if text == '1' else ('-' if text == '-1' else '(%s)' % text)
                terms.append('%sd%s' % (prefix, display_name(coordinate)))
        return ' + '.join(terms)


class Distribution(object):
    '''
    The span of finitely many vector fields of one chart over the chart's function field.

    Parameters
    ----------
        chart: Chart
            The chart of all generators.
        generators: list of VectorField
            Spanning fields, possibly dependent.
        name: string, optional
            Label used in reports.

    Attributes
    -------
        rank: int
            Generic rank, computed once over the rational-function field and cached.
    '''
    def __init__(self, chart, generators, name=None):
        self.chart = chart
        self.generators = list(generators)
        self.name = name
        for generator in self.generators:
            if generator.chart != chart:
                raise ChartMismatchError('generator %r does not live on %r' % (generator, chart))
        self._rank = None
        self._independent = None

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def column_matrix(self, fields=None):
        '''
        Coordinates x fields matrix whose columns are the given fields (the generators by default).
        '''
        fields = self.generators if fields is None else fields
        rows = [[field.component(c) for field in fields] for c in self.chart.coordinates]
        return ExactMatrix(rows, ncols=len(fields), domain=self.chart.domain)

    @property
    def rank(self):
        if self._rank is None:
            self._rank = len(self.independent().generators)
        return self._rank

    def independent(self):
        '''
        The sub-list of generators picked by pivoting in generator order; spans the same distribution.
        '''
        if self._independent is None:
            fields = [g for g in self.generators if not g.is_zero()]
            pivots = self.column_matrix(fields).independent_columns() if fields else ()
            result = Distribution(self.chart, [fields[p] for p in pivots], self.name)
            result._rank = len(pivots)
            result._independent = result
            self._independent = result
            self._rank = len(pivots)
        return self._independent

    def extend(self, candidates):
        """
        Echelon completion: keeps the independent generators and appends the candidates that raise the rank.

        Parameters
        ----------
            candidates : list of VectorField
                Fields to try, in order.

        Returns
        -------
            extended : Distribution
                Independent generators; the first ones are those of self.
        """
        base = self.independent().generators
        extra = [c for c in candidates if not c.is_zero()]
        if not extra:
            return self.independent()
        fields = base + extra
        pivots = self.column_matrix(fields).independent_columns()
        added = [fields[p] for p in pivots if p >= len(base)]
        result = Distribution(self.chart, base + added, self.name)
        result._rank = len(base) + len(added)
        result._independent = result
        return result

    def __add__(self, other):
        if other.chart != self.chart:
            raise ChartMismatchError('distributions live on different charts')
        return self.extend(other.generators)

    def contains(self, field):
        if field.chart != self.chart:
            raise ChartMismatchError('field and distribution live on different charts')
        if field.is_zero():
            return True
        return self.extend([field]).rank == self.rank

    def contains_all(self, fields):
        return self.extend(list(fields)).rank == self.rank

    def annihilator(self):
        '''
        Basis of the one-forms vanishing on every generator; dim(chart) - rank of them.
        '''
        rows = [g.as_row() for g in self.independent().generators]
        matrix = ExactMatrix(rows, ncols=self.chart.dim, domain=self.chart.domain)
        return [OneForm(self.chart, dict(zip(self.chart.coordinates, vector))) for vector in matrix.kernel_basis()]

    def restrict(self, forms):
        '''
        The sub-distribution of fields in self on which all given forms vanish.
        '''
        generators = self.independent().generators
        if not forms or not generators:
            return self.independent()
        rows = [[form(g) for g in generators] for form in forms]
        kernel = ExactMatrix(rows, ncols=len(generators), domain=self.chart.domain).kernel_basis()
        fields = [combine(vector, generators) for vector in kernel]
        return Distribution(self.chart, fields).independent()

    def vertical_part(self, coordinates):
        '''
        Fields of the distribution with zero components on the given (base) coordinates.
        '''
        return self.restrict([OneForm.differential(self.chart, c) for c in coordinates])

    def intersection(self, other):
        if other.chart != self.chart:
            raise ChartMismatchError('distributions live on different charts')
        return self.restrict(other.annihilator())

    def evaluate(self, point):
        rows = [g.evaluate(point) for g in self.independent().generators]
        return ExactMatrix(rows, ncols=self.chart.dim, domain=QQ)

    def rank_at(self, point):
        return self.evaluate(point).rank()

    def to_dict(self):
        return {'chart': list(self.chart.coordinates),
                'generators': [g.to_dict() for g in self.generators]}

    def __repr__(self):
        return '<%s>' % ', '.join(repr(g) for g in self.generators)


def generic_rank(distribution):
    return distribution.rank


def spans_equal(first, second):
    """
    True iff both distributions have the same span over the function field.
    """
    if first.chart != second.chart:
        raise ChartMismatchError('distributions live on different charts')
    union = first + second
    return union.rank == first.rank and union.rank == second.rank


def distribution_from_forms(chart, forms, name=None):
    '''
    The joint kernel of one-forms, as a generated distribution.
    '''
    forms = [f for f in forms if not f.is_zero()]
    rows = [form.as_row() for form in forms]
    if not rows:
        fields = [VectorField.coordinate(chart, c) for c in chart.coordinates]
        return Distribution(chart, fields, name)
    kernel = ExactMatrix(rows, ncols=chart.dim, domain=chart.domain).kernel_basis()
    fields = [VectorField(chart, dict(zip(chart.coordinates, vector))) for vector in kernel]
    return Distribution(chart, fields, name).independent()


class Flag(object):
    '''
    A derived flag: nested steps with strictly increasing ranks.

    Parameters
    ----------
        steps: list of Distribution
            steps[0] is the distribution itself; each next step extends the previous generators.
        stabilized: boolean
            True if the last step is closed under the defining brackets.
        kind: string
            'weak' or 'strong'.
    '''
    def __init__(self, steps, stabilized, kind):
        self.steps = steps
        self.stabilized = stabilized
        self.kind = kind

    def __len__(self):
        return len(self.steps)

    def step(self, i):
        '''
        The i-th step, counted from 1; indices past the end return the last step when stabilized.
        '''
        if i < 1:
            raise IndexError('flag steps are counted from 1')
        if i > len(self.steps):
            if not self.stabilized:
                raise IndexError('flag was truncated before step %d' % i)
            return self.steps[-1]
        return self.steps[i - 1]

    @property
    def ranks(self):
        return [step.rank for step in self.steps]

    @property
    def growth_vector(self):
        ranks = self.ranks
        return [ranks[0]] + [ranks[i] - ranks[i - 1] for i in range(1, len(ranks))]

    def to_dict(self):
        return {'kind': self.kind, 'growth_vector': self.growth_vector, 'ranks': self.ranks,
                'stabilized': self.stabilized}


def _derived_flag(distribution, max_steps, strong):
    first = distribution.independent()
    steps = [first]
    new = list(first.generators)
    stabilized = False
    while True:
        current = steps[-1]
        if current.rank == distribution.chart.dim:
            stabilized = True
            break
        if len(steps) >= max_steps:
            break
        if strong:
            old = current.generators[:len(current.generators) - len(new)]
            candidates = [lie_bracket(a, b) for i, a in enumerate(new) for b in new[i + 1:]]
            candidates += [lie_bracket(a, b) for a in old for b in new]
        else:
            candidates = [lie_bracket(a, b) for a in first.generators for b in new]
        following = current.extend(candidates)
        if following.rank == current.rank:
            stabilized = True
            break
        new = following.generators[len(current.generators):]
        steps.append(following)
    return Flag(steps, stabilized, 'strong' if strong else 'weak')


def weak_flag(distribution, max_steps=12):
    """
    Weak derived flag D_1 = D, D_{i+1} = D_i + [D, D_i].

    Parameters
    ----------
        distribution : Distribution
        max_steps : int
            Maximal number of steps computed.

    Returns
    -------
        flag : Flag
    """
    return _derived_flag(distribution, max_steps, strong=False)


def strong_flag(distribution, max_steps=12):
    """
    Strong derived flag N_1 = D, N_{i+1} = N_i + [N_i, N_i].
    """
    return _derived_flag(distribution, max_steps, strong=True)


def bracket_stable_part(distribution, others, target):
    """
    Fields X of the distribution with [X, Y] in target for every Y in others.

    Parameters
    ----------
        distribution : Distribution
            Must lie inside target, so that only the brackets of generators matter.
        others : list of VectorField
        target : Distribution

    Returns
    -------
        part : Distribution
            Solved over the function field through the annihilator of target.
    """
    generators = distribution.independent().generators
    if not generators:
        return distribution.independent()
    forms = target.annihilator()
    rows = []
    for other in others:
        brackets = [lie_bracket(g, other) for g in generators]
        for form in forms:
            rows.append([form(b) for b in brackets])
    if not rows:
        return distribution.independent()
    kernel = ExactMatrix(rows, ncols=len(generators), domain=distribution.chart.domain).kernel_basis()
    fields = [combine(vector, generators) for vector in kernel]
    return Distribution(distribution.chart, fields).independent()


def cauchy_characteristics(distribution):
    """
    Ch(D) = {X in D : [X, D] in D}.

    Parameters
    ----------
        distribution : Distribution

    Returns
    -------
        cauchy : Distribution
            Integrable sub-distribution of Cauchy characteristics.
    """
    independent = distribution.independent()
    return bracket_stable_part(independent, independent.generators, independent)


def annihilator(distribution):
    return distribution.annihilator()


class Quotient(object):
    '''
    Projection along an integrable distribution Pi onto a transversal slice.

    Parameters
    ----------
        Pi: Distribution
            The distribution quotiented out.
        transversal: list of (coordinate, rational) pairs
            The slice coordinates and their values; as many as rank(Pi).
        name: string, optional
            Name of the quotient chart.

    Attributes
    -------
        chart: Chart
            The slice chart: all coordinates except the transversal ones.
        normalized: list of VectorField
            Generators P'_b of Pi with P'_b[t_c] = 1 if b = c and 0 otherwise.
    '''
    def __init__(self, Pi, transversal, name=None):
        self.source = Pi.chart
        self.Pi = Pi.independent()
        self.transversal = [(Pi.chart.check(c), to_rational(v)) for c, v in transversal]
        names = [c for c, _ in self.transversal]
        if len(names) != self.Pi.rank:
            raise GenericityError('the slice fixes %d coordinates but the quotiented distribution has rank %d'
                                  % (len(names), self.Pi.rank), stage='reduce')
        self.names = names
        self.chart = self.source.without(names, name or 'M')
        self.bindings = dict(self.transversal)
        block = ExactMatrix([[P.component(c) for P in self.Pi.generators] for c in names],
                            ncols=len(names), domain=self.source.domain)
        inverse = block.inverse() if names else block
        if inverse is None:
            independent = block.independent_rows()
            degenerate = [names[i] for i in range(len(names)) if i not in independent]
            raise GenericityError('the slice is not transversal: coordinate %s is degenerate' % degenerate[0],
                                  stage='reduce')
        self.normalized = [combine([inverse.rows[a][b] for a in range(len(names))], self.Pi.generators)
                           for b in range(len(names))]

    def correct(self, field):
        '''
        Subtracts the Pi-combination that makes the field tangent to the slice.
        '''
        result = field
        for (coordinate, _), P in zip(self.transversal, self.normalized):
            value = field.component(coordinate)
            if value:
                result = result - P.scale(value)
        return result

    def push(self, field):
        """
        Pushes a field on the source chart to the slice chart.
        """
        if field.chart != self.source:
            raise ChartMismatchError('field does not live on the source chart of the quotient')
        return self.correct(field).transport(self.chart, bindings=self.bindings)

    def reduce(self, distribution, verify=True):
        """
        The quotient distribution on the slice chart.

        Parameters
        ----------
            distribution : Distribution
                Must contain Pi.
            verify : boolean
                If True, checks that Pi lies in the Cauchy characteristics of the distribution.

        Returns
        -------
            reduced : Distribution
                rank(reduced) = rank(distribution) - rank(Pi).
        """
        if not distribution.contains_all(self.Pi.generators):
            raise GenericityError('the quotiented distribution is not contained in the distribution', stage='reduce')
        if verify:
            forms = distribution.annihilator()
            for P in self.Pi.generators:
                for g in distribution.independent().generators:
                    bracket = lie_bracket(P, g)
                    if any(form(bracket) for form in forms):
                        raise GenericityError('the quotiented fields are not Cauchy characteristics', stage='reduce')
        pushed = [self.push(g) for g in distribution.independent().generators]
        reduced = Distribution(self.chart, pushed, distribution.name).independent()
        if reduced.rank != distribution.rank - self.Pi.rank:
            raise GenericityError('rank %d of the reduction differs from %d - %d; the slice values are not generic'
                                  % (reduced.rank, distribution.rank, self.Pi.rank), stage='reduce')
        return reduced


def reduce_along(distribution, Pi, transversal, verify=True, name=None):
    """
    Reduction of a distribution along a space of Cauchy characteristics, realized on a slice.

    Parameters
    ----------
        distribution : Distribution
        Pi : Distribution
            Integrable, inside Ch(distribution).
        transversal : list of (coordinate, rational)
            Slice coordinates and values.
        verify : boolean
            Check the Cauchy property of Pi first.

    Returns
    -------
        chart : Chart
            The quotient chart.
        reduced : Distribution
    """
    quotient = Quotient(Pi, transversal, name)
    return quotient.chart, quotient.reduce(distribution, verify)


def ad_closure(distribution, P, max_steps=12):
    """
    Smallest distribution containing the given one and closed under brackets with the fields of P.
    """
    if distribution.chart != P.chart:
        raise ChartMismatchError('distributions live on different charts')
    current = distribution.independent()
    new = list(current.generators)
    ranks = [current.rank]
    for _ in range(max_steps):
        candidates = [lie_bracket(p, g) for p in P.generators for g in new]
        following = current.extend(candidates)
        if following.rank == current.rank:
            return current
        new = following.generators[len(current.generators):]
        current = following
        ranks.append(current.rank)
    raise StabilizationError('ad-closure did not stabilize within %d steps' % max_steps, ranks)


def prolong_rank2(distribution, fiber=None):
    """
    Prolongation of a rank-2 distribution to the projectivized bundle of its lines.

    Parameters
    ----------
        distribution : Distribution
            Generic rank 2; its first two independent generators v1, v2 are used.
        fiber : string, optional
            Name of the fiber coordinate t (default 't', or a fresh variant).

    Returns
    -------
        chart : Chart
            Old coordinates followed by t.
        prolonged : Distribution
            <v1 + t v2, d/dt>.
    """
    if distribution.rank != 2:
        raise StructureError('prolongation needs a rank-2 distribution, got rank %d' % distribution.rank)
    v1, v2 = distribution.independent().generators
    name = distribution.chart.fresh_name(fiber or 't')
    chart = distribution.chart.extended([name])
    w1, w2 = v1.transport(chart), v2.transport(chart)
    t = chart.coordinate(name)
    return chart, Distribution(chart, [w1 + w2.scale(t), VectorField.coordinate(chart, name)])


def deprolong(distribution, slice_values=(0, 1, 2, 3)):
    """
    Inverse of prolong_rank2 when [D, D] has a Cauchy line.

    Returns
    -------
        result : (Chart, Distribution) or None
            None when the distribution is not de-prolongable.
    """
    if distribution.rank != 2:
        raise StructureError('de-prolongation needs a rank-2 distribution, got rank %d' % distribution.rank)
    first = distribution.independent()
    square = first.extend([lie_bracket(first.generators[0], first.generators[1])])
    cauchy = cauchy_characteristics(square)
    if cauchy.rank != 1:
        return None
    line = cauchy.generators[0]
    coordinate = [c for c in distribution.chart.coordinates if line.component(c)][0]
    for value in slice_values:
        try:
            return reduce_along(square, cauchy, [(coordinate, value)], verify=False)
        except (DivisionByZeroError, GenericityError):
            continue
    raise GenericityError('no generic slice value for %s' % coordinate, stage='deprolong')


def symbol_algebra(distribution, point=None, rng=None, max_depth=12, redraws=20):
    """
    The graded nilpotent symbol algebra of the weak derived flag at a point.

    Parameters
    ----------
        distribution : Distribution
        point : dictionary, optional
            Coordinate -> rational. Drawn from rng when omitted.
        rng : numpy.random.Generator, optional
            Needed when no point is given.
        max_depth : int
            Flag length limit.
        redraws : int
            Number of random points tried.

    Returns
    -------
        algebra : GradedLieAlgebra
            Layer -i spanned by the classes of the generators added at step i, labelled e1, e2, ...
            in generator order. ``algebra.point`` and ``algebra.fields`` record the point and the
            vector field behind each label.
    """
    flag = weak_flag(distribution, max_depth)
    generic = flag.ranks

    def accept(candidate):
        return [step.rank_at(candidate) for step in flag.steps] == generic

    if point is None:
        if rng is None:
            raise ValueError('either a point or a random generator is needed')
        point = distribution.chart.random_point(rng, accept, redraws, stage='symbol')
    else:
        point = dict((c, to_rational(v)) for c, v in point.items())
        try:
            usable = accept(point)
        except DivisionByZeroError:
            usable = False
        if not usable:
            raise GenericityError('point is not generic for the weak derived flag; re-randomize', stage='symbol')
    generators = flag.steps[-1].generators
    labels = ['e%d' % (i + 1) for i in range(len(generators))]
    degree = dict()
    layers = dict()
    start = 0
    for level, step in enumerate(flag.steps, start=1):
        for i in range(start, len(step.generators)):
            degree[labels[i]] = -level
            layers.setdefault(-level, []).append(labels[i])
        start = len(step.generators)
    values = [g.evaluate(point) for g in generators]
    brackets = dict()
    depth = len(flag.steps)
    for i in range(len(generators)):
        for j in range(i + 1, len(generators)):
            level = -(degree[labels[i]] + degree[labels[j]])
            if level > depth:
                continue
            count = len(flag.steps[level - 1].generators)
            columns = ExactMatrix([[values[c][r] for c in range(count)] for r in range(distribution.chart.dim)],
                                  ncols=count, domain=QQ)
            target = lie_bracket(generators[i], generators[j]).evaluate(point)
            coefficients = columns.solve(target)
            if coefficients is None:
                raise GenericityError('bracket of %s and %s escapes the flag' % (labels[i], labels[j]), stage='symbol')
            value = dict((labels[c], coefficients[c]) for c in range(count)
                         if degree[labels[c]] == -level and coefficients[c] != 0)
            if value:
                brackets[(labels[i], labels[j])] = value
    algebra = GradedLieAlgebra(layers, brackets)
    algebra.point = point
    algebra.fields = dict(zip(labels, generators))
    return algebra

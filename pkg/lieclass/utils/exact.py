'''
Exact arithmetic over the rationals and over rational-function fields.

Rationals are ``QQ`` elements, polynomials are sympy ``PolyElement``s and rational
functions are ``FracElement``s of a ``FracField`` whose generators are the
coordinates of one chart, in declared order, under the graded lexicographic
monomial order. Linear algebra runs through ``DomainMatrix`` over ``QQ`` or over
the fraction-field domain of a chart.
'''
from fractions import Fraction

from sympy import QQ, Symbol
from sympy.polys.fields import FracField, FracElement
from sympy.polys.rings import PolyRing, PolyElement
from sympy.polys.orderings import grlex
from sympy.polys.matrices import DomainMatrix

from .errors import UnknownVariableError, DivisionByZeroError, ChartMismatchError


def coordinate_field(names):
    """
    Returns the rational-function field over QQ generated by the given coordinate names.

    Parameters
    ----------
        names : list of strings
            Coordinate names in declared order. Fields built from equal lists are the same object.

    Returns
    -------
        field : FracField
            Field with grlex order over the declared coordinate order.
    """
    if len(set(names)) != len(names):
        raise ValueError('coordinate names must be unique: %s' % (list(names),))
    return FracField([Symbol(name) for name in names], QQ, grlex)


def polynomial_ring(names):
    return PolyRing([Symbol(name) for name in names], QQ, grlex)


def variable_names(domain):
    '''
    Coordinate names of a FracField or PolyRing.
    '''
    return [str(symbol) for symbol in domain.symbols]


def variable_index(domain, name):
    names = variable_names(domain)
    if name not in names:
        raise UnknownVariableError(name, names)
    return names.index(name)


def to_rational(value):
    """
    Converts an int, a Fraction, a 'p/q' string or a QQ element to a QQ element.
    """
    if isinstance(value, str):
        text = value.strip()
        if '/' in text:
            numerator, denominator = text.split('/', 1)
            if int(denominator) == 0:
                raise DivisionByZeroError(denominator, 'rational %s has zero denominator' % text)
            return QQ(int(numerator), int(denominator))
        return QQ(int(text))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def rational_string(value):
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '%d/%d' % (value.numerator, value.denominator)


def differentiate(f, name):
    """
    Partial derivative of a polynomial or rational function with respect to a coordinate.

    Parameters
    ----------
        f : PolyElement or FracElement
            The function to differentiate.
        name : string
            A declared coordinate name.

    Returns
    -------
        derivative : same type as f
            For fractions the quotient rule is applied and the result is re-normalized.
    """
    if isinstance(f, FracElement):
        index = variable_index(f.field, name)
        return f.diff(f.field.gens[index])
    if isinstance(f, PolyElement):
        index = variable_index(f.ring, name)
        return f.diff(f.ring.gens[index])
    raise TypeError('cannot differentiate %r' % (f,))


def normalize(numerator, denominator, field=None):
    """
    Builds the canonical fraction numerator/denominator.

    Parameters
    ----------
        numerator, denominator : PolyElement or FracElement
            Elements of one ring or one field.
        field : FracField, optional
            Target field; defaults to the fraction field of the numerator's ring.

    Returns
    -------
        fraction : FracElement
            gcd removed; canonical_parts(fraction) has a monic denominator.
    """
    if not denominator:
        raise DivisionByZeroError(denominator)
    if isinstance(numerator, FracElement) or isinstance(denominator, FracElement):
        return numerator / denominator
    if field is None:
        field = numerator.ring.to_field()
    if numerator.ring != field.ring or denominator.ring != field.ring:
        raise ChartMismatchError('numerator and denominator live over different variable lists')
    return field.new(numerator, denominator)


def canonical_parts(f):
    """
    Returns (numerator, denominator) with gcd removed and the grlex leading coefficient of the denominator equal to 1.
    """
    numerator, denominator = f.numer, f.denom
    leading = denominator.LC
    return numerator.quo_ground(leading), denominator.quo_ground(leading)


def _poly_value(polynomial, values, zero, names):
    total = zero
    for monom, coeff in polynomial.items():
        term = coeff
        for index, exponent in enumerate(monom):
            if exponent:
                value = values[index]
                if value is None:
                    raise UnknownVariableError(names[index])
                term = term * value**exponent
        total = total + term
    return total


def evaluate(f, point):
    """
    Evaluates a rational function at a rational point.

    Parameters
    ----------
        f : FracElement or PolyElement
        point : dictionary
            Coordinate name -> rational; must cover every variable occurring in f.

    Returns
    -------
        value : QQ element
    """
    domain = f.field if isinstance(f, FracElement) else f.ring
    names = variable_names(domain)
    values = [to_rational(point[name]) if name in point else None for name in names]
    if isinstance(f, PolyElement):
        return _poly_value(f, values, QQ.zero, names)
    denominator = _poly_value(f.denom, values, QQ.zero, names)
    if denominator == 0:
        raise DivisionByZeroError(f.denom)
    return _poly_value(f.numer, values, QQ.zero, names) / denominator


def substitute(f, bindings, target=None):
    """
    Simultaneous substitution of coordinates in a rational function.

    Parameters
    ----------
        f : FracElement
            The function, over its own chart field.
        bindings : dictionary
            Coordinate name -> value (rational, or FracElement of any field whose variables exist in target).
        target : FracField, optional
            Field of the result; unbound variables are mapped to the target generator with the same name.

    Returns
    -------
        result : FracElement of target
    """
    field = f.field
    if target is None:
        target = field
    names = variable_names(field)
    target_names = variable_names(target)
    for name in bindings:
        if name not in names:
            raise UnknownVariableError(name, names)
    values = []
    for name in names:
        if name in bindings:
            values.append(lift(bindings[name], target))
        elif name in target_names:
            values.append(target.gens[target_names.index(name)])
        else:
            values.append(None)
    zero = target.zero
    numerator = _frac_poly_value(f.numer, values, target, names)
    denominator = _frac_poly_value(f.denom, values, target, names)
    if not denominator:
        raise DivisionByZeroError(format_function(field.new(f.denom, field.ring.one)))
    if not numerator:
        return zero
    return numerator / denominator


def _frac_poly_value(polynomial, values, target, names):
    total = target.zero
    powers = {}
    for monom, coeff in polynomial.items():
        term = target(coeff)
        for index, exponent in enumerate(monom):
            if exponent:
                if values[index] is None:
                    raise UnknownVariableError(names[index], variable_names(target))
                key = (index, exponent)
                if key not in powers:
                    powers[key] = values[index]**exponent
                term = term * powers[key]
        total = total + term
    return total


def lift(value, target):
    """
    Brings a rational, an int or a FracElement of another field into target, matching variables by name.
    """
    if isinstance(value, FracElement):
        if value.field == target:
            return value
        return substitute(value, {}, target)
    if isinstance(value, PolyElement):
        return substitute(value.ring.to_field().new(value, value.ring.one), {}, target)
    return target(to_rational(value))


def is_constant(f):
    return f.numer.is_ground and f.denom.is_ground


def format_function(f):
    '''
    Deterministic text form of a rational function using ^ for powers.
    '''
    if isinstance(f, PolyElement):
        return str(f).replace('**', '^')
    if not f:
        return '0'
    numerator, denominator = canonical_parts(f)
    text = str(numerator).replace('**', '^')
    if denominator == denominator.ring.one:
        return text
    return '(%s)/(%s)' % (text, str(denominator).replace('**', '^'))


def _infer_domain(rows):
    for row in rows:
        for entry in row:
            if isinstance(entry, FracElement):
                return entry.field.to_domain()
    return QQ


class ExactMatrix(object):
    '''
    Rectangular matrix with exact entries, either rationals or rational functions of one chart.

    Parameters
    ----------
        rows: list of lists
            The entries. Ints and rationals are converted to the matrix domain.
        ncols: int, optional
            Number of columns; needed when there are no rows.
        domain: sympy domain, optional
            QQ or the fraction-field domain of a chart. Inferred from the entries when omitted.

    Attributes
    -------
        rows: list of lists
            The converted entries.
        nrows, ncols: int
            Shape.
        domain: sympy domain
            Domain used for elimination.
    '''
    def __init__(self, rows, ncols=None, domain=None):
        rows = [list(row) for row in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError('matrix rows must all have %d entries' % ncols)
        self.domain = domain if domain is not None else _infer_domain(rows)
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = [[self._convert(entry) for entry in row] for row in rows]

    def _convert(self, entry):
        if self.domain == QQ:
            return to_rational(entry)
        field = self.domain.field
        if isinstance(entry, FracElement) and entry.field == field:
            return entry
        return lift(entry, field)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def transpose(self):
        return ExactMatrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                           ncols=self.nrows, domain=self.domain)

    def rref(self):
        """
        Reduced row echelon form.

        Returns
        -------
            reduced : list of lists
                The reduced rows.
            pivots : tuple of ints
                Pivot column indices.
        """
        if self.nrows == 0 or self.ncols == 0:
            return [list(row) for row in self.rows], ()
        matrix = DomainMatrix(self.rows, self.shape, self.domain)
        reduced, pivots = matrix.rref()
        entries = [[reduced[i, j].element for j in range(self.ncols)] for i in range(self.nrows)]
        return entries, tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """
        Basis of the right null space: one vector per free column, with a 1 in that column.
        """
        reduced, pivots = self.rref()
        basis = []
        for free in range(self.ncols):
            if free in pivots:
                continue
            vector = [self.zero] * self.ncols
            vector[free] = self.one
            for row, pivot in enumerate(pivots):
                vector[pivot] = -reduced[row][free]
            basis.append(vector)
        return basis

    def solve(self, rhs):
        """
        One solution x of M x = rhs (free unknowns set to 0), or None when the system is inconsistent.
        """
        if len(rhs) != self.nrows:
            raise ValueError('right-hand side has %d entries, matrix has %d rows' % (len(rhs), self.nrows))
        augmented = ExactMatrix([row + [value] for row, value in zip(self.rows, rhs)],
                                ncols=self.ncols + 1, domain=self.domain)
        reduced, pivots = augmented.rref()
        if self.ncols in pivots:
            return None
        solution = [self.zero] * self.ncols
        for row, pivot in enumerate(pivots):
            solution[pivot] = reduced[row][self.ncols]
        return solution

    def inverse(self):
        '''
        Inverse of a square matrix, or None when it is singular.
        '''
        if self.nrows != self.ncols:
            raise ValueError('only square matrices can be inverted')
        n = self.nrows
        identity = [[self.one if i == j else self.zero for j in range(n)] for i in range(n)]
        augmented = ExactMatrix([row + extra for row, extra in zip(self.rows, identity)],
                                ncols=2 * n, domain=self.domain)
        reduced, pivots = augmented.rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            return None
        return ExactMatrix([row[n:] for row in reduced], ncols=n, domain=self.domain)

    def independent_columns(self):
        return self.rref()[1]

    def independent_rows(self):
        return self.transpose().rref()[1]

    def apply(self, vector):
        return [sum((entry * value for entry, value in zip(row, vector)), self.zero) for row in self.rows]


def kernel_basis(rows, ncols=None, domain=None):
    '''
    Right null space of the matrix given by its rows.
    '''
    return ExactMatrix(rows, ncols=ncols, domain=domain).kernel_basis()


def matrix_rank(rows, ncols=None, domain=None):
    return ExactMatrix(rows, ncols=ncols, domain=domain).rank()


def coefficient_rows(columns):
    """
    Turns identities between rational functions into linear equations over QQ.

    Parameters
    ----------
        columns : list of lists of FracElement
            columns[c][e] is the contribution of unknown c to identity e.

    Returns
    -------
        rows : list of lists of QQ
            sum_c a_c * columns[c][e] vanishes identically for every e iff every row annihilates a.
            Each identity is multiplied by the lcm of its denominators and split by monomial.
    """
    ncols = len(columns)
    if ncols == 0:
        return []
    rows = []
    for equation in range(len(columns[0])):
        nonzero = [(c, column[equation]) for c, column in enumerate(columns) if column[equation]]
        if not nonzero:
            continue
        common = nonzero[0][1].denom
        for _, f in nonzero[1:]:
            common = common.lcm(f.denom)
        table = {}
        for c, f in nonzero:
            scaled = f.numer * common.exquo(f.denom)
            for monom, coeff in scaled.items():
                table.setdefault(monom, {})[c] = coeff
        for monom in sorted(table):
            row = [QQ.zero] * ncols
            for c, coeff in table[monom].items():
                row[c] = coeff
            rows.append(row)
    return rows


def constant_combination(basis, target):
    """
    Finds rational constants c with sum_i c_i basis[i] == target identically.

    Parameters
    ----------
        basis : list of lists of FracElement
            Each entry is one vector of rational functions.
        target : list of FracElement

    Returns
    -------
        coefficients : list of QQ or None
            None if target is not a constant combination of the basis.
    """
    if not basis:
        return [] if not any(target) else None
    rows = coefficient_rows(list(basis) + [list(target)])
    if not rows:
        return [QQ.zero] * len(basis)
    matrix = ExactMatrix([row[:-1] for row in rows], ncols=len(basis), domain=QQ)
    return matrix.solve([row[-1] for row in rows])


def constant_rank(vectors):
    '''
    Rank of a family of rational-function vectors over QQ (linear independence with constant coefficients).
    '''
    if not vectors:
        return 0
    rows = coefficient_rows([list(vector) for vector in vectors])
    return ExactMatrix(rows, ncols=len(vectors), domain=QQ).rank()

from math import factorial

from ..geometry import Chart, VectorField, Distribution
from ..jets import EquationChart, default_base, multi_indices, unit
from .errors import CatalogError


def _power(exponent, name='lambda'):
    '''
    Text of name^exponent/exponent, e.g. 'lambda^3/3'.
    '''
    if exponent == 1:
        return name
    return '%s^%d/%d' % (name, exponent, exponent)


def _check(condition, message):
    if not condition:
        raise CatalogError('parameter out of range: %s' % message)


def _m_list(m_list, minimum=2):
    if isinstance(m_list, str):
        m_list = [part for part in m_list.replace(' ', '').split(',') if part]
    try:
        values = [int(m) for m in m_list]
    except (TypeError, ValueError):
        raise CatalogError('parameter out of range: the m-list must hold integers, got %r' % (m_list,))
    _check(len(values) >= minimum, 'the m-list needs at least %d entries' % minimum)
    _check(all(m >= 0 for m in values), 'the m-list entries must be non-negative')
    return values


def ek(k):
    """
    E_k: u_{k-i,i} = lambda^{i+1}/(i+1), 0 <= i <= k.
    """
    return fk(k, 1, name='E_%d' % k)


def fk(k, m, name=None):
    """
    F_k: u_{k-i,i} = lambda^{im+1}/(im+1); m = 1 gives E_k.
    """
    _check(k >= 2, 'k >= 2, got %d' % k)
    _check(m >= 1, 'm >= 1, got %d' % m)
    top = dict(((k - i, i), _power(i * m + 1)) for i in range(k + 1))
    return EquationChart.from_top(('x', 'y'), k, top, parameters=('lambda',), name=name or 'F_%d^%d' % (k, m))


def rkm(k, m):
    """
    R_k^m: u_{k-i,i} = lambda^{i+1}/(i+1) + sum_{j=1}^{min(m,i+1)} i!/(i+1-j)! lambda^{i+1-j} zeta_j.

    The right-hand side is the m-th tangent cone of the curve defining E_k = R_k^0.
    """
    _check(k >= 2, 'k >= 2, got %d' % k)
    _check(0 <= m < k, '0 <= m < k, got m = %d' % m)
    zetas = tuple('zeta%d' % (j + 1) for j in range(m))
    top = dict()
    for i in range(k + 1):
        terms = [_power(i + 1)]
        for j in range(1, min(m, i + 1) + 1):
            coefficient = factorial(i) // factorial(i + 1 - j)
            power = i + 1 - j
            term = 'zeta%d' % j
            if power:
                term = ('lambda*%s' if power == 1 else 'lambda^%d*%%s' % power) % term
            if coefficient != 1:
                term = '%d*%s' % (coefficient, term)
            terms.append(term)
        top[(k - i, i)] = ' + '.join(terms)
    return EquationChart.from_top(('x', 'y'), k, top, parameters=('lambda',) + zetas, name='R_%d^%d' % (k, m))


def cartan_1910():
    '''
    The involutive second order system u_xx = lambda, u_xy = lambda^2/2, u_yy = lambda^3/3.
    '''
    chart = fk(2, 1, name='Ceq')
    return chart


def hilbert_cartan():
    """
    The rank 2 distribution of y' = (z'')^2 on (x, y, z, z1, z2).
    """
    chart = Chart('HC', ('x', 'y', 'z', 'z1', 'z2'))
    total = VectorField(chart, {'x': 1, 'z': 'z1', 'z1': 'z2', 'y': 'z2^2'}, name='D')
    return Distribution(chart, [total, VectorField.coordinate(chart, 'z2')], name='Hilbert-Cartan')


def monge_y(k, m=1):
    """
    The Monge system Y_k in mixed jets J^{k,k-1,...,1}(R, R^k):
    w^j_{k-j} = lambda^{jm+1}/(jm+1), with lambda = w^0_k.

    m = 1 is the reduction of E_k, general m the reduction of F_k.
    """
    _check(k >= 2, 'k >= 2, got %d' % k)
    _check(m >= 1, 'm >= 1, got %d' % m)
    dependents = ['w%d' % j for j in range(k)]
    expressions = dict((('w%d' % j, (k - j,)), _power(j * m + 1)) for j in range(k))
    name = 'Y_%d' % k if m == 1 else 'Y_%d^%d' % (k, m)
    return EquationChart(('x',), dependents, [k - j for j in range(k)], ('lambda',), expressions, name)


def monge_kl(m_list):
    """
    The Monge system v^j_x = (v^1_xx)^{m_j+1}/(m_j+1), j = 2..n, with lambda = v^1_xx.

    Parameters
    ----------
        m_list : list of ints
            m_1, ..., m_n; m_1 only fixes the normalization and must be 0.
    """
    values = _m_list(m_list)
    _check(values[0] == 0, 'm_1 = 0 (re-parametrize lambda), got %d' % values[0])
    n = len(values)
    dependents = ['v%d' % (j + 1) for j in range(n)]
    expressions = {('v1', (2,)): 'lambda'}
    for j in range(1, n):
        expressions[('v%d' % (j + 1), (1,))] = _power(values[j] + 1)
    return EquationChart(('x',), dependents, [2] + [1] * (n - 1), ('lambda',), expressions,
                         'kl(%s)' % ','.join(str(m) for m in values))


def goursat_pair(variant=1):
    """
    Two linear systems of type E2+E3 with internally equivalent reductions of growth (2,1,1,1):
    variant 1 is {u_xy = 0, u_yyy = 0}, variant 2 is {u_yy = 0, u_xxy = 0}.
    """
    _check(variant in (1, 2), 'variant 1 or 2, got %r' % (variant,))
    if variant == 1:
        expressions = {(1, 1): 0, (3, 0): 'alpha', (2, 1): 0, (1, 2): 0, (0, 3): 0}
    else:
        expressions = {(0, 2): 0, (3, 0): 'alpha', (2, 1): 0, (1, 2): 0, (0, 3): 0}
    expressions = dict((('u', sigma), value) for sigma, value in expressions.items())
    return EquationChart(('x', 'y'), 'u', 3, ('alpha',), expressions, 'Goursat-%d' % variant)


def s8_2e2e1():
    '''
    u_xx = lambda, u_xy = lambda^2/2, u_yy = lambda^3/3, u_z = 0.
    '''
    expressions = {(2, 0, 0): 'lambda', (1, 1, 0): 'lambda^2/2', (0, 2, 0): 'lambda^3/3',
                   (0, 0, 1): 0, (1, 0, 1): 0, (0, 1, 1): 0, (0, 0, 2): 0}
    return EquationChart(('x', 'y', 'z'), 'u', 2, ('lambda',),
                         dict((('u', s), v) for s, v in expressions.items()), '2E2+E1')


def s8_2nd_order():
    '''
    u_xx = lambda, u_xy = lambda^2/2, u_yy = lambda^3/3, u_xz = u_yz = u_zz = 0.
    '''
    expressions = {(2, 0, 0): 'lambda', (1, 1, 0): 'lambda^2/2', (0, 2, 0): 'lambda^3/3',
                   (1, 0, 1): 0, (0, 1, 1): 0, (0, 0, 2): 0}
    return EquationChart(('x', 'y', 'z'), 'u', 2, ('lambda',),
                         dict((('u', s), v) for s, v in expressions.items()), '2E2+3E2')


def s8_3e3_3e2():
    """
    E_3 in (x, y) together with u_xz = u_yz = u_zz = 0; the third order z-jets vanish as well.
    """
    expressions = dict()
    for sigma in multi_indices(3, 3):
        if sigma[2] == 0:
            expressions[sigma] = _power(sigma[1] + 1)
        else:
            expressions[sigma] = 0
    for sigma in ((1, 0, 1), (0, 1, 1), (0, 0, 2)):
        expressions[sigma] = 0
    return EquationChart(('x', 'y', 'z'), 'u', 3, ('lambda',),
                         dict((('u', s), v) for s, v in expressions.items()), '3E3+3E2')


def s8_9e3():
    '''
    E_3 in (x, y) together with the vanishing of all six third order jets involving z.
    '''
    expressions = dict()
    for sigma in multi_indices(3, 3):
        expressions[sigma] = _power(sigma[1] + 1) if sigma[2] == 0 else 0
    return EquationChart(('x', 'y', 'z'), 'u', 3, ('lambda',),
                         dict((('u', s), v) for s, v in expressions.items()), '9E3')


def _symmetric_family(m_list, order):
    values = _m_list(m_list)
    n = len(values)
    base = default_base(n)
    expressions = dict()
    for sigma in multi_indices(n, order):
        exponent = sum(values[i] * s for i, s in enumerate(sigma)) + 1
        expressions[('u', sigma)] = _power(exponent)
    return EquationChart(base, 'u', order, ('lambda',), expressions,
                         'order%d(%s)' % (order, ','.join(str(m) for m in values)))


def s8_order2(m_list):
    """
    u_ij = lambda^{m_i+m_j+1}/(m_i+m_j+1), 1 <= i <= j <= n, with n = len(m_list).
    """
    return _symmetric_family(m_list, 2)


def s8_order3(m_list):
    """
    u_ijk = lambda^{m_i+m_j+m_k+1}/(m_i+m_j+m_k+1), 1 <= i <= j <= k <= n.
    """
    return _symmetric_family(m_list, 3)


def s3_e2e3_generic():
    """
    A generic E2+E3 system: t = F(s) = s^2/2 with the third order jets
    alpha, beta = A alpha, gamma = F_s beta, delta = F_s gamma for A = s.
    """
    expressions = {(0, 2): 'u_11^2/2', (3, 0): 'alpha', (2, 1): 'u_11*alpha',
                   (1, 2): 'u_11^2*alpha', (0, 3): 'u_11^3*alpha'}
    expressions = dict((('u', sigma), value) for sigma, value in expressions.items())
    return EquationChart(('x', 'y'), 'u', 3, ('alpha',), expressions, 'E2+E3')


def s3_3e3_generic():
    """
    A generic 3E3 system with F = alpha^2/2: beta = F, gamma and delta from G' = F'^2 and H' = F'^3.
    """
    top = {(3, 0): 'alpha', (2, 1): 'alpha^2/2', (1, 2): 'alpha^3/3', (0, 3): 'alpha^4/4'}
    return EquationChart.from_top(('x', 'y'), 3, top, parameters=('alpha',), name='3E3')


class Family(object):
    '''
    Registry of the model systems. Each entry names its builder, its integer parameters
    (with defaults, None when required) and a one-line description.

    Parameters
    ----------
        family : string
            A catalog name, e.g. 'ek' or 'hilbert-cartan'.

    Attributes
    -------
        families: dictionary
            Catalog name -> (builder, parameters, description).
        family: string
            The selected model.
    '''
    families = {
        'ek': (ek, [('k', None)], 'E_k: u_{k-i,i} = lambda^{i+1}/(i+1)'),
        'fk': (fk, [('k', None), ('m', None)], 'F_k: u_{k-i,i} = lambda^{im+1}/(im+1)'),
        'rkm': (rkm, [('k', None), ('m', None)], 'R_k^m: m-th tangent cone of the E_k curve'),
        'cartan-1910': (cartan_1910, [], 'u_xx = lambda, u_xy = lambda^2/2, u_yy = lambda^3/3'),
        'hilbert-cartan': (hilbert_cartan, [], "distribution of y' = (z'')^2"),
        'monge-y': (monge_y, [('k', None), ('m', 1)], 'Monge system Y_k (reduction of E_k, F_k)'),
        'monge-kl': (monge_kl, [('m_list', None)], 'Monge system v^j_x = (v^1_xx)^{m_j+1}/(m_j+1)'),
        'goursat-pair': (goursat_pair, [('variant', 1)], '{u_xy = 0, u_yyy = 0} or {u_yy = 0, u_xxy = 0}'),
        's8-2e2e1': (s8_2e2e1, [], 'E_2 in (x, y) with u_z = 0'),
        's8-2nd-order': (s8_2nd_order, [], 'E_2 in (x, y) with u_xz = u_yz = u_zz = 0'),
        's8-3e3-3e2': (s8_3e3_3e2, [], 'E_3 in (x, y) with u_xz = u_yz = u_zz = 0'),
        's8-9e3': (s8_9e3, [], 'E_3 in (x, y) with all third order z-jets zero'),
        's8-order2': (s8_order2, [('m_list', None)], 'u_ij = lambda^{m_i+m_j+1}/(m_i+m_j+1)'),
        's8-order3': (s8_order3, [('m_list', None)], 'u_ijk = lambda^{m_i+m_j+m_k+1}/(m_i+m_j+m_k+1)'),
        's3-e2e3-generic': (s3_e2e3_generic, [], 'E2+E3 with t = s^2/2, beta = s alpha'),
        's3-3e3-generic': (s3_3e3_generic, [], '3E3 with beta = alpha^2/2'),
    }

    def __init__(self, family):
        if family not in self.families:
            raise CatalogError("unknown catalog model '%s'. Available models are %s"
                               % (family, ', '.join(sorted(self.families))))
        self.family = family

    def get_params(self):
        '''
        Parameter names of the current model, e.g. ['k', 'm'] for 'rkm'.
        '''
        return [name for name, _ in self.families[self.family][1]]

    def get_description(self):
        return self.families[self.family][2]

    def build(self, **params):
        """
        Builds the model from the given parameters; unrelated parameters (None values included) are ignored.

        Returns
        -------
            model : EquationChart or Distribution
        """
        builder, signature, _ = self.families[self.family]
        arguments = []
        for name, default in signature:
            value = params.get(name)
            if value is None:
                value = default
            if value is None:
                raise CatalogError("parameter out of range: model '%s' needs --%s" % (self.family, name.replace('_', '-')))
            arguments.append(value)
        return builder(*arguments)


def catalog(name, **params):
    '''
    The named model system; see Family.families for names and parameters.
    '''
    return Family(name).build(**params)


def list_models():
    '''
    (name, parameters, description) for every catalog entry, sorted by name.
    '''
    return [(name, [p for p, _ in Family.families[name][1]], Family.families[name][2])
            for name in sorted(Family.families)]

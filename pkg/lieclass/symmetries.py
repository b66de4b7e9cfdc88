'''
Explicit symmetry bases of the model systems.

External symmetries of E_k and F_k are given by generating functions on J^1(R^2, R);
symmetries of the Monge systems Y_k by the point parts of their fields, prolonged
to the Monge chart.
'''
from math import factorial

from sympy import QQ

from .geometry import VectorField
from .jets import jet_name, prolong_point_field


def _monomial(i, j):
    factors = []
    if i:
        factors.append('x' if i == 1 else 'x^%d' % i)
    if j:
        factors.append('y' if j == 1 else 'y^%d' % j)
    return '*'.join(factors) or '1'


def ek_generating_functions(k):
    """
    Generating functions of the k(k+1)/2 + 6 independent external symmetries of E_k.

    Returns
    -------
        functions : list of (name, expression)
            Expressions in x, y, u, u_10, u_01.
    """
    functions = [(_monomial(i, j), _monomial(i, j)) for i in range(k) for j in range(k - i)]
    functions += [
        ('u_10', 'u_10'),
        ('u_01', 'u_01'),
        ('u + y*u_01', 'u + y*u_01'),
        ('%d*u - x*u_10' % (k + 1), '%d*u - x*u_10' % (k + 1)),
        ('y*u_10 + x^%d/%d' % (k, factorial(k)), 'y*u_10 + 1/%d*x^%d' % (factorial(k), k)),
        ('%d*y*u - x*y*u_10 - y^2*u_01 - x^%d/%d' % (k - 1, k + 1, factorial(k + 1)),
         '%d*y*u - x*y*u_10 - y^2*u_01 - 1/%d*x^%d' % (k - 1, factorial(k + 1), k + 1)),
    ]
    return functions


def fk_generating_functions(k, m):
    """
    Generating functions of the k(k+1)/2 + 4 external symmetries of F_k, m >= 2.
    """
    functions = [(_monomial(i, j), _monomial(i, j)) for i in range(k) for j in range(k - i)]
    functions += [
        ('u_10', 'u_10'),
        ('u_01', 'u_01'),
        ('%d*u - %d*x*u_10' % (k * m + 1, m), '%d*u - %d*x*u_10' % (k * m + 1, m)),
        ('u + %d*y*u_01' % m, 'u + %d*y*u_01' % m),
    ]
    return functions


def _label(i, j):
    return 'W_%d^%d' % (i, j)


def _w(j, i=0):
    return jet_name('w%d' % j, (i,))


def monge_field_names(k):
    '''
    Names of the Monge basis: X, the W_i^j (0 <= i + j < k), L, R, S1, S2, T.
    '''
    names = ['X']
    names += ['W_%d^%d' % (i, j) for j in range(k) for i in range(k - j)]
    return names + ['L', 'R', 'S1', 'S2', 'T']


def monge_point_parts(chart, k):
    """
    Components on x and the w^j of the basis fields of Y_k, as rational functions on the chart.

    Returns
    -------
        parts : dictionary
            Name -> {coordinate: rational function}, in the order of monge_field_names.
    """
    x = chart.coordinate('x')
    lam = chart.coordinate('lambda')
    w = [chart.coordinate(_w(j)) for j in range(k)]
    w1 = [chart.value('w%d' % j, (1,)) for j in range(k)]
    parts = {'X': {'x': 1}}
    for j in range(k):
        for i in range(k - j):
            parts['W_%d^%d' % (i, j)] = {_w(j): x ** i * QQ(1, factorial(i))}
    lifting = {_w(0): x ** k * QQ(1, factorial(k))}
    for j in range(1, k):
        lifting[_w(j)] = j * w1[j - 1]
    parts['L'] = lifting
    rotation = {_w(0): x ** (k + 1) * QQ(1, factorial(k + 1))}
    for j in range(1, k):
        rotation[_w(j)] = j * (x * w1[j - 1] - (k - j) * w[j - 1])
    parts['R'] = rotation
    first = {'x': x}
    for j in range(k):
        first[_w(j)] = (k - j) * w[j]
    parts['S1'] = first
    parts['S2'] = dict((_w(j), (j + 1) * w[j]) for j in range(k))
    twist = {'x': lam}
    for j in range(k - 1):
        twist[_w(j)] = lam * w1[j] - w[j + 1]
    twist[_w(k - 1)] = lam ** (k + 1) * QQ(1, k * (k + 1))
    parts['T'] = twist
    return dict((name, parts[name]) for name in monge_field_names(k))


def monge_symmetries(chart, k):
    """
    The k(k+1)/2 + 6 symmetries of the Monge system Y_k, prolonged to its chart.

    Parameters
    ----------
        chart : EquationChart
            monge_y(k).
        k : int

    Returns
    -------
        fields : list of VectorField
            Named after monge_field_names.
    """
    fields = []
    for name, components in monge_point_parts(chart, k).items():
        prolonged = prolong_point_field(chart, VectorField(chart, components))
        prolonged.name = name
        fields.append(prolonged)
    return fields


def monge_weights(k):
    '''
    Eigenvalues of ad(S1 + S2): W_i^j -> i - k - 1, X and L -> -1, the rest 0.
    '''
    weights = {'X': -1, 'L': -1, 'R': 0, 'S1': 0, 'S2': 0, 'T': 0}
    for j in range(k):
        for i in range(k - j):
            weights['W_%d^%d' % (i, j)] = i - k - 1
    return weights


def monge_biweights(k):
    '''
    Eigenvalues of the pair (ad S1, ad S2) on the Monge basis.
    '''
    weights = {'X': (-1, 0), 'L': (0, -1), 'R': (1, -1), 'T': (-1, 1), 'S1': (0, 0), 'S2': (0, 0)}
    for j in range(k):
        for i in range(k - j):
            weights['W_%d^%d' % (i, j)] = (i + j - k, -j - 1)
    return weights


def solver_weights(k):
    """
    Coordinate weights on the Monge chart for the weighted polynomial ansatz: x and lambda get 1,
    w^j_i gets k + 1 - i. Every basis field is then homogeneous of weight <= 0.
    """
    weights = {'x': 1, 'lambda': 1}
    for j in range(k):
        for i in range(k - j):
            weights[_w(j, i)] = k + 1 - i
    return weights


def reduction_rename(k):
    '''
    Monge coordinate -> coordinate of the reduction of E_k on the slice y = 0: w^j_i -> u_ij.
    '''
    rename = {'x': 'x', 'lambda': 'lambda'}
    for j in range(k):
        for i in range(k - j):
            rename[_w(j, i)] = jet_name('u', (i, j))
    return rename


def displayed_brackets(k):
    """
    The commutation relations of the Monge basis that determine its structure.

    Returns
    -------
        brackets : dictionary
            (a, b) -> {c: rational}; only non-zero relations are listed.
    """
    W = _label
    one = QQ.one
    brackets = {('X', 'L'): {W(k - 1, 0): one}, ('X', 'R'): {'L': one}, ('L', 'S2'): {'L': one},
                ('L', 'T'): {'X': one}, ('R', 'T'): {'S1': one, 'S2': -one},
                ('R', 'S1'): {'R': -one}, ('R', 'S2'): {'R': one},
                ('T', 'S1'): {'T': one}, ('T', 'S2'): {'T': -one}}
    for j in range(k):
        for i in range(k - j):
            if i > 0:
                brackets[('X', W(i, j))] = {W(i - 1, j): one}
                brackets[('L', W(i, j))] = {W(i - 1, j + 1): QQ(-(j + 1))}
            if i + j + 1 < k:
                brackets[(W(i, j), 'R')] = {W(i, j + 1): QQ((j + 1) * (i + j + 1 - k))}
            brackets[(W(i, j), 'S1')] = {W(i, j): QQ(k - i - j)}
            brackets[(W(i, j), 'S2')] = {W(i, j): QQ(j + 1)}
            if j > 0:
                brackets[(W(i, j), 'T')] = {W(i, j - 1): -one}
    return brackets

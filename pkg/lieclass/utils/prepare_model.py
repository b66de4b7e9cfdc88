import io
import json

from ..geometry import Chart, VectorField, Distribution
from ..graded import GradedLieAlgebra, jacobi_check
from ..jets import EquationChart, parse_multi_index
from .errors import ParseError, StructureError
from .exact import to_rational
from .reports import Verdict


def load_json(path):
    '''
    Reads a UTF-8 JSON document; syntax errors become ParseErrors with the character offset.
    '''
    with io.open(path, encoding='utf-8') as f:
        text = f.read()
    try:
        return json.loads(text)
    except ValueError as e:
        position = getattr(e, 'pos', 0)
        line = text[max(0, position - 30):position + 30].replace('\n', ' ')
        raise ParseError('invalid JSON in %s: %s' % (path, getattr(e, 'msg', str(e))), line,
                         min(position, 30))


def _jet_key(name, dependents, n):
    """
    (dependent, multi-index) of a key written 'u:2,1' or as a jet name such as 'u_21' or 'w0_3'.
    """
    if ':' in name:
        dependent, index = name.split(':', 1)
        if dependent not in dependents:
            raise StructureError("unknown dependent variable '%s'" % dependent)
        return dependent, parse_multi_index(index, n)
    for dependent in sorted(dependents, key=len, reverse=True):
        if name == dependent:
            return dependent, (0,) * n
        if name.startswith(dependent + '_'):
            rest = name[len(dependent) + 1:]
            if n == 1 and rest.isdigit():
                return dependent, (int(rest),)
            return dependent, parse_multi_index(rest.replace('_', ',') if '_' in rest else rest, n)
    raise StructureError("'%s' is not a jet of %s" % (name, ', '.join(dependents)))


class PrepareModel(object):
    '''
    Turns a model document into the objects the analysis works on.

    Parameters
    ----------
        data: dictionary
            Either a distribution ({'chart', 'generators', 'point'}), an equation in standard form
            ({'base', 'order', 'parameters', 'top'}) or a mixed-order equation
            ({'base', 'dependents', 'orders', 'parameters', 'expressions'}).
        name: string, optional
            Label used when the document has no 'name' entry.

    Attributes
    -------
        kind: string
            'distribution' or 'equation'.
        model: Distribution or EquationChart
        point: dictionary or None
            Coordinate -> rational, when the document fixes a point.
    '''
    def __init__(self, data, name=None):
        if not isinstance(data, dict):
            raise StructureError('a model document must be a JSON object')
        self.name = data.get('name', name or 'model')
        self.point = None
        if 'chart' in data:
            self.kind = 'distribution'
            self.model = self._distribution(data)
            if 'point' in data:
                self.point = dict((c, to_rational(v)) for c, v in data['point'].items())
                for c in self.point:
                    self.model.chart.check(c)
        elif 'base' in data:
            self.kind = 'equation'
            self.model = self._equation(data)
            if 'point' in data:
                self.point = dict((c, to_rational(v)) for c, v in data['point'].items())
        else:
            raise StructureError("a model document needs either 'chart' or 'base'")

    def _distribution(self, data):
        chart = Chart(self.name, data['chart'], data.get('aliases'))
        generators = data.get('generators')
        if not generators:
            raise StructureError("a distribution needs a non-empty 'generators' list")
        fields = [VectorField(chart, g, name='v%d' % (i + 1)) for i, g in enumerate(generators)]
        return Distribution(chart, fields, name=self.name)

    def _equation(self, data):
        base = data['base']
        parameters = data.get('parameters', [])
        if 'top' in data:
            return EquationChart.from_top(base, int(data['order']), data['top'], parameters,
                                          data.get('dependent', 'u'), self.name)
        dependents = data.get('dependents', ['u'])
        orders = data.get('orders', data.get('order', 1))
        expressions = dict()
        for key, value in data.get('expressions', dict()).items():
            expressions[_jet_key(key, dependents, len(base))] = value
        return EquationChart(base, dependents, orders, parameters, expressions, self.name, data.get('aliases'))


def load_model(path):
    '''
    Reads a model file; returns a PrepareModel.
    '''
    return PrepareModel(load_json(path), name=path.rsplit('/', 1)[-1].rsplit('.', 1)[0])


def load_generating_functions(path):
    """
    A JSON list of expressions, or of {'name', 'f'} objects.

    Returns
    -------
        functions : list of (name, expression)
    """
    data = load_json(path)
    if isinstance(data, dict):
        data = data.get('functions', [])
    result = []
    for entry in data:
        if isinstance(entry, dict):
            result.append((entry.get('name', entry['f']), entry['f']))
        else:
            result.append((str(entry), str(entry)))
    return result


def load_fields(path, chart):
    """
    A JSON list of {'name', 'components'} objects (or bare component maps) on the given chart.
    """
    data = load_json(path)
    if isinstance(data, dict):
        data = data.get('fields', [])
    fields = []
    for i, entry in enumerate(data):
        if 'components' in entry:
            fields.append(VectorField(chart, entry['components'], name=entry.get('name', 'Y%d' % (i + 1))))
        else:
            fields.append(VectorField(chart, entry, name='Y%d' % (i + 1)))
    return fields


def load_algebra(path):
    return GradedLieAlgebra.from_dict(load_json(path))


def _table_algebra(data):
    brackets = dict()
    for entry in data.get('brackets', []):
        brackets[(entry['x'], entry['y'])] = dict((c, to_rational(q)) for c, q in entry['value'])
    return GradedLieAlgebra({0: data['basis']}, brackets)


def validate_report(data):
    """
    Re-checks a machine-readable report.

    Returns
    -------
        verdict : Verdict
            Tables: antisymmetry (no conflicting entries) and Jacobi. Growth vectors: positive entries
            adding up to the ranks. Symmetry, Tanaka and restriction reports: dimensions consistent
            with the listed bases.
    """
    kind = data.get('kind')
    name = 'validate %s' % kind
    try:
        if kind == 'lie_algebra':
            return Verdict(name, bool(jacobi_check(GradedLieAlgebra.from_dict(data))))
        if kind in ('commutators', 'symmetries'):
            table = data if kind == 'commutators' else data.get('table')
            if kind == 'symmetries' and data['dimension'] != len(data['basis']):
                return Verdict(name, False, {'dimension': data['dimension'], 'basis': len(data['basis'])})
            if table is None:
                return Verdict(name, True)
            if table['closed'] != (not table['escaped']):
                return Verdict(name, False, {'closed': table['closed'], 'escaped': table['escaped']})
            verdict = jacobi_check(_table_algebra(table))
            return Verdict(name, bool(verdict), verdict.witness)
        if kind == 'flags':
            for key in ('weak', 'strong'):
                flag = data.get(key)
                if flag is None:
                    continue
                growth, ranks = flag['growth_vector'], flag['ranks']
                partial = [sum(growth[:i + 1]) for i in range(len(growth))]
                if any(g <= 0 for g in growth) or partial != ranks:
                    return Verdict(name, False, {key: growth})
            return Verdict(name, True)
        if kind == 'tanaka':
            total = sum(data['negative_dims']) + sum(data['layers'].values())
            return Verdict(name, total == data['dimension'], None if total == data['dimension'] else
                           {'dimension': data['dimension'], 'sum': total})
        if kind == 'lbt':
            zero = sorted(p['name'] for p in data['pushforwards'] if p['field'] is None)
            passed = zero == sorted(data['kernel']) and data['rank'] <= len(data['pushforwards'])
            return Verdict(name, passed, None if passed else {'kernel': data['kernel'], 'rank': data['rank']})
        if kind == 'nondegeneracy':
            verdicts = [v['passed'] for v in data['verdicts'].values()]
            expected = data['stage'] is None and bool(verdicts) and all(verdicts)
            return Verdict(name, expected == data['sufficiently_nondegenerate'])
        if kind == 'verdict':
            return Verdict(name, 'passed' in data and 'name' in data)
    except (KeyError, TypeError) as e:
        return Verdict(name, False, {'missing': str(e)})
    except StructureError as e:
        return Verdict(name, False, {'structure': str(e)})
    raise StructureError("cannot validate a report of kind '%s'" % kind)

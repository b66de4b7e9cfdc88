'''
Value classes for verdicts and reports. Every report renders as text and as a
JSON-ready dictionary with sorted, deterministic content.
'''
import pandas as pd
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from .exact import format_function, rational_string


def jsonable(value):
    '''
    Converts exact values, fields and containers into plain JSON types; rationals become 'p/q' strings.
    '''
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (FracElement, PolyElement)):
        return format_function(value)
    if hasattr(value, 'to_dict'):
        return value.to_dict()
    if isinstance(value, dict):
        return dict((str(k) if not isinstance(k, tuple) else ','.join(str(i) for i in k), jsonable(v))
                    for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    try:
        return rational_string(value)
    except Exception:
        return str(value)


def combination_text(combination):
    '''
    Text form of a linear combination {label: rational}, e.g. 'S1 - S2'.
    '''
    if not combination:
        return '0'
    parts = []
    for label, coefficient in combination.items():
        text = rational_string(coefficient)
        if text == '1':
            term = label
        elif text == '-1':
            term = '-' + label
        else:
            term = '%s*%s' % (text if '/' not in text else '(%s)' % text, label)
        parts.append(term)
    return ' + '.join(parts).replace('+ -', '- ')


class Report(object):
    '''
    Base class: subclasses implement to_dict and to_text; ``passed`` summarizes the verdicts.
    '''
    kind = 'report'

    @property
    def passed(self):
        return True

    def to_dict(self):
        raise NotImplementedError

    def to_text(self):
        return str(self.to_dict())

    def __str__(self):
        return self.to_text()


class Verdict(Report):
    '''
    Outcome of one check.

    Parameters
    ----------
        name: string
            Name of the check, e.g. 'jacobi' or '(R)'.
        passed: boolean
            The outcome.
        witness: optional
            A counterexample or residual when the check fails.
        details: dictionary, optional
            Extra data (ranks, constraints, ...).
    '''
    kind = 'verdict'

    def __init__(self, name, passed, witness=None, details=None):
        self.name = name
        self._passed = bool(passed)
        self.witness = witness
        self.details = details or dict()

    @property
    def passed(self):
        return self._passed

    def __bool__(self):
        return self._passed

    __nonzero__ = __bool__

    def to_dict(self):
        result = {'kind': self.kind, 'name': self.name, 'passed': self._passed}
        if self.witness is not None:
            result['witness'] = jsonable(self.witness)
        if self.details:
            result['details'] = jsonable(self.details)
        return result

    def to_text(self):
        text = '%s: %s' % (self.name, 'pass' if self._passed else 'fail')
        if self.witness is not None:
            text += ' (witness: %s)' % (jsonable(self.witness),)
        return text

    def __repr__(self):
        return 'Verdict(%s)' % self.to_text()


class FlagReport(Report):
    '''
    Weak and strong growth vectors of a distribution.
    '''
    kind = 'flags'

    def __init__(self, model, weak=None, strong=None, chart=None):
        self.model = model
        self.weak = weak
        self.strong = strong
        self.chart = chart

    @property
    def passed(self):
        flags = [f for f in (self.weak, self.strong) if f is not None]
        return all(all(g > 0 for g in f.growth_vector) for f in flags)

    def to_dict(self):
        result = {'kind': self.kind, 'model': self.model}
        if self.chart is not None:
            result['chart'] = list(self.chart.coordinates)
        if self.weak is not None:
            result['weak'] = self.weak.to_dict()
        if self.strong is not None:
            result['strong'] = self.strong.to_dict()
        return result

    def to_text(self):
        flags = [f for f in (self.weak, self.strong) if f is not None]
        length = max(len(f.growth_vector) for f in flags)
        data = [[str(g) for g in f.growth_vector] + [''] * (length - len(f.growth_vector)) for f in flags]
        frame = pd.DataFrame(data, index=[f.kind for f in flags],
                             columns=['step %d' % (c + 1) for c in range(length)])
        return 'growth vectors of %s\n%s' % (self.model, frame.to_string())


class CommutatorTable(Report):
    '''
    Structure constants of a list of named vector fields.

    Parameters
    ----------
        names: list of strings
            Basis names in order.
        constants: dictionary
            (name_a, name_b) -> {name_c: rational} for the non-zero brackets with a before b.
        escaped: list of (name_a, name_b) pairs
            Brackets that do not lie in the span of the basis.
    '''
    kind = 'commutators'

    def __init__(self, names, constants, escaped=()):
        self.names = list(names)
        self.constants = dict(constants)
        self.escaped = list(escaped)

    @property
    def closed(self):
        return not self.escaped

    @property
    def passed(self):
        return self.closed

    def bracket(self, a, b):
        if (a, b) in self.constants:
            return dict(self.constants[(a, b)])
        if (b, a) in self.constants:
            return dict((c, -q) for c, q in self.constants[(b, a)].items())
        return dict()

    def to_frame(self):
        '''
        Square pandas table of bracket texts, rows [a, .] and columns [., b].
        '''
        data = [[combination_text(self.bracket(a, b)) for b in self.names] for a in self.names]
        return pd.DataFrame(data, index=self.names, columns=self.names)

    def nontrivial(self):
        return [(a, b, self.constants[(a, b)]) for i, a in enumerate(self.names) for b in self.names[i + 1:]
                if (a, b) in self.constants]

    def to_dict(self):
        return {'kind': self.kind, 'basis': self.names, 'closed': self.closed,
                'brackets': [{'x': a, 'y': b, 'value': [[c, rational_string(q)] for c, q in value.items()]}
                             for a, b, value in self.nontrivial()],
                'escaped': [list(pair) for pair in self.escaped]}

    def to_text(self):
        lines = ['[%s, %s] = %s' % (a, b, combination_text(value)) for a, b, value in self.nontrivial()]
        if self.escaped:
            lines.append('not closed: %s' % ', '.join('[%s, %s]' % pair for pair in self.escaped))
        return '\n'.join(lines) if lines else 'all brackets vanish'


class NondegeneracyReport(Report):
    '''
    The non-degeneracy conditions of an equation with the intermediate ranks.

    Attributes
    -------
        s: int
            First strong-flag step with a jump of 2 (None when the reduction is Goursat).
        verdicts: dictionary
            '(N)', '(R)', '(R+)' and '(G)' or "(G')" -> Verdict.
        ranks: dictionary
            Ranks of the intermediate distributions.
        stage: string
            The stage that raised a genericity error, if any.
    '''
    kind = 'nondegeneracy'

    def __init__(self, model, s=None, strong_growth=None, verdicts=None, ranks=None, stage=None, message=None):
        self.model = model
        self.s = s
        self.strong_growth = strong_growth
        self.verdicts = verdicts or dict()
        self.ranks = ranks or dict()
        self.stage = stage
        self.message = message

    @property
    def passed(self):
        return self.stage is None and bool(self.verdicts) and all(self.verdicts.values())

    def to_dict(self):
        return {'kind': self.kind, 'model': self.model, 's': self.s, 'strong_growth': self.strong_growth,
                'verdicts': dict((name, v.to_dict()) for name, v in self.verdicts.items()),
                'ranks': jsonable(self.ranks), 'stage': self.stage, 'message': self.message,
                'sufficiently_nondegenerate': self.passed}

    def to_text(self):
        lines = ['non-degeneracy of %s' % self.model]
        if self.stage is not None:
            lines.append('stopped at stage %s: %s' % (self.stage, self.message))
        if self.strong_growth is not None:
            lines.append('strong growth %s, s = %s' % (tuple(self.strong_growth), self.s))
        for name in sorted(self.verdicts):
            lines.append('  ' + self.verdicts[name].to_text())
        if self.ranks:
            lines.append(pd.Series(self.ranks, name='rank').to_string())
        lines.append('sufficiently non-degenerate: %s' % ('yes' if self.passed else 'no'))
        return '\n'.join(lines)


class SymmetryReport(Report):
    '''
    A verified symmetry basis with its commutator table, gradings and the Tanaka bound.
    '''
    kind = 'symmetries'

    def __init__(self, model, names, verdicts, table=None, gradings=None, upper_bound=None):
        self.model = model
        self.names = list(names)
        self.verdicts = dict(verdicts)
        self.table = table
        self.gradings = gradings or dict()
        self.upper_bound = upper_bound

    @property
    def dimension(self):
        return len(self.names)

    @property
    def certified(self):
        return self.upper_bound is not None and self.upper_bound == self.dimension and self.passed

    @property
    def passed(self):
        checks = list(self.verdicts.values()) + list(self.gradings.values())
        return all(checks) and (self.table is None or self.table.closed)

    def to_dict(self):
        return {'kind': self.kind, 'model': self.model, 'basis': self.names, 'dimension': self.dimension,
                'verdicts': dict((n, v.to_dict()) for n, v in self.verdicts.items()),
                'table': self.table.to_dict() if self.table is not None else None,
                'gradings': dict((n, v.to_dict()) for n, v in self.gradings.items()),
                'tanaka_upper_bound': self.upper_bound,
                'verdict': 'dimension certified' if self.certified else 'not certified'}

    def to_text(self):
        failed = [n for n, v in self.verdicts.items() if not v]
        lines = ['%d fields checked on %s, %d failed' % (self.dimension, self.model, len(failed))]
        for name in failed:
            lines.append('  ' + self.verdicts[name].to_text())
        if self.table is not None:
            lines.append(self.table.to_text())
        for name, verdict in self.gradings.items():
            lines.append(verdict.to_text())
        if self.upper_bound is not None:
            lines.append('Tanaka upper bound %d, %s' % (self.upper_bound,
                                                          'dimension certified' if self.certified else 'not certified'))
        return '\n'.join(lines)


class LBTReport(Report):
    '''
    Pushforwards of external symmetries to the reduction.

    Attributes
    -------
        pushforwards: list of (name, VectorField or None)
            None marks a symmetry in the kernel.
        kernel: list of strings
            Names of the symmetries with zero pushforward.
        first_integrals: int or None
            Chart dimension of the reduction minus the stable rank of its weak flag; None when the
            flag was cut at max_steps.
        matched: Verdict or None
            Comparison with a given basis of symmetries of the reduction.
    '''
    kind = 'lbt'

    def __init__(self, model, pushforwards, kernel, rank, first_integrals, matched=None):
        self.model = model
        self.pushforwards = list(pushforwards)
        self.kernel = list(kernel)
        self.rank = rank
        self.first_integrals = first_integrals
        self.matched = matched

    @property
    def injective(self):
        return not self.kernel and self.rank == len(self.pushforwards)

    @property
    def surjectivity_evidence(self):
        if self.first_integrals is not None and self.first_integrals > 0:
            return 'negative'
        if self.matched is not None:
            return 'positive' if self.matched else 'negative'
        return 'inconclusive'

    @property
    def passed(self):
        return self.injective and self.surjectivity_evidence != 'negative'

    def to_dict(self):
        return {'kind': self.kind, 'model': self.model,
                'pushforwards': [{'name': n, 'field': v.to_dict() if v is not None else None}
                                 for n, v in self.pushforwards],
                'kernel': self.kernel, 'rank': self.rank, 'injective': self.injective,
                'first_integrals': self.first_integrals,
                'surjectivity_evidence': self.surjectivity_evidence,
                'matched': self.matched.to_dict() if self.matched is not None else None}

    def to_text(self):
        lines = ['restriction map for %s: %d symmetries, image rank %d' % (self.model, len(self.pushforwards), self.rank)]
        if self.kernel:
            lines.append('kernel: %s' % ', '.join(self.kernel))
        lines.append('injective: %s' % ('yes' if self.injective else 'no'))
        count = 'unknown' if self.first_integrals is None else self.first_integrals
        lines.append('first integrals of the reduction: %s' % count)
        lines.append('surjectivity evidence: %s' % self.surjectivity_evidence)
        return '\n'.join(lines)


class Summary(Report):
    '''
    Named results of one computation, e.g. the generators of a Cauchy space or a solver basis.

    Parameters
    ----------
        kind: string
        model: string
        entries: dictionary
            Name -> value; values are converted with jsonable.
        verdicts: dictionary, optional
            Name -> Verdict; the summary passes when all of them do.
    '''
    def __init__(self, kind, model, entries, verdicts=None):
        self.kind = kind
        self.model = model
        self.entries = dict(entries)
        self.verdicts = dict(verdicts or dict())

    @property
    def passed(self):
        return all(self.verdicts.values())

    def to_dict(self):
        result = {'kind': self.kind, 'model': self.model, 'passed': self.passed}
        result.update((key, jsonable(value)) for key, value in self.entries.items())
        if self.verdicts:
            result['verdicts'] = dict((name, v.to_dict()) for name, v in self.verdicts.items())
        return result

    def to_text(self):
        lines = ['%s of %s' % (self.kind, self.model)]
        for key in sorted(self.entries):
            value = self.entries[key]
            if isinstance(value, list) and value and not isinstance(value[0], (int, str)):
                lines.append('%s:' % key)
                lines.extend('  %r' % (item,) for item in value)
            else:
                lines.append('%s: %s' % (key, value if isinstance(value, str) else jsonable(value)))
        for name in sorted(self.verdicts):
            lines.append(self.verdicts[name].to_text())
        return '\n'.join(lines)

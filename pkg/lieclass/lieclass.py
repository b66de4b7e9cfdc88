import os
import io
import json

import numpy as np
import yaml

from .geometry import cauchy_characteristics, symbol_algebra
from .graded import build_nk, tanaka_prolong
from .jets import EquationChart, is_external_symmetry
from .analysis import (reduce_equation, flag_report, nondegeneracy_suite, verify_symmetry_of_distribution,
                       commutator_table, table_jacobi, grading_check, solve_polynomial_symmetries, symmetry_report,
                       lbt_report)
from .symmetries import (ek_generating_functions, fk_generating_functions, monge_symmetries, monge_weights,
                         monge_biweights, solver_weights, reduction_rename)
from .utils import checkups
from .utils.errors import StructureError
from .utils.family import Family, monge_y
from .utils.prepare_model import PrepareModel, load_model
from .utils.reports import Summary, SymmetryReport


DEFAULTS = {'seed': 0, 'max_steps': 12, 'max_degree': 4,
            'solver': {'degree': 1, 'max_rows': 20000, 'max_cols': 4000},
            'point_redraws': 20, 'verbose': False, 'output_dir': None}


def load_config(path):
    '''
    Reads a YAML configuration file.
    '''
    with io.open(path, encoding='utf-8') as f:
        return yaml.safe_load(f) or dict()


class LieClass(object):
    '''
    The LieClass session is the object the user works with: it holds one model system, the
    configuration and the random generator, and has one method per analysis:
    - 'flags', 'cauchy', 'reduce' and 'symbol' describe the distribution of the model,
    - 'tanaka' prolongs its symbol (or a given algebra),
    - 'check_symmetry', 'commutators', 'grading' and 'solve_sym' deal with symmetries,
    - 'nondeg' runs the non-degeneracy conditions and 'lbt' the restriction map,
    - 'save_report' writes any report as JSON.

    Parameters
    ----------
        **kwargs: either a list of parameters or a dict
            Model source: 'model' (catalog name) with 'params', 'model_file' (JSON path) or 'system'
            (an EquationChart or Distribution). Configuration: either 'config' (a dict or YAML path) or the
            configuration keys themselves:
            seed: int - default 0
                Seed of the numpy generator that draws every generic point.
            max_steps: int - default 12
                Length limit of derived flags and ad-closures.
            max_degree: int - default 4
                Last degree of the Tanaka prolongation.
            solver: dictionary - default {'degree': 1, 'max_rows': 20000, 'max_cols': 4000}
                Polynomial symmetry solver degree and matrix limits.
            point_redraws: int - default 20
                Number of random points tried before a GenericityError.
            verbose: boolean - default False
                Print one line per pipeline stage.
            output_dir: string - default None
                Directory for saved reports.

    Attributes
    -------
        config: dictionary
            The completed configuration.
        system: EquationChart or Distribution
            The model.
        name: string
            Model label used in reports.
        family: string or None
            Catalog name of the model, if it came from the catalog.
        params: dictionary
            Catalog parameters.
        rng: numpy.random.Generator
    '''
    def __init__(self, **kwargs):
        kwargs = dict(kwargs)
        model = kwargs.pop('model', None)
        params = kwargs.pop('params', None) or dict()
        model_file = kwargs.pop('model_file', None)
        system = kwargs.pop('system', None)
        # depending on whether the user has given a dict as input or multiple arguments
        if 'config' in kwargs:
            config = kwargs['config']
            if isinstance(config, str):
                config = load_config(config)
        else:
            config = kwargs
        self.config = checkups(DEFAULTS, config)
        self.verbose = bool(self.config['verbose'])
        self.rng = np.random.default_rng(int(self.config['seed']))
        self.family = None
        self.params = dict((k, v) for k, v in params.items() if v is not None)
        self.point = None
        self._reduction = None
        sources = [s for s in (model, model_file, system) if s is not None]
        if len(sources) > 1:
            raise StructureError('exactly one model source is allowed')
        if model is not None:
            self.family = model
            self.system = Family(model).build(**self.params)
            self.name = self._label()
        elif model_file is not None:
            prepared = load_model(model_file)
            self.system, self.point, self.name = prepared.model, prepared.point, prepared.name
        elif system is not None:
            if isinstance(system, dict):
                prepared = PrepareModel(system)
                self.system, self.point, self.name = prepared.model, prepared.point, prepared.name
            else:
                self.system = system
                self.name = getattr(system, 'name', None) or 'model'
        else:
            self.system = None
            self.name = None
        if self.config['output_dir'] is not None and not os.path.exists(self.config['output_dir']):
            os.mkdir(self.config['output_dir'])

    def _label(self):
        if not self.params:
            return self.family
        return '%s(%s)' % (self.family, ', '.join('%s=%s' % (k, self.params[k]) for k in sorted(self.params)))

    def _require(self):
        if self.system is None:
            raise StructureError('this command needs a model (catalog name or model file)')
        return self.system

    @property
    def is_equation(self):
        return isinstance(self._require(), EquationChart)

    def reduction(self):
        '''
        The cached reduction of the equation by its Cauchy characteristics.
        '''
        if not self.is_equation:
            raise StructureError('%s is a distribution, not an equation' % self.name)
        if self._reduction is None:
            if self.verbose:
                print('reducing %s by its Cauchy characteristics ...' % self.name)
            self._reduction = reduce_equation(self.system)
        return self._reduction

    @property
    def distribution(self):
        '''
        The distribution the internal analyses work on: the reduction Δ of an equation, or the model itself.
        '''
        if self.is_equation:
            return self.reduction().distribution
        return self.system

    def flags(self, weak=True, strong=True, on_equation=False):
        distribution = self.system.cartan() if (on_equation and self.is_equation) else self.distribution
        if self.verbose:
            print('computing derived flags ...')
        report = flag_report(distribution, self.config['max_steps'], self.name)
        if not weak:
            report.weak = None
        if not strong:
            report.strong = None
        return report

    def cauchy(self):
        if self.is_equation:
            cartan = self.system.cartan()
        else:
            cartan = self.system
        if self.verbose:
            print('computing Cauchy characteristics ...')
        cauchy = cauchy_characteristics(cartan)
        return Summary('cauchy', self.name, {'rank': cauchy.rank, 'generators': cauchy.generators,
                                             'chart': list(cartan.chart.coordinates)})

    def reduce(self):
        reduction = self.reduction()
        report = flag_report(reduction.distribution, self.config['max_steps'], self.name)
        entries = reduction.to_dict()
        entries['generators'] = reduction.distribution.generators
        del entries['distribution']
        entries['weak_growth'] = report.weak.growth_vector
        entries['strong_growth'] = report.strong.growth_vector
        return Summary('reduction', self.name, entries)

    def symbol(self):
        if self.verbose:
            print('extracting the symbol algebra ...')
        algebra = symbol_algebra(self.distribution, self.point, self.rng, self.config['max_steps'],
                                 self.config['point_redraws'])
        return Summary('symbol', self.name, {'layer_dims': algebra.layer_dims(), 'algebra': algebra.to_dict(),
                                             'point': algebra.point})

    def tanaka(self, algebra=None, builtin_k=None, max_degree=None):
        """
        Tanaka prolongation of a given algebra, of n_k, or of the symbol of the model.

        Returns
        -------
            result : TanakaResult
        """
        max_degree = self.config['max_degree'] if max_degree is None else max_degree
        if algebra is None and builtin_k is not None:
            algebra = build_nk(builtin_k)
        if algebra is None:
            algebra = symbol_algebra(self.distribution, self.point, self.rng, self.config['max_steps'],
                                     self.config['point_redraws'])
        return tanaka_prolong(algebra, max_degree, self.verbose)

    def listed_functions(self):
        '''
        The listed generating functions of E_k (ek, cartan-1910) or F_k (fk), else None.
        '''
        if self.family == 'ek':
            return ek_generating_functions(self.params['k'])
        if self.family == 'cartan-1910':
            return ek_generating_functions(2)
        if self.family == 'fk':
            if self.params['m'] == 1:
                return ek_generating_functions(self.params['k'])
            return fk_generating_functions(self.params['k'], self.params['m'])
        return None

    def listed_fields(self):
        """
        The listed symmetries of Δ with their grading and bi-grading, or None.

        For ek the Monge fields of Y_k are moved to the reduction chart through w^j_i -> u_ij.
        """
        if self.family == 'monge-y' and self.params.get('m', 1) == 1:
            k = self.params['k']
            return monge_symmetries(self.system, k), monge_weights(k), monge_biweights(k)
        if self.family == 'ek':
            k = self.params['k']
            rename = reduction_rename(k)
            chart = self.reduction().chart
            fields = [f.transport(chart, rename) for f in monge_symmetries(monge_y(k), k)]
            return fields, monge_weights(k), monge_biweights(k)
        return None

    def default_solver_weights(self):
        if self.family == 'monge-y' and self.params.get('m', 1) == 1:
            return solver_weights(self.params['k'])
        if self.family == 'ek':
            k = self.params['k']
            rename = reduction_rename(k)
            return dict((rename[c], w) for c, w in solver_weights(k).items())
        return None

    def check_symmetry(self, functions=None, fields=None):
        """
        Checks generating functions as external symmetries of the equation, or fields as symmetries of Δ.
        """
        if fields is not None:
            distribution = self.distribution
            verdicts = dict((f.name, verify_symmetry_of_distribution(distribution, f)) for f in fields)
            return SymmetryReport(self.name, [f.name for f in fields], verdicts)
        if functions is None:
            functions = self.listed_functions()
            if functions is None:
                raise StructureError('no listed symmetries for %s; give generating functions or fields' % self.name)
        if not self.is_equation:
            raise StructureError('generating functions need an equation model')
        verdicts = dict()
        for name, f in functions:
            if self.verbose:
                print('checking %s ...' % name)
            verdicts[name] = is_external_symmetry(self.system, f)
        return SymmetryReport(self.name, [name for name, _ in functions], verdicts)

    def commutators(self, fields=None):
        """
        Commutator table of the given fields; for listed models, the full symmetry report with
        gradings and the Tanaka bound.
        """
        if fields is not None:
            return commutator_table(fields)
        listed = self.listed_fields()
        if listed is None:
            raise StructureError('no listed symmetry basis for %s; give fields' % self.name)
        fields, weights, biweights = listed
        return symmetry_report(self.name, self.distribution, fields, weights, biweights, self.rng,
                               self.config['max_degree'], self.config['max_steps'], self.config['point_redraws'])

    def grading(self, weights=None, biweights=None, fields=None):
        if fields is None:
            listed = self.listed_fields()
            if listed is None:
                raise StructureError('no listed symmetry basis for %s; give fields and weights' % self.name)
            fields, default_weights, default_biweights = listed
            weights = default_weights if weights is None else weights
            biweights = default_biweights if biweights is None else biweights
        table = commutator_table(fields)
        verdicts = {'jacobi': table_jacobi(table)}
        if weights is not None:
            verdicts['grading'] = grading_check(table, weights, name='grading')
        if biweights is not None:
            verdicts['bi-grading'] = grading_check(table, biweights, total=weights, name='bi-grading')
        return Summary('grading', self.name, {'basis': table.names, 'closed': table.closed}, verdicts)

    def nondeg(self):
        if not self.is_equation:
            raise StructureError('the non-degeneracy conditions need an equation model')
        return nondegeneracy_suite(self.system, self.config['max_steps'], self.verbose)

    def solve_sym(self, degree=None, weights='auto'):
        """
        Polynomial symmetries of Δ up to the given (weighted) degree.

        Parameters
        ----------
            degree : int, optional
                Defaults to config['solver']['degree'].
            weights : dictionary, 'auto' or None
                'auto' uses the grading weights of the E_k family when available, None plain total degree.
        """
        solver = self.config['solver']
        degree = solver['degree'] if degree is None else degree
        if weights == 'auto':
            weights = self.default_solver_weights()
        if self.verbose:
            print('solving for polynomial symmetries of degree %d ...' % degree)
        fields = solve_polynomial_symmetries(self.distribution, degree, weights, solver['max_rows'],
                                             solver['max_cols'], self.verbose)
        return Summary('solve-sym', self.name, {'degree': degree, 'weighted': weights is not None,
                                                'dimension': len(fields), 'basis': fields})

    def lbt(self, functions=None):
        if functions is None:
            functions = self.listed_functions()
            if functions is None:
                raise StructureError('no listed external symmetries for %s; give generating functions' % self.name)
        basis = None
        if self.family == 'ek':
            basis = self.listed_fields()[0]
        return lbt_report(self.system, functions, basis, self.reduction(), self.config['max_steps'])

    def save_report(self, report, path):
        '''
        Writes report.to_dict() as sorted-key JSON; relative paths go to output_dir when it is set.
        '''
        if self.config['output_dir'] is not None and not os.path.isabs(path):
            path = os.path.join(self.config['output_dir'], path)
        with io.open(path, 'w', encoding='utf-8') as f:
            f.write(json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False))
            f.write(u'\n')
        return path

    def __repr__(self):
        return 'LieClass(%s)' % (self.name,)

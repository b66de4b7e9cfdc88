import warnings
import copy

from .errors import ParseError, GenericityError, DivisionByZeroError
from .exact import to_rational, variable_names


def checkups(defaults, config, section='config'):
    """
    Fills missing configuration entries with defaults and warns about each one.

    Parameters
    ----------
        defaults : dictionary
            Default values; nested dictionaries are completed key by key.
        config : dictionary
            The user-given configuration (left untouched).
        section : string
            Name used in warning messages.

    Returns
    -------
        new_config : dictionary
            A copy of config holding a value for every default key.
    """
    new_config = copy.deepcopy(config) if config else dict()
    for key, value in defaults.items():
        if key not in new_config:
            warnings.simplefilter('always')
            warnings.warn('%s entry %s not defined. Using default value %r.' % (section, key, value), stacklevel=2)
            new_config[key] = copy.deepcopy(value)
        elif isinstance(value, dict) and isinstance(new_config[key], dict):
            new_config[key] = checkups(value, new_config[key], section='%s.%s' % (section, key))
    return new_config


def tokenize(text):
    """
    Splits an expression into (kind, value, position) tokens; kinds are 'int', 'ident' and 'op'.
    """
    tokens = []
    position = 0
    while position < len(text):
        char = text[position]
        if char.isspace():
            position += 1
        elif char.isdigit():
            start = position
            while position < len(text) and text[position].isdigit():
                position += 1
            tokens.append(('int', text[start:position], start))
        elif char.isalpha() or char == '_':
            start = position
            while position < len(text) and (text[position].isalnum() or text[position] == '_'):
                position += 1
            tokens.append(('ident', text[start:position], start))
        elif char in '+-*/^()':
            tokens.append(('op', char, position))
            position += 1
        elif char in '−':
            tokens.append(('op', '-', position))
            position += 1
        else:
            raise ParseError("unexpected character '%s'" % char, text, position)
    tokens.append(('end', '', len(text)))
    return tokens


class ExpressionParser(object):
    '''
    Recursive-descent parser for the model-file expression grammar

        expr    := term (('+' | '-') term)*
        term    := unary (('*' | '/') unary)*
        unary   := '-' unary | power
        power   := atom ('^' int)?
        atom    := int ('/' int)? | ident | '(' expr ')'

    building elements of a chart's rational-function field directly.

    Parameters
    ----------
        field: FracField
            The chart field; identifiers must be its coordinates or aliases of them.
        aliases: dictionary, optional
            Alternative identifier -> coordinate name.
    '''
    def __init__(self, field, aliases=None):
        self.field = field
        self.names = variable_names(field)
        self.aliases = aliases or dict()

    def parse(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        if self._peek()[0] == 'end':
            raise ParseError('empty expression', text, 0)
        value = self._expr()
        kind, token, position = self._peek()
        if kind != 'end':
            raise ParseError("unexpected '%s'" % token, text, position)
        return value

    def _peek(self):
        return self.tokens[self.index]

    def _next(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _expr(self):
        value = self._term()
        while self._peek()[0] == 'op' and self._peek()[1] in '+-':
            op = self._next()[1]
            right = self._term()
            value = value + right if op == '+' else value - right
        return value

    def _term(self):
        value = self._unary()
        while self._peek()[0] == 'op' and self._peek()[1] in '*/':
            _, op, position = self._next()
            right = self._unary()
            if op == '*':
                value = value * right
            else:
                if not right:
                    raise DivisionByZeroError(0, 'division by zero at position %d of %r' % (position, self.text))
                value = value / right
        return value

    def _unary(self):
        if self._peek()[0] == 'op' and self._peek()[1] == '-':
            self._next()
            return -self._unary()
        return self._power()

    def _power(self):
        value = self._atom()
        if self._peek()[0] == 'op' and self._peek()[1] == '^':
            self._next()
            kind, token, position = self._next()
            if kind != 'int':
                raise ParseError('exponent must be a non-negative integer', self.text, position)
            value = value**int(token)
        return value

    def _atom(self):
        kind, token, position = self._next()
        if kind == 'int':
            if (self._peek()[0] == 'op' and self._peek()[1] == '/'
                    and self.tokens[self.index + 1][0] == 'int'):
                self._next()
                _, denominator, denominator_position = self._next()
                if int(denominator) == 0:
                    raise ParseError('rational literal with zero denominator', self.text, denominator_position)
                return self.field(to_rational('%s/%s' % (token, denominator)))
            return self.field(int(token))
        if kind == 'ident':
            name = self.aliases.get(token, token)
            if name not in self.names:
                raise ParseError("unknown variable '%s'" % token, self.text, position)
            return self.field.gens[self.names.index(name)]
        if kind == 'op' and token == '(':
            value = self._expr()
            kind, token, closing = self._next()
            if token != ')':
                raise ParseError("expected ')'", self.text, closing)
            return value
        if kind == 'end':
            raise ParseError('unexpected end of expression', self.text, position)
        raise ParseError("unexpected '%s'" % token, self.text, position)


def parse_expression(text, field, aliases=None):
    """
    Parses an expression of the model-file grammar into the given field.

    Parameters
    ----------
        text : string
            Expression, e.g. 'lambda^3/3 + x*zeta1'.
        field : FracField
            Target chart field.
        aliases : dictionary, optional
            Alternative names for coordinates (p -> u_10, λ -> lambda, ...).

    Returns
    -------
        value : FracElement
    """
    if not isinstance(text, str):
        return field(to_rational(text))
    return ExpressionParser(field, aliases).parse(text)


def parse_rational(text):
    '''
    Parses a rational literal 'int' or 'int/positive-int' (a leading minus is allowed).
    '''
    if not isinstance(text, str):
        return to_rational(text)
    stripped = text.replace(' ', '')
    body = stripped[1:] if stripped.startswith('-') else stripped
    parts = body.split('/')
    if not body or len(parts) > 2 or not all(part.isdigit() for part in parts):
        raise ParseError('malformed rational literal', text, 0)
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ParseError('rational literal with zero denominator', text, text.index('/') + 1)
    return to_rational(stripped)


def random_rational(rng):
    '''
    A nonzero rational +-a/b with a in 1..9 and b in 1..3.
    '''
    numerator = int(rng.integers(1, 10))
    denominator = int(rng.integers(1, 4))
    if rng.integers(0, 2):
        numerator = -numerator
    return to_rational('%d/%d' % (numerator, denominator))


def generic_point(names, rng, accept=None, redraws=20, stage=None):
    """
    Draws a random rational point, redrawing while accept(point) fails.

    Parameters
    ----------
        names : list of strings
            Coordinate names.
        rng : numpy.random.Generator
            The seeded generator of the session.
        accept : callable, optional
            Returns True for usable points. Division by zero during the test counts as failure.
        redraws : int
            Maximal number of draws.

    Returns
    -------
        point : dictionary
            Coordinate name -> QQ.
    """
    for _ in range(redraws):
        point = dict((name, random_rational(rng)) for name in names)
        if accept is None:
            return point
        try:
            if accept(point):
                return point
        except DivisionByZeroError:
            continue
    raise GenericityError('no generic point found in %d draws; re-run with another seed' % redraws, stage=stage)

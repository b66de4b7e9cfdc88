'''
Exceptions raised by lieclass. Every class derives from a built-in exception so
that callers which do not know the package can still catch them.
'''


class UnknownVariableError(KeyError):
    '''
    A coordinate name that is not declared on the chart.
    '''
    def __init__(self, name, known=()):
        self.name = name
        self.known = tuple(known)
        super(UnknownVariableError, self).__init__(name)

    def __str__(self):
        if self.known:
            return "unknown variable '%s' (declared: %s)" % (self.name, ', '.join(self.known))
        return "unknown variable '%s'" % self.name


class DivisionByZeroError(ZeroDivisionError):
    '''
    A denominator became identically zero. The offending denominator is kept in ``denominator``.
    '''
    def __init__(self, denominator, message=None):
        self.denominator = denominator
        if message is None:
            message = 'division by zero: denominator %s vanishes' % (denominator,)
        super(DivisionByZeroError, self).__init__(message)


class ChartMismatchError(ValueError):
    pass


class GenericityError(ValueError):
    '''
    A rank, a point or a slice is degenerate. ``stage`` names the pipeline stage when known.
    '''
    def __init__(self, message, stage=None):
        self.stage = stage
        if stage is not None:
            message = '[%s] %s' % (stage, message)
        super(GenericityError, self).__init__(message)


class BudgetExceededError(RuntimeError):
    '''
    A computation would exceed the configured limits. ``shape`` holds the matrix dimensions when known.
    '''
    def __init__(self, message, shape=None):
        self.shape = shape
        if shape is not None:
            message = '%s (matrix %d x %d)' % (message, shape[0], shape[1])
        super(BudgetExceededError, self).__init__('budget exceeded: ' + message)


class StabilizationError(BudgetExceededError):
    '''
    An iterated bracket construction did not stabilize. ``ranks`` is the partial rank sequence.
    '''
    def __init__(self, message, ranks=()):
        self.ranks = list(ranks)
        super(StabilizationError, self).__init__('%s, partial ranks %s' % (message, self.ranks))


class StructureError(ValueError):
    pass


class CatalogError(ValueError):
    pass


class ParseError(ValueError):
    '''
    Grammar error at 0-based ``position`` of ``text``. The message shows a caret under the position.
    '''
    def __init__(self, message, text='', position=0):
        self.text = text
        self.position = position
        self.reason = message
        super(ParseError, self).__init__('%s at position %d\n  %s\n  %s^' % (message, position, text, ' ' * position))


class ConsistencyError(RuntimeError):
    pass

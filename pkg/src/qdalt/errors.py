"""Exception types raised across the toolkit."""


class QdaltError(Exception):
    """Base class for every error raised by :mod:`qdalt`."""


class FieldRangeError(QdaltError, ValueError):
    pass


class ZeroInverse(QdaltError, ZeroDivisionError):
    pass


class DimensionMismatch(QdaltError, ValueError):
    pass


class LevelError(QdaltError, ValueError):
    """An entry lies outside F_q although the code was declared over F_q."""


class DependentGenerators(QdaltError, ValueError):
    pass


class ParameterInfeasible(QdaltError, ValueError):
    pass


class SamplingExhausted(QdaltError, RuntimeError):
    pass


class SearchExhausted(QdaltError, RuntimeError):
    def __init__(self, message, trials=0, failures=None):
        super().__init__(message)
        self.trials = trials
        self.failures = dict(failures or {})


class NotNormTrace(QdaltError):
    """The candidate code does not behave like a norm-trace code."""


class NoMultiplier(QdaltError):
    pass


class ExtensionFailed(QdaltError):
    pass


class ParseError(QdaltError, ValueError):
    def __init__(self, message, line=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.path = path

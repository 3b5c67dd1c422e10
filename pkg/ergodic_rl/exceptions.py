from typing import Optional, Iterable


class ErgodicRLError(Exception):
    """
    Base class for errors raised by ergodic_rl.
    """
    pass


class ShapeError(ErgodicRLError, ValueError):
    pass


class UnsupportedPolicy(ErgodicRLError, TypeError):
    pass


class NonUniqueStationary(ErgodicRLError, ValueError):
    pass


class EmptyInput(ErgodicRLError, ValueError):
    pass


class InsufficientData(ErgodicRLError, ValueError):
    pass


class FitError(ErgodicRLError, ArithmeticError):
    pass


class DomainError(ErgodicRLError, ValueError):
    pass


class UndefinedGrowth(ErgodicRLError, ArithmeticError):
    pass


class DivergenceError(ErgodicRLError, ArithmeticError):
    pass


class ProbeFailure(ErgodicRLError, RuntimeError):
    pass


class SpecParseError(ErgodicRLError, ValueError):

    def __init__(self, message: str, line: Optional[int] = None):
        """
        Create a new SpecParseError

        :param message: Description of the problem.
        :param line: 1-based line number in the source file, if known.
        """
        self.line = line
        if line is not None:
            message = f'line {line}: {message}'
        super().__init__(message)


class ConfigError(ErgodicRLError, ValueError):
    pass


class UnknownComponent(ErgodicRLError, KeyError):

    def __init__(self, kind: str, name: str, candidates: Iterable[str]):
        """
        Create a new UnknownComponent

        :param kind: Kind of component e.g. 'environment'.
        :param name: The name that failed to resolve.
        :param candidates: Registered names of that kind.
        """
        self.kind = kind
        self.name = name
        self.candidates = sorted(candidates)
        super().__init__(
            f'unknown {kind} {name!r}; must be one of {self.candidates}'
        )

    def __str__(self) -> str:

        return self.args[0]


class SchemaError(ErgodicRLError, ValueError):

    def __init__(self, message: str, column: Optional[str] = None):

        self.column = column
        super().__init__(message)

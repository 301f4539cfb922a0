"""Exception types shared across the package."""


class ParaorthoError(Exception):
    """Base class for all package-specific failures."""


class ProviderRangeError(ParaorthoError, LookupError):
    """A finite coefficient list was queried beyond its last entry."""


class MeasureIngestionError(ParaorthoError, ValueError):
    """A measure cannot be normalized or one of its inputs is malformed."""


class ConditioningError(ParaorthoError, ArithmeticError):
    """The Toeplitz moment matrix lost positive definiteness.

    `index` names the first coefficient whose predicted modulus reached 1.
    """

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class SingularKernelError(ParaorthoError, ZeroDivisionError):
    """A closed-form kernel was requested too close to its diagonal.

    The summed form has no denominator; use mode="sum" instead.
    """


class ResolutionError(ParaorthoError, RuntimeError):
    """Zero search could not isolate the expected number of sign changes."""

    def __init__(self, expected: int, found: int, message: str):
        super().__init__(message)
        self.expected = expected
        self.found = found


class AmbiguousMinimaError(ParaorthoError, RuntimeError):
    """The modulus-minima oracle found an unexpected number of candidates."""

    def __init__(self, minima, message: str):
        super().__init__(message)
        self.minima = list(minima)


class SupportModelError(ParaorthoError, ValueError):
    """A support model is empty or violates its disjointness invariants."""


class PreconditionError(ParaorthoError, ValueError):
    """A check was invoked outside its admissible configuration."""


class DomainError(ParaorthoError, ValueError):
    """A radius formula received a nonpositive distance argument."""


class SpecFileError(ParaorthoError, ValueError):
    """A coefficient / measure / support file failed to parse.

    Carries the offending path and line for CLI diagnostics.
    """

    def __init__(self, path, lineno, message: str):
        super().__init__(f"{path}:{lineno}: {message}" if lineno else f"{path}: {message}")
        self.path = str(path)
        self.lineno = lineno

"""Exception hierarchy shared by every module."""


class GPTError(Exception):
    """Base class for all toolkit errors."""


class DomainError(GPTError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class StructuralError(GPTError, ValueError):
    """Shapes or bases of the operands do not fit together."""


class StateNotFoundError(GPTError, LookupError):
    """An occupation state is not a member of the basis."""


class InfeasibleParametersError(DomainError):
    """Family parameters produce an entry outside [0, 1]."""


class UnnormalizableStateError(DomainError):
    """The requested input state has zero norm (e.g. two fermions in one mode)."""


class ParseError(GPTError):
    """A JSON document does not match the expected schema."""

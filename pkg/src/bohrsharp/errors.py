"""Exception types raised by the library."""


class BohrError(Exception):
    """Base class for all library errors."""


class DomainError(BohrError, ValueError):
    """An argument lies outside the domain where the operation is defined."""


class ContractViolation(BohrError, ValueError):
    """Operands are structurally incompatible (e.g. series orders differ)."""


class DivisionByZeroConstantTerm(BohrError, ZeroDivisionError):
    pass


class NotInSchurClass(BohrError, ValueError):
    """A computed quantity is impossible for a function bounded by 1 on the disk."""


class UndefinedAtZeroRadius(BohrError, ValueError):
    pass


class NonPositiveWeight(BohrError, ValueError):
    pass


class BoundaryMinimum(BohrError, RuntimeError):
    """No interior critical point was found; the minimum sits on the boundary."""

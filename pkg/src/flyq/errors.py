"""Exception types shared across the package."""


class FlyqError(Exception):
    """Base class for all package-specific errors."""


class DomainError(FlyqError, ValueError):
    """A physical parameter is outside the domain an operation supports."""


class DegenerateEnergyError(DomainError):
    """Incident energy exactly matches a plateau height, so the wavenumber
    inside vanishes and plane-wave matching is singular."""


class UnreachableTargetError(DomainError):
    """A calibration target phase cannot be produced by the requested
    potential kind.  Carries the achievable range for error reporting."""

    def __init__(self, message, achievable=None):
        super().__init__(message)
        self.achievable = achievable


class NotAHadamardError(FlyqError):
    """Coupler spec is not at the 50/50 point; carries the achieved fidelity."""

    def __init__(self, message, fidelity):
        super().__init__(message)
        self.fidelity = fidelity


class CircuitError(FlyqError):
    """Semantic problem in a circuit: bad index, arity mismatch, or a
    two-qubit gate on non-adjacent wires."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class ParseError(FlyqError):
    """Circuit text could not be parsed; carries the 1-based line number."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


class EdgeReachedError(FlyqError):
    """Wave packet amplitude reached the grid boundary during propagation."""

    def __init__(self, message, step, edge_mass):
        super().__init__(message)
        self.step = step
        self.edge_mass = edge_mass

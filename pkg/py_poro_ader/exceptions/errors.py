"""Domain-specific exceptions for configuration and numerics."""


class PoroAderError(Exception):
    """Base class for every error raised by py-poro-ader."""


class ValidationError(PoroAderError):
    """Raised when user input violates a precondition."""


class ConfigError(ValidationError):
    """Raised when a configuration file cannot be parsed or validated."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        self.key = key
        self.line = line
        self.detail = message

        key_part = f" [{key}]" if key else ""
        line_part = f" (line {line})" if line is not None else ""
        super().__init__(f"invalid config{key_part}{line_part}: {message}")


class MaterialError(ValidationError):
    """Raised when material parameters are invalid or non-physical."""

    def __init__(self, key: str, message: str):
        self.key = key
        self.detail = message
        super().__init__(f"invalid material parameter {key}: {message}")


class MeshError(ValidationError):
    """Raised when a mesh cannot be built or fails a closure check."""


class NumericalError(PoroAderError):
    """Raised when a numerical procedure fails."""


class SingularOperatorError(NumericalError):
    """Raised when a resolvent or dense system is singular to working precision."""

    def __init__(self, dt: float, quantity: int | None = None, condition: float | None = None):
        self.dt = dt
        self.quantity = quantity
        self.condition = condition

        target = f"Z - E*[{quantity},{quantity}] I" if quantity is not None else "space-time system"
        cond_part = f" (cond={condition:.3e})" if condition is not None else ""
        super().__init__(f"singular {target} for dt={dt:.6e}{cond_part}")


class EigenSolverError(NumericalError):
    """Raised when an eigendecomposition has the wrong structure or fails to reconstruct."""


class NonFiniteStateError(NumericalError):
    """Raised when NaN or Inf values appear in a degree-of-freedom tensor."""

    def __init__(self, element: int | None = None, step: int | None = None):
        self.element = element
        self.step = step

        element_part = f" in element {element}" if element is not None else ""
        step_part = f" at step {step}" if step is not None else ""
        super().__init__(f"non-finite state detected{element_part}{step_part}")

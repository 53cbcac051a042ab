"""Domain-specific exceptions."""

from .errors import (
    ConfigError,
    EigenSolverError,
    MaterialError,
    MeshError,
    NonFiniteStateError,
    NumericalError,
    PoroAderError,
    SingularOperatorError,
    ValidationError,
)

__all__ = [
    "ConfigError",
    "EigenSolverError",
    "MaterialError",
    "MeshError",
    "NonFiniteStateError",
    "NumericalError",
    "PoroAderError",
    "SingularOperatorError",
    "ValidationError",
]

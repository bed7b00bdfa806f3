"""Shortest reconfiguration of perfect matchings on outerplanar graphs."""
from .errors import (
    DegenerateError,
    DomainError,
    InputError,
    InternalError,
    PmrError,
    PreconditionError,
    SizeError,
    StructureError,
)
from .graph import Multigraph, ReconfigSequence
from .instances import SpmrInstance, random_outerplanar_instance
from .solver import opt_value_only, solve

__version__ = "0.1.0"

__all__ = [
    "DegenerateError",
    "DomainError",
    "InputError",
    "InternalError",
    "Multigraph",
    "PmrError",
    "PreconditionError",
    "ReconfigSequence",
    "SizeError",
    "SpmrInstance",
    "StructureError",
    "opt_value_only",
    "random_outerplanar_instance",
    "solve",
]

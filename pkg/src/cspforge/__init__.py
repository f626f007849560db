"""Exact weighted counting CSPs: evaluation, Z-preserving reductions and checking."""

from .errors import BlowUpError, CapExceeded, CSPError, InstanceError, ParseError
from .model import (
    Constraint,
    Instance,
    WeightFunction,
    evaluate_brute_force,
    evaluate_by_elimination,
    parse_instance,
    partition_function,
    serialize_instance,
    validate_instance,
    weight_of,
)

__version__ = "0.1.0"

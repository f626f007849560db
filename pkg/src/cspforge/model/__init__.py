from .evaluate import evaluate_brute_force, evaluate_by_elimination, partition_function, weight_of
from .fileformat import parse_instance, serialize_instance
from .types import (
    DEFAULT_CAP,
    Constraint,
    Instance,
    WeightFunction,
    all_tuples,
    default_cap,
    format_rational,
    validate_instance,
)

__all__ = [
    "DEFAULT_CAP",
    "Constraint",
    "Instance",
    "WeightFunction",
    "all_tuples",
    "default_cap",
    "evaluate_brute_force",
    "evaluate_by_elimination",
    "format_rational",
    "parse_instance",
    "partition_function",
    "serialize_instance",
    "validate_instance",
    "weight_of",
]

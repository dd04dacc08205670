"""Partition generating functions, partition zeta values and their identities."""

from .etaq import ProductLayer, QuotientSpec, coeffs_direct, coeffs_nested, parse_layer
from .numeric import Approximation, ClosedFormValue, PrecisionContext, bernoulli, eval_forms_numeric, eval_product
from .partitions import (
    All,
    ArithProg,
    Finite,
    GreaterEq,
    Multiples,
    Partition,
    PartitionClass,
    Primes,
    count_partitions,
    enumerate_partitions,
    parse_class,
    parse_partspec,
)
from .series import TruncatedSeries, mul, phi_series, reciprocal
from .weights import Constant, Power, Restricted, Table, ZScaled, parse_weight, weight_product

__version__ = "0.1.0"

__all__ = [
    "All",
    "Approximation",
    "ArithProg",
    "ClosedFormValue",
    "Constant",
    "Finite",
    "GreaterEq",
    "Multiples",
    "Partition",
    "PartitionClass",
    "Power",
    "PrecisionContext",
    "Primes",
    "ProductLayer",
    "QuotientSpec",
    "Restricted",
    "Table",
    "TruncatedSeries",
    "ZScaled",
    "bernoulli",
    "coeffs_direct",
    "coeffs_nested",
    "count_partitions",
    "enumerate_partitions",
    "eval_forms_numeric",
    "eval_product",
    "mul",
    "parse_class",
    "parse_layer",
    "parse_partspec",
    "parse_weight",
    "phi_series",
    "reciprocal",
    "weight_product",
]

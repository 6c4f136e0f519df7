"""Unit-aware calculation engine, pulse ledger and regression harness."""
from .errors import BioviError, DimensionMismatch, DimensionWarning
from .quantity import (
    CHECKED,
    PAPER_FAITHFUL,
    Dimension,
    Quantity,
    constant,
    dimensionless,
    evaluation_mode,
    q,
    q_add,
    q_combine,
    q_format,
    q_parse,
)
from .problems import RECOMPUTED, STRICT, run_sample_problem
from .regression import run_regression_suite, simulate_stream

__all__ = [
    "BioviError",
    "DimensionMismatch",
    "DimensionWarning",
    "CHECKED",
    "PAPER_FAITHFUL",
    "Dimension",
    "Quantity",
    "constant",
    "dimensionless",
    "evaluation_mode",
    "q",
    "q_add",
    "q_combine",
    "q_format",
    "q_parse",
    "RECOMPUTED",
    "STRICT",
    "run_sample_problem",
    "run_regression_suite",
    "simulate_stream",
]

__version__ = "0.1.0"

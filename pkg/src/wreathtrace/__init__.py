"""Counts of traces and supertraces of symplectic reflection algebras H_{1,nu}(Gamma wr S_N).

Three independent routes to (C, T, S): marked-partition census
(:mod:`wreathtrace.census`), generating-function coefficients
(:mod:`wreathtrace.series`) and element-level brute force
(:mod:`wreathtrace.oracle`).
"""
__version__ = "0.1.0"

from .census import CensusResult, MarkedPartition, census_counts
from .groups import GammaSpec, class_table, parse_spec
from .series import class_series, supertrace_series, trace_series

__all__ = [
    "CensusResult", "MarkedPartition", "census_counts",
    "GammaSpec", "class_table", "parse_spec",
    "class_series", "supertrace_series", "trace_series",
]

"""Exact arithmetic for depth-zero supercuspidal representations of GL_2(F_q((t))).

Everything numeric is exact: values are rationals or elements of Q(zeta_M),
serialized as "num/den" or "cyclo(M)[c0,...]". The heavy lifting lives in the
compiled extension; this package only re-exports it.
"""

from ._core import (
    ConfigError,
    DepthZeroRep,
    GMat,
    WhittakerFn,
    conductor,
    dump_char_table,
    dump_support,
    first_regular_theta,
    formal_degrees,
    parse_report_summary,
    run_suite,
    twist_orders,
    zeta_series,
)

__all__ = [
    "ConfigError",
    "DepthZeroRep",
    "GMat",
    "WhittakerFn",
    "conductor",
    "dump_char_table",
    "dump_support",
    "first_regular_theta",
    "formal_degrees",
    "parse_report_summary",
    "run_suite",
    "twist_orders",
    "zeta_series",
]

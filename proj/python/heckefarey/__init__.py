"""Exact and numerical computation with generalized Farey maps of Hecke
triangle groups: ring arithmetic in Z[2cos(pi/q)], inverse-branch word
semigroups, generalized Stern-Brocot sequences, transfer operators, and the
equidistribution harness. The heavy lifting lives in the C++ core."""

from ._core import (
    CapExceeded,
    Elem,
    Farey,
    Mat,
    PrecisionExhausted,
    Ring,
    minpoly,
    mu_interval,
)

__version__ = "0.1.0"
__all__ = [
    "CapExceeded",
    "Elem",
    "Farey",
    "Mat",
    "PrecisionExhausted",
    "Ring",
    "minpoly",
    "mu_interval",
]

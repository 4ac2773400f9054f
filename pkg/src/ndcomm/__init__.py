"""Exact lab for nondeterministic communication complexity of the Hadamard equality game.

Everything that decides acceptance or a bound is computed exactly: quantum
message registers carry integer amplitude tables, probabilities are rationals,
and the counting bounds use arbitrary-precision integers.
"""

__version__ = "0.1.0"

VERSION_STRING = f"ndcomm {__version__}"

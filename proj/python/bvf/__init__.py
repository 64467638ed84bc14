"""Exact analysis of asynchronous boolean automata under the unbounded
gate delay model.

Thin wrapper around the native module: every function takes model
documents and bit strings and returns JSON or DOT text.  See the
project README for the document and report schemas.
"""

try:
    from ._bvf import (
        analyze,
        classify_all,
        exhaustive_lattice,
        fundamental_suite,
        graph,
        oracle_check,
        orbit,
        randomized_suite,
        separation_search,
        serialize,
    )
except ImportError:  # build-tree layout: extension next to the package
    from _bvf import (
        analyze,
        classify_all,
        exhaustive_lattice,
        fundamental_suite,
        graph,
        oracle_check,
        orbit,
        randomized_suite,
        separation_search,
        serialize,
    )

__version__ = "0.1.0"

__all__ = [
    "analyze",
    "classify_all",
    "exhaustive_lattice",
    "fundamental_suite",
    "graph",
    "oracle_check",
    "orbit",
    "randomized_suite",
    "separation_search",
    "serialize",
]

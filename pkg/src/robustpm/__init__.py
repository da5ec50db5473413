"""Robust stability of interval polynomial matrix families.

Decides whether ``M(s) = B(s) A(s) + D(s) C(s)`` stays Hurwitz for every
``B`` and ``D`` in interval polynomial matrix boxes by checking reduced
Kharitonov testing sets.
"""

__version__ = "0.1.0"

from .engine import EngineOptions, analyze, robust_margin  # noqa: E402
from .oracle import oracle_falsify  # noqa: E402
from .problem import load_fixture, parse_problem  # noqa: E402

__all__ = ["EngineOptions", "analyze", "robust_margin", "oracle_falsify", "load_fixture", "parse_problem",
           "__version__"]

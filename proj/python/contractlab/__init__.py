"""Analytics for capacity contracts with stochastic demand.

Closed-form and numeric solvers for wholesale, shortfall-penalty, and
contingent-renewal contracts, plus a Monte-Carlo cross-check, a factorial
study harness, and the data series behind the standard charts.
"""

try:
    from ._contractlab import *  # installed wheel: extension lives inside the package
    from . import _contractlab as _core
except ImportError:  # in-tree build: extension sits next to the build directory
    from _contractlab import *
    import _contractlab as _core

__all__ = sorted(name for name in dir(_core) if not name.startswith("_"))
del _core

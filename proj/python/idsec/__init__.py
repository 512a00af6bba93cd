"""Solvers for interdependent-security population games.

Thin re-export of the compiled core; see the package README for the model
and the operation contracts.
"""

from ._idsec import *  # noqa: F401,F403

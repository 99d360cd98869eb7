"""Steady-state mechanical squeezing toolkit.

Thin re-export of the compiled core. The interesting objects are
SystemParams, symmetric_setting, env_summary, rates, variance_x1,
langevin_steady and the optimizers; see the project README for the
column conventions of the CLI outputs.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

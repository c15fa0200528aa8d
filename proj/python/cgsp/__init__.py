"""Kernel reconstruction of complex-valued graph signals."""

from ._cgsp import *  # noqa: F401,F403
from ._cgsp import __version__  # noqa: F401

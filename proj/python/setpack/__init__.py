"""Set packing solvers, local search and LP relaxations (C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import CapExceeded, InputError

__all__ = [name for name in dir() if not name.startswith("_")]

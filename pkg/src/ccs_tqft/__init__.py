"""Exact finite-group state-sum invariants of cut cellular surfaces."""

from .ccs import *  # noqa: F401,F403
from .colouring import *  # noqa: F401,F403
from .dcp import *  # noqa: F401,F403
from .group import *  # noqa: F401,F403
from .surface_io import *  # noqa: F401,F403
from .tqft import *  # noqa: F401,F403
from . import ccs, colouring, dcp, group, surface_io, tqft

__all__ = (
    ccs.__all__ + colouring.__all__ + dcp.__all__ + group.__all__ + surface_io.__all__ + tqft.__all__
)
__version__ = "0.1.0"

"""Long-range single-particle state transfer: effective chains, block lattices and ring protocols."""

from ._core import *  # noqa: F401,F403
from ._core import LongwalkError, PrecisionGuardError, DomainError, NumericalError, __version__  # noqa: F401

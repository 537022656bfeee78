"""Reconfigurable-surface link simulation: geometry, channels, codebooks,
1-bit quantization, and feedback-driven greedy configuration search.

Everything is implemented in the C++ core; this package re-exports it.
"""

from risim._core import *  # noqa: F401,F403
from risim._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"

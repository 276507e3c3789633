"""Opto-RF transduction modeling toolkit (Python bindings)."""

from ._optorf import *  # noqa: F401,F403
from ._optorf import constants  # noqa: F401

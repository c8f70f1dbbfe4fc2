"""Kirigami sheet force and geometry model.

All quantities are SI (m, N, Pa); `mm` converts millimetres to metres.
"""

from ._kirimech import *  # noqa: F401,F403
from ._kirimech import __doc__  # noqa: F401


def mm(value):
    """Millimetres to metres."""
    return value / 1000.0

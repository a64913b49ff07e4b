"""Residual-warping engine for high-resolution animation.

Arrays are float32 with shape (H, W, C) for images and (H, W, 2) for motion
fields (dx, dy in pixels). Pixel values live in [-1, 1].
"""

from ._atw import *  # noqa: F401,F403
from ._atw import AtwError, Decomposition  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]

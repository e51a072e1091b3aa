"""Circulant-type, Toeplitz and Hankel random matrices: spectra, finite-n moments and limits."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

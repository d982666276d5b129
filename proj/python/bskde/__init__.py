"""Bivariate bounded-support density estimation with beta-Sarmanov kernels."""

from bskde._core import *  # noqa: F401,F403
from bskde._core import __doc__  # noqa: F401

__version__ = "0.1.0"

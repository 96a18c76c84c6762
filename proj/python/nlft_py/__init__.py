"""Python access to the Cantor-group nonlinear Fourier transform."""

from ._nlft import *  # noqa: F401,F403
from ._nlft import __doc__  # noqa: F401

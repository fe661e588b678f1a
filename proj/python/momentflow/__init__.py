"""Moment maps, gradient flows and Hesselink strata for GL_n / SL_n representations."""

from momentflow._core import *  # noqa: F401,F403
from momentflow._core import __doc__  # noqa: F401

"""Distributionally robust control for differentially private linear systems.

Thin package wrapper around the compiled core; everything lives in
``dpdrc._core``.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__doc__ = _core_doc

"""Verification and falsification toolkit for a handful of published numerical claims."""

__version__ = "0.1.0"

from .hiprec import PrecisionContext, make_context  # noqa: E402

__all__ = ["PrecisionContext", "make_context", "__version__"]

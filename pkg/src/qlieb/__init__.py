"""Exact graph-complex computations around the quantization of Lie bialgebras."""
from .exact import StructureError
from .prop import ConfigurationError, PropElement, Truncation, TruncationError

__version__ = "0.1.0"
__all__ = ["ConfigurationError", "PropElement", "StructureError", "Truncation", "TruncationError"]

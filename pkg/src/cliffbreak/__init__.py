"""Exact Clifford algebra computations over R, C and H coefficient rings."""

from .algebra import AlgebraDescriptor, Multivector, Ring, Signature
from .errors import CliffordError, ParseError
from .parser import eval_text, parse, parse_context, pretty
from .structure import IsoClass, classify_empirical, classify_table, verify_generators

__version__ = "0.1.0"

__all__ = [
    "AlgebraDescriptor", "Multivector", "Ring", "Signature", "CliffordError", "ParseError",
    "eval_text", "parse", "parse_context", "pretty", "IsoClass", "classify_empirical",
    "classify_table", "verify_generators", "__version__",
]

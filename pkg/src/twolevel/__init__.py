"""Exact verification toolkit for binary pair configurations and 2-level polytopes."""

__version__ = "0.1.0"

from .config import (  # noqa: E402
    Configuration, canonicalize, complete_A, complete_B, maximalize, phi,
    tight_example, validate,
)
from .prooftrace import Certificate, construct_witnesses, trace  # noqa: E402
from .polytope import VPolytope, facets, generate, is_two_level, verify_bound  # noqa: E402

__all__ = [
    "__version__", "Configuration", "canonicalize", "complete_A", "complete_B",
    "maximalize", "phi", "tight_example", "validate", "Certificate",
    "construct_witnesses", "trace", "VPolytope", "facets", "generate",
    "is_two_level", "verify_bound",
]

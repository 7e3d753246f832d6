"""Exceptional sequences, silting objects and m-cluster tilting over path algebras."""

from .errors import DomainError, InternalInconsistency

__version__ = "0.1.0"
__all__ = ["DomainError", "InternalInconsistency", "__version__"]

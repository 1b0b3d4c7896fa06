"""Exact decision procedures for finite rings, finite modules and their
endomorphism rings: regularity hierarchies, submodule lattices, incidence
algebras, and theorem suites over generated corpora."""

from .verdicts import CapExceeded, Caps, InternalInconsistency, Verdict, agree

__all__ = [
    "CapExceeded",
    "Caps",
    "InternalInconsistency",
    "Verdict",
    "agree",
]

__version__ = "0.1.0"

"""Exact computations with real forms of simple algebraic groups, their Galois
1-cocycles over k(i)|k, and the resulting Picard-Vessiot class lists."""

from .classify import ClassificationResult, GroupDescriptor, PVClass, Variant
from .cohomology import Cocycle, ConjAction, cocycle_index, hilbert90_solve, rep_cocycle
from .exactnum import CycloElement, GaussRational, Quaternion
from .forms import FormKind, FormSpec, Pfister3, pfister3_class, signature_index
from .matrix import ExactMatrix

__all__ = [
    "ClassificationResult",
    "Cocycle",
    "ConjAction",
    "CycloElement",
    "ExactMatrix",
    "FormKind",
    "FormSpec",
    "GaussRational",
    "GroupDescriptor",
    "PVClass",
    "Pfister3",
    "Quaternion",
    "Variant",
    "cocycle_index",
    "hilbert90_solve",
    "pfister3_class",
    "rep_cocycle",
    "signature_index",
]

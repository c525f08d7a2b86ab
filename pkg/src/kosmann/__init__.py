"""Lie derivatives of spinors, tensors, and densities via reductive frame lifts."""

from .errors import InputError, KosmannError, PreconditionError
from .liealg import Signature, decompose_gl

__all__ = ["InputError", "KosmannError", "PreconditionError", "Signature", "decompose_gl"]

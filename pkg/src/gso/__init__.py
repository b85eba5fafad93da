"""Galois self-orthogonal GRS/EGRS MDS codes over finite fields."""

from gso.gf import FieldCtx, field_create, h_subgroup, galois_root

__all__ = ["FieldCtx", "field_create", "h_subgroup", "galois_root"]
__version__ = "0.1.0"

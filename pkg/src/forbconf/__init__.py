"""Forbidden configurations in r-matrices: exact search, constructions and exponent bounds."""
from .matrix import (
    ConfigFamily,
    MatrixFormatError,
    RMatrix,
    complement,
    contains_config,
    family_avoided,
    make_F_abcd,
    make_I,
    make_K,
    make_Ks,
    make_T,
    make_const,
    parse_matrix,
    relabel,
    s_family,
    support,
    sym_family,
    to_text,
)
from .solver import ForbResult, exact_forb

__all__ = [
    "ConfigFamily", "MatrixFormatError", "RMatrix", "complement", "contains_config",
    "family_avoided", "make_F_abcd", "make_I", "make_K", "make_Ks", "make_T", "make_const",
    "parse_matrix", "relabel", "s_family", "support", "sym_family", "to_text",
    "ForbResult", "exact_forb",
]

"""Exact computations in the generalized Witt algebras W(n,m) and relatives."""

from .core import (
    Basis,
    Element,
    FunctionElement,
    FunctionTerm,
    PathElement,
    PathTerm,
    Signature,
    act,
    act_commutator,
    bracket,
    bracket_basis,
    embed,
    jacobi_defect,
    make_basis,
    parse_signature,
    pathological_bracket,
)
from .expr import format_element, parse_element, parse_function
from .errors import WittError

__version__ = "0.1.0"

"""Exact rational polynomial algebra and symbolic family verification."""
from .groebner import Aborted, GroebnerResult, buchberger, normal_form, s_polynomial
from .pipeline import (
    SYMBOLIC_FAMILIES,
    ProofRecord,
    symbolic_critical_pair,
    symbolic_curvature,
    symbolic_jacobiator,
    symbolic_template,
    verify_family_symbolically,
    verify_identity,
)
from .polynomial import MonomialOrder, ParseError, RationalPolynomial, poly_parse

__all__ = [
    "Aborted", "GroebnerResult", "MonomialOrder", "ParseError", "ProofRecord",
    "RationalPolynomial", "SYMBOLIC_FAMILIES", "buchberger", "normal_form", "poly_parse",
    "s_polynomial", "symbolic_critical_pair", "symbolic_curvature", "symbolic_jacobiator",
    "symbolic_template", "verify_family_symbolically", "verify_identity",
]

"""Arithmetic in F_q and F_q[t]."""

from .counting import count_irreducible, int_mobius
from .factor import Factorization, factor, is_irreducible
from .field import FieldSpec, field_make, field_of_order
from .poly import Poly, enumerate_below, enumerate_monic, gcd, inverse_mod, poly_arith, powmod, xgcd

__all__ = [
    "FieldSpec", "field_make", "field_of_order", "Poly", "poly_arith", "gcd", "xgcd",
    "inverse_mod", "powmod", "enumerate_monic", "enumerate_below", "is_irreducible",
    "factor", "Factorization", "count_irreducible", "int_mobius",
]

from .cyclotomic import CycInt
from .field import GF, ExtFieldElem, field, place_roots
from .irreducibles import (
    Factorization,
    canonical_modulus,
    factor,
    irreducible_array,
    irreducibles,
    is_irreducible,
    necklace_count,
    prime_count,
    verify_pnt,
)
from .poly import Poly, is_squarefree, least_primitive_root, zeta_ell

__all__ = [
    "CycInt",
    "ExtFieldElem",
    "Factorization",
    "GF",
    "Poly",
    "canonical_modulus",
    "factor",
    "field",
    "irreducible_array",
    "irreducibles",
    "is_irreducible",
    "is_squarefree",
    "least_primitive_root",
    "necklace_count",
    "place_roots",
    "prime_count",
    "verify_pnt",
    "zeta_ell",
]

"""Exact coefficient rings: Q, GF(p), GF(p^n), R[X]/(P), finite products."""

from .algebra import (
    CRTResult,
    ExtensionField,
    ProductRing,
    QuotientAlgebra,
    RingHom,
    algebra_norm,
    crt_combine,
    extend_scalars,
    identity,
    inclusion,
    is_unit,
    multiplication_matrix,
    projection,
    residue_map,
    residues,
)
from .core import (
    QQ,
    PrimeField,
    RationalField,
    Residue,
    ResidueData,
    Ring,
    RingElement,
    is_prime,
)
from .factor import factor, is_irreducible, roots, smallest_irreducible
from .grammar import (
    format_element,
    format_polynomial,
    format_ring,
    parse_element,
    parse_polynomial,
    parse_ring,
)
from .poly import (
    Polynomial,
    euclidean_divide,
    poly_gcd,
    poly_inverse_mod,
    poly_powmod,
    poly_xgcd,
)


def GF(p: int, n: int = 1, modulus=None) -> Ring:
    """GF(p) for n == 1, otherwise GF(p^n) (smallest irreducible modulus by default)."""
    if n == 1 and modulus is None:
        return PrimeField(p)
    if isinstance(modulus, str):
        modulus = parse_polynomial(PrimeField(p), modulus)
    return ExtensionField(p, modulus, degree=n)


def quotient(base: Ring, modulus) -> QuotientAlgebra:
    """base[X]/(modulus); the modulus may be given as text."""
    if isinstance(modulus, str):
        modulus = parse_polynomial(base, modulus)
    return QuotientAlgebra(base, modulus)


__all__ = [name for name in dir() if not name.startswith("_")]

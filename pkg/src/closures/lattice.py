"""
Integer lattice helpers: Hermite normal form bases and prime exponent vectors.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import Dict, List, Sequence, Tuple

from sympy import Matrix, factorint
from sympy.matrices.normalforms import hermite_normal_form

from src.errors import RatioTooLargeError, ZeroRatioError

logger = logging.getLogger(__name__)

MAX_RATIO_BITS = 64


def hermite_basis(vectors: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    """
    Canonical basis of the lattice spanned by integer vectors.

    The vectors become the columns of a matrix whose Hermite normal form
    has one nonzero column per basis vector, so two families span the same
    lattice iff their bases are equal.

    Args:
        vectors: Integer vectors of a common length d

    Returns:
        Basis vectors (length d each); empty for the zero lattice
    """
    nonzero = [list(v) for v in vectors if any(v)]
    if not nonzero:
        return []
    columns = Matrix(nonzero).T
    hnf = hermite_normal_form(columns)
    logger.debug(f"HNF of {columns.shape} matrix has shape {hnf.shape}")
    basis = []
    for j in range(hnf.shape[1]):
        column = tuple(int(hnf[i, j]) for i in range(hnf.shape[0]))
        if any(column):
            basis.append(column)
    return basis


def common_denominator(values: Sequence[Fraction]) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def rational_hermite_basis(vectors: Sequence[Sequence[Fraction]]) -> List[Tuple[Fraction, ...]]:
    """HNF basis of the Z-span of rational vectors, computed over a common denominator."""
    flat = [c for v in vectors for c in v]
    if not flat:
        return []
    denominator = common_denominator(flat)
    scaled = [[int(Fraction(c) * denominator) for c in v] for v in vectors]
    return [tuple(Fraction(c, denominator) for c in b) for b in hermite_basis(scaled)]


def _check_size(value: int, bits: int):
    if abs(value).bit_length() > bits:
        raise RatioTooLargeError(
            f"{value} exceeds the {bits}-bit factorisation bound"
        )


def prime_exponents(value: Fraction, max_bits: int = MAX_RATIO_BITS) -> Tuple[int, Dict[int, int]]:
    """
    Sign and prime exponent map of a nonzero rational.

    Returns:
        Tuple of (sign in {0, 1} with 1 for negative, {prime: exponent})

    Raises:
        ZeroRatioError: value is zero
        RatioTooLargeError: numerator or denominator too large
    """
    value = Fraction(value)
    if value == 0:
        raise ZeroRatioError("Zero is not an element of R*")
    _check_size(value.numerator, max_bits)
    _check_size(value.denominator, max_bits)
    exponents: Dict[int, int] = {}
    for p, e in factorint(abs(value.numerator)).items():
        exponents[p] = exponents.get(p, 0) + e
    for p, e in factorint(value.denominator).items():
        exponents[p] = exponents.get(p, 0) - e
    return (1 if value < 0 else 0), exponents


def exponent_matrix(maps: Sequence[Dict[int, int]]) -> Tuple[List[int], List[List[int]]]:
    """Align exponent maps on a common sorted prime list."""
    primes = sorted({p for m in maps for p in m})
    return primes, [[m.get(p, 0) for p in primes] for m in maps]

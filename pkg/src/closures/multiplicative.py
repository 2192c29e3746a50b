"""
Closures of finitely generated subgroups of R* (the ratio group of a spec).
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from src.closures.lattice import MAX_RATIO_BITS, exponent_matrix, hermite_basis, prime_exponents
from src.errors import NonRationalRatioError, ZeroRatioError
from src.field.scalar import FieldScalar

logger = logging.getLogger(__name__)


class MulVariant(str, Enum):
    TRIVIAL_ONE = "TrivialOne"
    PLUS_MINUS_ONE = "PlusMinusOne"
    CYCLIC_POS = "CyclicPos"
    CYCLIC_WITH_SIGN = "CyclicWithSign"
    CYCLIC_TWISTED = "CyclicTwisted"
    DENSE_POS = "DensePos"
    DENSE_ALL = "DenseAll"


CYCLIC_VARIANTS = (MulVariant.CYCLIC_POS, MulVariant.CYCLIC_WITH_SIGN, MulVariant.CYCLIC_TWISTED)
DENSE_VARIANTS = (MulVariant.DENSE_POS, MulVariant.DENSE_ALL)


@dataclass(frozen=True)
class MulClosure:
    """
    Closure in R of a subgroup of R*.

    Set semantics: TrivialOne = {1}, PlusMinusOne = {-1, 1}, CyclicPos = rho^Z,
    CyclicWithSign = +-rho^Z, CyclicTwisted = (-rho)^Z, DensePos = (0, inf),
    DenseAll = R*, each together with 0 when zero_in_closure.
    """
    variant: MulVariant
    rho: Optional[Fraction] = None
    zero_in_closure: bool = False
    evidence: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def is_cyclic(self) -> bool:
        return self.variant in CYCLIC_VARIANTS

    def is_dense(self) -> bool:
        return self.variant in DENSE_VARIANTS

    def is_all_reals(self) -> bool:
        """closure = R (DenseAll together with 0)."""
        return self.variant == MulVariant.DENSE_ALL and self.zero_in_closure

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {
            "variant": self.variant.value,
            "rho": str(self.rho) if self.rho is not None else None,
            "zero_in_closure": self.zero_in_closure,
        }
        if self.evidence:
            result["evidence"] = self.evidence
        return result


def _rational_ratios(ratios: Sequence[FieldScalar]) -> List[Fraction]:
    values = []
    for r in ratios:
        if r.is_zero():
            raise ZeroRatioError("Generator ratio 0 is not invertible")
        if not r.is_rational():
            raise NonRationalRatioError(
                f"Ratio {r} is irrational; exact classification of the ratio group "
                f"is only available for rational ratios"
            )
        values.append(r.rational_value())
    return values


def classify_mul_subgroup(ratios: Sequence[FieldScalar],
                          max_bits: int = MAX_RATIO_BITS) -> MulClosure:
    """
    Classify the closure of the subgroup of R* generated by rational ratios.

    Each ratio becomes a sign bit and the exponent vector of its absolute value
    over the primes; the rank r of the exponent lattice decides between the
    finite (r = 0), cyclic (r = 1) and dense (r >= 2) variants.

    Args:
        ratios: Nonzero rational scalars
        max_bits: Factorisation bound for numerators and denominators

    Returns:
        MulClosure

    Raises:
        NonRationalRatioError: some ratio is irrational
        ZeroRatioError: some ratio is zero
    """
    values = _rational_ratios(ratios)
    signs, exponent_maps = [], []
    for v in values:
        s, e = prime_exponents(v, max_bits)
        signs.append(s)
        exponent_maps.append(e)
    primes, exponents = exponent_matrix(exponent_maps)
    basis = hermite_basis(exponents) if primes else []
    rank = len(basis)
    evidence: Dict[str, Any] = {"exponent_rank": rank, "primes": primes}
    logger.debug(f"Ratio exponent lattice over primes {primes} has rank {rank}")

    if rank == 0:
        variant = MulVariant.PLUS_MINUS_ONE if any(signs) else MulVariant.TRIVIAL_ONE
        return MulClosure(variant, None, False, evidence)

    if rank >= 2:
        evidence["mixed_sign_independent_pair"] = _mixed_sign_independent_pair(signs, exponents)
        variant = MulVariant.DENSE_ALL if any(signs) else MulVariant.DENSE_POS
        return MulClosure(variant, None, True, evidence)

    # rank 1: every |lambda_i| = rho^{m_i} with gcd(m_i) = 1
    w = list(basis[0])
    rho = _value(primes, w)
    if rho < 1:
        w = [-c for c in w]
        rho = 1 / rho
    pivot = next(j for j, c in enumerate(w) if c)
    magnitudes = [e[pivot] // w[pivot] for e in exponents]
    evidence["magnitude_exponents"] = magnitudes

    # -1 lies in the group iff the signs are not a homomorphic image of the
    # magnitudes, i.e. no sigma with s_i = sigma*m_i (mod 2) for all i
    twist = None
    for sigma in (0, 1):
        if all((s - sigma * m) % 2 == 0 for s, m in zip(signs, magnitudes)):
            twist = sigma
            break
    if twist is None:
        variant = MulVariant.CYCLIC_WITH_SIGN
    elif twist == 0:
        variant = MulVariant.CYCLIC_POS
    else:
        variant = MulVariant.CYCLIC_TWISTED
    return MulClosure(variant, rho, True, evidence)


def _value(primes: Sequence[int], exponents: Sequence[int]) -> Fraction:
    value = Fraction(1)
    for p, e in zip(primes, exponents):
        value *= Fraction(p) ** e
    return value


def _mixed_sign_independent_pair(signs: Sequence[int], exponents: Sequence[Sequence[int]]) -> bool:
    """Some lambda*mu < 0 with log|lambda|/log|mu| irrational among the generators."""
    for i in range(len(signs)):
        for j in range(i + 1, len(signs)):
            if signs[i] != signs[j] and len(hermite_basis([exponents[i], exponents[j]])) == 2:
                return True
    return False


def _cyclic_exponent(rho: Fraction, magnitude: Fraction) -> Optional[int]:
    """k with rho^k == magnitude, found around the logarithmic estimate."""
    estimate = math.log(magnitude.numerator) - math.log(magnitude.denominator)
    estimate /= math.log(rho.numerator) - math.log(rho.denominator)
    base = round(estimate)
    for k in (base, base - 1, base + 1):
        if rho ** k == magnitude:
            return k
    return None


def mul_member(closure: MulClosure, t) -> bool:
    """
    Exact membership of t in the closure, seen as a subset of R.

    Args:
        closure: Classified ratio-group closure
        t: FieldScalar or rational
    """
    if isinstance(t, FieldScalar):
        sign = t.sign()
        rational = t.rational_value() if t.is_rational() else None
    else:
        rational = Fraction(t)
        sign = (rational > 0) - (rational < 0)
    if sign == 0:
        return closure.zero_in_closure

    variant = closure.variant
    if variant == MulVariant.DENSE_ALL:
        return True
    if variant == MulVariant.DENSE_POS:
        return sign > 0
    if rational is None:
        return False
    if variant == MulVariant.TRIVIAL_ONE:
        return rational == 1
    if variant == MulVariant.PLUS_MINUS_ONE:
        return abs(rational) == 1

    k = _cyclic_exponent(closure.rho, abs(rational))
    if k is None:
        return False
    if variant == MulVariant.CYCLIC_POS:
        return sign > 0
    if variant == MulVariant.CYCLIC_WITH_SIGN:
        return True
    # (-rho)^k carries sign (-1)^k
    return sign == (1 if k % 2 == 0 else -1)

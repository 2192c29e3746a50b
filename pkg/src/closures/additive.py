"""
Closures of finitely generated additive subgroups of R^n with coordinates in
a multi-quadratic field.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.closures.lattice import rational_hermite_basis
from src.errors import DimensionMismatchError, UnresolvedClosureError
from src.field import linalg
from src.field.scalar import FieldScalar, format_vector

logger = logging.getLogger(__name__)

Vector = Tuple[FieldScalar, ...]


class AddVariant(str, Enum):
    LATTICE = "Lattice"
    DENSE_LINE = "DenseLine"
    LATTICE_PLUS_LINE = "LatticePlusLine"  # reserved, never produced
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class AddClosure:
    """
    Closure of a subgroup H of R^n.

    Lattice: the integer span of ``basis`` (HNF-reduced over a frame of
    generators). DenseLine: the real line R*direction.
    """
    variant: AddVariant
    dimension: int
    basis: Tuple[Vector, ...] = ()
    direction: Optional[Vector] = None
    evidence: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @property
    def resolved(self) -> bool:
        return self.variant in (AddVariant.LATTICE, AddVariant.DENSE_LINE)

    def is_trivial(self) -> bool:
        return self.variant == AddVariant.LATTICE and not self.basis

    def is_full_space(self) -> bool:
        """closure = R^n (only a dense line can be all of R^1)."""
        return self.variant == AddVariant.DENSE_LINE and self.dimension == 1

    def require_resolved(self):
        if not self.resolved:
            raise UnresolvedClosureError(
                "Closure of the translation subgroup is unresolved "
                f"(real rank {self.evidence.get('real_rank')}, "
                f"Q-rank {self.evidence.get('rational_rank')})",
                self.evidence,
            )

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"variant": self.variant.value}
        if self.variant == AddVariant.LATTICE:
            result["basis"] = [format_vector(b) for b in self.basis]
        if self.direction is not None:
            result["direction"] = format_vector(self.direction)
        if self.evidence:
            result["evidence"] = self.evidence
        return result


def flatten(vector: Sequence[FieldScalar]) -> List[Fraction]:
    """Rational coordinates of a field vector over (coordinate, monomial) pairs."""
    return [c for s in vector for c in s.coeffs]


def _normalize_direction(u: Vector) -> Vector:
    lead = next(c for c in u if c)
    return tuple(c / lead for c in u)


def classify_add_subgroup(vectors: Sequence[Sequence[FieldScalar]], n: int) -> AddClosure:
    """
    Classify the closure of the subgroup generated by vectors.

    r is the dimension of the real span, s the Q-rank of the flattened
    rational coordinates. s == r gives a lattice, s > r == 1 a dense line;
    s > r >= 2 is reported Unresolved.

    Raises:
        DimensionMismatchError: a vector not in R^n
    """
    for v in vectors:
        if len(v) != n:
            raise DimensionMismatchError(f"Vector of dimension {len(v)} in R^{n}")
    nonzero = [tuple(v) for v in vectors if any(v)]
    if not nonzero:
        return AddClosure(AddVariant.LATTICE, n, (), None, {"real_rank": 0, "rational_rank": 0})

    real_rank = linalg.rank(nonzero)
    flat = [flatten(v) for v in nonzero]
    rational_rank = linalg.rank(flat)
    evidence: Dict[str, Any] = {"real_rank": real_rank, "rational_rank": rational_rank}
    logger.debug(f"Additive subgroup: real rank {real_rank}, Q-rank {rational_rank}")

    if rational_rank == real_rank:
        frame_indices = linalg.greedy_independent(flat)
        frame = [nonzero[i] for i in frame_indices]
        frame_flat = [flat[i] for i in frame_indices]
        coordinates = []
        for v in flat:
            c = linalg.solve_coordinates(frame_flat, v)
            coordinates.append(c)
        reduced = rational_hermite_basis(coordinates)
        basis = tuple(
            tuple(sum((c * f[i] for c, f in zip(row, frame)), start=frame[0][0].ctx.zero())
                  for i in range(n))
            for row in reduced
        )
        evidence["frame"] = [format_vector(f) for f in frame]
        return AddClosure(AddVariant.LATTICE, n, basis, None, evidence)

    if real_rank == 1:
        return AddClosure(AddVariant.DENSE_LINE, n, (), _normalize_direction(nonzero[0]), evidence)

    evidence["notes"] = (
        f"generators span a {real_rank}-dimensional real subspace with Q-rank "
        f"{rational_rank}; the closure contains a dense part whose dimension is not "
        f"decided"
    )
    logger.warning(f"Unresolved additive closure: {evidence['notes']}")
    return AddClosure(AddVariant.UNRESOLVED, n, (), None, evidence)


def add_member(closure: AddClosure, v: Sequence[FieldScalar]) -> bool:
    """
    Exact membership of v in the closure.

    Raises:
        UnresolvedClosureError: closure was not resolved
        DimensionMismatchError: v not in R^n
    """
    closure.require_resolved()
    if len(v) != closure.dimension:
        raise DimensionMismatchError(f"Vector of dimension {len(v)} in R^{closure.dimension}")
    if closure.variant == AddVariant.DENSE_LINE:
        return linalg.in_span([closure.direction], v)
    coordinates = linalg.solve_coordinates(closure.basis, tuple(v))
    if coordinates is None:
        return False
    return all(c.is_integer() for c in coordinates)

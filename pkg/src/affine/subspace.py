"""
Affine subspaces p + span(D) with exact membership.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from src.affine.maps import AffineMap, Point, add_vectors, sub_vectors
from src.errors import DimensionMismatchError
from src.field import linalg
from src.field.scalar import format_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineSubspace:
    """base + span(directions); directions are kept in reduced echelon form."""
    base: Point
    directions: Tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "directions", tuple(linalg.span_basis(self.directions)))

    @property
    def ambient_dimension(self) -> int:
        return len(self.base)

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def is_full_space(self) -> bool:
        return self.dimension == self.ambient_dimension

    def contains(self, y: Sequence) -> bool:
        if len(y) != self.ambient_dimension:
            raise DimensionMismatchError(
                f"Point of dimension {len(y)} tested against a subspace of R^{self.ambient_dimension}"
            )
        return linalg.in_span(self.directions, sub_vectors(y, self.base))

    def contains_direction(self, v: Sequence) -> bool:
        return linalg.in_span(self.directions, v)

    def spanning_points(self) -> List[Point]:
        """base and base + d for each direction d."""
        return [self.base] + [add_vectors(self.base, d) for d in self.directions]

    def image(self, g: AffineMap) -> "AffineSubspace":
        """g(A): base moves to g(base); directions are scaled, so their span is kept."""
        return AffineSubspace(g.apply(self.base), self.directions)

    def is_invariant_under(self, g: AffineMap) -> bool:
        return all(self.contains(g.apply(p)) for p in self.spanning_points())

    def same_set(self, other: "AffineSubspace") -> bool:
        return self.directions == other.directions and self.contains(other.base)

    def rebased(self, base: Sequence) -> "AffineSubspace":
        if not self.contains(base):
            raise ValueError("New base point is outside the subspace")
        return AffineSubspace(tuple(base), self.directions)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": format_vector(self.base),
            "directions": [format_vector(d) for d in self.directions],
            "dimension": self.dimension,
        }


def affine_hull(points: Sequence[Sequence]) -> AffineSubspace:
    """
    Smallest affine subspace containing the points.

    Raises:
        ValueError: no points
        DimensionMismatchError: points of different dimensions
    """
    if not points:
        raise ValueError("affine_hull needs at least one point")
    base = tuple(points[0])
    differences = [sub_vectors(p, base) for p in points[1:]]
    return AffineSubspace(base, tuple(linalg.span_basis(differences)))

"""
Affine maps x -> lambda*x + b of R^n with scalar linear part.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

from src.errors import DimensionMismatchError, FieldContextError
from src.field.scalar import FieldContext, FieldScalar, format_vector

logger = logging.getLogger(__name__)

Point = Tuple[FieldScalar, ...]


class MapKind(str, Enum):
    TRANSLATION = "translation"
    SYMMETRY = "symmetry"
    HOMOTHETY = "homothety"


class FixedKind(str, Enum):
    EMPTY = "empty"
    POINT = "point"
    ALL_SPACE = "all_space"


@dataclass(frozen=True)
class FixedSet:
    """Fix(f): empty, a single point, or the whole space."""
    kind: FixedKind
    point: Optional[Point] = None

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"kind": self.kind.value}
        if self.point is not None:
            result["point"] = format_vector(self.point)
        return result


def add_vectors(u: Sequence[FieldScalar], v: Sequence[FieldScalar]) -> Point:
    if len(u) != len(v):
        raise DimensionMismatchError(f"Dimensions {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def sub_vectors(u: Sequence[FieldScalar], v: Sequence[FieldScalar]) -> Point:
    if len(u) != len(v):
        raise DimensionMismatchError(f"Dimensions {len(u)} and {len(v)} differ")
    return tuple(a - b for a, b in zip(u, v))


def scale_vector(c, v: Sequence[FieldScalar]) -> Point:
    return tuple(c * a for a in v)


@dataclass(frozen=True)
class AffineMap:
    """
    The map x -> ratio*x + translation.

    Translation form is canonical; the center (a with b = (1 - ratio)*a) is
    derived when ratio != 1.
    """
    ratio: FieldScalar
    translation: Point

    def __post_init__(self):
        if self.ratio.is_zero():
            raise ValueError("Affine map ratio must be nonzero")
        for b in self.translation:
            if b.ctx != self.ratio.ctx:
                raise FieldContextError("Ratio and translation use different contexts")

    # Constructors

    @classmethod
    def identity(cls, ctx: FieldContext, dimension: int) -> "AffineMap":
        return cls(ctx.one(), tuple(ctx.zero() for _ in range(dimension)))

    @classmethod
    def translation_by(cls, vector: Sequence[FieldScalar]) -> "AffineMap":
        ctx = vector[0].ctx
        return cls(ctx.one(), tuple(vector))

    @classmethod
    def from_center(cls, center: Sequence[FieldScalar], ratio: FieldScalar) -> "AffineMap":
        """The homothety (a, lambda): x -> lambda*(x - a) + a."""
        if ratio == 1:
            raise ValueError("A center does not determine a map of ratio 1")
        return cls(ratio, scale_vector(1 - ratio, center))

    # Structure

    @property
    def ctx(self) -> FieldContext:
        return self.ratio.ctx

    @property
    def dimension(self) -> int:
        return len(self.translation)

    @property
    def kind(self) -> MapKind:
        if self.ratio == 1:
            return MapKind.TRANSLATION
        if self.ratio == -1:
            return MapKind.SYMMETRY
        return MapKind.HOMOTHETY

    def is_identity(self) -> bool:
        return self.ratio == 1 and not any(self.translation)

    def in_symmetry_group(self) -> bool:
        """f in S_n, i.e. ratio in {-1, 1}."""
        return self.kind != MapKind.HOMOTHETY

    def is_homothety_form(self) -> bool:
        """f in H_n: of the form x -> alpha*(x - a) + a (identity included)."""
        return self.ratio != 1 or self.is_identity()

    @property
    def center(self) -> Optional[Point]:
        if self.ratio == 1:
            return None
        denominator = 1 - self.ratio
        return tuple(b / denominator for b in self.translation)

    def key(self) -> Tuple:
        """Hashable canonical form."""
        return (self.ratio.coeffs, tuple(b.coeffs for b in self.translation))

    # Action and group law

    def apply(self, x: Sequence[FieldScalar]) -> Point:
        if len(x) != self.dimension:
            raise DimensionMismatchError(
                f"Point of dimension {len(x)} for a map on R^{self.dimension}"
            )
        return tuple(self.ratio * xi + bi for xi, bi in zip(x, self.translation))

    def apply_linear(self, v: Sequence[FieldScalar]) -> Point:
        """Linear part applied to a direction vector."""
        return scale_vector(self.ratio, v)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self o other."""
        if other.dimension != self.dimension:
            raise DimensionMismatchError(
                f"Cannot compose maps on R^{self.dimension} and R^{other.dimension}"
            )
        translation = tuple(
            self.ratio * bg + bf for bg, bf in zip(other.translation, self.translation)
        )
        return AffineMap(self.ratio * other.ratio, translation)

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return self.compose(other)

    def inverse(self) -> "AffineMap":
        inv = self.ratio.inverse()
        return AffineMap(inv, tuple(-b * inv for b in self.translation))

    def power(self, m: int) -> "AffineMap":
        """
        f^m in closed form: ratio^m and translation b*(1 - ratio^m)/(1 - ratio),
        or m*b for translations.
        """
        if self.ratio == 1:
            return AffineMap(self.ratio, scale_vector(m, self.translation))
        ratio_m = self.ratio ** m
        factor = (1 - ratio_m) / (1 - self.ratio)
        return AffineMap(ratio_m, scale_vector(factor, self.translation))

    def conjugate(self, g: "AffineMap") -> "AffineMap":
        """g o self o g^-1; a homothety (a, lambda) becomes (g(a), lambda)."""
        return g.compose(self).compose(g.inverse())

    def fixed_set(self) -> FixedSet:
        if self.ratio == 1:
            if any(self.translation):
                return FixedSet(FixedKind.EMPTY)
            return FixedSet(FixedKind.ALL_SPACE)
        return FixedSet(FixedKind.POINT, self.center)

    def commutes(self, other: "AffineMap") -> bool:
        """
        f o g == g o f, decided by (lambda_f - 1)*b_g == (lambda_g - 1)*b_f.
        """
        if other.dimension != self.dimension:
            raise DimensionMismatchError("Cannot compare maps of different dimensions")
        lf, lg = self.ratio - 1, other.ratio - 1
        return all(
            lf * bg == lg * bf for bg, bf in zip(other.translation, self.translation)
        )

    # Rendering

    def describe(self) -> str:
        if self.kind == MapKind.TRANSLATION:
            return f"T_({', '.join(format_vector(self.translation))})"
        if self.kind == MapKind.SYMMETRY:
            return f"({', '.join(format_vector(self.translation))} ; -1)"
        return f"center ({', '.join(format_vector(self.center))}) ratio {self.ratio}"

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "kind": self.kind.value,
            "ratio": self.ratio.format(),
            "translation": format_vector(self.translation),
        }
        if self.kind == MapKind.HOMOTHETY:
            result["center"] = format_vector(self.center)
        return result

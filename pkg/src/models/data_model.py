"""
Data models for classification reports, orbit-closure descriptions and
density diagnostics.
"""
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from src.affine.maps import Point
from src.affine.subspace import AffineSubspace
from src.closures.additive import AddClosure
from src.closures.multiplicative import MulClosure
from src.field.scalar import format_vector


class Case(str, Enum):
    ONE = "one"  # G \ S_n nonempty
    TWO = "two"  # G inside S_n


class DescriptionKind(str, Enum):
    AFFINE_SET = "AffineSet"
    SCALED_FAMILY = "ScaledFamily"
    COSET_PAIR = "CosetPair"


class Components(str, Enum):
    ONE = "1"
    TWO = "2"
    COUNTABLE = "countably-many"


class LineDichotomy(str, Enum):
    ALL_DENSE = "AllDense"
    ALL_CLOSED_DISCRETE = "AllClosedDiscrete"
    CASE_ONE_DENSE = "CaseOneDense"


@dataclass
class Predicates:
    """Dynamical predicates read off the classification; None when undecided."""
    dim_E: Optional[int] = None
    has_dense_orbit: Optional[bool] = None
    every_U_orbit_minimal_in_U: Optional[bool] = None
    every_orbit_minimal: Optional[bool] = None
    has_periodic_orbit: Optional[bool] = None
    has_closed_orbit: Optional[bool] = None
    orbit_of_zero_dense: Optional[bool] = None
    has_non_homeomorphic_orbits: Optional[bool] = None
    orbit_closure_dims: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary, excluding None values."""
        return {k: v for k, v in asdict(self).items() if v is not None and v != {}}


@dataclass
class ClassificationReport:
    """The dichotomy answer for a spec."""
    case: Case
    dimension: int
    E: Optional[AffineSubspace] = None
    lam: Optional[MulClosure] = None
    H: Optional[AddClosure] = None
    a: Optional[Point] = None
    predicates: Predicates = field(default_factory=Predicates)
    warnings: List[str] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        if self.case == Case.ONE:
            return self.lam is not None
        return self.H is not None and self.H.resolved

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the report schema."""
        return {
            "case": self.case.value,
            "abelian": False,
            "dimension": self.dimension,
            "E": self.E.to_dict() if self.E is not None else None,
            "lambda": self.lam.to_dict() if self.lam is not None else None,
            "H": self.H.to_dict() if self.H is not None else None,
            "a": format_vector(self.a) if self.a is not None else None,
            "predicates": self.predicates.to_dict(),
            "warnings": list(self.warnings),
        }


@dataclass
class OrbitClosureDescription:
    """
    closure(G(x)) as one of:

    AffineSet(E); ScaledFamily: union over t in closure(Lambda) with 0 of
    a + t(x - a) + dir(E); CosetPair: (x + closure H) u (-x + a + closure H).
    """
    kind: DescriptionKind
    point: Point
    E: Optional[AffineSubspace] = None
    base: Optional[Point] = None
    direction: Optional[Point] = None
    lam: Optional[MulClosure] = None
    H: Optional[AddClosure] = None

    @property
    def dimension(self) -> int:
        return len(self.point)

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"kind": self.kind.value, "point": format_vector(self.point)}
        if self.E is not None:
            result["E"] = self.E.to_dict()
        if self.base is not None:
            result["a"] = format_vector(self.base)
        if self.direction is not None:
            result["direction"] = format_vector(self.direction)
        if self.lam is not None:
            result["lambda"] = self.lam.to_dict()
        if self.H is not None:
            result["H"] = self.H.to_dict()
        return result


@dataclass
class DensityReport:
    """Float diagnostics of a sampled orbit against its predicted closure."""
    max_deviation: float
    coverage: float
    retained: int
    discarded: int
    probes: int = 0
    passed: Optional[bool] = None
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}

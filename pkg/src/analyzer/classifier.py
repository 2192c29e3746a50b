"""
Dichotomy engine: case decision, orbit-closure descriptions, exact membership
and the predicates derived from them.
"""
import logging
from typing import Any, Dict, Optional, Sequence

from src.affine.group import GroupSpec
from src.affine.maps import Point, add_vectors, scale_vector, sub_vectors
from src.analyzer.invariants import (
    compute_EG,
    delta_base_point,
    lambda_generators,
    translation_subgroup_generators,
)
from src.closures.additive import AddVariant, add_member, classify_add_subgroup
from src.closures.lattice import MAX_RATIO_BITS
from src.closures.multiplicative import classify_mul_subgroup, mul_member
from src.errors import (
    AbelianGroupError,
    DimensionMismatchError,
    NonRationalRatioError,
    UnresolvedClosureError,
)
from src.field import linalg
from src.models.data_model import (
    Case,
    ClassificationReport,
    Components,
    DescriptionKind,
    LineDichotomy,
    OrbitClosureDescription,
    Predicates,
)

logger = logging.getLogger(__name__)


class OrbitClassifier:
    """Classify a non abelian spec and describe its orbit closures."""

    def __init__(self, strict: bool = False, max_ratio_bits: int = MAX_RATIO_BITS):
        """
        Args:
            strict: raise on NonRationalRatio / Unresolved instead of
                reporting them as warnings
            max_ratio_bits: factorisation bound for rational ratios
        """
        self.strict = strict
        self.max_ratio_bits = max_ratio_bits

    def classify_group(self, spec: GroupSpec) -> ClassificationReport:
        """
        Decide the case and compute its invariant objects and predicates.

        Raises:
            AbelianGroupError: the generators commute
            NonRationalRatioError: CaseOne with irrational ratios (strict mode)
            UnresolvedClosureError: CaseTwo with undecided H closure (strict mode)
        """
        if spec.is_abelian():
            raise AbelianGroupError(
                "The generated group is abelian; the dichotomy needs a non abelian group"
            )
        if spec.spec_in_sn():
            report = self._classify_case_two(spec)
        else:
            report = self._classify_case_one(spec)
        logger.info(f"Spec classified as case {report.case.value}")
        return report

    def _classify_case_one(self, spec: GroupSpec) -> ClassificationReport:
        n = spec.dimension
        E = compute_EG(spec)
        report = ClassificationReport(Case.ONE, n, E=E, a=E.base)
        try:
            report.lam = classify_mul_subgroup(lambda_generators(spec), self.max_ratio_bits)
        except NonRationalRatioError as e:
            if self.strict:
                raise
            logger.warning(str(e))
            report.warnings.append(f"NonRationalRatio: {e}")

        dim = E.dimension
        lam = report.lam
        if dim == n:
            dense = True
        elif dim < n - 1:
            dense = False
        else:
            dense = lam.is_all_reals() if lam is not None else None

        off_E: Dict[str, Any] = {}
        if lam is not None:
            off_E = {
                "off_E": dim + 1 if lam.is_dense() else dim,
                "countable_union": lam.is_cyclic(),
            }
        report.predicates = Predicates(
            dim_E=dim,
            has_dense_orbit=dense,
            every_U_orbit_minimal_in_U=True,
            has_periodic_orbit=False,
            has_closed_orbit=False,
            orbit_closure_dims={"in_E": dim, **off_E},
        )
        return report

    def _classify_case_two(self, spec: GroupSpec) -> ClassificationReport:
        n = spec.dimension
        H = classify_add_subgroup(translation_subgroup_generators(spec), n)
        a = delta_base_point(spec)
        report = ClassificationReport(Case.TWO, n, H=H, a=a)
        if not H.resolved:
            message = (
                f"Unresolved: closure of H_G undecided (real rank "
                f"{H.evidence['real_rank']}, Q-rank {H.evidence['rational_rank']})"
            )
            if self.strict:
                raise UnresolvedClosureError(message, H.evidence)
            report.warnings.append(message)
            report.predicates = Predicates(every_orbit_minimal=True)
            return report

        dense = H.is_full_space()
        zero_closure = self.orbit_closure_from_report(report, spec.origin())
        report.predicates = Predicates(
            has_dense_orbit=dense,
            orbit_of_zero_dense=self.covers_space(zero_closure),
            every_orbit_minimal=True,
            has_periodic_orbit=H.is_trivial(),
            has_closed_orbit=H.variant == AddVariant.LATTICE,
            has_non_homeomorphic_orbits=H.variant == AddVariant.DENSE_LINE and n >= 2,
            orbit_closure_dims={"H": 1 if H.variant == AddVariant.DENSE_LINE else 0},
        )
        return report

    def orbit_closure(self, spec: GroupSpec, x: Sequence,
                      base: Optional[Point] = None) -> OrbitClosureDescription:
        """closure(G(x)); base overrides the CaseOne base point (any point of E)."""
        report = self.classify_group(spec)
        return self.orbit_closure_from_report(report, x, base)

    def orbit_closure_from_report(self, report: ClassificationReport, x: Sequence,
                                  base: Optional[Point] = None) -> OrbitClosureDescription:
        x = tuple(x)
        if len(x) != report.dimension:
            raise DimensionMismatchError(
                f"Point of dimension {len(x)} for a group acting on R^{report.dimension}"
            )
        if report.case == Case.TWO:
            return OrbitClosureDescription(DescriptionKind.COSET_PAIR, x, base=report.a, H=report.H)

        E = report.E if base is None else report.E.rebased(base)
        if E.contains(x):
            return OrbitClosureDescription(DescriptionKind.AFFINE_SET, x, E=E)
        a = E.base
        return OrbitClosureDescription(
            DescriptionKind.SCALED_FAMILY, x, E=E, base=a,
            direction=sub_vectors(x, a), lam=report.lam,
        )

    def member(self, desc: OrbitClosureDescription, y: Sequence) -> bool:
        """
        Exact membership of y in the described closure.

        Raises:
            UnresolvedClosureError: the description rests on an unresolved closure
        """
        y = tuple(y)
        if len(y) != desc.dimension:
            raise DimensionMismatchError(f"Query of dimension {len(y)} in R^{desc.dimension}")
        if desc.kind == DescriptionKind.AFFINE_SET:
            return desc.E.contains(y)
        if desc.kind == DescriptionKind.COSET_PAIR:
            return (add_member(desc.H, sub_vectors(y, desc.point))
                    or add_member(desc.H, sub_vectors(add_vectors(y, desc.point), desc.base)))

        if desc.lam is None:
            raise UnresolvedClosureError("Ratio group closure unavailable for irrational ratios")
        # y - a = t(x - a) + e with e in dir(E); the sum is direct since x is off E
        coordinates = linalg.solve_coordinates(
            [desc.direction] + list(desc.E.directions), sub_vectors(y, desc.base)
        )
        if coordinates is None:
            return False
        t = coordinates[0]
        return t.is_zero() or mul_member(desc.lam, t)

    def covers_space(self, desc: OrbitClosureDescription) -> bool:
        """
        Whether the described closure is all of R^n.

        A coset pair covers R^n only through a coset of closure(H), and a
        scaled family only when E has codimension one and the ratio
        closure is R.
        """
        if desc.kind == DescriptionKind.AFFINE_SET:
            return desc.E.is_full_space()
        if desc.kind == DescriptionKind.COSET_PAIR:
            desc.H.require_resolved()
            return desc.H.is_full_space()
        if desc.lam is None:
            raise UnresolvedClosureError("Ratio group closure unavailable")
        return desc.E.dimension == desc.dimension - 1 and desc.lam.is_all_reals()

    def connected_components(self, desc: OrbitClosureDescription) -> Components:
        """Number of connected components of the described closure."""
        if desc.kind == DescriptionKind.AFFINE_SET:
            return Components.ONE
        if desc.kind == DescriptionKind.SCALED_FAMILY:
            if desc.lam is None:
                raise UnresolvedClosureError("Ratio group closure unavailable")
            if desc.lam.is_dense():
                return Components.ONE
            return Components.COUNTABLE

        H = desc.H
        H.require_resolved()
        # the cosets coincide iff 2x - a lies in closure(H)
        coincide = add_member(H, sub_vectors(scale_vector(2, desc.point), desc.base))
        if H.variant == AddVariant.DENSE_LINE:
            return Components.ONE if coincide or H.is_full_space() else Components.TWO
        if H.is_trivial():
            return Components.ONE if coincide else Components.TWO
        return Components.COUNTABLE

    def compare_orbits(self, desc_x: OrbitClosureDescription,
                       desc_y: OrbitClosureDescription) -> Dict[str, Any]:
        """Component-count certificate distinguishing two orbit closures."""
        cx = self.connected_components(desc_x)
        cy = self.connected_components(desc_y)
        return {
            "components_x": cx.value,
            "components_y": cy.value,
            "homeomorphy": "not homeomorphic" if cx != cy else "undecided",
        }

    def dichotomy_line(self, spec: GroupSpec) -> LineDichotomy:
        """
        Orbit behaviour of a non abelian group acting on R.

        Raises:
            ValueError: spec does not act on R
        """
        if spec.dimension != 1:
            raise ValueError(f"dichotomy_line needs a spec on R, got R^{spec.dimension}")
        report = self.classify_group(spec)
        if report.case == Case.ONE:
            return LineDichotomy.CASE_ONE_DENSE
        report.H.require_resolved()
        if report.H.variant == AddVariant.DENSE_LINE:
            return LineDichotomy.ALL_DENSE
        return LineDichotomy.ALL_CLOSED_DISCRETE


_default = OrbitClassifier()


def classify_group(spec: GroupSpec) -> ClassificationReport:
    return _default.classify_group(spec)


def orbit_closure(spec: GroupSpec, x: Sequence) -> OrbitClosureDescription:
    return _default.orbit_closure(spec, x)


def member(desc: OrbitClosureDescription, y: Sequence) -> bool:
    return _default.member(desc, y)


def connected_components_of_closure(desc: OrbitClosureDescription) -> Components:
    return _default.connected_components(desc)


def dichotomy_line(spec: GroupSpec) -> LineDichotomy:
    return _default.dichotomy_line(spec)

"""
Invariant objects of a group spec: E_G, the ratio generators, the
translation subgroup H_G and a base point of delta_G.
"""
import logging
from typing import List

from src.affine.group import GroupSpec
from src.affine.maps import MapKind, Point, sub_vectors
from src.affine.subspace import AffineSubspace, affine_hull
from src.errors import (
    AbelianGroupError,
    GroupInsideSnError,
    NoSymmetryGeneratorError,
    NotInSnError,
)
from src.field.scalar import FieldScalar

logger = logging.getLogger(__name__)


def compute_EG(spec: GroupSpec) -> AffineSubspace:
    """
    Smallest G-invariant affine subspace containing the homothety centers.

    Starting from the hull of the centers of the generators with |ratio| != 1,
    the hull is closed under the generators and their inverses until it stops
    growing (at most n + 1 rounds, the dimension grows otherwise). Any
    element with ratio != 1 that preserves the result has its center in it,
    so the result is Aff(Gamma_G).

    Raises:
        AbelianGroupError: generators commute pairwise
        GroupInsideSnError: every generator has ratio +-1
    """
    if spec.is_abelian():
        raise AbelianGroupError("E_G is only defined for non abelian groups")
    if spec.spec_in_sn():
        raise GroupInsideSnError("All generators are symmetries; use the symmetry pipeline")

    seeds = [g.center for g in spec.homothety_generators()]
    hull = affine_hull(seeds)
    for round_number in range(spec.dimension + 2):
        points = list(hull.spanning_points())
        for g in spec.generators:
            g_inv = g.inverse()
            for p in hull.spanning_points():
                points.append(g.apply(p))
                points.append(g_inv.apply(p))
        grown = affine_hull(points)
        logger.debug(f"E_G round {round_number}: dimension {grown.dimension}")
        if grown.dimension == hull.dimension:
            break
        hull = grown
    logger.info(f"E_G has dimension {hull.dimension} in R^{spec.dimension}")
    return hull


def lambda_generators(spec: GroupSpec) -> List[FieldScalar]:
    """Generator ratios; they generate Lambda_G."""
    return spec.ratios()


def _require_symmetry_group(spec: GroupSpec):
    if not spec.spec_in_sn():
        raise NotInSnError("The group contains a homothety of ratio other than +-1")
    if spec.is_abelian():
        raise AbelianGroupError("The translation subgroup pipeline needs a non abelian group")


def translation_subgroup_generators(spec: GroupSpec) -> List[Point]:
    """
    Z-generators of H_G = G_1(0) for a group inside S_n.

    G_1 has index <= 2 in G. With the first odd generator s as coset
    representative, the Schreier generators are the translations b_i and the
    products s o g_j = T_{b_1 - b_j} (and their inverses).

    Raises:
        NotInSnError: some generator is a true homothety
        AbelianGroupError: generators commute
    """
    _require_symmetry_group(spec)
    translations = [g.translation for g in spec.generators if g.kind == MapKind.TRANSLATION]
    odd = [g.translation for g in spec.generators if g.kind == MapKind.SYMMETRY]
    differences = [sub_vectors(odd[0], b) for b in odd] if odd else []
    return translations + differences


def delta_base_point(spec: GroupSpec) -> Point:
    """
    A point of delta_G: g(0) = b for the first generator of ratio -1.

    Raises:
        NoSymmetryGeneratorError: no generator of ratio -1
    """
    for g in spec.generators:
        if g.kind == MapKind.SYMMETRY:
            return g.translation
    raise NoSymmetryGeneratorError("No generator with ratio -1")

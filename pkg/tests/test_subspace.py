"""
Tests for affine subspaces and hulls.
"""
import pytest

from src.affine.maps import AffineMap
from src.affine.subspace import AffineSubspace, affine_hull
from src.analyzer.fixtures import three_centers
from src.errors import DimensionMismatchError


def test_hull_of_single_point(q):
    hull = affine_hull([q.vector([1, 0])])
    assert hull.dimension == 0
    assert hull.contains(q.vector([1, 0]))
    assert not hull.contains(q.vector([0, 0]))


def test_hull_of_collinear_points(q):
    hull = affine_hull([q.vector([0, 0]), q.vector([1, 0]), q.vector([2, 0])])
    assert hull.dimension == 1
    assert hull.contains(q.vector([5, 0]))
    assert not hull.contains(q.vector([0, 1]))


def test_hull_of_three_centers_is_plane():
    spec = three_centers()
    hull = affine_hull([g.center for g in spec.generators])
    assert hull.dimension == 2
    assert hull.is_full_space()


def test_empty_hull_rejected():
    with pytest.raises(ValueError):
        affine_hull([])


def test_same_set_ignores_base_choice(q):
    a = AffineSubspace(q.vector([0, 1]), (q.vector([2, 0]),))
    b = AffineSubspace(q.vector([7, 1]), (q.vector([-1, 0]),))
    assert a.same_set(b)
    assert a.directions == ((1, 0),)
    assert not a.same_set(AffineSubspace(q.vector([0, 0]), (q.vector([1, 0]),)))


def test_rebased(q):
    line = AffineSubspace(q.vector([0, 1]), (q.vector([1, 0]),))
    moved = line.rebased(q.vector([3, 1]))
    assert moved.base == (3, 1)
    assert moved.same_set(line)
    with pytest.raises(ValueError):
        line.rebased(q.vector([0, 0]))


def test_image_and_invariance(q):
    line = AffineSubspace(q.vector([0, 1]), (q.vector([1, 0]),))
    shift_x = AffineMap.translation_by(q.vector([5, 0]))
    shift_y = AffineMap.translation_by(q.vector([0, 5]))
    assert line.is_invariant_under(shift_x)
    assert not line.is_invariant_under(shift_y)
    assert line.image(shift_y).contains(q.vector([0, 6]))
    homothety = AffineMap.from_center(q.vector([4, 1]), q.scalar(3))
    assert line.is_invariant_under(homothety)


def test_dimension_mismatch(q):
    with pytest.raises(DimensionMismatchError):
        affine_hull([q.vector([0]), q.vector([0, 1])])
    with pytest.raises(DimensionMismatchError):
        AffineSubspace(q.vector([0, 0])).contains(q.vector([0]))


def test_to_dict(ctx2):
    line = AffineSubspace(ctx2.vector([0, ctx2.sqrt_of(2)]), (ctx2.vector([2, 0]),))
    assert line.to_dict() == {
        "base": ["0", "sqrt2"],
        "directions": [["1", "0"]],
        "dimension": 1,
    }

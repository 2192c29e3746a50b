"""
Tests for the dichotomy engine: case decision, predicates, orbit closures,
membership and connected components.
"""
from fractions import Fraction

import pytest

from src.affine.group import GroupSpec, Word, evaluate_word
from src.affine.maps import AffineMap
from src.affine.subspace import AffineSubspace
from src.analyzer.classifier import (
    OrbitClassifier,
    classify_group,
    connected_components_of_closure,
    dichotomy_line,
    member,
    orbit_closure,
)
from src.analyzer.fixtures import FIXTURES, load_fixture, three_centers
from src.analyzer.invariants import compute_EG
from src.analyzer.oracle import enumerate_words
from src.closures.additive import AddVariant
from src.closures.multiplicative import MulVariant, classify_mul_subgroup
from src.errors import (
    AbelianGroupError,
    DimensionMismatchError,
    NonRationalRatioError,
    UnresolvedClosureError,
)
from src.field import linalg
from src.models.data_model import (
    Case,
    Components,
    DescriptionKind,
    LineDichotomy,
    OrbitClosureDescription,
)
from src.simulator.diagnostics import deviation_from_prediction
from src.simulator.sampler import SampleConfig, sample_orbit


def irrational_ratio_spec(ctx2):
    return GroupSpec(1, ctx2, (
        AffineMap.from_center(ctx2.vector([0]), ctx2.sqrt_of(2)),
        AffineMap.translation_by(ctx2.vector([1])),
    ))


def unresolved_spec(ctx2):
    s = ctx2.sqrt_of(2)
    return GroupSpec(2, ctx2, (
        AffineMap(-ctx2.one(), ctx2.vector([0, 0])),
        AffineMap.translation_by(ctx2.vector([1, 0])),
        AffineMap.translation_by((s, ctx2.zero())),
        AffineMap.translation_by(ctx2.vector([0, 1])),
    ))


def mixed_sign_line_spec(q):
    """(a, 2) and (a, -3) with a = (1, 1), plus T_{a_2}: E is a line, Lambda dense in R*."""
    a = q.vector([1, 1])
    return GroupSpec(2, q, (
        AffineMap.from_center(a, q.scalar(2)),
        AffineMap.from_center(a, q.scalar(-3)),
        AffineMap.translation_by(q.vector([0, 1])),
    ))


class TestCaseOne:
    def test_three_centers(self):
        report = classify_group(three_centers())
        assert report.case == Case.ONE
        assert report.resolved
        p = report.predicates
        assert p.dim_E == 2
        assert p.has_dense_orbit
        assert p.every_U_orbit_minimal_in_U
        assert p.has_periodic_orbit is False
        assert p.has_closed_orbit is False
        assert report.lam.variant == MulVariant.DENSE_POS

    @pytest.mark.parametrize("name", [
        "homothety-translations", "homothety-translations-3d",
        "translations-scaling", "translations-scaling-2d",
    ])
    def test_minimal_groups(self, name):
        spec = load_fixture(name)
        report = classify_group(spec)
        assert report.E.dimension == spec.dimension
        assert report.predicates.has_dense_orbit

    def test_invariant_line(self):
        report = classify_group(load_fixture("homothety-partial-translations"))
        assert report.predicates.dim_E == 1
        assert report.predicates.has_dense_orbit is False
        assert report.lam.variant == MulVariant.CYCLIC_POS
        assert report.predicates.orbit_closure_dims == {
            "in_E": 1, "off_E": 1, "countable_union": True,
        }

    def test_dense_ratio_group_on_hyperplane(self, q):
        report = classify_group(mixed_sign_line_spec(q))
        assert report.predicates.dim_E == 1
        assert report.lam.is_all_reals()
        assert report.predicates.has_dense_orbit
        assert report.predicates.orbit_closure_dims["off_E"] == 2

    def test_irrational_ratio_warns(self, ctx2):
        report = classify_group(irrational_ratio_spec(ctx2))
        assert report.lam is None
        assert not report.resolved
        assert report.warnings[0].startswith("NonRationalRatio")
        assert report.predicates.has_dense_orbit
        with pytest.raises(NonRationalRatioError):
            OrbitClassifier(strict=True).classify_group(irrational_ratio_spec(ctx2))

    def test_abelian_rejected(self, q):
        c = q.vector([1])
        spec = GroupSpec(1, q, (
            AffineMap.from_center(c, q.scalar(2)),
            AffineMap.from_center(c, q.scalar(3)),
        ))
        with pytest.raises(AbelianGroupError):
            classify_group(spec)


class TestCaseTwo:
    def test_irrational_translations(self, ctx2):
        report = classify_group(load_fixture("irrational-translations"))
        assert report.case == Case.TWO
        assert report.H.variant == AddVariant.DENSE_LINE
        assert report.H.direction == (1, 0)
        assert report.a == ctx2.vector([1, 0])
        p = report.predicates
        assert p.every_orbit_minimal
        assert p.has_dense_orbit is False
        assert p.orbit_of_zero_dense is False
        assert p.has_non_homeomorphic_orbits
        assert p.has_periodic_orbit is False
        assert p.has_closed_orbit is False

    def test_discrete_reflections(self):
        report = classify_group(load_fixture("line-reflections"))
        assert report.H.variant == AddVariant.LATTICE
        assert report.predicates.has_closed_orbit
        assert report.predicates.has_periodic_orbit is False
        assert report.predicates.orbit_closure_dims == {"H": 0}

    def test_dense_reflections(self):
        report = classify_group(load_fixture("line-reflections-dense"))
        assert report.predicates.has_dense_orbit
        assert report.predicates.orbit_of_zero_dense

    def test_unresolved(self, ctx2):
        report = classify_group(unresolved_spec(ctx2))
        assert not report.resolved
        assert report.warnings[0].startswith("Unresolved")
        assert report.predicates.every_orbit_minimal
        with pytest.raises(UnresolvedClosureError):
            OrbitClassifier(strict=True).classify_group(unresolved_spec(ctx2))
        desc = OrbitClassifier().orbit_closure(unresolved_spec(ctx2), ctx2.vector([0, 0]))
        with pytest.raises(UnresolvedClosureError):
            member(desc, ctx2.vector([0, 0]))

    def test_report_to_dict(self):
        data = classify_group(load_fixture("irrational-translations")).to_dict()
        assert data["case"] == "two"
        assert data["abelian"] is False
        assert data["H"]["variant"] == "DenseLine"
        assert data["a"] == ["1", "0"]
        assert data["E"] is None


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_every_fixture_classifies(name):
    spec = load_fixture(name)
    report = classify_group(spec)
    assert report.resolved
    assert report.case == (Case.TWO if spec.spec_in_sn() else Case.ONE)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("nope")


class TestOrbitClosure:
    def test_point_in_E_gives_affine_set(self):
        desc = orbit_closure(three_centers(), three_centers().origin())
        assert desc.kind == DescriptionKind.AFFINE_SET
        assert connected_components_of_closure(desc) == Components.ONE

    def test_scaled_family_membership(self, q):
        spec = load_fixture("homothety-partial-translations")
        desc = orbit_closure(spec, q.vector([3, 0]))
        assert desc.kind == DescriptionKind.SCALED_FAMILY
        assert desc.base == (1, 1)
        assert member(desc, q.vector([5, 7]))
        assert member(desc, q.vector([2, 0]))
        assert member(desc, q.vector([1, 100]))
        assert not member(desc, q.vector([7, 0]))
        assert not member(desc, q.vector([-1, 0]))
        assert connected_components_of_closure(desc) == Components.COUNTABLE

    def test_scaled_family_around_point(self, q):
        lam = classify_mul_subgroup([q.scalar(2)])
        desc = OrbitClosureDescription(
            DescriptionKind.SCALED_FAMILY, q.vector([1]),
            E=AffineSubspace(q.vector([0])), base=q.vector([0]), direction=q.vector([1]),
            lam=lam,
        )
        assert member(desc, q.vector([8]))
        assert member(desc, q.vector([0]))
        assert not member(desc, q.vector([3]))

    def test_dense_scaled_family_is_connected(self, q):
        desc = orbit_closure(mixed_sign_line_spec(q), q.vector([3, 0]))
        assert desc.lam.variant == MulVariant.DENSE_ALL
        assert member(desc, q.vector([-7, Fraction(1, 3)]))
        assert connected_components_of_closure(desc) == Components.ONE

    def test_base_point_choice_does_not_change_the_set(self, q):
        spec = load_fixture("homothety-partial-translations")
        classifier = OrbitClassifier()
        x = q.vector([3, 0])
        default = classifier.orbit_closure(spec, x)
        moved = classifier.orbit_closure(spec, x, base=q.vector([1, 7]))
        for i in range(-4, 9):
            for j in range(-3, 4):
                y = q.vector([Fraction(i, 2), j])
                assert classifier.member(default, y) == classifier.member(moved, y)

    def test_closures_of_points_in_one_closure_agree(self, q):
        spec = load_fixture("homothety-partial-translations")
        x, y = q.vector([3, 0]), q.vector([5, 7])
        cx, cy = orbit_closure(spec, x), orbit_closure(spec, y)
        assert member(cx, y)
        for i in range(-6, 12):
            z = q.vector([Fraction(i, 2), Fraction(i, 3)])
            assert member(cx, z) == member(cy, z)

    def test_dimension_mismatch(self, q):
        with pytest.raises(DimensionMismatchError):
            orbit_closure(three_centers(), (0,))
        desc = orbit_closure(load_fixture("line-two-centers"), q.vector([5]))
        with pytest.raises(DimensionMismatchError):
            member(desc, q.vector([1, 1]))


class TestCosetPairs:
    def test_non_homeomorphic_orbits(self, ctx2):
        spec = load_fixture("irrational-translations")
        s = ctx2.sqrt_of(2)
        at_zero = orbit_closure(spec, ctx2.vector([0, 0]))
        off_axis = orbit_closure(spec, ctx2.vector([0, 1]))
        assert at_zero.kind == DescriptionKind.COSET_PAIR
        assert member(at_zero, (s, ctx2.zero()))
        assert member(off_axis, (s, ctx2.one()))
        assert member(off_axis, ctx2.vector([0, -1]))
        assert not member(off_axis, ctx2.vector([0, 2]))
        assert connected_components_of_closure(at_zero) == Components.ONE
        assert connected_components_of_closure(off_axis) == Components.TWO
        assert OrbitClassifier().compare_orbits(at_zero, off_axis) == {
            "components_x": "1",
            "components_y": "2",
            "homeomorphy": "not homeomorphic",
        }

    def test_generator_images_stay_in_closure(self, rng, ctx2):
        for name in ("irrational-translations", "line-reflections", "line-reflections-dense"):
            spec = load_fixture(name)
            for _ in range(10):
                x = ctx2.vector([Fraction(rng.randint(-20, 20), rng.randint(1, 7))
                                 for _ in range(spec.dimension)])
                desc = orbit_closure(spec, x)
                for g in spec.generators:
                    assert member(desc, g.apply(x))
                    assert member(desc, g.inverse().apply(x))

    def test_lattice_cosets_are_countable(self, ctx2):
        desc = orbit_closure(load_fixture("line-reflections"), ctx2.vector([Fraction(1, 4)]))
        assert member(desc, ctx2.vector([Fraction(-1, 4)]))
        assert member(desc, ctx2.vector([Fraction(11, 4)]))
        assert not member(desc, ctx2.vector([Fraction(1, 2)]))
        assert connected_components_of_closure(desc) == Components.COUNTABLE


class TestDichotomyLine:
    def test_cases(self):
        assert dichotomy_line(load_fixture("line-two-centers")) == LineDichotomy.CASE_ONE_DENSE
        assert dichotomy_line(load_fixture("product-translation")) == LineDichotomy.CASE_ONE_DENSE
        assert dichotomy_line(load_fixture("line-reflections")) == LineDichotomy.ALL_CLOSED_DISCRETE
        assert dichotomy_line(load_fixture("line-reflections-dense")) == LineDichotomy.ALL_DENSE

    def test_needs_the_line(self):
        with pytest.raises(ValueError):
            dichotomy_line(three_centers())


def random_line_spec(rng, ctx, case_one: bool, irrational: bool = False) -> GroupSpec:
    """Non abelian group on R built from homotheties, symmetries and translations."""
    ratios = [2, 3, Fraction(1, 2), -2, 1, -1] if case_one else [1, -1]
    while True:
        generators = []
        for _ in range(rng.randint(2, 3)):
            b = ctx.scalar(Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3])))
            if irrational and rng.random() < 0.5:
                b = b * ctx.sqrt_of(2)
            generators.append(AffineMap(ctx.coerce(rng.choice(ratios)), (b,)))
        spec = GroupSpec(1, ctx, tuple(generators))
        if spec.is_abelian() or spec.spec_in_sn() == case_one:
            continue
        return spec


def translation_rank(spec: GroupSpec) -> int:
    """Q-rank of the translation parts and symmetry center differences, read off directly."""
    values = [g.translation[0] for g in spec.generators if g.ratio == 1]
    flips = [g.translation[0] for g in spec.generators if g.ratio == -1]
    values += [b - flips[0] for b in flips[1:]]
    return linalg.rank([list(v.coeffs) for v in values if not v.is_zero()])


class TestRandomLineGroups:
    def test_case_one_orbits_are_dense(self, rng, q):
        for _ in range(50):
            spec = random_line_spec(rng, q, case_one=True)
            assert dichotomy_line(spec) == LineDichotomy.CASE_ONE_DENSE
            assert classify_group(spec).predicates.has_dense_orbit

    def test_case_two_matches_translation_rank(self, rng, ctx2):
        for _ in range(50):
            spec = random_line_spec(rng, ctx2, case_one=False, irrational=True)
            expected = (LineDichotomy.ALL_DENSE if translation_rank(spec) == 2
                        else LineDichotomy.ALL_CLOSED_DISCRETE)
            assert dichotomy_line(spec) == expected
            assert classify_group(spec).predicates.has_dense_orbit == (
                expected == LineDichotomy.ALL_DENSE
            )

    def test_lattice_step_is_smallest_translation(self, rng, q):
        for _ in range(50):
            spec = random_line_spec(rng, q, case_one=False)
            H = classify_group(spec).H
            assert H.variant == AddVariant.LATTICE
            step = abs(float(H.basis[0][0]))
            sample = enumerate_words(spec, 8)
            values = sorted({float(p[0]) for p, _ in sample.translation_points.values()})
            gaps = [b - a for a, b in zip(values, values[1:])]
            assert min(gaps) == pytest.approx(step, abs=1e-12)
            for p, _ in sample.translation_points.values():
                assert (p[0] / H.basis[0][0]).is_integer()


def random_case_one_spec(rng, q) -> GroupSpec:
    """Homotheties centered on a random rational flat E, plus translations along E."""
    n = rng.choice([2, 3])
    while True:
        d = rng.randint(1, n - 1)
        base = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        directions = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(d)]
        if linalg.rank(directions) < d:
            continue

        def along_E():
            coefficients = [rng.randint(-2, 2) for _ in range(d)]
            return [sum(c * v[i] for c, v in zip(coefficients, directions)) for i in range(n)]

        generators = [
            AffineMap.from_center(
                q.vector([b + e for b, e in zip(base, along_E())]),
                q.coerce(rng.choice([2, -2, 3, Fraction(1, 2), -3])),
            )
            for _ in range(rng.randint(1, 2))
        ]
        generators += [AffineMap.translation_by(q.vector(along_E())) for _ in range(rng.randint(0, 2))]
        spec = GroupSpec(n, q, tuple(generators))
        if not spec.is_abelian():
            return spec


def random_word(rng, spec, max_length=4) -> Word:
    return Word.from_steps([
        (rng.randrange(len(spec.generators)), rng.choice([1, -1]))
        for _ in range(rng.randint(1, max_length))
    ])


class TestRandomCaseOneClosures:
    def test_closures_along_an_orbit_agree(self, rng, q):
        classifier = OrbitClassifier()
        for seed in range(20):
            spec = random_case_one_spec(rng, q)
            n = spec.dimension
            report = classifier.classify_group(spec)
            E = compute_EG(spec)
            x = q.vector([Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(n)])
            while E.contains(x):
                x = q.vector([Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3])) for _ in range(n)])
            desc_x = classifier.orbit_closure_from_report(report, x)
            assert desc_x.kind == DescriptionKind.SCALED_FAMILY

            cfg = SampleConfig([float(c) for c in x], num_words=4000, max_word_length=8,
                               window=50.0, seed=seed)
            assert deviation_from_prediction(sample_orbit(spec, cfg).points, desc_x) <= 1e-8

            images = [evaluate_word(spec, random_word(rng, spec)).apply(x) for _ in range(30)]
            for y in images[:3]:
                desc_y = classifier.orbit_closure_from_report(report, y)
                assert classifier.member(desc_x, y)
                others = images + [
                    q.vector([Fraction(rng.randint(-8, 8), rng.choice([1, 2, 4])) for _ in range(n)])
                    for _ in range(20)
                ]
                for z in others:
                    assert classifier.member(desc_x, z) == classifier.member(desc_y, z)


class TestCoversSpace:
    def test_coset_pairs(self, ctx2):
        assert classify_group(load_fixture("line-reflections-dense")).predicates.orbit_of_zero_dense
        assert classify_group(load_fixture("line-reflections")).predicates.orbit_of_zero_dense is False
        # closure(H) is a line of R^2
        assert classify_group(load_fixture("irrational-translations")).predicates.orbit_of_zero_dense is False

    def test_affine_sets(self):
        classifier = OrbitClassifier()
        spec = three_centers()
        assert classifier.covers_space(classifier.orbit_closure(spec, spec.origin()))
        line = load_fixture("homothety-partial-translations")
        assert not classifier.covers_space(classifier.orbit_closure(line, line.ctx.vector([1, 0])))

    def test_scaled_families(self, q):
        classifier = OrbitClassifier()
        dense = classifier.orbit_closure(mixed_sign_line_spec(q), q.vector([3, 0]))
        assert classifier.covers_space(dense)
        cyclic = classifier.orbit_closure(load_fixture("homothety-partial-translations"),
                                          q.vector([3, 0]))
        assert not classifier.covers_space(cyclic)
        cyclic.lam = None
        with pytest.raises(UnresolvedClosureError):
            classifier.covers_space(cyclic)

    def test_unresolved_coset_pair(self, ctx2):
        classifier = OrbitClassifier()
        desc = classifier.orbit_closure(unresolved_spec(ctx2), ctx2.vector([0, 0]))
        with pytest.raises(UnresolvedClosureError):
            classifier.covers_space(desc)

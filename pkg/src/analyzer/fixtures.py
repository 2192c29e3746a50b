"""
Built-in group specs: the worked examples of the dichotomy and the n = 1
line cases.
"""
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from src.affine.group import GroupSpec
from src.affine.maps import AffineMap
from src.field.scalar import FieldContext


def _basis(ctx: FieldContext, n: int) -> List[Tuple]:
    return [ctx.vector([1 if i == k else 0 for i in range(n)]) for k in range(n)]


def three_centers(ratios: Sequence = (2, 3, Fraction(1, 2))) -> GroupSpec:
    """Three homotheties of R^2 centered at (sqrt2, 0), (0, 1), (-sqrt3, -sqrt2)."""
    ctx = FieldContext((2, 3))
    s2, s3 = ctx.sqrt_of(2), ctx.sqrt_of(3)
    centers = [
        (s2, ctx.zero()),
        (ctx.zero(), ctx.one()),
        (-s3, -s2),
    ]
    generators = [AffineMap.from_center(c, ctx.coerce(r)) for c, r in zip(centers, ratios)]
    return GroupSpec(2, ctx, tuple(generators), ("f1", "f2", "f3"))


def homothety_with_translations(n: int = 2, t=2, first_translation: int = 0) -> GroupSpec:
    """
    f = (a, t) with a = a_1 + ... + a_n, together with the translations
    T_{a_k} for first_translation <= k < n.

    first_translation = 0 gives a minimal group; first_translation = 1 keeps
    the hyperplane a + span(a_2, ..., a_n) invariant.
    """
    ctx = FieldContext()
    basis = _basis(ctx, n)
    a = ctx.vector([1] * n)
    generators = [AffineMap.from_center(a, ctx.coerce(t))]
    names = ["f"]
    for k in range(first_translation, n):
        generators.append(AffineMap.translation_by(basis[k]))
        names.append(f"T{k + 1}")
    return GroupSpec(n, ctx, tuple(generators), tuple(names))


def translations_and_scaling(n: int = 3, ratio=2) -> GroupSpec:
    """T_{a_1}, ..., T_{a_n} and ratio*Id."""
    ctx = FieldContext()
    generators = [AffineMap.translation_by(v) for v in _basis(ctx, n)]
    generators.append(AffineMap(ctx.coerce(ratio), ctx.vector([0] * n)))
    names = [f"T{k + 1}" for k in range(n)] + ["s"]
    return GroupSpec(n, ctx, tuple(generators), tuple(names))


def irrational_translations(n: int = 2) -> GroupSpec:
    """f = T_a, g = (a, -1), h = T_{sqrt2 a} with a the first basis vector."""
    ctx = FieldContext((2,))
    a = _basis(ctx, n)[0]
    s2 = ctx.sqrt_of(2)
    generators = (
        AffineMap.translation_by(a),
        AffineMap(-ctx.one(), a),
        AffineMap.translation_by(tuple(s2 * c for c in a)),
    )
    return GroupSpec(n, ctx, generators, ("f", "g", "h"))


def product_is_translation() -> GroupSpec:
    """f = (1, 2) and g = (2, 1/2) on R; f o g = T_1."""
    ctx = FieldContext()
    f = AffineMap.from_center(ctx.vector([1]), ctx.scalar(2))
    g = AffineMap.from_center(ctx.vector([2]), ctx.scalar(Fraction(1, 2)))
    return GroupSpec(1, ctx, (f, g), ("f", "g"))


def line_two_centers() -> GroupSpec:
    """(0, 2) and (1, 3) on R."""
    ctx = FieldContext()
    f = AffineMap.from_center(ctx.vector([0]), ctx.scalar(2))
    g = AffineMap.from_center(ctx.vector([1]), ctx.scalar(3))
    return GroupSpec(1, ctx, (f, g), ("f", "g"))


def line_reflections(irrational: bool = False) -> GroupSpec:
    """x -> -x, x -> 1 - x and optionally x -> sqrt2 - x."""
    ctx = FieldContext((2,))
    translations = [ctx.zero(), ctx.one()]
    if irrational:
        translations.insert(1, ctx.sqrt_of(2))
    generators = tuple(AffineMap(-ctx.one(), (b,)) for b in translations)
    return GroupSpec(1, ctx, generators)


FIXTURES: Dict[str, Tuple[str, Callable[[], GroupSpec]]] = {
    "three-centers": (
        "Three homotheties of R^2 with centers spanning the plane", three_centers),
    "homothety-translations": (
        "(a, 2) with translations along every basis vector of R^2",
        homothety_with_translations),
    "homothety-translations-3d": (
        "(a, 2) with translations along every basis vector of R^3",
        lambda: homothety_with_translations(3)),
    "homothety-partial-translations": (
        "(a, 2) with T_{a_k}, 2 <= k <= n, in R^2 (invariant line)",
        lambda: homothety_with_translations(2, first_translation=1)),
    "translations-scaling": (
        "T_{a_1}, T_{a_2}, T_{a_3} and 2*Id on R^3", translations_and_scaling),
    "translations-scaling-2d": (
        "T_{a_1}, T_{a_2} and 2*Id on R^2", lambda: translations_and_scaling(2)),
    "irrational-translations": (
        "T_a, (a, -1), T_{sqrt2 a} on R^2: orbits of 0 and (0, 1) not homeomorphic",
        irrational_translations),
    "product-translation": (
        "(1, 2) and (2, 1/2) on R whose product is T_1", product_is_translation),
    "line-two-centers": ("(0, 2) and (1, 3) on R", line_two_centers),
    "line-reflections": ("x -> -x and x -> 1 - x on R", line_reflections),
    "line-reflections-dense": (
        "x -> -x, x -> sqrt2 - x and x -> 1 - x on R", lambda: line_reflections(True)),
}


def load_fixture(name: str) -> GroupSpec:
    """
    Build a named fixture.

    Raises:
        KeyError: unknown fixture name
    """
    if name not in FIXTURES:
        raise KeyError(f"Unknown example '{name}'; available: {', '.join(sorted(FIXTURES))}")
    return FIXTURES[name][1]()

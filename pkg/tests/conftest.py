"""
Shared fixtures: field contexts, seeded randomness and random spec builders.
"""
import random
from fractions import Fraction
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.affine.group import GroupSpec
from src.affine.maps import AffineMap
from src.field.scalar import FieldContext

CONFIG_PATH = str(Path(__file__).parent.parent / "config" / "config.yaml")

RATIOS = [2, 3, Fraction(1, 2), Fraction(2, 3), -2, -1, 1]


@pytest.fixture
def q():
    return FieldContext()


@pytest.fixture
def ctx2():
    return FieldContext((2,))


@pytest.fixture
def ctx23():
    return FieldContext((2, 3))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def runner():
    try:
        return CliRunner(mix_stderr=False)
    except TypeError:
        return CliRunner()


@pytest.fixture
def config_path():
    return CONFIG_PATH


def random_map(rng: random.Random, ctx: FieldContext, n: int, ratios=RATIOS) -> AffineMap:
    ratio = ctx.coerce(rng.choice(ratios))
    translation = ctx.vector([Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(n)])
    return AffineMap(ratio, translation)


def random_spec(rng: random.Random, n: int, count: int, ratios=RATIOS,
                need_homothety: bool = True) -> GroupSpec:
    """Random non abelian spec over Q; with need_homothety, some |ratio| != 1."""
    ctx = FieldContext()
    while True:
        generators = tuple(random_map(rng, ctx, n, ratios) for _ in range(count))
        spec = GroupSpec(n, ctx, generators)
        if spec.is_abelian():
            continue
        if need_homothety == spec.spec_in_sn():
            continue
        return spec


@pytest.fixture
def spec_factory(rng):
    def build(n: int = 2, count: int = 3, **kwargs) -> GroupSpec:
        return random_spec(rng, n, count, **kwargs)
    return build

"""
Finitely generated groups of affine homotheties and words over their generators.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Sequence, Tuple

from src.affine.maps import AffineMap, MapKind, Point
from src.errors import DimensionMismatchError, FieldContextError, InvalidWordError, SpecFileError
from src.field.scalar import FieldContext, FieldScalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Word:
    """f_{i_1}^{n_1} o ... o f_{i_q}^{n_q}, stored as (index, exponent) letters."""
    letters: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(m)) for i, m in self.letters))
        if any(m == 0 for _, m in self.letters):
            raise InvalidWordError(f"Zero exponent in word {self.letters}")

    @classmethod
    def from_steps(cls, steps: Sequence[Tuple[int, int]]) -> "Word":
        """Merge consecutive unit steps (index, +-1) into exponent letters."""
        letters: List[List[int]] = []
        for index, step in steps:
            if letters and letters[-1][0] == index:
                letters[-1][1] += step
                if letters[-1][1] == 0:
                    letters.pop()
            else:
                letters.append([index, step])
        return cls(tuple((i, m) for i, m in letters))

    def expand(self) -> List[Tuple[int, int]]:
        """Unit steps, leftmost letter first."""
        steps = []
        for index, m in self.letters:
            unit = 1 if m > 0 else -1
            steps.extend([(index, unit)] * abs(m))
        return steps

    def length(self) -> int:
        return sum(abs(m) for _, m in self.letters)

    def to_list(self) -> List[List[int]]:
        return [[i, m] for i, m in self.letters]

    def render(self, names: Sequence[str]) -> str:
        if not self.letters:
            return "id"
        return " o ".join(
            names[i] if m == 1 else f"{names[i]}^{m}" for i, m in self.letters
        )


@dataclass(frozen=True)
class GroupSpec:
    """A group given by named generators acting on R^dimension."""
    dimension: int
    ctx: FieldContext
    generators: Tuple[AffineMap, ...]
    names: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"g{i + 1}" for i in range(len(self.generators)))
            )
        else:
            object.__setattr__(self, "names", tuple(self.names))
        self._validate()

    def _validate(self):
        if self.dimension < 1:
            raise SpecFileError(f"Dimension must be >= 1, got {self.dimension}")
        if not self.generators:
            raise SpecFileError("A group spec needs at least one generator")
        if len(self.names) != len(self.generators):
            raise SpecFileError("Generator names and generators differ in number")
        for name, g in zip(self.names, self.generators):
            if g.dimension != self.dimension:
                raise DimensionMismatchError(
                    f"Generator {name} acts on R^{g.dimension}, spec is R^{self.dimension}"
                )
            if g.ctx != self.ctx:
                raise FieldContextError(f"Generator {name} uses another field context")

    def spec_in_sn(self) -> bool:
        """All generators have ratio +-1, hence so has every element."""
        return all(g.in_symmetry_group() for g in self.generators)

    def is_abelian(self) -> bool:
        """Pairwise-commuting generators generate an abelian group."""
        return all(f.commutes(g) for f, g in combinations(self.generators, 2))

    def ratios(self) -> List[FieldScalar]:
        return [g.ratio for g in self.generators]

    def homothety_generators(self) -> List[AffineMap]:
        return [g for g in self.generators if g.kind == MapKind.HOMOTHETY]

    def translated(self, c: Sequence[FieldScalar]) -> "GroupSpec":
        """Conjugate every generator by T_c (the same group seen from origin -c)."""
        shift = AffineMap.translation_by(tuple(c))
        return GroupSpec(
            self.dimension,
            self.ctx,
            tuple(g.conjugate(shift) for g in self.generators),
            self.names,
        )

    def origin(self) -> Point:
        return tuple(self.ctx.zero() for _ in range(self.dimension))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "field": self.ctx.to_dict(),
            "generators": [
                {"name": name, **g.to_dict()} for name, g in zip(self.names, self.generators)
            ],
        }


def power_translation(g: AffineMap, m: int) -> Tuple[FieldScalar, Point]:
    """Ratio and translation of g^m (closed form)."""
    p = g.power(m)
    return p.ratio, p.translation


def evaluate_word(spec: GroupSpec, word: Word) -> AffineMap:
    """
    Evaluate a word by the closed-form product formula.

    The ratio is prod lambda_{i_j}^{n_j}; the translation is
    sum_j (prod_{l<j} lambda_{i_l}^{n_l}) * b(f_{i_j}^{n_j}), where
    b(f^m) = (1 - lambda^m) a for a homothety with center a, m*b for a
    translation and b*(1 - (-1)^m)/2 for a symmetry.

    Raises:
        InvalidWordError: a letter index outside the generator list
    """
    ratio = spec.ctx.one()
    translation = spec.origin()
    for index, m in word.letters:
        if not 0 <= index < len(spec.generators):
            raise InvalidWordError(
                f"Generator index {index} outside 0..{len(spec.generators) - 1}"
            )
        letter_ratio, letter_translation = power_translation(spec.generators[index], m)
        translation = tuple(t + ratio * b for t, b in zip(translation, letter_translation))
        ratio = ratio * letter_ratio
    return AffineMap(ratio, translation)


def fold_word(spec: GroupSpec, word: Word) -> AffineMap:
    """Left fold of compose over the expanded unit steps."""
    result = AffineMap.identity(spec.ctx, spec.dimension)
    for index, unit in word.expand():
        if not 0 <= index < len(spec.generators):
            raise InvalidWordError(f"Generator index {index} out of range")
        g = spec.generators[index]
        result = result.compose(g if unit > 0 else g.inverse())
    return result

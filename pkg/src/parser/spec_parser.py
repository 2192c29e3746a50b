"""
Loader and renderer for JSON group-spec files.

    {
      "dimension": 2,
      "field": {"radicands": [2]},
      "generators": [
        {"name": "f", "ratio": "1", "translation": ["1", "0"]},
        {"name": "g", "ratio": "2", "center": ["sqrt2", "0"]}
      ]
    }

Scalars are literal strings (plain JSON integers are accepted too). A
generator gives either its translation or its center; the center form needs
a ratio other than 1.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.affine.group import GroupSpec
from src.affine.maps import AffineMap
from src.errors import DimensionMismatchError, SpecFileError
from src.field.scalar import FieldContext, format_vector
from src.parser.scalar_parser import ScalarParser

logger = logging.getLogger(__name__)

ScalarLiteral = Union[str, int]


class FieldModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    radicands: List[int] = Field(default_factory=list)


class GeneratorModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    ratio: ScalarLiteral
    translation: Optional[List[ScalarLiteral]] = None
    center: Optional[List[ScalarLiteral]] = None

    @model_validator(mode="after")
    def _one_form(self) -> "GeneratorModel":
        if (self.translation is None) == (self.center is None):
            raise ValueError("give exactly one of 'translation' and 'center'")
        return self


class SpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dimension: int
    field: FieldModel = Field(default_factory=FieldModel)
    generators: List[GeneratorModel]

    @field_validator("dimension")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("dimension must be >= 1")
        return value

    @field_validator("generators")
    @classmethod
    def _nonempty(cls, value: List[GeneratorModel]) -> List[GeneratorModel]:
        if not value:
            raise ValueError("at least one generator is required")
        return value


class SpecParser:
    """Turn spec documents into GroupSpec objects and back."""

    def parse_dict(self, data: Dict[str, Any]) -> GroupSpec:
        """
        Build a GroupSpec from a decoded JSON document.

        Raises:
            SpecFileError: schema violation or invalid generator
            ScalarSyntaxError, UnknownRadicandError, ZeroDenominatorError:
                bad scalar literal
            FieldContextError: invalid radicands
            DimensionMismatchError: vector of the wrong length
        """
        try:
            model = SpecModel.model_validate(data)
        except ValidationError as e:
            raise SpecFileError(f"Invalid spec: {e}") from e

        ctx = FieldContext(tuple(model.field.radicands))
        literals = ScalarParser(ctx)
        generators, names = [], []
        for index, gen in enumerate(model.generators):
            name = gen.name or f"g{index + 1}"
            ratio = literals.parse(str(gen.ratio))
            if ratio.is_zero():
                raise SpecFileError(f"Generator {name} has ratio 0")
            vector = gen.translation if gen.translation is not None else gen.center
            values = literals.parse_vector(vector)
            if len(values) != model.dimension:
                raise DimensionMismatchError(
                    f"Generator {name} has a vector of length {len(values)}, "
                    f"expected {model.dimension}"
                )
            if gen.center is not None:
                if ratio == 1:
                    raise SpecFileError(f"Generator {name}: the center form needs ratio != 1")
                generators.append(AffineMap.from_center(values, ratio))
            else:
                generators.append(AffineMap(ratio, values))
            names.append(name)

        if len(set(names)) != len(names):
            raise SpecFileError(f"Duplicate generator names: {names}")
        spec = GroupSpec(model.dimension, ctx, tuple(generators), tuple(names))
        logger.debug(f"Parsed spec on R^{spec.dimension} with {len(generators)} generators")
        return spec

    def load(self, path: str) -> GroupSpec:
        """
        Read and parse a spec file.

        Raises:
            SpecFileError: missing file or invalid JSON
        """
        spec_path = Path(path)
        if not spec_path.exists():
            raise SpecFileError(f"Spec file not found: {path}")
        try:
            data = json.loads(spec_path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise SpecFileError(f"Invalid JSON in {path}: {e}") from e
        return self.parse_dict(data)

    @staticmethod
    def render(spec: GroupSpec) -> Dict[str, Any]:
        """Canonical document (translation form) for a spec."""
        return {
            "dimension": spec.dimension,
            "field": spec.ctx.to_dict(),
            "generators": [
                {
                    "name": name,
                    "ratio": g.ratio.format(),
                    "translation": format_vector(g.translation),
                }
                for name, g in zip(spec.names, spec.generators)
            ],
        }


def load_spec(path: str) -> GroupSpec:
    return SpecParser().load(path)


def parse_spec_dict(data: Dict[str, Any]) -> GroupSpec:
    return SpecParser().parse_dict(data)


def render_spec(spec: GroupSpec) -> str:
    """Canonical JSON text; parse_spec_dict(json.loads(render_spec(s))) == s."""
    return json.dumps(SpecParser.render(spec), indent=2)

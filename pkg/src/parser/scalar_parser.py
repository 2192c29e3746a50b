"""
Parser for scalar literals.

Grammar (whitespace-insensitive):

    expr     := ['-'] term (('+' | '-') term)*
    term     := rational ['*' root] | root
    root     := 'sqrt' integer
    rational := integer ['/' integer]
"""
import logging
from fractions import Fraction
from typing import List, Tuple

from pyparsing import (
    Group,
    Literal,
    Optional,
    ParseException,
    StringEnd,
    Word,
    ZeroOrMore,
    nums,
    one_of,
)

from src.errors import DimensionMismatchError, ScalarSyntaxError, ZeroDenominatorError
from src.field.scalar import FieldContext, FieldScalar

logger = logging.getLogger(__name__)


class ScalarParser:
    """Parse scalar literals into exact field elements."""

    INTEGER = Word(nums)
    RATIONAL = Group(INTEGER("num") + Optional(Literal("/").suppress() + INTEGER("den")))
    ROOT = Group(Literal("sqrt").suppress() + INTEGER("radicand"))
    TERM = Group(RATIONAL("rational") + Optional(Literal("*").suppress() + ROOT("root"))
                 | ROOT("root"))
    SIGN = one_of("+ -")
    EXPRESSION = Optional(SIGN) + TERM + ZeroOrMore(SIGN + TERM) + StringEnd()

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx

    def parse(self, text: str) -> FieldScalar:
        """
        Parse one scalar literal.

        Args:
            text: Literal such as '3/2 - sqrt2'

        Returns:
            FieldScalar in the parser's context

        Raises:
            ScalarSyntaxError: text does not match the grammar
            UnknownRadicandError: a root outside the context
            ZeroDenominatorError: a rational with denominator 0
        """
        try:
            tokens = self.EXPRESSION.parse_string(text.strip(), parse_all=True)
        except ParseException as e:
            raise ScalarSyntaxError(f"Invalid scalar literal {text!r}: {e}") from e

        value = self.ctx.zero()
        sign = 1
        for token in tokens:
            if isinstance(token, str):
                sign = -1 if token == "-" else 1
                continue
            value = value + self._term_value(token) * sign
            sign = 1
        return value

    def _term_value(self, term) -> FieldScalar:
        coefficient = Fraction(1)
        if "rational" in term:
            rational = term["rational"]
            numerator = int(rational["num"])
            denominator = int(rational["den"]) if "den" in rational else 1
            if denominator == 0:
                raise ZeroDenominatorError(f"Zero denominator in {numerator}/0")
            coefficient = Fraction(numerator, denominator)
        if "root" in term:
            return self.ctx.sqrt_of(int(term["root"]["radicand"])) * coefficient
        return self.ctx.scalar(coefficient)

    def parse_point(self, text: str, dimension: int = None) -> Tuple[FieldScalar, ...]:
        """
        Parse a comma-separated point such as 'sqrt2, 0'.

        Raises:
            DimensionMismatchError: when dimension is given and differs
        """
        parts = [p for p in text.split(",")]
        point = tuple(self.parse(p) for p in parts)
        if dimension is not None and len(point) != dimension:
            raise DimensionMismatchError(
                f"Point {text!r} has {len(point)} coordinates, expected {dimension}"
            )
        return point

    def parse_vector(self, literals: List[str]) -> Tuple[FieldScalar, ...]:
        return tuple(self.parse(str(s)) for s in literals)


def parse_scalar(text: str, ctx: FieldContext) -> FieldScalar:
    """Parse a scalar literal in the given context."""
    return ScalarParser(ctx).parse(text)

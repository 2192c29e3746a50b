"""
Exception hierarchy for the homothety orbit-closure engine.
"""
from typing import Any, Dict, Optional


class HomothetyError(Exception):
    """Base class for every error raised by the engine."""


# Scalars and parsing

class FieldContextError(HomothetyError):
    """Invalid radicand list or mixing scalars from different contexts."""


class ScalarSyntaxError(HomothetyError):
    """A scalar literal does not match the literal grammar."""


class UnknownRadicandError(HomothetyError):
    """A sqrt literal whose radicand is not expressible in the context."""


class ZeroDenominatorError(HomothetyError):
    """A rational literal with denominator zero."""


class ScalarDivisionError(HomothetyError, ZeroDivisionError):
    """Exact division by the zero scalar."""


class DimensionMismatchError(HomothetyError):
    """Vectors, points or maps of different dimensions were combined."""


class InvalidWordError(HomothetyError):
    """A word refers to a generator index outside the group spec."""


class SpecFileError(HomothetyError):
    """A spec file is not a valid group description."""


# Group theory

class AbelianGroupError(HomothetyError):
    """The generated group is abelian, outside the dichotomy's hypotheses."""


class GroupInsideSnError(HomothetyError):
    """The group lies inside S_n; the symmetry pipeline applies instead."""


class NotInSnError(HomothetyError):
    """The symmetry pipeline was asked for a group with a true homothety."""


class NoSymmetryGeneratorError(HomothetyError):
    """No generator has ratio -1."""


# Closures

class ZeroRatioError(HomothetyError):
    """A ratio equal to zero (not an element of R*)."""


class NonRationalRatioError(HomothetyError):
    """Exact multiplicative classification needs rational ratios."""


class RatioTooLargeError(HomothetyError):
    """Numerator or denominator beyond the factorisation bound."""


class UnresolvedClosureError(HomothetyError):
    """The closure of an additive subgroup could not be decided exactly."""

    def __init__(self, message: str, evidence: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.evidence = evidence or {}


class BudgetExceededError(HomothetyError):
    """Word enumeration produced more elements than the configured cap."""

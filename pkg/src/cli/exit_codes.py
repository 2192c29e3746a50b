"""
Process exit codes of the homothety CLI.
"""
from typing import Type

from src.errors import (
    AbelianGroupError,
    BudgetExceededError,
    HomothetyError,
    NonRationalRatioError,
    RatioTooLargeError,
    ScalarSyntaxError,
    SpecFileError,
    UnknownRadicandError,
    UnresolvedClosureError,
    ZeroDenominatorError,
)


class ExitCodes:
    OK = 0
    FALSE = 1  # member answered false, verify failed
    ABELIAN = 2
    UNRESOLVED = 3
    BUDGET = 4
    PARSE_ERROR = 64
    SEMANTIC_ERROR = 65

    # most specific first
    _BY_ERROR = (
        (AbelianGroupError, ABELIAN),
        (UnresolvedClosureError, UNRESOLVED),
        (NonRationalRatioError, UNRESOLVED),
        (BudgetExceededError, BUDGET),
        (RatioTooLargeError, BUDGET),
        (ScalarSyntaxError, PARSE_ERROR),
        (UnknownRadicandError, PARSE_ERROR),
        (ZeroDenominatorError, PARSE_ERROR),
        (SpecFileError, PARSE_ERROR),
    )

    @classmethod
    def for_error(cls, error: Exception) -> int:
        """Exit code for an exception escaping a command."""
        for error_type, code in cls._BY_ERROR:
            if isinstance(error, error_type):
                return code
        return cls.SEMANTIC_ERROR

    @classmethod
    def is_engine_error(cls, error_type: Type[BaseException]) -> bool:
        return issubclass(error_type, (HomothetyError, ValueError, KeyError))

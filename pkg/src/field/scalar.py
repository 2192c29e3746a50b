"""
Exact arithmetic in a real multi-quadratic field Q(sqrt d_1, ..., sqrt d_k).

A scalar is stored as its coordinate vector over the monomial basis
{prod_{i in t} sqrt d_i : t subset of {1..k}}; monomial ``t`` is indexed by the
bitmask of the radicands it contains, so monomial 0 is the constant 1.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from math import isqrt
from typing import Dict, List, Tuple, Union

from sympy import factorint

from src.errors import (
    FieldContextError,
    ScalarDivisionError,
    UnknownRadicandError,
)

logger = logging.getLogger(__name__)

MAX_RADICANDS = 3

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class FieldContext:
    """The field Q(sqrt d_1, ..., sqrt d_k) for strictly increasing radicands."""
    radicands: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "radicands", tuple(int(d) for d in self.radicands))
        self._validate()

    def _validate(self):
        radicands = self.radicands
        if len(radicands) > MAX_RADICANDS:
            raise FieldContextError(
                f"At most {MAX_RADICANDS} radicands are supported, got {len(radicands)}"
            )
        for d in radicands:
            if d < 2:
                raise FieldContextError(f"Radicand {d} must be >= 2")
            if any(e > 1 for e in factorint(d).values()):
                raise FieldContextError(f"Radicand {d} is not square-free")
        if list(radicands) != sorted(set(radicands)):
            raise FieldContextError(f"Radicands must be strictly increasing: {list(radicands)}")

        # Products of subsets must stay square-free-distinct, otherwise the
        # monomials are linearly dependent over Q.
        for mask in range(1, len(self.monomial_values)):
            if isqrt(self.monomial_values[mask]) ** 2 == self.monomial_values[mask]:
                raise FieldContextError(
                    f"Radicands {list(radicands)} are multiplicatively dependent "
                    f"modulo squares"
                )

    @property
    def degree(self) -> int:
        """Number of monomials, 2^k."""
        return 1 << len(self.radicands)

    @cached_property
    def monomial_values(self) -> List[int]:
        """Integer D_t with monomial t equal to sqrt(D_t)."""
        values = []
        for mask in range(1 << len(self.radicands)):
            value = 1
            for i, d in enumerate(self.radicands):
                if mask >> i & 1:
                    value *= d
            values.append(value)
        return values

    @cached_property
    def monomial_roots(self) -> List[Tuple[int, int]]:
        """(r, c) per monomial t with D_t = r^2 * c and c square-free."""
        roots = []
        for value in self.monomial_values:
            square, core = 1, 1
            for p, e in factorint(value).items():
                square *= p ** (e // 2)
                if e % 2:
                    core *= p
            roots.append((square, core))
        return roots

    @cached_property
    def _square_free_values(self) -> Dict[int, int]:
        """Square-free part of D_t mapped back to t."""
        # distinct per t: equal cores would make D_{s^t} a square
        return {core: mask for mask, (_, core) in enumerate(self.monomial_roots)}

    def monomial_product(self, s: int, t: int) -> Tuple[int, int]:
        """
        Multiply monomials s and t.

        Returns:
            Tuple of (rational factor, resulting monomial index)
        """
        factor = self.monomial_values[s & t]
        return factor, s ^ t

    def monomial_name(self, t: int) -> str:
        """
        Literal spelling of the square-free root of monomial t, e.g. 'sqrt6'.

        Monomial t equals monomial_roots[t][0] times this root.
        """
        if t == 0:
            return "1"
        return f"sqrt{self.monomial_roots[t][1]}"

    def sqrt_of(self, m: int) -> "FieldScalar":
        """
        Exact sqrt(m) for a positive integer m.

        Raises:
            UnknownRadicandError: if the square-free part of m is not a
                product of context radicands
        """
        if m < 0:
            raise UnknownRadicandError(f"sqrt of negative integer {m} is not real")
        if m == 0:
            return self.zero()
        square, core = 1, 1
        for p, e in factorint(m).items():
            square *= p ** (e // 2)
            if e % 2:
                core *= p
        mask = self._square_free_values.get(core)
        if mask is None:
            raise UnknownRadicandError(
                f"sqrt{m} is not in Q(" + ", ".join(f"sqrt{d}" for d in self.radicands) + ")"
            )
        return self.monomial(mask, Fraction(square, self.monomial_roots[mask][0]))

    def scalar(self, value: Rational) -> "FieldScalar":
        """Embed a rational number."""
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(value)
        return FieldScalar(self, tuple(coeffs))

    def monomial(self, t: int, coeff: Rational = 1) -> "FieldScalar":
        coeffs = [Fraction(0)] * self.degree
        coeffs[t] = Fraction(coeff)
        return FieldScalar(self, tuple(coeffs))

    def zero(self) -> "FieldScalar":
        return self.scalar(0)

    def one(self) -> "FieldScalar":
        return self.scalar(1)

    def vector(self, values) -> Tuple["FieldScalar", ...]:
        """Coerce a sequence of rationals/scalars into a vector of this field."""
        return tuple(self.coerce(v) for v in values)

    def coerce(self, value: Union["FieldScalar", Rational]) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.ctx != self:
                raise FieldContextError(
                    f"Scalar from context {list(value.ctx.radicands)} used in "
                    f"context {list(self.radicands)}"
                )
            return value
        if isinstance(value, (int, Fraction)):
            return self.scalar(value)
        raise TypeError(f"Cannot coerce {type(value).__name__} into a field scalar")

    def to_dict(self) -> Dict[str, List[int]]:
        return {"radicands": list(self.radicands)}


@total_ordering
@dataclass(frozen=True)
class FieldScalar:
    """Immutable exact element of a FieldContext."""
    ctx: FieldContext
    coeffs: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if len(self.coeffs) != self.ctx.degree:
            raise FieldContextError(
                f"Expected {self.ctx.degree} coefficients, got {len(self.coeffs)}"
            )

    # Coercion

    def _other(self, other) -> "FieldScalar":
        if isinstance(other, FieldScalar):
            if other.ctx != self.ctx:
                raise FieldContextError(
                    f"Context mismatch: {list(self.ctx.radicands)} vs {list(other.ctx.radicands)}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.scalar(other)
        return NotImplemented

    # Predicates

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # Arithmetic

    def __add__(self, other) -> "FieldScalar":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "FieldScalar":
        return FieldScalar(self.ctx, tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "FieldScalar":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldScalar(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> "FieldScalar":
        return (-self) + other

    def __mul__(self, other) -> "FieldScalar":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            c = other.coeffs[0]
            return FieldScalar(self.ctx, tuple(a * c for a in self.coeffs))
        result = [Fraction(0)] * self.ctx.degree
        for s, a in enumerate(self.coeffs):
            if not a:
                continue
            for t, b in enumerate(other.coeffs):
                if not b:
                    continue
                factor, u = self.ctx.monomial_product(s, t)
                result[u] += factor * a * b
        return FieldScalar(self.ctx, tuple(result))

    __rmul__ = __mul__

    def conjugate(self, i: int) -> "FieldScalar":
        """Flip the sign of sqrt d_i (the Galois conjugation for radicand i)."""
        bit = 1 << i
        return FieldScalar(
            self.ctx,
            tuple(-a if t & bit else a for t, a in enumerate(self.coeffs)),
        )

    def inverse(self) -> "FieldScalar":
        """
        Multiplicative inverse by iterated conjugation.

        Multiplying by the conjugate over radicand i removes every monomial
        containing sqrt d_i from the denominator; after all radicands the
        denominator is rational.
        """
        if self.is_zero():
            raise ScalarDivisionError("Division by zero scalar")
        numerator = self.ctx.one()
        denominator = self
        for i in range(len(self.ctx.radicands)):
            conj = denominator.conjugate(i)
            numerator = numerator * conj
            denominator = denominator * conj
        norm = denominator.rational_value()
        return numerator * (1 / norm)

    def __truediv__(self, other) -> "FieldScalar":
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_rational():
            c = other.coeffs[0]
            if c == 0:
                raise ScalarDivisionError("Division by zero scalar")
            return FieldScalar(self.ctx, tuple(a / c for a in self.coeffs))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "FieldScalar":
        return self._other(other) / self

    def __pow__(self, exponent: int) -> "FieldScalar":
        if exponent < 0:
            return self.inverse() ** -exponent
        result = self.ctx.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Order

    def _interval(self, bits: int) -> Tuple[Fraction, Fraction]:
        """Rational enclosure of the real embedding with sqrt bounds at 2^-bits."""
        scale = 1 << bits
        low = high = Fraction(0)
        for t, c in enumerate(self.coeffs):
            if not c:
                continue
            value = self.ctx.monomial_values[t]
            if value == 1:
                low += c
                high += c
                continue
            r = isqrt(value << (2 * bits))
            root_low, root_high = Fraction(r, scale), Fraction(r + 1, scale)
            if c > 0:
                low += c * root_low
                high += c * root_high
            else:
                low += c * root_high
                high += c * root_low
        return low, high

    def sign(self) -> int:
        """Exact sign of the real embedding: -1, 0 or +1."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        bits = 16
        while True:
            low, high = self._interval(bits)
            if low > 0:
                return 1
            if high < 0:
                return -1
            logger.debug(f"Refining sign of {self} beyond {bits} bits")
            bits *= 2

    def __float__(self) -> float:
        if self.is_rational():
            return float(self.coeffs[0])
        bits = 64
        while True:
            low, high = self._interval(bits)
            mid = (low + high) / 2
            if (low > 0 or high < 0) and (high - low) <= abs(mid) / (1 << 60):
                return float(mid)
            bits *= 2

    def to_float(self) -> float:
        return float(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __lt__(self, other) -> bool:
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.ctx.radicands, self.coeffs))

    def __abs__(self) -> "FieldScalar":
        return -self if self.sign() < 0 else self

    # Text

    def format(self) -> str:
        """Canonical literal, coefficients in monomial order, zeros omitted."""
        parts = []
        for t, c in enumerate(self.coeffs):
            if not c:
                continue
            magnitude = abs(c) * self.ctx.monomial_roots[t][0]
            if t == 0:
                body = str(magnitude)
            elif magnitude == 1:
                body = self.ctx.monomial_name(t)
            else:
                body = f"{magnitude}*{self.ctx.monomial_name(t)}"
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"FieldScalar({self.format()!r}, radicands={list(self.ctx.radicands)})"


def format_vector(vector) -> List[str]:
    """Render a vector of scalars as canonical literals."""
    return [s.format() for s in vector]

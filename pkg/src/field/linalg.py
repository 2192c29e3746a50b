"""
Exact Gaussian elimination over any field whose elements support the
arithmetic operators and truth-value zero test (FieldScalar, Fraction).
"""
import logging
from typing import List, Optional, Sequence, Tuple, TypeVar

from src.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

T = TypeVar("T")

Vector = Tuple


def _check_width(rows: Sequence[Sequence[T]]) -> int:
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise DimensionMismatchError(f"Rows of different lengths: {sorted(widths)}")
    return widths.pop() if widths else 0


def rref(rows: Sequence[Sequence[T]]) -> Tuple[List[List[T]], List[int]]:
    """
    Reduced row echelon form.

    Args:
        rows: Matrix given as a list of rows

    Returns:
        Tuple of (nonzero reduced rows, pivot column of each row)
    """
    width = _check_width(rows)
    matrix = [list(r) for r in rows]
    pivots: List[int] = []
    rank = 0
    for col in range(width):
        pivot_row = next((i for i in range(rank, len(matrix)) if matrix[i][col]), None)
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        matrix[rank] = [x / pivot for x in matrix[rank]]
        for i in range(len(matrix)):
            if i != rank and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(matrix):
            break
    return matrix[:rank], pivots


def rank(rows: Sequence[Sequence[T]]) -> int:
    return len(rref(rows)[1]) if rows else 0


def span_basis(vectors: Sequence[Sequence[T]]) -> List[Tuple[T, ...]]:
    """Canonical (reduced echelon) basis of the span of the vectors."""
    if not vectors:
        return []
    reduced, _ = rref(vectors)
    return [tuple(r) for r in reduced]


def greedy_independent(vectors: Sequence[Sequence[T]]) -> List[int]:
    """Indices of a maximal independent subfamily, chosen left to right."""
    chosen: List[int] = []
    current = 0
    for i, v in enumerate(vectors):
        candidate = [vectors[j] for j in chosen] + [v]
        r = rank(candidate)
        if r > current:
            chosen.append(i)
            current = r
    return chosen


def solve_coordinates(
    basis: Sequence[Sequence[T]],
    vector: Sequence[T],
) -> Optional[List[T]]:
    """
    Coordinates of vector in a linearly independent family.

    Args:
        basis: Independent vectors b_1..b_k
        vector: Target v

    Returns:
        [c_1..c_k] with sum c_j b_j = v, or None when v is outside the span
    """
    if not basis:
        return [] if not any(vector) else None
    n = len(vector)
    if any(len(b) != n for b in basis):
        raise DimensionMismatchError("Basis and vector dimensions differ")
    k = len(basis)
    augmented = [[basis[j][i] for j in range(k)] + [vector[i]] for i in range(n)]
    reduced, pivots = rref(augmented)
    if k in pivots:
        return None
    if pivots != list(range(k)):
        raise ValueError("Basis vectors are not linearly independent")
    return [reduced[j][k] for j in range(k)]


def in_span(basis: Sequence[Sequence[T]], vector: Sequence[T]) -> bool:
    if not any(vector):
        return True
    return rank(list(basis) + [vector]) == rank(basis) if basis else False

from typing import Sequence

from src.models.errors import SizeMismatch
from src.models.poly import Poly

PolyMatrix = tuple[tuple[Poly, ...], ...]


def as_matrix(rows: Sequence[Sequence[Poly]]) -> PolyMatrix:
    return tuple(tuple(row) for row in rows)


def zero_matrix(size: int) -> PolyMatrix:
    return tuple(tuple(Poly.zero() for _ in range(size)) for _ in range(size))


def check_square(matrix: Sequence[Sequence[Poly]]) -> int:
    size: int = len(matrix)
    for row in matrix:
        if len(row) != size:
            raise SizeMismatch(f"matrix row of length {len(row)} in a {size}-row matrix")
    return size


def matmul(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    size: int = check_square(left)
    if check_square(right) != size:
        raise SizeMismatch(f"cannot multiply {size}x{size} by {len(right)}x{len(right)}")
    product: list[tuple[Poly, ...]] = []
    for i in range(size):
        row: list[Poly] = []
        for j in range(size):
            entry: Poly = Poly.zero()
            for k in range(size):
                if not left[i][k].is_zero() and not right[k][j].is_zero():
                    entry = entry + left[i][k] * right[k][j]
            row.append(entry)
        product.append(tuple(row))
    return tuple(product)


def scale(matrix: PolyMatrix, factor: Poly) -> PolyMatrix:
    return tuple(tuple(entry * factor for entry in row) for row in matrix)


def transpose(matrix: PolyMatrix) -> PolyMatrix:
    return tuple(zip(*matrix)) if matrix else ()


def is_symmetric(matrix: PolyMatrix) -> bool:
    return matrix == transpose(matrix)


def submatrix(
    matrix: PolyMatrix, rows: Sequence[int], columns: Sequence[int]
) -> PolyMatrix:
    return tuple(tuple(matrix[i][j] for j in columns) for i in rows)


def permute(matrix: PolyMatrix, order: Sequence[int]) -> PolyMatrix:
    """Simultaneous row and column permutation, new index k holds old order[k]"""
    return submatrix(matrix, order, order)


def to_text_rows(matrix: PolyMatrix) -> list[list[str]]:
    return [[entry.to_text() for entry in row] for row in matrix]

from typing import Any, Sequence

from sympy import Poly as SympyPoly
from sympy import Symbol
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyfuncs import interpolate

from src.models.poly import Poly
from src.utils.poly_matrix import check_square

"""
Determinants of matrices over Z[d].

det_bareiss packs each polynomial entry into one big integer by substituting
d = 2^B (Kronecker substitution), runs sympy's fraction-free Bareiss
elimination over ZZ on the packed matrix and unpacks the integer determinant
back into coefficients. B is chosen from a coefficient bound on the
determinant so the base-2^B digits never overlap.

det_interpolate is the independent oracle: integer determinants at d = 0..D
followed by Lagrange interpolation
"""


def _integer_det(rows: list[list[int]]) -> int:
    size: int = len(rows)
    if size == 0:
        return 1
    matrix: DomainMatrix = DomainMatrix(
        [[ZZ(value) for value in row] for row in rows], (size, size), ZZ
    )
    return int(matrix.det())


def coefficient_bound(matrix: Sequence[Sequence[Poly]]) -> int:
    """
    Every coefficient of det(matrix) is at most the product over rows of the
    summed absolute coefficients of that row (expand the Leibniz sum)
    """
    bound: int = 1
    for row in matrix:
        bound *= sum(sum(abs(c) for c in entry.coeffs) for entry in row)
    return bound


def det_bareiss(matrix: Sequence[Sequence[Poly]]) -> Poly:
    size: int = check_square(matrix)
    if size == 0:
        return Poly.one()
    bound: int = coefficient_bound(matrix)
    if bound == 0:
        return Poly.zero()
    bits: int = bound.bit_length() + 2
    base: int = 1 << bits
    packed: list[list[int]] = [
        [entry.evaluate_integer(base) for entry in row] for row in matrix
    ]
    return _unpack(_integer_det(packed), bits)


def _unpack(value: int, bits: int) -> Poly:
    base: int = 1 << bits
    half: int = base >> 1
    coeffs: list[int] = []
    while value != 0:
        digit: int = value % base
        if digit >= half:
            digit -= base
        coeffs.append(digit)
        value = (value - digit) >> bits
    return Poly(coeffs=tuple(coeffs))


def degree_bound(matrix: Sequence[Sequence[Poly]]) -> int:
    """-1 when some row is identically zero"""
    total: int = 0
    for row in matrix:
        row_degree: int = max((entry.degree for entry in row), default=-1)
        if row_degree < 0:
            return -1
        total += row_degree
    return total


def det_interpolate(matrix: Sequence[Sequence[Poly]]) -> Poly:
    size: int = check_square(matrix)
    if size == 0:
        return Poly.one()
    bound: int = degree_bound(matrix)
    if bound < 0:
        return Poly.zero()
    points: list[tuple[int, int]] = []
    for x in range(bound + 1):
        rows: list[list[int]] = [
            [entry.evaluate_integer(x) for entry in row] for row in matrix
        ]
        points.append((x, _integer_det(rows)))
    variable: Symbol = Symbol("d")
    expression: Any = interpolate(points, variable)
    dense: list[Any] = SympyPoly(expression, variable).all_coeffs()
    if any(not c.is_integer for c in dense):
        raise ArithmeticError("interpolated determinant has non-integer coefficients")
    return Poly(coeffs=tuple(int(c) for c in reversed(dense)))

import pytest

from src.models.errors import SizeMismatch
from src.models.poly import Poly
from src.utils.poly_matrix import (
    PolyMatrix,
    as_matrix,
    check_square,
    is_symmetric,
    matmul,
    permute,
    scale,
    to_text_rows,
    transpose,
    zero_matrix,
)


def _matrix(rows: list[list[str]]) -> PolyMatrix:
    return as_matrix([[Poly.parse(entry) for entry in row] for row in rows])


class TestPolyMatrix:
    def test_matmul(self) -> None:
        left: PolyMatrix = _matrix([["d", "1"], ["0", "d"]])
        right: PolyMatrix = _matrix([["1", "0"], ["d", "1"]])
        assert to_text_rows(matmul(left, right)) == [["2*d", "1"], ["d^2", "d"]]

    def test_transpose_and_symmetry(self) -> None:
        matrix: PolyMatrix = _matrix([["d", "1"], ["0", "d"]])
        assert to_text_rows(transpose(matrix)) == [["d", "0"], ["1", "d"]]
        assert not is_symmetric(matrix)
        assert is_symmetric(_matrix([["d", "1"], ["1", "d"]]))

    def test_permute(self) -> None:
        matrix: PolyMatrix = _matrix([["1", "2"], ["3", "4"]])
        assert to_text_rows(permute(matrix, [1, 0])) == [["4", "3"], ["2", "1"]]

    def test_scale(self) -> None:
        matrix: PolyMatrix = _matrix([["1", "0"], ["d", "1"]])
        assert to_text_rows(scale(matrix, Poly.delta())) == [["d", "0"], ["d^2", "d"]]

    def test_check_square(self) -> None:
        assert check_square(zero_matrix(3)) == 3
        with pytest.raises(SizeMismatch):
            check_square(_matrix([["1", "2"], ["3"]]))
        with pytest.raises(SizeMismatch):
            matmul(zero_matrix(2), zero_matrix(3))

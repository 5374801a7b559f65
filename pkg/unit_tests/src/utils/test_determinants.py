import pytest
from sympy import Matrix, Symbol, expand
from sympy import Poly as SympyPoly

from src.models.cell_label import CellLabel
from src.models.errors import SizeMismatch
from src.models.half_diagram import BasisVariant
from src.models.poly import Poly
from src.services.cellular_service import CellularService
from src.utils.determinants import coefficient_bound, det_bareiss, det_interpolate
from src.utils.poly_matrix import PolyMatrix, as_matrix


def _matrix(rows: list[list[str]]) -> PolyMatrix:
    return as_matrix([[Poly.parse(entry) for entry in row] for row in rows])


class TestDeterminants:
    @pytest.mark.parametrize(
        ["rows", "expected"],
        [
            [[["d", "1"], ["1", "d"]], "d^2-1"],
            [[["d", "-3"], ["2", "d^2"]], "d^3+6"],
            [[["d", "0", "1"], ["0", "d", "1"], ["1", "1", "d"]], "d^3-2*d"],
            [[["d", "d"], ["d", "d"]], "0"],
            [[["0", "1"], ["1", "0"]], "-1"],
            [[["-5*d^3+7"]], "-5*d^3+7"],
        ],
    )
    def test_det_bareiss(self, rows: list[list[str]], expected: str) -> None:
        assert det_bareiss(_matrix(rows)) == Poly.parse(expected)
        assert det_interpolate(_matrix(rows)) == Poly.parse(expected)

    def test_empty_and_zero_rows(self) -> None:
        assert det_bareiss(()) == Poly.one()
        assert det_bareiss(_matrix([["0", "0"], ["d", "1"]])) == Poly.zero()
        assert det_interpolate(_matrix([["0", "0"], ["d", "1"]])) == Poly.zero()

    def test_non_square(self) -> None:
        with pytest.raises(SizeMismatch):
            det_bareiss(_matrix([["1", "2"], ["3"]]))

    def test_coefficient_bound(self) -> None:
        assert coefficient_bound(_matrix([["d^2-1", "3"], ["1", "-d"]])) == 5 * 2

    @pytest.mark.parametrize(["n", "cell"], [[5, "plain:1"], [6, "plain:2"], [6, "0-"], [5, "dotted:1"]])
    def test_routes_agree_on_gram_matrices(self, n: int, cell: str) -> None:
        entries: PolyMatrix = CellularService.gram(n, CellLabel.parse(cell)).entries
        assert det_bareiss(entries) == det_interpolate(entries), "elimination and interpolation disagree"

    def test_type_a_matrix(self) -> None:
        entries: PolyMatrix = CellularService.gram_type_a(4, 1).entries
        assert len(entries) == len(CellularService.basis_for(4, CellLabel.dotted(2))) == 3
        assert CellularService.basis_for(4, CellLabel.dotted(2)).variant == BasisVariant.UNDECORATED
        assert det_bareiss(entries) == Poly.parse("d^3-2*d")

    @pytest.mark.parametrize(["n", "cell"], [[4, "plain:2"], [4, "0+"], [5, "plain:3"]])
    def test_cofactor_oracle(self, n: int, cell: str) -> None:
        d = Symbol("d")
        entries: PolyMatrix = CellularService.gram(n, CellLabel.parse(cell)).entries
        symbolic = Matrix(
            [[sum(c * d**k for k, c in enumerate(entry.coeffs)) for entry in row] for row in entries]
        )
        coeffs = SympyPoly(expand(symbolic.det(method="berkowitz")), d).all_coeffs()
        expected: Poly = Poly(coeffs=tuple(int(c) for c in reversed(coeffs)))
        assert det_bareiss(entries) == expected

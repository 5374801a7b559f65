import pytest

from src.models.cell_label import CellLabel
from src.models.poly import Poly
from src.models.results import DetMethod
from src.services.cellular_service import CellularService
from src.services.gram_determinant_service import GramDeterminantService
from src.services.verification_service import expected_det_8_3, load_fixture

# Initialize service here,
# to reuse it (and its cached matrices) across all tests here
determinant_service: GramDeterminantService = GramDeterminantService()


class TestGramDeterminant83:
    """
    The 56 x 56 Gram matrix of plain:2 at n = 8 is the largest case the
    tests build; every route must reproduce the factored value on file
    """

    def test_matrix_size(self) -> None:
        gram = CellularService.gram(8, CellLabel.plain(2))
        assert gram.size == load_fixture("det_gram_8_3.json")["size"]

    @pytest.mark.parametrize(["method"], [[method] for method in DetMethod])
    def test_every_route(self, method: DetMethod) -> None:
        result = determinant_service.det_gram(8, CellLabel.plain(2), method)
        assert result.value == expected_det_8_3(), f"{method.value} route differs"

    def test_leading_power(self) -> None:
        value: Poly = expected_det_8_3()
        assert value.coeffs[:58] == (0,) * 58
        assert value.coeffs[58] != 0

    @pytest.mark.parametrize(["n", "p"], [[7, 1], [7, 2], [7, 3], [8, 1], [8, 2], [8, 3]])
    def test_recurrence_step(self, n: int, p: int) -> None:
        assert determinant_service.recurrence_step(n, p)

import pytest

from integration_tests.conftest import integration_test_runtime_config
from src.models.cell_label import CellLabel
from src.models.poly import Poly
from src.models.results import DetMethod
from src.services.cellular_service import CellularService
from src.services.diagram_service import DiagramService
from src.services.gram_determinant_service import GramDeterminantService
from src.services.verification_service import VerificationService, check_basis, check_relations
from src.utils.chebyshev import chebyshev_p
from src.utils.determinants import det_bareiss
from src.utils.poly_matrix import scale

# Initialize services here,
# to reuse them (and their cached matrices) across all tests here
determinant_service: GramDeterminantService = GramDeterminantService()
verification_service: VerificationService = VerificationService(integration_test_runtime_config())


class TestRelationsAndBasis:
    """the largest sizes at which relations and the full basis are checked"""

    def test_relations_7(self) -> None:
        assert check_relations(7) == []

    def test_basis_7(self) -> None:
        assert DiagramService.basis_count(7)[0] == 2144
        assert check_basis(7) == []

    def test_associativity_samples(self) -> None:
        assert integration_test_runtime_config().associativity_samples >= 200
        results = verification_service.run("relations", 6)
        associativity = [r for r in results if r.key.endswith("associativity")]
        assert [r.key for r in associativity] == ["n=04 associativity", "n=05 associativity", "n=06 associativity"]
        assert all(r.passed for r in associativity), [r.detail for r in associativity if not r.passed]


class TestTypeA:
    def test_type_a_suite_up_to_8(self) -> None:
        results = verification_service.run("typea", 8)
        assert [r.key for r in results][-1] == "n=08"
        assert [f"{r.key}: {r.detail}" for r in results if not r.passed] == []

    @pytest.mark.parametrize(["n", "p"], [[7, 1], [7, 3], [8, 1], [8, 3]])
    def test_dotted_is_delta_times_type_a(self, n: int, p: int) -> None:
        dotted = CellularService.gram(n, CellLabel.dotted(n - 2 * p))
        assert dotted.entries == scale(CellularService.gram_type_a(n, p).entries, Poly.delta())

    @pytest.mark.parametrize(["n"], [[7], [8]])
    def test_type_a_routes(self, n: int) -> None:
        for p in range(1, n // 2 + 1):
            direct = determinant_service.det_gram_type_a(n, p, DetMethod.DIRECT).value
            assert direct == determinant_service.det_gram_type_a(n, p, DetMethod.RECURRENCE).value
        assert determinant_service.det_gram_type_a(n, 1, DetMethod.DIRECT).value == chebyshev_p(n)


class TestBlockStructure:
    @pytest.mark.parametrize(["n", "p"], [[7, 1], [7, 2], [7, 3], [8, 1], [8, 2], [8, 3]])
    def test_blocks(self, n: int, p: int) -> None:
        failed = [check.name for check in CellularService.block_structure_check(n, p) if not check.passed]
        assert failed == []


class TestSignedCells:
    @pytest.mark.parametrize(["p"], [[4], [5]])
    def test_signed_matrices_agree(self, p: int) -> None:
        plus = CellularService.gram(2 * p, CellLabel.zero_plus())
        minus = CellularService.gram(2 * p, CellLabel.zero_minus())
        assert plus.entries == minus.entries

    def test_signed_determinant_4(self) -> None:
        for cell in (CellLabel.zero_plus(), CellLabel.zero_minus()):
            value: Poly = determinant_service.det_gram(8, cell, DetMethod.DIRECT).value
            assert value == GramDeterminantService.signed_det(4), cell.to_text()

    @pytest.mark.parametrize(["x"], [[2], [3]])
    def test_signed_determinant_5_at_integer(self, x: int) -> None:
        # the 126 x 126 matrix is compared at integer values of d
        entries = CellularService.gram(10, CellLabel.zero_plus()).entries
        evaluated = [[Poly.constant(entry.evaluate_integer(x)) for entry in row] for row in entries]
        assert det_bareiss(evaluated).evaluate_integer(0) == GramDeterminantService.signed_det(5).evaluate_integer(x)

import pytest

from src.models.errors import InvalidArguments
from src.models.tl_diagram import GeneratorId
from src.services.verification_service import (
    SUITES,
    VerificationService,
    check_forked_relations,
    check_relations,
    connected,
    load_fixture,
)
from src.utils.runtime_config import RuntimeConfig


@pytest.fixture(scope="module")
def service() -> VerificationService:
    return VerificationService(RuntimeConfig(threads=2, associativity_samples=20))


class TestVerificationService:
    @pytest.mark.parametrize(["suite"], [["gram52"], ["maps"], ["order"]])
    def test_suite_passes(self, service: VerificationService, suite: str) -> None:
        results = service.run(suite, 4)
        assert results
        assert all(result.suite == suite for result in results)
        assert [r.key for r in results if not r.passed] == []

    def test_report_is_sorted(self, service: VerificationService) -> None:
        results = service.run("maps", 4)
        keys = [result.key for result in results]
        assert keys == sorted(keys)

    def test_unknown_suite(self, service: VerificationService) -> None:
        with pytest.raises(InvalidArguments):
            service.run("nope", 4)

    def test_max_n_too_small(self, service: VerificationService) -> None:
        with pytest.raises(InvalidArguments):
            service.run("gram52", 3)

    def test_suite_names(self) -> None:
        assert "recurrence" in SUITES and "all" not in SUITES


class TestChecks:
    @pytest.mark.parametrize(
        ["a", "b", "expected"],
        [
            [GeneratorId.bar1(), GeneratorId.e(2), True],
            [GeneratorId.bar1(), GeneratorId.e(1), False],
            [GeneratorId.e(1), GeneratorId.e(2), True],
            [GeneratorId.e(3), GeneratorId.e(2), True],
            [GeneratorId.e(1), GeneratorId.e(3), False],
            [GeneratorId.bar1(), GeneratorId.e(3), False],
        ],
    )
    def test_connected(self, a: GeneratorId, b: GeneratorId, expected: bool) -> None:
        assert connected(a, b) == expected
        assert connected(b, a) == expected

    @pytest.mark.parametrize(["n"], [[4], [5]])
    def test_relations(self, n: int) -> None:
        assert check_relations(n) == []
        assert check_forked_relations(n) == []

    def test_fixture(self) -> None:
        fixture = load_fixture("det_gram_8_3.json")
        assert fixture["size"] == 56

import pytest

from integration_tests.conftest import integration_test_max_n, integration_test_runtime_config
from src.services.verification_service import SUITES, VerificationService

verification_service: VerificationService = VerificationService(integration_test_runtime_config())


class TestVerificationRun:
    @pytest.mark.parametrize(["suite"], [[suite] for suite in SUITES])
    def test_suite(self, suite: str) -> None:
        results = verification_service.run(suite, integration_test_max_n())
        failed = [f"{r.key}: {r.detail}" for r in results if not r.passed]
        assert failed == [], f"{suite} failed"

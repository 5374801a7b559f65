"""
conftest.py

Contains fixture(reusable components for your unit/integration test) common to all tests

The integration tests read their runtime settings from integration_tests/config.toml
"""

from typing import Any

import toml

from src.utils.runtime_config import RuntimeConfig, runtime_config_from_config_dict


def integration_test_config_dict() -> dict[str, Any]:
    return toml.load("integration_tests/config.toml")


def integration_test_runtime_config() -> RuntimeConfig:
    return runtime_config_from_config_dict(integration_test_config_dict())


def integration_test_max_n() -> int:
    return int(integration_test_config_dict()["verification"]["default_max_n"])

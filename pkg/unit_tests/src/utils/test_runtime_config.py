from typing import Any
from unittest.mock import patch

import pytest

from src.models.errors import InvalidArguments
from src.utils.runtime_config import (
    RuntimeConfig,
    load_runtime_config,
    resolve_thread_count_from_env_vars,
    runtime_config_from_config_dict,
)


class TestRuntimeConfig:
    def test_from_config_dict(self) -> None:
        config: dict[str, Any] = {
            "runtime": {"threads": 3, "log_level": "DEBUG"},
            "verification": {"associativity_samples": 50, "random_seed": 7},
        }
        runtime: RuntimeConfig = runtime_config_from_config_dict(config)
        assert runtime.threads == 3
        assert runtime.worker_count == 3
        assert runtime.log_level == "DEBUG"
        assert runtime.associativity_samples == 50
        assert runtime.default_max_n == 6

    def test_defaults(self) -> None:
        runtime: RuntimeConfig = runtime_config_from_config_dict({})
        assert runtime.associativity_samples == 200
        assert runtime.worker_count >= 1

    @pytest.mark.parametrize(
        ["environment_dictionary", "expected"],
        [[{"TLDKIT_THREADS": "4"}, 4], [{"TLDKIT_THREADS": " "}, None], [{"TLDKIT_THREADS": "0"}, 0]],
    )
    def test_thread_count_from_env_vars(self, environment_dictionary: dict[str, str], expected: int | None) -> None:
        with patch.dict("os.environ", environment_dictionary):
            assert resolve_thread_count_from_env_vars() == expected

    @pytest.mark.parametrize(["raw"], [["four"], ["-2"]])
    def test_bad_thread_count(self, raw: str) -> None:
        with patch.dict("os.environ", {"TLDKIT_THREADS": raw}):
            with pytest.raises(InvalidArguments):
                resolve_thread_count_from_env_vars()

    def test_env_var_overrides_file(self, tmp_path: Any) -> None:
        path = tmp_path / "config.toml"
        path.write_text("[runtime]\nthreads = 2\n")
        with patch.dict("os.environ", {"TLDKIT_THREADS": "5"}):
            assert load_runtime_config(str(path)).threads == 5
        with patch.dict("os.environ", {"TLDKIT_THREADS": ""}):
            assert load_runtime_config(str(path)).threads == 2

    def test_missing_file_gives_defaults(self, tmp_path: Any) -> None:
        with patch.dict("os.environ", {"TLDKIT_THREADS": ""}):
            assert load_runtime_config(str(tmp_path / "absent.toml")) == RuntimeConfig()

import logging

import pytest

from src.utils.logging_utils import setup_logging


class TestSetupLogging:
    def test_single_handler_with_formatter(self) -> None:
        logger: logging.Logger = logging.Logger("tldkit-test")
        setup_logging(logger, level="debug")
        setup_logging(logger, level="ERROR")
        assert len(logger.handlers) == 1
        assert logger.level == logging.ERROR
        assert logger.handlers[0].formatter is not None

    def test_file_handler(self, tmp_path) -> None:
        logger: logging.Logger = logging.Logger("tldkit-file-test")
        path = tmp_path / "tldkit.logs"
        setup_logging(logger, log_to_file=True, file_path=str(path))
        logger.info("written")
        logger.handlers[0].flush()
        assert "written" in path.read_text()

    def test_unknown_level(self) -> None:
        with pytest.raises(ValueError):
            setup_logging(logging.Logger("tldkit-bad-level"), level="LOUD")

import logging
from logging import Logger


"""
1) setup_logging takes a logger, whether to log to a file, the file path and
the minimum level (one of CRITICAL, ERROR, WARNING, INFO, DEBUG)
2) Both handlers share one formatter
3) The console handler writes to stderr so stdout carries only CLI output
"""

LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(
    logger: Logger,
    log_to_file: bool = False,
    file_path: str = "tldkit.logs",
    level: str | int = logging.INFO,
) -> None:
    """
    Sets up a logger to
    - Have a logging level (indicates the minimum level for a log to be shown)
    - Set the logging formatter
    - Log to a file when log_to_file is True, to stderr otherwise

    Calling it twice on the same logger does not add a second handler
    """
    resolved: int = logging.getLevelName(level.upper()) if isinstance(level, str) else level
    if not isinstance(resolved, int):
        raise ValueError(f"unknown log level {level!r}")
    logger.setLevel(resolved)
    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(resolved)
        return

    formatter: logging.Formatter = logging.Formatter(LOG_FORMAT)

    handler: logging.Handler
    if log_to_file:
        handler = logging.FileHandler(file_path)
    else:
        # StreamHandler defaults to sys.stderr
        handler = logging.StreamHandler()
    handler.setLevel(resolved)
    handler.setFormatter(formatter)
    logger.addHandler(handler)

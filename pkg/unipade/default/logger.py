import logging
import os
from ..base import LEVELS, BaseLogger

LOGGER_NAME = "unipade"


class Logger(BaseLogger):
    """
    Console (stderr) and optional file logging for experiment runs.

    Construction steps log at INFO, fit escalation at DEBUG, capped fit budgets at
    WARNING and per-center failures of batch Padé operations at ERROR.

    Args:
        log_file (str | None): Also append records to this file.
        log_level (int): Threshold for the shared "unipade" logger.

    Handlers are attached once per process.
    """

    def __init__(self, log_file=None, log_level=logging.INFO):
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(log_level)

        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )

        if log_file and not any(
            isinstance(h, logging.FileHandler) and h.baseFilename == os.path.abspath(log_file)
            for h in self.logger.handlers
        ):
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        if not any(type(h) is logging.StreamHandler for h in self.logger.handlers):
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

    def emit(self, level: str, message: str) -> None:
        if level not in LEVELS:
            raise ValueError(f"Unknown log level {level!r}.")
        self.logger.log(getattr(logging, level.upper()), message)

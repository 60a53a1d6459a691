"""
Simple base classes handling dependencies.

Components receive their logger from the ExperimentBuilder and log through
`Loggable.log`, which stays usable before a logger has been injected.
"""
from abc import ABC, abstractmethod


class Loggable:
    logger = None

    def set_logger(self, logger) -> None:
        """
        Used by ExperimentBuilder to inject a logger component.
        """
        self.logger = logger

    def log(self, level: str, message: str) -> None:
        if self.logger:
            log_method = getattr(self.logger, level, None)
            if log_method:
                log_method(message)
        else:
            print(f"[{level.upper()}] {message}")

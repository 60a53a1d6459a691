from .base import ABC, abstractmethod

LEVELS = ("debug", "info", "warning", "error", "critical")


class BaseLogger(ABC):
    """
    The level methods components call through `Loggable.log`. Implementations only
    provide `emit`.
    """

    @abstractmethod
    def emit(self, level: str, message: str) -> None:
        pass

    def debug(self, message: str) -> None:
        self.emit("debug", message)

    def info(self, message: str) -> None:
        self.emit("info", message)

    def warning(self, message: str) -> None:
        self.emit("warning", message)

    def error(self, message: str) -> None:
        self.emit("error", message)

    def critical(self, message: str) -> None:
        self.emit("critical", message)

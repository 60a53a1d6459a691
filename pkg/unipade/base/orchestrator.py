from .base import ABC, abstractmethod


class BaseOrchestrator(ABC):
    """Worker pool for the per-entry work of batch operations."""

    @abstractmethod
    def map_ordered(self, func, items):
        """
        Applies func to every item and returns the results in input order.
        """
        pass

    @abstractmethod
    def shutdown(self):
        pass

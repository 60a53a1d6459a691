from concurrent.futures import ThreadPoolExecutor
from ..base import BaseOrchestrator, Loggable


class Orchestrator(Loggable, BaseOrchestrator):
    """
    Orchestrator class for fanning out independent computations over a thread pool.

    Batch operations (Padé over many centers, normality tables, verification sweeps)
    hand their per-entry work to `map_ordered`, which keeps results in input order.

    Attributes:
        executor (ThreadPoolExecutor): The thread pool executor for running tasks.
        logger (Logger): The logger component for logging messages.

    Methods:
        map_ordered(self, func: callable, items) -> list:
            Runs func over items concurrently, returning results in input order.

        shutdown(self):
            Shuts down the executor.
    """

    def __init__(self, max_workers=4):
        if not isinstance(max_workers, int) or max_workers < 1:
            raise ValueError("max_workers must be a positive integer.")
        self.max_workers = max_workers
        self.executor = ThreadPoolExecutor(max_workers=max_workers)
        self.logger = None  # Builder injects logger component

    def map_ordered(self, func: callable, items) -> list:
        """
        Applies func to each item on the pool and returns results in input order.

        Exceptions propagate from the first failing item (in input order); callers
        that need per-entry error markers catch inside func.
        """
        items = list(items)
        task_name = getattr(func, "__name__", "unnamed_task")
        self.log("debug", f"Mapping {task_name} over {len(items)} items on {self.max_workers} workers.")
        futures = [self.executor.submit(func, item) for item in items]
        return [future.result() for future in futures]

    def shutdown(self):
        self.executor.shutdown(wait=True)
        self.log("debug", "Worker pool shut down.")


def map_sequential(func: callable, items) -> list:
    """
    Fallback used by components built without an orchestrator.
    """
    return [func(item) for item in items]

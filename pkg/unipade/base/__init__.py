from .base import Loggable
from .engine import BaseEngine
from .logger import LEVELS, BaseLogger
from .orchestrator import BaseOrchestrator

__all__ = [
    "Loggable",
    "BaseEngine",
    "BaseLogger",
    "LEVELS",
    "BaseOrchestrator",
]

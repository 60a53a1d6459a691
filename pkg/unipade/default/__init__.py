from .logger import Logger
from .engine import Engine
from .orchestrator import Orchestrator, map_sequential

__all__ = ["Logger", "Engine", "Orchestrator", "map_sequential"]

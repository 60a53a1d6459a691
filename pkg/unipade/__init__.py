__version__ = "v0.3.0"

from .main import Experiment, ExperimentBuilder

# Any component with the same methods can stand in for these
from .default import (
    Logger as DefaultLogger,
    Engine as DefaultEngine,
    Orchestrator as DefaultOrchestrator,
)

from .core import (
    PowerSeries,
    Polynomial,
    RationalFunction,
    PadeEngine,
    PadeIndex,
    PadeResult,
    ConstructiveApproximator,
    chordal,
    sup_distance,
    rho_c,
    rho_d,
    exp_series,
    geometric_series,
    UnipadeError,
    NotInD,
    IllConditioned,
    BudgetExhausted,
    ConfigError,
)

from .universal import (
    QTable,
    QSideTable,
    TargetEnumeration,
    UniversalConstructor,
    UniversalityVerifier,
    WitnessGenerator,
    SpanBuilder,
    schedule_systems,
)

from .config import ExperimentConfig, ExperimentConfigBuilder, load_config

from .base import BaseEngine, BaseLogger, BaseOrchestrator

__all__ = [
    # Drivers
    "Experiment",
    "ExperimentBuilder",
    "ExperimentConfig",
    "ExperimentConfigBuilder",
    "load_config",
    # Default Component classes
    "DefaultLogger",
    "DefaultOrchestrator",
    "DefaultEngine",
    # Series and Padé
    "PowerSeries",
    "Polynomial",
    "RationalFunction",
    "PadeEngine",
    "PadeIndex",
    "PadeResult",
    "ConstructiveApproximator",
    "exp_series",
    "geometric_series",
    # Metrics
    "chordal",
    "sup_distance",
    "rho_c",
    "rho_d",
    # Universal series
    "QTable",
    "QSideTable",
    "TargetEnumeration",
    "UniversalConstructor",
    "UniversalityVerifier",
    "WitnessGenerator",
    "SpanBuilder",
    "schedule_systems",
    # Base classes
    "BaseEngine",
    "BaseLogger",
    "BaseOrchestrator",
    # Exceptions
    "UnipadeError",
    "NotInD",
    "IllConditioned",
    "BudgetExhausted",
    "ConfigError",
]

from .tables import (
    QTable,
    QSideTable,
    TargetEnumeration,
    schedule_systems,
    gaussian_rational_polynomial,
    REPEAT,
    SINGLE,
)
from .construction import (
    UniversalConstructor,
    ConstructionStep,
    ConstructionTranscript,
    InvariantCheck,
    HOLOMORPHIC,
    FORMAL,
)
from .verification import UniversalityVerifier, UniversalityVerdict, QMargin
from .witness import WitnessGenerator, WitnessReport, MembershipCheck
from .span import SpanBuilder, SpanReport, SpanStepCheck, merge_tables

__all__ = [
    "QTable",
    "QSideTable",
    "TargetEnumeration",
    "schedule_systems",
    "gaussian_rational_polynomial",
    "REPEAT",
    "SINGLE",
    "UniversalConstructor",
    "ConstructionStep",
    "ConstructionTranscript",
    "InvariantCheck",
    "HOLOMORPHIC",
    "FORMAL",
    "UniversalityVerifier",
    "UniversalityVerdict",
    "QMargin",
    "WitnessGenerator",
    "WitnessReport",
    "MembershipCheck",
    "SpanBuilder",
    "SpanReport",
    "SpanStepCheck",
    "merge_tables",
]

from .series import (
    Polynomial,
    PowerSeries,
    RationalFunction,
    partial_sum,
    evaluate,
    recenter,
    derivative,
    resultant,
    exp_series,
    geometric_series,
)
from .extended import INFINITY, is_infinite
from .pade import PadeEngine, PadeIndex, PadeResult, MembershipReport, JacobiReport
from .metrics import (
    SupReport,
    chordal,
    sup_distance,
    rho_c,
    rho_d,
    derivative_seminorm_gap,
    EUCLIDEAN,
    CHORDAL,
)
from .geometry import (
    Disk,
    Segment,
    Path,
    Rectangle,
    Annulus,
    Intersection,
    Union,
    DiskDomain,
    RectangleDomain,
    HalfDiskDomain,
    AnnulusComplementDomain,
    SampledSet,
    sample,
    inner_exhaustion,
    outer_family,
)
from .approx import ConstructiveApproximator, FitProblem, FitResult, Pole, locate_poles
from .exceptions import (
    UnipadeError,
    TruncationExceeded,
    NotInD,
    IllConditioned,
    CapExceeded,
    CenterOnPole,
    InfiniteValue,
    LengthMismatch,
    PoleInRegion,
    DegenerateShape,
    UnsupportedDomain,
    BudgetExhausted,
    RankDeficient,
    RootFindingFailed,
    NoUsableIndex,
    DepthCapExceeded,
    EnumerationExhausted,
    InvalidPerturbation,
    NotCoprime,
    ZeroDenominator,
    ConfigError,
)

__exceptions__ = [
    "UnipadeError",
    "TruncationExceeded",
    "NotInD",
    "IllConditioned",
    "CapExceeded",
    "CenterOnPole",
    "InfiniteValue",
    "LengthMismatch",
    "PoleInRegion",
    "DegenerateShape",
    "UnsupportedDomain",
    "BudgetExhausted",
    "RankDeficient",
    "RootFindingFailed",
    "NoUsableIndex",
    "DepthCapExceeded",
    "EnumerationExhausted",
    "InvalidPerturbation",
    "NotCoprime",
    "ZeroDenominator",
    "ConfigError",
]

__core__ = [
    "Polynomial",
    "PowerSeries",
    "RationalFunction",
    "partial_sum",
    "evaluate",
    "recenter",
    "derivative",
    "resultant",
    "exp_series",
    "geometric_series",
    "INFINITY",
    "is_infinite",
    "PadeEngine",
    "PadeIndex",
    "PadeResult",
    "MembershipReport",
    "JacobiReport",
    "SupReport",
    "chordal",
    "sup_distance",
    "rho_c",
    "rho_d",
    "derivative_seminorm_gap",
    "EUCLIDEAN",
    "CHORDAL",
    "Disk",
    "Segment",
    "Path",
    "Rectangle",
    "Annulus",
    "Intersection",
    "Union",
    "DiskDomain",
    "RectangleDomain",
    "HalfDiskDomain",
    "AnnulusComplementDomain",
    "SampledSet",
    "sample",
    "inner_exhaustion",
    "outer_family",
    "ConstructiveApproximator",
    "FitProblem",
    "FitResult",
    "Pole",
    "locate_poles",
]

__all__ = __core__ + __exceptions__

from .config import (
    ExperimentConfig,
    ExperimentConfigBuilder,
    OutputConfig,
    SpanConfig,
    Tolerances,
    WitnessConfig,
    config_from_dict,
    load_config,
    OUTPUT_DIR_ENV,
)
from .literals import (
    parse_complex,
    parse_domain,
    parse_polynomial,
    parse_qside_table,
    parse_rational,
    parse_shape,
    parse_table,
    parse_target,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentConfigBuilder",
    "OutputConfig",
    "SpanConfig",
    "Tolerances",
    "WitnessConfig",
    "config_from_dict",
    "load_config",
    "OUTPUT_DIR_ENV",
    "parse_complex",
    "parse_domain",
    "parse_polynomial",
    "parse_qside_table",
    "parse_rational",
    "parse_shape",
    "parse_table",
    "parse_target",
]

from .serialization import (
    dumps,
    complex_value,
    series_to_dict,
    polynomial_to_dict,
    rational_to_dict,
    pade_result_to_dict,
    transcript_to_dict,
    invariant_checks_to_list,
    verdict_to_dict,
    witness_to_dict,
    span_to_dict,
    series_from_dict,
)
from .output import (
    atomic_write,
    write_json,
    write_csv,
    artifact_path,
    normality_rows,
    transcript_rows,
    margin_rows,
    sup_rows,
    verdict_sups,
    coefficient_rows,
    CSV_VERSION,
    NORMALITY_COLUMNS,
    TRANSCRIPT_COLUMNS,
    SUP_COLUMNS,
    MARGIN_COLUMNS,
    COEFFICIENT_COLUMNS,
)

__all__ = [
    "dumps",
    "complex_value",
    "series_to_dict",
    "polynomial_to_dict",
    "rational_to_dict",
    "pade_result_to_dict",
    "transcript_to_dict",
    "invariant_checks_to_list",
    "verdict_to_dict",
    "witness_to_dict",
    "span_to_dict",
    "series_from_dict",
    "atomic_write",
    "write_json",
    "write_csv",
    "artifact_path",
    "normality_rows",
    "transcript_rows",
    "margin_rows",
    "sup_rows",
    "verdict_sups",
    "coefficient_rows",
    "CSV_VERSION",
    "NORMALITY_COLUMNS",
    "TRANSCRIPT_COLUMNS",
    "SUP_COLUMNS",
    "MARGIN_COLUMNS",
    "COEFFICIENT_COLUMNS",
]

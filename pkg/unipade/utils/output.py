"""
Atomic artifact output: JSON through orjson and CSV with a fixed, versioned column set.
"""
import csv
import io
import os
import tempfile

from ..core.exceptions import ConfigError
from .serialization import dumps

CSV_VERSION = 1

NORMALITY_COLUMNS = ["csv_version", "p", "q", "member", "magnitude", "threshold"]
TRANSCRIPT_COLUMNS = ["csv_version", "n", "system", "k", "p", "t", "degree", "error", "budget"]
SUP_COLUMNS = ["csv_version", "name", "metric", "value", "witness_re", "witness_im", "n_samples", "mesh"]
MARGIN_COLUMNS = ["csv_version", "n", "q", "member", "margin_K", "margin_L"]
COEFFICIENT_COLUMNS = ["csv_version", "index", "magnitude"]


def atomic_write(path: str, data: bytes) -> str:
    """Writes to a temporary file in the target directory, then renames over path."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as e:
        raise ConfigError(f"Cannot write {path}: {e}")
    return path


def write_json(path: str, document) -> str:
    return atomic_write(path, dumps(document))


def write_csv(path: str, columns: list, rows) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({"csv_version": CSV_VERSION, **row})
    return atomic_write(path, buffer.getvalue().encode("utf-8"))


def normality_rows(entries) -> list:
    return [
        {
            "p": e.p,
            "q": e.q,
            "member": str(e.member).lower(),
            "magnitude": float(e.magnitude),
            "threshold": float(e.threshold),
        }
        for e in entries
    ]


def transcript_rows(transcript) -> list:
    return [
        {
            "n": s.n,
            "system": s.system,
            "k": s.k,
            "p": s.p,
            "t": s.t,
            "degree": s.fit_degree,
            "error": float(s.error),
            "budget": float(s.budget),
        }
        for s in transcript.steps
    ]


def margin_rows(verdict) -> list:
    return [
        {
            "n": verdict.n,
            "q": m.q,
            "member": str(m.member).lower(),
            "margin_K": "" if m.margin_K is None else float(m.margin_K),
            "margin_L": "" if m.margin_L is None else float(m.margin_L),
        }
        for m in verdict.margins
    ]


def sup_rows(reports) -> list:
    """Rows of (name, SupReport) pairs; pairs without a report are skipped."""
    return [{"name": name, **report.as_row()} for name, report in reports if report is not None]


def verdict_sups(verdict) -> list:
    pairs = []
    for m in verdict.margins:
        pairs += [(f"K_q{m.q}", m.sup_K), (f"L_q{m.q}", m.sup_L)]
    return pairs


def coefficient_rows(series) -> list:
    return [{"index": i, "magnitude": float(abs(c))} for i, c in enumerate(series.coeffs)]


def artifact_path(directory: str, prefix: str, name: str) -> str:
    return os.path.join(directory, f"{prefix}_{name}")

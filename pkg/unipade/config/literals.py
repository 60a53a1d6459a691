"""
Parsers for the literal forms accepted in configuration documents and on the
command line.

    complex     [re, im] or a number
    polynomial  "poly:c0,c1,..."              (entries parsed by complex())
    rational    "rational:n0,n1;d0,d1"
    shape       {"type": "disk", "center": [re, im], "radius": r} and friends
    domain      {"type": "disk" | "rectangle" | "half_disk" | "annulus_complement", ...}
    table       {"generator": "linear" | "growing", ...} or {"p": [...], "q": [[...]]}
"""
from ..core.exceptions import ConfigError, UnipadeError
from ..core.geometry import (
    Annulus,
    AnnulusComplementDomain,
    Disk,
    DiskDomain,
    HalfDiskDomain,
    Intersection,
    Path,
    Rectangle,
    RectangleDomain,
    Segment,
    Union,
)
from ..core.series import Polynomial, RationalFunction
from ..universal.tables import QSideTable, QTable

POLY_PREFIX = "poly:"
RATIONAL_PREFIX = "rational:"


def parse_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"Complex literal must be [re, im], got {value!r}")
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            raise ConfigError(f"Invalid complex literal {value!r}")
    if isinstance(value, bool):
        raise ConfigError(f"Invalid complex literal {value!r}")
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ConfigError(f"Invalid complex literal {value!r}")


def _coefficients(text: str) -> tuple:
    parts = [part for part in text.split(",") if part.strip()]
    if not parts:
        raise ConfigError(f"Empty coefficient list in {text!r}")
    return tuple(parse_complex(part.strip()) for part in parts)


def parse_polynomial(text: str, center=0, precision: int = 53) -> Polynomial:
    if not isinstance(text, str) or not text.startswith(POLY_PREFIX):
        raise ConfigError(f"Polynomial literals look like 'poly:c0,c1', got {text!r}")
    return Polynomial(_coefficients(text[len(POLY_PREFIX):]), center, precision)


def parse_rational(text: str, center=0, precision: int = 53) -> RationalFunction:
    if not isinstance(text, str) or not text.startswith(RATIONAL_PREFIX):
        raise ConfigError(f"Rational literals look like 'rational:n0,n1;d0,d1', got {text!r}")
    body = text[len(RATIONAL_PREFIX):]
    if body.count(";") != 1:
        raise ConfigError(f"Rational literal needs exactly one ';' in {text!r}")
    numerator, denominator = body.split(";")
    try:
        return RationalFunction(
            Polynomial(_coefficients(numerator), center, precision),
            Polynomial(_coefficients(denominator), center, precision),
        )
    except UnipadeError as e:
        raise ConfigError(f"Invalid rational literal {text!r}: {e.message}")


def parse_target(text: str, center=0, precision: int = 53):
    """A polynomial or rational literal."""
    if isinstance(text, str) and text.startswith(RATIONAL_PREFIX):
        return parse_rational(text, center, precision)
    return parse_polynomial(text, center, precision)


def _require(spec: dict, *keys):
    missing = [key for key in keys if key not in spec]
    if missing:
        raise ConfigError(f"Missing keys {missing} in {spec!r}")


def parse_shape(spec: dict):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError(f"Shape literal needs a 'type', got {spec!r}")
    kind = spec["type"]
    try:
        if kind == "disk":
            _require(spec, "center", "radius")
            return Disk(parse_complex(spec["center"]), float(spec["radius"]))
        if kind == "segment":
            _require(spec, "start", "end")
            return Segment(parse_complex(spec["start"]), parse_complex(spec["end"]))
        if kind == "path":
            _require(spec, "vertices")
            return Path(tuple(parse_complex(v) for v in spec["vertices"]))
        if kind == "rectangle":
            _require(spec, "lower_left", "upper_right")
            return Rectangle(parse_complex(spec["lower_left"]), parse_complex(spec["upper_right"]))
        if kind == "annulus":
            _require(spec, "center", "inner", "outer")
            return Annulus(parse_complex(spec["center"]), float(spec["inner"]), float(spec["outer"]))
        if kind in ("intersection", "union"):
            _require(spec, "pieces")
            pieces = tuple(parse_shape(piece) for piece in spec["pieces"])
            return Intersection(pieces) if kind == "intersection" else Union(pieces)
    except UnipadeError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"Invalid {kind} shape: {e.message}")
    raise ConfigError(f"Shape type {kind!r} is not in the supported list")


def parse_domain(spec: dict):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigError(f"Domain literal needs a 'type', got {spec!r}")
    kind = spec["type"]
    try:
        if kind == "disk":
            return DiskDomain(parse_complex(spec.get("center", 0)), float(spec.get("radius", 1.0)))
        if kind == "rectangle":
            _require(spec, "lower_left", "upper_right")
            return RectangleDomain(parse_complex(spec["lower_left"]), parse_complex(spec["upper_right"]))
        if kind == "half_disk":
            return HalfDiskDomain(
                parse_complex(spec.get("center", 0)), float(spec.get("radius", 1.0)), float(spec.get("cut", 0.0))
            )
        if kind == "annulus_complement":
            return AnnulusComplementDomain(
                parse_complex(spec.get("center", 0)),
                float(spec.get("inner_radius", 1.0)),
                float(spec.get("outer_radius", 2.0)),
            )
    except UnipadeError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(f"Invalid {kind} domain: {e.message}")
    raise ConfigError(f"Domain type {kind!r} is not supported")


def _integers(values, name: str) -> list:
    if not isinstance(values, (list, tuple)) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in values
    ):
        raise ConfigError(f"'{name}' must be a list of integers")
    return list(values)


def parse_table(spec: dict) -> QTable:
    if not isinstance(spec, dict):
        raise ConfigError(f"Table literal must be an object, got {spec!r}")
    generator = spec.get("generator")
    try:
        if generator == "linear":
            _require(spec, "length", "q")
            return QTable.linear(int(spec["length"]), _integers(spec["q"], "q"), spec.get("allowed"))
        if generator == "growing":
            _require(spec, "length", "q_offsets")
            return QTable.growing(
                int(spec["length"]), _integers(spec["q_offsets"], "q_offsets"), int(spec.get("rate", 1))
            )
        if generator is None:
            _require(spec, "p", "q")
            rows = [_integers(row, "q") for row in spec["q"]]
            return QTable(tuple(_integers(spec["p"], "p")), tuple(tuple(r) for r in rows), spec.get("allowed"))
    except ValueError as e:
        raise ConfigError(f"Invalid table: {e}")
    raise ConfigError(f"Unknown table generator {generator!r}")


def parse_qside_table(spec: dict) -> QSideTable:
    """{"generator": "constant_q", "length": L, "q": q, "p_offsets": [...]} or explicit {"q", "p"}."""
    if not isinstance(spec, dict):
        raise ConfigError(f"Table literal must be an object, got {spec!r}")
    try:
        if spec.get("generator") == "constant_q":
            _require(spec, "length", "q")
            return QSideTable.constant_q(
                int(spec["length"]), int(spec["q"]), tuple(_integers(spec.get("p_offsets", [0, 1]), "p_offsets"))
            )
        _require(spec, "q", "p")
        return QSideTable(tuple(_integers(spec["q"], "q")), tuple(tuple(_integers(r, "p")) for r in spec["p"]))
    except ValueError as e:
        raise ConfigError(f"Invalid swapped table: {e}")

import os
from dataclasses import dataclass, field

import orjson

from ..core.exceptions import ConfigError
from ..core.geometry import outer_family
from ..core.precision import CONSTRUCTOR_PRECISION, MIN_PRECISION
from ..universal.construction import FORMAL, HOLOMORPHIC
from ..universal.span import DEFAULT_DEPTH_CAP
from ..universal.tables import REPEAT, SINGLE, QTable, TargetEnumeration
from .literals import (
    parse_complex,
    parse_domain,
    parse_qside_table,
    parse_shape,
    parse_table,
    parse_target,
)

OUTPUT_DIR_ENV = "UNIPADE_OUTPUT_DIR"
WITNESS_KINDS = ("type1", "type1_qside", "type2")


@dataclass(frozen=True)
class Tolerances:
    tol_D: float = None
    fit_budget: int = 100
    mesh: float = 0.015
    exhaustion_offset: int = 1
    jacobi_q_cap: int = 6


@dataclass(frozen=True)
class WitnessConfig:
    kind: str
    K: object
    L: object
    h: object
    g: object
    table: object
    s: int
    epsilon: float


@dataclass(frozen=True)
class SpanConfig:
    coefficients: tuple
    systems: tuple
    depth_cap: int = DEFAULT_DEPTH_CAP


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    prefix: str = "unipade"


@dataclass(frozen=True)
class ExperimentConfig:
    """
    A validated experiment description. Build it with ExperimentConfigBuilder or
    `load_config`.
    """

    domain: object
    center: complex
    table: QTable
    enumeration: TargetEnumeration
    steps: int = 1
    mode: str = HOLOMORPHIC
    precision_bits: int = CONSTRUCTOR_PRECISION
    tolerances: Tolerances = field(default_factory=Tolerances)
    witness: WitnessConfig = None
    span: SpanConfig = None
    output: OutputConfig = field(default_factory=OutputConfig)


class ExperimentConfigBuilder:
    """
    Validating builder for ExperimentConfig; every with_* method raises ConfigError
    on invalid input and returns the builder.
    """

    def __init__(self):
        self.domain = None
        self.center = 0j
        self.table = None
        self.enumeration_spec = None
        self.steps = 1
        self.mode = HOLOMORPHIC
        self.precision_bits = CONSTRUCTOR_PRECISION
        self.tolerances = Tolerances()
        self.witness_spec = None
        self.span_spec = None
        self.output = OutputConfig()

    def with_domain(self, spec):
        self.domain = parse_domain(spec) if isinstance(spec, dict) else spec
        return self

    def with_center(self, center):
        self.center = parse_complex(center)
        return self

    def with_table(self, spec):
        self.table = parse_table(spec) if isinstance(spec, dict) else spec
        if not isinstance(self.table, QTable):
            raise ConfigError("Table must be a table literal.")
        return self

    def with_enumeration(self, spec: dict):
        if not isinstance(spec, dict):
            raise ConfigError("Enumeration must be an object.")
        if spec.get("policy", REPEAT) not in (REPEAT, SINGLE):
            raise ConfigError(f"Unknown repetition policy {spec.get('policy')!r}.")
        if "compacts" not in spec and "outer" not in spec:
            raise ConfigError("Enumeration needs 'compacts' or an 'outer' count.")
        self.enumeration_spec = spec
        return self

    def with_steps(self, steps: int):
        if not isinstance(steps, int) or isinstance(steps, bool) or steps < 1:
            raise ConfigError("Steps must be a positive integer.")
        self.steps = steps
        return self

    def with_mode(self, mode: str):
        if mode not in (HOLOMORPHIC, FORMAL):
            raise ConfigError(f"Mode must be {HOLOMORPHIC!r} or {FORMAL!r}.")
        self.mode = mode
        return self

    def with_precision(self, bits: int):
        if not isinstance(bits, int) or isinstance(bits, bool) or bits < MIN_PRECISION:
            raise ConfigError(f"Precision must be an integer >= {MIN_PRECISION} bits.")
        self.precision_bits = bits
        return self

    def with_tolerances(self, spec: dict):
        if not isinstance(spec, dict):
            raise ConfigError("Tolerances must be an object.")
        unknown = set(spec) - set(Tolerances.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"Unknown tolerance keys {sorted(unknown)}.")
        tolerances = Tolerances(**{**self.tolerances.__dict__, **spec})
        if not tolerances.mesh > 0:
            raise ConfigError("Mesh must be positive.")
        if tolerances.fit_budget < 0 or tolerances.exhaustion_offset < 0 or tolerances.jacobi_q_cap < 0:
            raise ConfigError("Budgets, offsets and caps must be nonnegative.")
        if tolerances.tol_D is not None and not tolerances.tol_D > 0:
            raise ConfigError("tol_D must be positive.")
        self.tolerances = tolerances
        return self

    def with_witness(self, spec: dict):
        if not isinstance(spec, dict) or spec.get("kind") not in WITNESS_KINDS:
            raise ConfigError(f"Witness kind must be one of {WITNESS_KINDS}.")
        self.witness_spec = spec
        return self

    def with_span(self, spec: dict):
        if not isinstance(spec, dict) or "coefficients" not in spec:
            raise ConfigError("Span needs 'coefficients'.")
        self.span_spec = spec
        return self

    def with_output(self, spec: dict):
        if not isinstance(spec, dict):
            raise ConfigError("Output must be an object.")
        directory = spec.get("directory", self.output.directory)
        prefix = spec.get("prefix", self.output.prefix)
        if not isinstance(directory, str) or not isinstance(prefix, str) or not prefix:
            raise ConfigError("Output directory and prefix must be strings.")
        self.output = OutputConfig(directory, prefix)
        return self

    def _enumeration(self) -> TargetEnumeration:
        spec = self.enumeration_spec or {"outer": 1}
        if "compacts" in spec:
            compacts = tuple(parse_shape(shape) for shape in spec["compacts"])
        else:
            count = spec["outer"]
            if not isinstance(count, int) or count < 1:
                raise ConfigError("'outer' must be a positive integer.")
            compacts = tuple(outer_family(self.domain, m) for m in range(1, count + 1))
        targets = spec.get("targets")
        if targets is not None:
            targets = tuple(parse_target(t, self.center, self.precision_bits) for t in targets)
        try:
            return TargetEnumeration(compacts, targets, spec.get("policy", REPEAT), self.precision_bits)
        except ValueError as e:
            raise ConfigError(str(e))

    def _witness(self):
        spec = self.witness_spec
        if spec is None:
            return None
        missing = [key for key in ("K", "L", "h", "table", "s", "epsilon") if key not in spec]
        if missing:
            raise ConfigError(f"Witness is missing {missing}.")
        kind = spec["kind"]
        table = parse_qside_table(spec["table"]) if kind == "type1_qside" else parse_table(spec["table"])
        s, epsilon = spec["s"], spec["epsilon"]
        if not isinstance(s, int) or s < 1 or not 0 < float(epsilon) < 1 / s:
            raise ConfigError("Witness needs an integer s >= 1 and 0 < epsilon < 1/s.")
        return WitnessConfig(
            kind,
            parse_shape(spec["K"]),
            parse_shape(spec["L"]),
            parse_target(spec["h"], 0, self.precision_bits),
            parse_target(spec.get("g", "poly:0"), 0, self.precision_bits),
            table,
            s,
            float(epsilon),
        )

    def _span(self):
        spec = self.span_spec
        if spec is None:
            return None
        coefficients = tuple(parse_complex(a) for a in spec["coefficients"])
        if not coefficients or any(a == 0 for a in coefficients):
            raise ConfigError("Span coefficients must be nonzero.")
        systems = tuple(parse_table(t) for t in spec.get("systems", [])) or (self.table,)
        depth_cap = spec.get("depth_cap", DEFAULT_DEPTH_CAP)
        if not isinstance(depth_cap, int) or depth_cap < 1:
            raise ConfigError("depth_cap must be a positive integer.")
        return SpanConfig(coefficients, systems, depth_cap)

    def build(self) -> ExperimentConfig:
        if self.domain is None:
            raise ConfigError("Domain is required.")
        if self.table is None:
            raise ConfigError("Table is required.")
        if self.mode == HOLOMORPHIC and not self.domain.contains(self.center):
            raise ConfigError("The center must lie in the domain.")
        output = self.output
        override = os.environ.get(OUTPUT_DIR_ENV)
        if override:
            output = OutputConfig(override, output.prefix)
        return ExperimentConfig(
            domain=self.domain,
            center=self.center,
            table=self.table,
            enumeration=self._enumeration(),
            steps=self.steps,
            mode=self.mode,
            precision_bits=self.precision_bits,
            tolerances=self.tolerances,
            witness=self._witness(),
            span=self._span(),
            output=output,
        )


_SETTERS = {
    "domain": "with_domain",
    "center": "with_center",
    "table": "with_table",
    "enumeration": "with_enumeration",
    "steps": "with_steps",
    "mode": "with_mode",
    "precision_bits": "with_precision",
    "tolerances": "with_tolerances",
    "witness": "with_witness",
    "span": "with_span",
    "output": "with_output",
}


def config_from_dict(document: dict) -> ExperimentConfig:
    if not isinstance(document, dict):
        raise ConfigError("Configuration must be a JSON object.")
    unknown = set(document) - set(_SETTERS)
    if unknown:
        raise ConfigError(f"Unknown configuration keys {sorted(unknown)}.")
    builder = ExperimentConfigBuilder()
    # the domain and precision come first: other sections are parsed against them
    for key in ("domain", "precision_bits", "center"):
        if key in document:
            getattr(builder, _SETTERS[key])(document[key])
    for key, value in document.items():
        if key not in ("domain", "precision_bits", "center"):
            getattr(builder, _SETTERS[key])(value)
    return builder.build()


def load_config(path: str) -> ExperimentConfig:
    try:
        with open(path, "rb") as handle:
            document = orjson.loads(handle.read())
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}")
    except orjson.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")
    return config_from_dict(document)

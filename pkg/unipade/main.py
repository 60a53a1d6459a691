import os
from dataclasses import replace

from .base import LEVELS, BaseEngine, Loggable
from .config import ExperimentConfig
from .core import ConstructiveApproximator, PadeEngine, PadeIndex, inner_exhaustion, sample
from .core.exceptions import ConfigError
from .universal import (
    SpanBuilder,
    UniversalConstructor,
    UniversalityVerifier,
    WitnessGenerator,
)
from .utils import artifact_path, atomic_write, write_json

# Verification compares against f on L_2 unless told otherwise
DEFAULT_CHECK_LEVEL = 2


class Experiment(Loggable):
    """
    Experiment wires the numerical components for one configuration and writes
    their artifacts.

    Attributes:
        config (ExperimentConfig): The validated configuration.
        pade (PadeEngine): Padé engine at the configured precision.
        approximator (ConstructiveApproximator): Fitting kernel shared by the drivers.
        constructor (UniversalConstructor): Universal-series builder.
        verifier (UniversalityVerifier): Table-prefix search for universality verdicts.
        witnesses (WitnessGenerator): Density witnesses.
        spans (SpanBuilder): Depth-limited span members.
        orchestrator (any | None): Optional worker pool for batch Padé operations.
        logger (any | None): Logger injected into every component.
        engine (any | None): Report renderer used when reports are requested.

    Methods:
        compute_pade(series, p, q): [f; p/q] at the series center.
        normality_table(series, p_max, q_max): D-membership verdicts.
        build(): Runs the configured construction and its invariant checks.
        verify(series, target, s, ...): Searches the table for a universality verdict.
        witness(): Runs the configured witness generator.
        span(steps=None): Builds the configured span member.
        emit(name, document, template=None, ...): Writes a JSON artifact and, with an
            engine, its Markdown report.
    """

    def __init__(self, config: ExperimentConfig, orchestrator=None, logger=None, engine=None):
        self.config = config
        self.orchestrator = orchestrator
        self.logger = logger
        self.engine = engine
        tolerances = config.tolerances
        bits = config.precision_bits
        self.pade = PadeEngine(
            bits,
            tol_D=tolerances.tol_D,
            jacobi_q_cap=tolerances.jacobi_q_cap,
            orchestrator=orchestrator,
            logger=logger,
        )
        self.approximator = ConstructiveApproximator(bits, logger=logger)
        self.constructor = UniversalConstructor(
            bits,
            mesh=tolerances.mesh,
            fit_budget=tolerances.fit_budget,
            exhaustion_offset=tolerances.exhaustion_offset,
            approximator=self.approximator,
            pade=self.pade,
            logger=logger,
        )
        self.verifier = UniversalityVerifier(self.pade, logger=logger)
        self.witnesses = WitnessGenerator(
            bits, mesh=tolerances.mesh, fit_budget=tolerances.fit_budget,
            approximator=self.approximator, pade=self.pade, logger=logger,
        )
        depth_cap = config.span.depth_cap if config.span else 2
        self.spans = SpanBuilder(self.constructor, depth_cap=depth_cap, logger=logger)

    def compute_pade(self, series, p: int, q: int):
        return self.pade.compute_pade(series, PadeIndex(p, q))

    def normality_table(self, series, p_max: int, q_max: int) -> list:
        return self.pade.normality_table(series, p_max, q_max)

    def build(self, steps: int = None):
        """
        Returns (series, transcript, invariant checks).
        """
        config = self.config
        steps = steps or config.steps
        self.log("info", f"Building a universal series over {steps} steps")
        series, transcript = self.constructor.build_universal_series(
            config.domain, config.center, config.table, config.enumeration, steps, config.mode
        )
        checks = self.constructor.check_transcript_invariants(series, transcript)
        failed = [c for c in checks if not c.ok]
        if failed:
            self.log("warning", f"{len(failed)} invariant checks failed")
        return series, transcript, checks

    def verify(self, series, target, s: int, compact=None, candidates=None, centers=None, check_level=None):
        """
        Verdict for target h on compact K (the first enumerated compact by default),
        compared with f on L_{check_level}. Rational targets use the chordal search.
        """
        config = self.config
        compact = compact or config.enumeration.compacts[0]
        mesh = config.tolerances.mesh
        K = sample(compact, mesh, interior=hasattr(target, "denominator"))
        L_check = sample(inner_exhaustion(config.domain, check_level or DEFAULT_CHECK_LEVEL), mesh)
        search = self.verifier.verify_type2 if hasattr(target, "denominator") else self.verifier.verify_universality
        return search(series, config.table, K, target, L_check, s, centers=centers, candidates=candidates)

    def witness(self):
        spec = self.config.witness
        if spec is None:
            raise ConfigError("The configuration has no 'witness' section.")
        if spec.kind == "type1":
            return self.witnesses.type1_witness(spec.g, spec.K, spec.h, spec.L, spec.table, spec.s, spec.epsilon)
        if spec.kind == "type1_qside":
            return self.witnesses.type1_witness_qside(
                spec.g, spec.K, spec.h, spec.L, spec.table, spec.s, spec.epsilon
            )
        return self.witnesses.type2_witness(spec.g, spec.h, spec.K, spec.L, spec.table, spec.s, spec.epsilon)

    def span(self, steps: int = None):
        config = self.config
        if config.span is None:
            raise ConfigError("The configuration has no 'span' section.")
        return self.spans.build_span_member(
            config.domain,
            config.center,
            config.span.systems,
            config.enumeration,
            steps or config.steps,
            config.span.coefficients,
            config.mode,
        )

    def output_path(self, name: str) -> str:
        output = self.config.output
        return artifact_path(output.directory, output.prefix, name)

    def emit(self, name: str, document, template: str = None, context_key: str = None, extra: dict = None) -> str:
        path = write_json(self.output_path(f"{name}.json"), document)
        self.log("info", f"Wrote {path}")
        if template and self.engine:
            context = BaseEngine.report_context(self.config.output.prefix, context_key or name, document, extra)
            rendered = self.engine.render(template, context)
            report = atomic_write(self.output_path(f"{name}.md"), rendered.encode("utf-8"))
            self.log("info", f"Wrote {report}")
        return path

    def shutdown(self):
        if self.orchestrator:
            try:
                self.orchestrator.shutdown()
                self.log("info", "Orchestrator shutdown complete.")
            except Exception as e:
                self.log("error", f"Orchestrator shutdown error: {e}")


class ExperimentBuilder:
    """
    ExperimentBuilder constructs an Experiment with configurable components.
    It also creates a default logger if none is provided and injects it into the
    other components.

    Methods:
        with_config(config): Sets the experiment configuration.
        with_orchestrator(orchestrator): Sets the worker pool for batch operations.
        with_logger(logger): Sets the logger.
        with_engine(engine): Sets the report renderer.
        with_output_dir(directory): Overrides the configured output directory.
        with_prefix(prefix): Overrides the configured artifact prefix.
        build(): Returns the configured Experiment. Raises ValueError without a config.
    """

    def __init__(self):
        self.config = None
        self.orchestrator = None
        self.logger = None
        self.engine = None

    def with_config(self, config: ExperimentConfig):
        if not isinstance(config, ExperimentConfig):
            raise ValueError("Config must be an ExperimentConfig.")
        self.config = config
        return self

    def with_orchestrator(self, orchestrator):
        self._validate_component(orchestrator, ["map_ordered", "shutdown"], "Orchestrator")
        self.orchestrator = orchestrator
        return self

    def with_logger(self, logger):
        self._validate_component(logger, list(LEVELS), "Logger")
        self.logger = logger
        return self

    def with_engine(self, engine):
        self._validate_component(engine, ["render"], "Template engine")
        self.engine = engine
        return self

    def with_output_dir(self, directory: str):
        if not isinstance(directory, str):
            raise ValueError("Output directory must be a string.")
        if os.path.exists(directory) and not os.path.isdir(directory):
            raise ValueError(f"Output path {directory} is not a directory.")
        if not self.config:
            raise ValueError("Set the config before overriding its output directory.")
        self.config = replace(self.config, output=replace(self.config.output, directory=directory))
        return self

    def with_prefix(self, prefix: str):
        if not isinstance(prefix, str) or not prefix:
            raise ValueError("Prefix must be a non-empty string.")
        if not self.config:
            raise ValueError("Set the config before overriding its prefix.")
        self.config = replace(self.config, output=replace(self.config.output, prefix=prefix))
        return self

    def _validate_component(self, component, required_methods, component_name):
        if not all(hasattr(component, method) for method in required_methods):
            raise ValueError(f"{component_name} must implement {', '.join(required_methods)}")

    def _initialize_logger(self) -> None:
        if not self.logger:
            from .default import Logger as DefaultLogger

            self.logger = DefaultLogger()
            self.logger.info("Logger missing, defaulting to console logging.")

    def build(self) -> Experiment:
        if not self.config:
            raise ValueError("Config is required.")

        self._initialize_logger()

        if self.orchestrator:
            self.orchestrator.set_logger(self.logger)

        return Experiment(
            self.config,
            orchestrator=self.orchestrator,
            logger=self.logger,
            engine=self.engine,
        )

"""
Step-by-step construction of universal series with zero-block coefficient structure.

Step n fits h_n to (f_j - F_{n-1}) / (z - zeta)^s on K (and 0 on the exhaustion
compact L), appends H_n = (z - zeta)^s h_n + c_n (z - zeta)^p and reserves the zero
block of length t_n - 1 after p. Every coefficient outside the blocks written by some
H_n is an exact zero, so S_p equals the Padé approximant at every recorded p.
"""
from dataclasses import dataclass, field, replace

from ..base import Loggable
from ..core.approx import ConstructiveApproximator, FitProblem
from ..core.exceptions import (
    BudgetExhausted,
    IllConditioned,
    PoleInRegion,
    UnipadeError,
)
from ..core.geometry import inner_exhaustion, sample
from ..core.pade import PadeEngine, PadeIndex
from ..core.precision import CONSTRUCTOR_PRECISION, get_context, to_mpc
from ..core.series import Polynomial, PowerSeries
from .tables import QTable, TargetEnumeration, schedule_systems

HOLOMORPHIC = "holomorphic"
FORMAL = "formal"


@dataclass(frozen=True)
class ConstructionStep:
    n: int
    system: int
    k: int
    p: int
    t: int
    shift: int
    pair: tuple
    fit: Polynomial
    block: Polynomial
    c: object
    fit_degree: int
    fit_error: object
    error: object
    budget: object


@dataclass(frozen=True)
class ConstructionTranscript:
    center: object
    precision: int
    mode: str
    steps: tuple = ()
    tables: tuple = field(default=(), compare=False)

    @property
    def order(self) -> int:
        """Exact truncation order: the last zero of the final block."""
        if not self.steps:
            return 0
        last = self.steps[-1]
        return last.p + last.t - 1

    @property
    def recorded_indices(self) -> tuple:
        return tuple(step.k for step in self.steps)

    def steps_for(self, system: int) -> tuple:
        return tuple(step for step in self.steps if step.system == system)

    def partial(self, count: int) -> "ConstructionTranscript":
        return replace(self, steps=self.steps[:count])

    def series(self) -> PowerSeries:
        total = Polynomial.zero(self.center, self.precision)
        for step in self.steps:
            total = total + step.block
        coeffs = total.padded(self.order + 1)[: self.order + 1]
        return PowerSeries(coeffs, self.center, self.precision)


@dataclass(frozen=True)
class InvariantCheck:
    n: int
    k: int
    p: int
    q: int
    pivot: bool
    zero_block: bool
    pade_equals_partial_sum: bool
    gap: object

    @property
    def ok(self) -> bool:
        return self.pivot and self.zero_block and self.pade_equals_partial_sum


@dataclass(frozen=True)
class StepDraft:
    target: object
    total: Polynomial
    shift: int
    budget: object
    points: list
    on_k: int
    goals: list
    h: Polynomial
    shifted: Polynomial
    lower: int
    fit_degree: int


class UniversalConstructor(Loggable):
    """
    Driver for universal-series builds.

    Args:
        precision (int): Working precision in bits (256 by default).
        mesh (float): Boundary sampling mesh for K_m and L_n.
        fit_budget (int): Degree budget per fitting step.
        exhaustion_offset (int): Step n uses L_{n + offset}.
        approximator: ConstructiveApproximator, built from precision when omitted.
        pade: PadeEngine used by invariant checks.
    """

    def __init__(
        self,
        precision: int = CONSTRUCTOR_PRECISION,
        mesh: float = 0.015,
        fit_budget: int = 100,
        exhaustion_offset: int = 1,
        approximator: ConstructiveApproximator = None,
        pade: PadeEngine = None,
        logger=None,
    ):
        if not mesh > 0:
            raise ValueError("Mesh must be positive.")
        if fit_budget < 0 or exhaustion_offset < 0:
            raise ValueError("Budgets and offsets must be nonnegative.")
        self.precision = precision
        self.mesh = mesh
        self.fit_budget = fit_budget
        self.exhaustion_offset = exhaustion_offset
        self.approximator = approximator or ConstructiveApproximator(precision, logger=logger)
        self.pade = pade or PadeEngine(precision, logger=logger)
        self.logger = logger

    def set_logger(self, logger) -> None:
        self.logger = logger
        self.approximator.set_logger(logger)
        self.pade.set_logger(logger)

    @property
    def ctx(self):
        return get_context(self.precision)

    def build_universal_series(
        self,
        domain,
        center,
        table: QTable,
        enumeration: TargetEnumeration,
        steps: int,
        mode: str = HOLOMORPHIC,
    ):
        """
        Runs steps 1..steps and returns (series, transcript).

        Raises:
            BudgetExhausted / NoUsableIndex / IllConditioned with the transcript of the
            completed steps as payload.
        """
        schedule = [(1,)] * steps
        return self._build(domain, center, (table,), schedule, enumeration, steps, mode)

    def build_intersection_series(
        self,
        domain,
        center,
        tables,
        enumeration: TargetEnumeration,
        steps: int,
        countable: bool = False,
        mode: str = HOLOMORPHIC,
    ):
        """
        One series serving several systems: the schedule decides which systems are
        handled at each step, and every handled system gets its own sub-step with
        its own index and zero block.
        """
        tables = tuple(tables)
        schedule = schedule_systems(None if countable else len(tables), steps)
        for handled in schedule:
            if max(handled) > len(tables):
                raise ValueError(f"Schedule needs {max(handled)} systems, {len(tables)} given.")
        return self._build(domain, center, tables, schedule, enumeration, steps, mode)

    def _build(self, domain, center, tables, schedule, enumeration, steps, mode):
        if steps < 1:
            raise ValueError("steps must be at least 1.")
        if mode not in (HOLOMORPHIC, FORMAL):
            raise ValueError(f"Unknown mode {mode!r}.")
        ctx = self.ctx
        center = to_mpc(ctx, center)
        if mode == HOLOMORPHIC and not domain.contains(complex(center)):
            raise ValueError("The center must lie in the domain.")
        transcript = ConstructionTranscript(center, self.precision, mode, (), tuple(tables))
        last_index = {}
        total = Polynomial.zero(center, self.precision)
        shift = 0
        n = 0
        for handled in schedule:
            for system in handled:
                n += 1
                try:
                    step = self._step(
                        n, system, tables[system - 1], last_index.get(system, 0),
                        domain, center, enumeration, total, shift, mode,
                    )
                except UnipadeError as e:
                    self.log("error", f"Step {n} failed: {e}")
                    e.payload = transcript
                    raise
                transcript = replace(transcript, steps=transcript.steps + (step,))
                total = total + step.block
                shift = step.p + step.t
                last_index[system] = step.k
        return transcript.series(), transcript

    def _step(self, n, system, table, after, domain, center, enumeration, total, shift, mode):
        m, j, compact, target = enumeration.entry(n)
        draft = self.draft_step(n, domain, center, compact, target, total, shift, mode)
        k = table.first_usable(after, draft.lower)
        return self.commit_step(draft, n, system, table, k, (m, j))

    def draft_step(self, n, domain, center, compact, target, total, shift, mode) -> "StepDraft":
        """Fits h_n for step n; the index is chosen by the caller."""
        ctx = self.ctx
        if isinstance(target, Polynomial):
            target = target.with_precision(self.precision)
        budget = ctx.mpf(1) / n ** 2
        k_samples = sample(compact, self.mesh)
        if compact.contains(complex(center)):
            raise PoleInRegion("K must not contain the center")
        pieces = [k_samples]
        if mode == HOLOMORPHIC:
            pieces.append(sample(inner_exhaustion(domain, n + self.exhaustion_offset), self.mesh))
        points = [ctx.mpc(z) for piece in pieces for z in piece.points]
        on_k = len(k_samples.points)

        weights = [(z - center) ** shift for z in points]
        goals = [target(z) - total(z) for z in points[:on_k]]
        values = [g / w for g, w in zip(goals, weights)] + [ctx.mpc(0)] * (len(points) - on_k)
        largest = max(abs(w) for w in weights)
        fit_budget = budget / (largest + 1)
        problem = FitProblem(
            tuple(complex(z) for z in points), tuple(values), self.fit_budget, fit_budget, self.mesh
        )
        try:
            fit = self.approximator.mergelyan_fit(problem)
        except BudgetExhausted as e:
            raise BudgetExhausted(f"Step {n}: {e.message}", payload=e.payload)

        h = fit.polynomial.recenter(center).trimmed()
        shifted = h.times_power(shift)
        lower = max(shift + h.degree, shift - 1)
        return StepDraft(target, total, shift, budget, points, on_k, goals, h, shifted, lower, fit.degree)

    def commit_step(self, draft: "StepDraft", n, system, table, k, pair) -> ConstructionStep:
        """Places c_n (z - zeta)^p at the chosen index and checks the step error."""
        ctx = self.ctx
        p = table.p_at(k)
        t = 1 + table.max_q(k)
        if p <= draft.lower:
            raise ValueError(f"Index {k} has p = {p}, at most the accumulated degree {draft.lower}.")
        points, on_k, shifted, total = draft.points, draft.on_k, draft.shifted, draft.total
        center = total.center

        residuals = [g - shifted(z) for g, z in zip(draft.goals, points)] + [
            -shifted(z) for z in points[on_k:]
        ]
        fit_error = max(abs(r) for r in residuals)
        powers = [abs(z - center) ** p for z in points]
        slack = draft.budget - fit_error
        reach = max(powers)
        c = slack / (2 * reach)
        # c in the variable (z - zeta) / R, R the farthest sample: at least 2^-(precision/4)
        floor = ctx.ldexp(ctx.mpf(1), -(self.precision // 4))
        window = [abs(shifted.coefficient(i) + total.coefficient(i)) for i in range(max(0, p - t), p)]
        # the Hankel rows at p also see the window
        relative = ctx.ldexp(max(window), -(self.precision // 4)) if window else ctx.mpf(0)
        if slack <= 0 or c * reach < floor or c < relative:
            raise IllConditioned(
                f"Step {n}: perturbation {ctx.nstr(c, 5)} (scaled {ctx.nstr(c * reach, 5)}) "
                f"below floor {ctx.nstr(floor, 5)} or window floor {ctx.nstr(relative, 5)}"
            )
        c = ctx.mpc(c)
        block = shifted + Polynomial.monomial(p, c, center, self.precision)
        error = max(
            [abs(draft.target(z) - total(z) - block(z)) for z in points[:on_k]]
            + [abs(block(z)) for z in points[on_k:]]
        )
        if not error < draft.budget:
            raise IllConditioned(
                f"Step {n}: error {ctx.nstr(error, 5)} not below budget {ctx.nstr(draft.budget, 5)}"
            )
        self.log(
            "info",
            f"Step {n} (system {system}): k={k} p={p} t={t} degree={draft.fit_degree} "
            f"error={ctx.nstr(error, 5)} budget={ctx.nstr(draft.budget, 5)}",
        )
        return ConstructionStep(
            n, system, k, p, t, draft.shift, pair, draft.h, block, c, draft.fit_degree,
            fit_error, error, draft.budget,
        )

    def check_transcript_invariants(self, series: PowerSeries, transcript: ConstructionTranscript) -> list:
        """
        At every recorded index: a_p is the stored pivot, the zero block after p is
        exactly zero, and [f; p/q] equals S_p for every q of the step's table.
        """
        checks = []
        for step in transcript.steps:
            table = transcript.tables[step.system - 1]
            pivot = series.coefficient(step.p) != 0
            zero_block = all(
                series.coefficient(i) == 0 for i in range(step.p + 1, step.p + step.t)
            )
            partial = series.partial_sum(step.p)
            for q in table.qs_at(step.k):
                try:
                    value = self.pade.compute_pade(series, PadeIndex(step.p, q)).value
                    gap = polynomial_gap(value, partial)
                    same = bool(gap <= self.pade.residual_tolerance * coefficient_scale(partial))
                except UnipadeError as e:
                    self.log("warning", f"Invariant check at p={step.p}, q={q}: {e}")
                    gap, same = None, False
                checks.append(InvariantCheck(step.n, step.k, step.p, q, pivot, zero_block, same, gap))
        return checks

    def check_affine_shift(self, series: PowerSeries, transcript: ConstructionTranscript, polynomial) -> list:
        """
        Invariant checks for series + P; P must stay below the first recorded block.
        """
        if not transcript.steps:
            raise ValueError("The transcript has no recorded steps.")
        if not isinstance(polynomial, Polynomial):
            polynomial = Polynomial(tuple(polynomial), series.center, series.precision)
        polynomial = polynomial.with_precision(series.precision).recenter(series.center).trimmed()
        first = transcript.steps[0].p
        if polynomial.degree >= first:
            raise ValueError(f"deg P = {polynomial.degree} reaches the first block at p = {first}.")
        return self.check_transcript_invariants(series.shifted(polynomial), transcript)


def polynomial_gap(value, polynomial: Polynomial):
    num = value.numerator
    den = value.denominator
    n = max(len(num.coeffs), len(polynomial.coeffs))
    gap = max(abs(a - b) for a, b in zip(num.padded(n), polynomial.padded(n)))
    one = [1] + [0] * (len(den.coeffs) - 1)
    return max([gap] + [abs(a - b) for a, b in zip(den.coeffs, one)])


def coefficient_scale(polynomial: Polynomial):
    return max([1] + [abs(c) for c in polynomial.coeffs])

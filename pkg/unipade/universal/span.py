"""
Depth-limited members of the span of universal series.

Level 1 is a universal build with its own enumerated targets. Every other level is
built only over indices at which the level above approximated 0 on the compact in
use, and reserves indices of its own (again approximating 0) for the level below.
The deepest level takes the enumerated targets at its indices, so S_p(g) follows
a_D times the target there while every other level contributes almost nothing.
"""
from dataclasses import dataclass, replace

from ..base import Loggable
from ..core.exceptions import DepthCapExceeded, NotInD, UnipadeError
from ..core.geometry import sample
from ..core.metrics import EUCLIDEAN, sup_distance
from ..core.pade import PadeIndex
from ..core.precision import get_context, to_mpc
from ..core.series import Polynomial, PowerSeries
from .construction import (
    HOLOMORPHIC,
    ConstructionStep,
    ConstructionTranscript,
    UniversalConstructor,
    coefficient_scale,
    polynomial_gap,
)
from .tables import QTable, TargetEnumeration

DEFAULT_DEPTH_CAP = 2

# second entry of ConstructionStep.pair on steps that approximate 0
RESERVED = 0


@dataclass(frozen=True)
class SpanStepCheck:
    n: int
    k: int
    p: int
    margin: object
    budget: object
    normal: bool
    zero_block: bool
    pade_matches: tuple

    @property
    def ok(self) -> bool:
        """
        The margin meets the budget and, where the pivot survived, every approximant
        equals the partial sum. A vanishing pivot only needs the zero block.
        """
        if not (self.margin < self.budget and self.zero_block):
            return False
        return all(self.pade_matches) if self.normal else True


@dataclass(frozen=True)
class SpanReport:
    depth: int
    coefficients: tuple
    levels: tuple
    nested: bool
    checks: tuple

    @property
    def passed(self) -> bool:
        return self.nested and all(check.ok for check in self.checks)

    @property
    def non_normal(self) -> tuple:
        """Steps where a_p(g) cancelled; S_p still satisfies the defining property there."""
        return tuple(check.n for check in self.checks if not check.normal)

    @property
    def reserved_indices(self) -> tuple:
        return tuple(reserved_indices(level) for level in self.levels)


def reserved_indices(transcript: ConstructionTranscript) -> tuple:
    """Indices at which the level approximated 0 for the level below it."""
    return tuple(step.k for step in transcript.steps if step.pair[1] == RESERVED)


def is_nested(levels) -> bool:
    """
    Each level records only indices the level above reserved, and strictly fewer
    indices than the level above.
    """
    for above, below in zip(levels, levels[1:]):
        recorded = set(below.recorded_indices)
        if not recorded <= set(reserved_indices(above)):
            return False
        if not recorded < set(above.recorded_indices):
            return False
    return True


def merge_tables(systems) -> QTable:
    """
    One table whose q-list at n is the union over the systems, so each zero block
    serves every system.
    """
    systems = list(systems)
    if not systems:
        raise ValueError("At least one system is required.")
    p = systems[0].p
    if any(table.p != p for table in systems):
        raise ValueError("Span systems must share the sequence p_n.")
    q = tuple(tuple(sorted(set().union(*(table.qs_at(n) for table in systems)))) for n in range(1, len(p) + 1))
    allowed = None
    for table in systems:
        if table.allowed is not None:
            allowed = table.allowed if allowed is None else allowed & table.allowed
    return QTable(p, q, allowed)


class _Level:
    """
    One g_l under construction. Steps are taken on demand: the level below asks for
    a reserved index, and this level first advances its own targets by one step and
    then approximates 0 on the requested compact at an index both levels can use.
    """

    def __init__(self, constructor, number, parent, domain, center, table, enumeration, mode):
        self.constructor = constructor
        self.number = number
        self.parent = parent
        self.domain = domain
        self.center = center
        self.table = table
        self.enumeration = enumeration
        self.mode = mode
        self.transcript = ConstructionTranscript(center, constructor.precision, mode, (), (table,))
        self.total = Polynomial.zero(center, constructor.precision)
        self.zero = Polynomial.zero(center, constructor.precision)
        self.shift = 0
        self.after = 0
        self.n = 0
        self.position = 0

    def advance(self) -> ConstructionStep:
        """The next enumerated target at an index of this level's own choosing."""
        self.position += 1
        m, j, compact, target = self.enumeration.entry(self.position)
        return self._step(compact, target, (m, j), 0, -1)

    def reserve(self, compact, m: int, after: int, lower: int) -> int:
        """
        An index k > after with p_k > lower at which S_p of this level approximates 0
        on compact.
        """
        self.advance()
        return self._step(compact, self.zero, (m, RESERVED), after, lower).k

    def _index(self, compact, m, after, lower) -> int:
        if self.parent is None:
            return self.table.first_usable(after, lower)
        return self.parent.reserve(compact, m, after, lower)

    def _step(self, compact, target, pair, after, lower):
        self.n += 1
        draft = self.constructor.draft_step(
            self.n, self.domain, self.center, compact, target, self.total, self.shift, self.mode
        )
        k = self._index(compact, pair[0], max(after, self.after), max(lower, draft.lower))
        step = self.constructor.commit_step(draft, self.n, 1, self.table, k, pair)
        self.transcript = replace(self.transcript, steps=self.transcript.steps + (step,))
        self.total = self.total + step.block
        self.shift = step.p + step.t
        self.after = k
        return step


class SpanBuilder(Loggable):
    def __init__(self, constructor: UniversalConstructor, depth_cap: int = DEFAULT_DEPTH_CAP, logger=None):
        if depth_cap < 1:
            raise ValueError("Depth cap must be at least 1.")
        self.constructor = constructor
        self.depth_cap = depth_cap
        self.logger = logger

    def set_logger(self, logger) -> None:
        self.logger = logger
        self.constructor.set_logger(logger)

    @property
    def precision(self) -> int:
        return self.constructor.precision

    def build_span_member(
        self,
        domain,
        center,
        systems,
        enumeration: TargetEnumeration,
        steps: int,
        coefficients,
        mode: str = HOLOMORPHIC,
    ):
        """
        Returns (g, SpanReport) for g = sum a_l g_l with D = len(coefficients).

        The deepest level runs `steps` target steps; each of them pulls one target
        step and one reserved step from every level above it.

        Raises:
            DepthCapExceeded: D above the configured cap.
            BudgetExhausted / IllConditioned / NoUsableIndex with the level transcripts
            of the completed steps as payload.
        """
        ctx = get_context(self.precision)
        coefficients = tuple(to_mpc(ctx, a) for a in coefficients)
        depth = len(coefficients)
        if depth < 1:
            raise ValueError("At least one span coefficient is required.")
        if depth > self.depth_cap:
            raise DepthCapExceeded(f"Depth {depth} exceeds the cap {self.depth_cap}")
        if any(a == 0 for a in coefficients):
            raise ValueError("Span coefficients must be nonzero.")
        if steps < 1:
            raise ValueError("steps must be at least 1.")
        table = merge_tables(systems)
        center = to_mpc(ctx, center)
        if mode == HOLOMORPHIC and not domain.contains(complex(center)):
            raise ValueError("The center must lie in the domain.")

        levels = []
        for number in range(1, depth + 1):
            parent = levels[-1] if levels else None
            levels.append(
                _Level(self.constructor, number, parent, domain, center, table, enumeration, mode)
            )
        deepest = levels[-1]
        for n in range(1, steps + 1):
            try:
                deepest.advance()
            except UnipadeError as e:
                self.log("error", f"Span step {n} failed: {e}")
                e.payload = tuple(level.transcript for level in levels)
                raise

        transcripts = tuple(level.transcript for level in levels)
        order = max(transcript.order for transcript in transcripts)
        series = [transcript.series().coeffs for transcript in transcripts]
        g = PowerSeries(
            tuple(
                sum(
                    (a * coeffs[i] for a, coeffs in zip(coefficients, series) if i < len(coeffs)),
                    ctx.mpc(0),
                )
                for i in range(order + 1)
            ),
            center,
            self.precision,
        )
        nested = is_nested(transcripts)
        checks = tuple(self._check(g, transcripts[-1], coefficients, enumeration, table))
        report = SpanReport(depth, coefficients, transcripts, nested, checks)
        self.log(
            "info" if report.passed else "warning",
            f"Span of depth {depth} over {steps} steps: passed={report.passed}, "
            f"steps per level={[len(t.steps) for t in transcripts]}, "
            f"non-normal steps={list(report.non_normal)}",
        )
        return g, report

    def _check(self, g: PowerSeries, deepest: ConstructionTranscript, coefficients, enumeration, table):
        """
        Per step: sup_K |S_p(g) - a_D f_j| against sum |a_l| / n^2, the zero block,
        and [g; p/q] = S_p(g) wherever a_p(g) is nonzero.
        """
        ctx = get_context(self.precision)
        pade = self.constructor.pade
        weight = sum(abs(a) for a in coefficients)
        for step in deepest.steps:
            _, _, compact, target = enumeration.entry(step.n)
            partial = g.partial_sum(step.p)
            goal = target.with_precision(self.precision).scale(coefficients[-1])
            margin = sup_distance(
                partial, goal, sample(compact, self.constructor.mesh), EUCLIDEAN, self.precision
            ).value
            normal = g.coefficient(step.p) != 0
            zero_block = all(g.coefficient(i) == 0 for i in range(step.p + 1, step.p + step.t))
            matches = []
            for q in table.qs_at(step.k):
                try:
                    value = pade.compute_pade(g, PadeIndex(step.p, q)).value
                    gap = polynomial_gap(value, partial)
                    matches.append(bool(gap <= pade.residual_tolerance * coefficient_scale(partial)))
                except NotInD:
                    matches.append(False)
                except UnipadeError as e:
                    self.log("warning", f"Span check at p={step.p}, q={q}: {e}")
                    matches.append(False)
            yield SpanStepCheck(
                step.n, step.k, step.p, margin, weight * step.budget, bool(normal), zero_block, tuple(matches)
            )
            if not normal:
                self.log("warning", f"a_p(g) vanishes at p = {step.p}; S_p is not a normal approximant there")
            else:
                self.log("debug", f"Span step {step.n}: margin {ctx.nstr(margin, 5)}")

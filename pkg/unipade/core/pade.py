"""
Padé approximants: Hankel existence tests, the linear-solve path, the Jacobi
determinant cross-check and the classification of rational functions.
"""
from dataclasses import dataclass

from ..base import Loggable
from ..default.orchestrator import map_sequential
from .exceptions import (
    CapExceeded,
    CenterOnPole,
    IllConditioned,
    NotCoprime,
    NotInD,
    UnipadeError,
)
from .precision import DEFAULT_PRECISION, get_context, to_mpc, working_tolerance
from .series import Polynomial, PowerSeries, RationalFunction


@dataclass(frozen=True)
class PadeIndex:
    p: int
    q: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not isinstance(self.q, int):
            raise ValueError("Padé indices must be integers.")
        if self.p < 0 or self.q < 0:
            raise ValueError("Padé indices must be nonnegative.")

    @property
    def span(self) -> int:
        return self.p + self.q


@dataclass(frozen=True)
class MembershipReport:
    index: PadeIndex
    member: bool
    determinant: object
    magnitude: object
    threshold: object
    row_scale: object


@dataclass(frozen=True)
class PadeResult:
    index: PadeIndex
    center: object
    value: RationalFunction
    hankel: object
    residual: object
    precision: int


@dataclass(frozen=True)
class JacobiReport:
    index: PadeIndex
    deviation: object
    relative_deviation: object
    tolerance: object
    passed: bool
    jacobi_value: RationalFunction


@dataclass(frozen=True)
class ClassificationVerdict:
    """
    Outcome of the degree-pattern classification of a coprime rational function.

    regime is one of "exact", "numerator_side", "denominator_side", "non_member" or
    "unclassified" (indices below the true degrees, where no pattern is asserted).
    """

    index: PadeIndex
    p0: int
    q0: int
    regime: str
    member: bool
    membership: MembershipReport
    identity_holds: bool
    identity_residual: object


@dataclass(frozen=True)
class CenterOutcome:
    center: object
    result: PadeResult = None
    error: str = None

    @property
    def ok(self) -> bool:
        return self.result is not None


@dataclass(frozen=True)
class NormalityEntry:
    p: int
    q: int
    member: bool
    magnitude: object
    threshold: object


class PadeEngine(Loggable):
    """
    Computes [f; p/q] for truncated power series.

    The linear-solve path is authoritative; the determinant formulas are only a
    cross-check. `is_in_D` decides existence before any solve: the q x q Hankel
    determinant is compared against tol_D times the Hadamard bound (product of the
    Euclidean row norms), which keeps the test invariant under row scaling.

    Args:
        precision (int): Working precision in bits.
        tol_D: Singularity tolerance, default 2^-(precision/2).
        residual_tolerance: Bound on the defining-property residual relative to the
            coefficient scale, default 2^-(precision/2).
        jacobi_tolerance: Relative bound for the determinant cross-check.
        jacobi_q_cap (int): Largest q accepted by the determinant path.
        orchestrator: Optional pool used by the batch operations.
    """

    def __init__(
        self,
        precision: int = DEFAULT_PRECISION,
        tol_D=None,
        residual_tolerance=None,
        jacobi_tolerance=None,
        jacobi_q_cap: int = 6,
        orchestrator=None,
        logger=None,
    ):
        self.precision = precision
        ctx = get_context(precision)
        half = ctx.ldexp(ctx.mpf(1), -(precision // 2))
        self.tol_D = ctx.mpf(tol_D) if tol_D is not None else half
        self.residual_tolerance = (
            ctx.mpf(residual_tolerance) if residual_tolerance is not None else half
        )
        self.jacobi_tolerance = (
            ctx.mpf(jacobi_tolerance)
            if jacobi_tolerance is not None
            else ctx.ldexp(ctx.mpf(1), -int(0.4 * precision))
        )
        self.jacobi_q_cap = jacobi_q_cap
        self.orchestrator = orchestrator
        self.logger = logger

    @property
    def ctx(self):
        return get_context(self.precision)

    def _series(self, f: PowerSeries) -> PowerSeries:
        if f.precision == self.precision:
            return f
        return PowerSeries(f.coeffs, f.center, self.precision)

    def _map(self, func, items):
        if self.orchestrator is not None:
            return self.orchestrator.map_ordered(func, items)
        return map_sequential(func, items)

    def hankel_matrix(self, f: PowerSeries, idx: PadeIndex):
        f = self._series(f)
        f.coefficient(idx.p + idx.q)
        p, q = idx.p, idx.q
        return self.ctx.matrix(
            [[f.coefficient(p - q + 1 + i + j) for j in range(q)] for i in range(q)]
        )

    def hankel_determinant(self, f: PowerSeries, idx: PadeIndex):
        """
        D_{p,q}: rows (a_{p-q+1..p}), ..., (a_{p..p+q-1}); 1 for q = 0.
        """
        ctx = self.ctx
        if idx.q == 0:
            self._series(f).coefficient(idx.p)
            return ctx.mpc(1)
        return ctx.mpc(ctx.det(self.hankel_matrix(f, idx)))

    def is_in_D(self, f: PowerSeries, idx: PadeIndex) -> MembershipReport:
        ctx = self.ctx
        determinant = self.hankel_determinant(f, idx)
        if idx.q == 0:
            one = ctx.mpf(1)
            return MembershipReport(idx, True, determinant, one, ctx.mpf(0), one)
        matrix = self.hankel_matrix(f, idx)
        row_scale = ctx.mpf(1)
        for i in range(idx.q):
            row_scale *= ctx.sqrt(sum(abs(matrix[i, j]) ** 2 for j in range(idx.q)))
        magnitude = abs(determinant)
        threshold = self.tol_D * row_scale
        member = row_scale > 0 and magnitude > threshold
        return MembershipReport(idx, bool(member), determinant, magnitude, threshold, row_scale)

    def compute_pade(self, f: PowerSeries, idx: PadeIndex) -> PadeResult:
        """
        Solves for B with B(center) = 1, then convolves for A.

        Raises:
            NotInD: the Hankel determinant vanishes within tolerance.
            IllConditioned: the re-expansion of A/B misses the defining property.
        """
        ctx = self.ctx
        f = self._series(f)
        report = self.is_in_D(f, idx)
        if not report.member:
            raise NotInD(
                f"|D_{{{idx.p},{idx.q}}}| = {ctx.nstr(report.magnitude, 5)} "
                f"<= {ctx.nstr(report.threshold, 5)}"
            )
        p, q = idx.p, idx.q
        a = [f.coefficient(k) for k in range(p + q + 1)]
        b = [ctx.mpc(1)]
        if q:
            system = ctx.matrix(
                [[f.coefficient(p + 1 + r - i) for i in range(1, q + 1)] for r in range(q)]
            )
            rhs = ctx.matrix([-a[p + 1 + r] for r in range(q)])
            try:
                solution = ctx.lu_solve(system, rhs)
            except ZeroDivisionError as e:
                raise NotInD(f"Singular Toeplitz system: {e}")
            b += [ctx.mpc(solution[i]) for i in range(q)]
        numerator = [
            sum((b[i] * a[k - i] for i in range(min(k, q) + 1)), ctx.mpc(0))
            for k in range(p + 1)
        ]
        value = RationalFunction(
            Polynomial(tuple(numerator), f.center, self.precision),
            Polynomial(tuple(b), f.center, self.precision),
        )
        expansion = value.taylor(f.center, p + q)
        residual = max(abs(x - y) for x, y in zip(a, expansion.coeffs))
        scale = max([ctx.mpf(1)] + [abs(x) for x in a])
        if residual > self.residual_tolerance * scale:
            raise IllConditioned(
                f"Padé residual {ctx.nstr(residual, 5)} at (p, q) = ({p}, {q})",
                payload=value,
            )
        return PadeResult(idx, f.center, value, report.determinant, residual, self.precision)

    def jacobi_value(self, f: PowerSeries, idx: PadeIndex) -> RationalFunction:
        """
        A and B from the (q+1) x (q+1) determinant formulas, normalized by B(center).
        """
        ctx = self.ctx
        f = self._series(f)
        p, q = idx.p, idx.q
        rows = [[f.coefficient(p - q + r + c) for c in range(q + 1)] for r in range(1, q + 1)]
        num = Polynomial.zero(f.center, self.precision)
        den = Polynomial.zero(f.center, self.precision)
        for c in range(q + 1):
            if q:
                minor = ctx.det(ctx.matrix([row[:c] + row[c + 1 :] for row in rows]))
            else:
                minor = ctx.mpf(1)
            weight = ctx.mpc(minor) * (-1) ** c
            power = Polynomial.monomial(q - c, weight, f.center, self.precision)
            den = den + power
            if p - q + c >= 0:
                num = num + power * f.partial_sum(p - q + c)
        b0 = den.coeffs[0]
        if b0 == 0:
            raise NotInD("Jacobi denominator vanishes at the center")
        return RationalFunction(num.scale(1 / b0), den.scale(1 / b0))

    def jacobi_cross_check(self, f: PowerSeries, idx: PadeIndex) -> JacobiReport:
        if idx.q > self.jacobi_q_cap:
            raise CapExceeded(f"q = {idx.q} exceeds the Jacobi cap {self.jacobi_q_cap}")
        ctx = self.ctx
        solved = self.compute_pade(f, idx).value
        jacobi = self.jacobi_value(f, idx)
        deviation = ctx.mpf(0)
        scale = ctx.mpf(0)
        for x, y in ((solved.numerator, jacobi.numerator), (solved.denominator, jacobi.denominator)):
            n = max(len(x.coeffs), len(y.coeffs))
            for u, v in zip(x.padded(n), y.padded(n)):
                deviation = max(deviation, abs(u - v))
                scale = max(scale, abs(u))
        relative = deviation / scale if scale else deviation
        return JacobiReport(
            idx, deviation, relative, self.jacobi_tolerance,
            bool(relative < self.jacobi_tolerance), jacobi,
        )

    def classify_rational(self, r: RationalFunction, center, p: int, q: int) -> ClassificationVerdict:
        """
        Predicts membership of a coprime A/B in D_{p,q} from (p0, q0) = (deg A, deg B).

        Members: (p0, q0) itself, (p, q0) for p >= p0 and (p0, q) for q >= q0; in those
        cases [r; p/q] must reproduce r, which is verified on the Taylor expansion.
        For p > p0 and q > q0 the determinant vanishes.
        """
        ctx = self.ctx
        idx = PadeIndex(p, q)
        if not r.is_coprime():
            raise NotCoprime()
        center = to_mpc(ctx, center)
        denominator = r.denominator.trimmed()
        if abs(denominator(center)) <= working_tolerance(self.precision) * denominator.magnitude_at(center):
            raise CenterOnPole(f"Denominator vanishes at {ctx.nstr(center, 8)}")
        p0, q0 = r.degrees
        p0 = max(p0, 0)
        if p == p0 and q == q0:
            regime = "exact"
        elif q == q0 and p > p0:
            regime = "numerator_side"
        elif p == p0 and q > q0:
            regime = "denominator_side"
        elif p > p0 and q > q0:
            regime = "non_member"
        else:
            regime = "unclassified"
        series = r.taylor(center, p + q)
        membership = self.is_in_D(series, idx)
        predicted = regime in ("exact", "numerator_side", "denominator_side")
        identity_holds = False
        identity_residual = None
        if predicted:
            try:
                value = self.compute_pade(series, idx).value
                target = r.normalized_at(center)
                identity_residual = _coefficient_gap(value, target)
                identity_holds = bool(
                    identity_residual <= self.residual_tolerance * _coefficient_scale(target)
                )
            except UnipadeError as e:
                self.log("warning", f"Identity check failed at {idx}: {e}")
        member = membership.member if regime == "unclassified" else predicted
        if regime != "unclassified" and member != membership.member:
            self.log(
                "warning",
                f"Determinant test disagrees with degree pattern at {idx}: "
                f"|D| = {ctx.nstr(membership.magnitude, 5)}",
            )
        return ClassificationVerdict(
            idx, p0, q0, regime, member, membership, identity_holds, identity_residual
        )

    def pade_over_centers(self, source, centers, idx: PadeIndex) -> list:
        """
        [source; p/q] at every center; per-center failures are recorded, not raised.

        source is a Polynomial, a RationalFunction or any object with
        `taylor(center, order) -> PowerSeries`.
        """

        def at_center(center):
            try:
                series = source.taylor(center, idx.span)
                return CenterOutcome(center, result=self.compute_pade(series, idx))
            except UnipadeError as e:
                self.log("error", f"Padé at center {center}: {e}")
                return CenterOutcome(center, error=type(e).__name__)

        return self._map(at_center, [to_mpc(self.ctx, c) for c in centers])

    def normality_table(self, f: PowerSeries, p_max: int, q_max: int) -> list:
        """The C-table of D-membership verdicts for 0 <= p <= p_max, 0 <= q <= q_max."""
        pairs = [PadeIndex(p, q) for p in range(p_max + 1) for q in range(q_max + 1)]

        def entry(idx):
            report = self.is_in_D(f, idx)
            return NormalityEntry(idx.p, idx.q, report.member, report.magnitude, report.threshold)

        return self._map(entry, pairs)


def _coefficient_gap(x: RationalFunction, y: RationalFunction):
    gap = 0
    for u, v in ((x.numerator, y.numerator), (x.denominator, y.denominator)):
        n = max(len(u.coeffs), len(v.coeffs))
        gap = max([gap] + [abs(a - b) for a, b in zip(u.padded(n), v.padded(n))])
    return gap


def _coefficient_scale(r: RationalFunction):
    return max(
        [1] + [abs(c) for c in r.numerator.coeffs] + [abs(c) for c in r.denominator.coeffs]
    )

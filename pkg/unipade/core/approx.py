"""
Constructive polynomial and pole-constrained rational approximation on sampled
compacts, plus principal-part extraction.

Fits are discrete least squares on the samples, solved by column-incremental modified
Gram-Schmidt (with one reorthogonalization pass) on the scaled basis ((z - c)/rho)^j,
where c and rho describe the bounding disk of the samples. The degree escalates from 0
and stops at the first degree whose true sampled sup residual meets the target.
"""
from dataclasses import dataclass, field

from ..base import Loggable
from .exceptions import BudgetExhausted, PoleInRegion, RankDeficient, RootFindingFailed
from .geometry import sample
from .precision import CONSTRUCTOR_PRECISION, get_context, to_mpc
from .series import Polynomial, RationalFunction, polynomial_from_roots


@dataclass(frozen=True)
class FitProblem:
    """
    Sampled target values with a degree budget and a target sup error.

    check_points/check_values form an optional finer mesh used for a post-hoc sup
    estimate off the fitting samples.
    """

    points: tuple
    values: tuple
    degree_budget: int
    target_error: object
    mesh: float = None
    basis: str = "scaled"
    basis_center: complex = None
    check_points: tuple = field(default=(), compare=False)
    check_values: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(complex(z) for z in self.points))
        object.__setattr__(self, "values", tuple(self.values))
        if not self.points:
            raise ValueError("A fit problem needs at least one sample.")
        if len(self.points) != len(self.values):
            raise ValueError("Points and values must have the same length.")
        if len(self.check_points) != len(self.check_values):
            raise ValueError("Check points and check values must have the same length.")
        if not isinstance(self.degree_budget, int) or self.degree_budget < 0:
            raise ValueError("Degree budget must be a nonnegative integer.")
        if not self.target_error > 0:
            raise ValueError("Target error must be positive.")
        if self.basis not in ("scaled", "monomial"):
            raise ValueError(f"Unknown basis {self.basis!r}.")

    @classmethod
    def piecewise(cls, pieces, mesh: float, degree_budget: int, target_error, check: bool = True, **kwargs):
        """
        Builds a problem from (compact, target) pairs; targets are callables z -> value.
        """
        points, values, check_points, check_values = [], [], [], []
        for spec, target in pieces:
            for z in sample(spec, mesh).points:
                points.append(z)
                values.append(target(z))
            if check:
                for z in sample(spec, mesh / 2).points:
                    check_points.append(z)
                    check_values.append(target(z))
        return cls(
            tuple(points), tuple(values), degree_budget, target_error, mesh,
            check_points=tuple(check_points), check_values=tuple(check_values), **kwargs,
        )


@dataclass(frozen=True)
class FitResult:
    value: object
    polynomial: Polynomial
    achieved_error: object
    degree: int
    condition_estimate: object
    n_samples: int
    pole_terms: tuple = ()
    check_error: object = None

    def __call__(self, z):
        return self.value(z)


@dataclass(frozen=True)
class Pole:
    location: object
    multiplicity: int


class ConstructiveApproximator(Loggable):
    """
    Least-squares stand-in for the Mergelyan and Runge approximation steps.

    Args:
        precision (int): Working precision in bits, 256 by default.
        oversampling (int): Minimum ratio of samples to basis columns; budgets are
            capped (with a warning) so the ratio always holds.
    """

    def __init__(self, precision: int = CONSTRUCTOR_PRECISION, oversampling: int = 4, logger=None):
        if oversampling < 1:
            raise ValueError("Oversampling must be at least 1.")
        self.precision = precision
        self.oversampling = oversampling
        self.logger = logger

    @property
    def ctx(self):
        return get_context(self.precision)

    def mergelyan_fit(self, problem: FitProblem) -> FitResult:
        return self._fit(problem, ())

    def runge_rational_fit(self, problem: FitProblem, template=()) -> FitResult:
        """
        Fit in the mixed basis of scaled monomials and (z - pole)^-j for every template
        pole up to its multiplicity.
        """
        poles = [t if isinstance(t, Pole) else Pole(*t) for t in template]
        margin = problem.mesh or 0.0
        for pole in poles:
            location = complex(pole.location)
            nearest = min(abs(location - z) for z in problem.points)
            if nearest <= margin:
                raise PoleInRegion(f"Template pole {location} within {margin} of the samples")
        return self._fit(problem, poles)

    def _basis_frame(self, problem: FitProblem):
        ctx = self.ctx
        if problem.basis == "monomial":
            return to_mpc(ctx, problem.basis_center or 0), ctx.mpf(1)
        xs = [z.real for z in problem.points]
        ys = [z.imag for z in problem.points]
        center = complex((min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2)
        if problem.basis_center is not None:
            center = complex(problem.basis_center)
        radius = max(abs(z - center) for z in problem.points)
        return to_mpc(ctx, center), ctx.mpf(radius if radius > 0 else 1)

    def _fit(self, problem: FitProblem, poles) -> FitResult:
        ctx = self.ctx
        if len(set(problem.points)) != len(problem.points):
            raise ValueError("Sample points must be distinct.")
        points = [ctx.mpc(z) for z in problem.points]
        target = [to_mpc(ctx, v) for v in problem.values]
        goal = ctx.mpf(problem.target_error)
        center, radius = self._basis_frame(problem)

        pole_columns = []
        for pole in poles:
            location = to_mpc(ctx, pole.location)
            scale = ctx.mpf(min(abs(location - z) for z in points))
            for power in range(1, pole.multiplicity + 1):
                pole_columns.append((location, power, scale))

        max_columns = len(points) // self.oversampling
        budget = min(problem.degree_budget, max_columns - len(pole_columns) - 1)
        if budget < 0:
            raise RankDeficient(
                f"{len(points)} samples cannot support {len(pole_columns) + 1} columns "
                f"at oversampling {self.oversampling}"
            )
        if budget < problem.degree_budget:
            self.log(
                "warning",
                f"Degree budget capped from {problem.degree_budget} to {budget} by {len(points)} samples.",
            )

        scaled = [(z - center) / radius for z in points]
        basis = _GramSchmidt(ctx, target)
        for location, power, scale in pole_columns:
            basis.add([(scale / (z - location)) ** power for z in points])

        best = None
        column = [ctx.mpc(1)] * len(points)
        for degree in range(budget + 1):
            if degree:
                column = [c * w for c, w in zip(column, scaled)]
            basis.add(column)
            estimate = max(abs(r) for r in basis.residual)
            self.log("debug", f"Fit degree {degree}: estimated sup residual {ctx.nstr(estimate, 5)}")
            result = self._assemble(problem, basis, pole_columns, center, radius, degree, points, target)
            if best is None or result.achieved_error < best.achieved_error:
                best = result
            if result.achieved_error <= goal:
                return self._checked(problem, result)
        raise BudgetExhausted(
            f"Best sup error {ctx.nstr(best.achieved_error, 5)} > target {ctx.nstr(goal, 5)} "
            f"within degree {budget}",
            payload=self._checked(problem, best),
        )

    def _assemble(self, problem, basis, pole_columns, center, radius, degree, points, target) -> FitResult:
        ctx = self.ctx
        x = basis.solve()
        offset = len(pole_columns)
        polynomial = Polynomial(
            tuple(x[offset + j] / radius ** j for j in range(degree + 1)), center, self.precision
        )
        terms = tuple(
            (location, power, x[i] * scale ** power)
            for i, (location, power, scale) in enumerate(pole_columns)
        )
        value = polynomial if not terms else _with_poles(polynomial, terms, self.precision)
        achieved = max(abs(value(z) - t) for z, t in zip(points, target))
        return FitResult(
            value, polynomial, achieved, degree, basis.condition_estimate(), len(points), terms
        )

    def _checked(self, problem: FitProblem, result: FitResult) -> FitResult:
        if not problem.check_points:
            return result
        ctx = self.ctx
        check = max(
            abs(result.value(ctx.mpc(z)) - to_mpc(ctx, v))
            for z, v in zip(problem.check_points, problem.check_values)
        )
        if check > result.achieved_error:
            self.log(
                "debug",
                f"Fine-mesh sup {ctx.nstr(check, 5)} exceeds sampled sup {ctx.nstr(result.achieved_error, 5)}",
            )
        return FitResult(
            result.value, result.polynomial, result.achieved_error, result.degree,
            result.condition_estimate, result.n_samples, result.pole_terms, check,
        )

    def principal_parts(self, r: RationalFunction, region) -> RationalFunction:
        """
        Sum of the principal parts of r at its poles inside region.
        """
        ctx = get_context(r.precision)
        poles = [p for p in locate_poles(r) if region.contains(complex(p.location))]
        center = r.denominator.center
        if not poles:
            return RationalFunction(
                Polynomial.zero(center, r.precision), Polynomial((1,), center, r.precision), coprime=True
            )
        numerator = Polynomial.zero(center, r.precision)
        for pole in poles:
            quotient = r.denominator.trimmed()
            for _ in range(pole.multiplicity):
                quotient = quotient.deflate(pole.location)
            m = pole.multiplicity
            local = RationalFunction(r.numerator, quotient).taylor(pole.location, m - 1)
            # c_{-j} = local_{m-j}; the principal part over (z - pole)^m
            part = Polynomial(local.coeffs[:m], pole.location, r.precision).recenter(center)
            others = polynomial_from_roots(
                [q.location for q in poles if q is not pole for _ in range(q.multiplicity)],
                center=center, precision=r.precision,
            )
            numerator = numerator + part * others
            self.log(
                "debug",
                f"Principal part at {ctx.nstr(pole.location, 8)} of order {m}",
            )
        denominator = polynomial_from_roots(
            [p.location for p in poles for _ in range(p.multiplicity)],
            center=center, precision=r.precision,
        )
        return RationalFunction(numerator, denominator)


class _GramSchmidt:
    """
    Incremental modified Gram-Schmidt with reorthogonalization; keeps the running
    least-squares residual of the target.
    """

    def __init__(self, ctx, target):
        self.ctx = ctx
        self.q = []
        self.r = []
        self.y = []
        self.residual = list(target)

    def _dot(self, u, v):
        return self.ctx.fdot(v, u, conjugate=True)

    def _norm(self, v):
        return self.ctx.sqrt(self.ctx.fdot(v, v, conjugate=True).real)

    def add(self, column):
        ctx = self.ctx
        v = list(column)
        original = self._norm(v)
        coefficients = [ctx.mpc(0)] * len(self.q)
        for _ in range(2):
            for i, q in enumerate(self.q):
                h = self._dot(q, v)
                coefficients[i] += h
                v = [a - h * b for a, b in zip(v, q)]
        norm = self._norm(v)
        if original == 0 or norm <= ctx.ldexp(original, -(ctx.prec // 2)):
            raise RankDeficient(f"Basis column {len(self.q)} is dependent on the samples")
        q = [a / norm for a in v]
        self.q.append(q)
        self.r.append(coefficients + [norm])
        projection = self._dot(q, self.residual)
        self.y.append(projection)
        self.residual = [a - projection * b for a, b in zip(self.residual, q)]

    def solve(self) -> list:
        n = len(self.q)
        x = [self.ctx.mpc(0)] * n
        for j in range(n - 1, -1, -1):
            acc = self.y[j]
            for k in range(j + 1, n):
                acc -= self.r[k][j] * x[k]
            x[j] = acc / self.r[j][j]
        return x

    def condition_estimate(self):
        diagonal = [abs(col[-1]) for col in self.r]
        return max(diagonal) / min(diagonal)


def _with_poles(polynomial: Polynomial, terms, precision: int) -> RationalFunction:
    """P + sum c (z - pole)^-j over a common denominator."""
    center = polynomial.center
    orders = {}
    for location, power, _ in terms:
        orders[location] = max(orders.get(location, 0), power)
    roots = [loc for loc, m in orders.items() for _ in range(m)]
    denominator = polynomial_from_roots(roots, center=center, precision=precision)
    numerator = polynomial * denominator
    for location, power, coefficient in terms:
        cofactor = polynomial_from_roots(
            [loc for loc, m in orders.items() for _ in range(m - (power if loc == location else 0))],
            center=center, precision=precision,
        )
        numerator = numerator + cofactor.scale(coefficient)
    return RationalFunction(numerator, denominator)


def locate_poles(r: RationalFunction) -> list:
    """
    Denominator roots with multiplicities, clustered at 2^-(precision/4).
    """
    ctx = get_context(r.precision)
    denominator = r.denominator.trimmed()
    if denominator.degree <= 0:
        return []
    try:
        roots = ctx.polyroots(
            list(reversed(denominator.coeffs)), maxsteps=200, extraprec=r.precision
        )
    except ctx.NoConvergence as e:
        raise RootFindingFailed(str(e))
    if not isinstance(roots, (list, tuple)):
        roots = [roots]
    tolerance = ctx.ldexp(ctx.mpf(1), -(r.precision // 4))
    clusters = []
    for root in roots:
        location = ctx.mpc(root) + denominator.center
        for cluster in clusters:
            if abs(cluster[0] - location) <= tolerance * max(1, abs(location)):
                cluster.append(location)
                break
        else:
            clusters.append([location])
    return [Pole(sum(c, ctx.mpc(0)) / len(c), len(c)) for c in clusters]

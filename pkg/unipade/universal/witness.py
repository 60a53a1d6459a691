"""
Explicit witnesses placing a polynomial or rational function inside a prescribed
approximation-and-normality set.

Each generator fits the piecewise target, perturbs the fit by a small monomial term
so that the degree pattern forces D-membership at the chosen index, and measures the
approximation margins and the Padé identities at a sample of centers.
"""
from dataclasses import dataclass, field

from ..base import Loggable
from ..core.approx import ConstructiveApproximator, FitProblem
from ..core.exceptions import InvalidPerturbation, UnipadeError
from ..core.geometry import sample
from ..core.metrics import CHORDAL, EUCLIDEAN, sup_distance
from ..core.pade import PadeEngine, PadeIndex
from ..core.precision import CONSTRUCTOR_PRECISION, get_context, to_mpc
from ..core.series import Polynomial, RationalFunction
from .tables import QSideTable, QTable

TYPE1 = "type1"
TYPE1_QSIDE = "type1_qside"
TYPE2 = "type2"


@dataclass(frozen=True)
class MembershipCheck:
    center: object
    p: int
    q: int
    regime: str
    member: bool
    identity_holds: bool


@dataclass(frozen=True)
class WitnessReport:
    """
    A witness with its perturbation d, the chosen table index k with its (p, q)
    lists, and the measured margins. `passed` requires every margin strictly below
    the threshold 1/s, every membership check to hold and, for the q-side witness, the
    denominator roots to stay outside the samples (positive pole margin).
    """

    kind: str
    witness: object
    d: object
    k: int
    ps: tuple
    qs: tuple
    t: int
    threshold: object
    epsilon: object
    fit_degree: int
    margins: dict = field(default_factory=dict, compare=False)
    memberships: tuple = ()
    pole_margin: object = None
    sups: dict = field(default_factory=dict, compare=False)

    @property
    def members(self) -> bool:
        return bool(self.memberships) and all(m.member and m.identity_holds for m in self.memberships)

    @property
    def passed(self) -> bool:
        if self.pole_margin is not None and not self.pole_margin > 0:
            return False
        return self.members and all(
            value is not None and value < self.threshold for value in self.margins.values()
        )


class WitnessGenerator(Loggable):
    """
    Args:
        precision (int): Working precision in bits.
        mesh (float): Sampling mesh for K and L.
        fit_budget (int): Degree budget of the piecewise fit.
        center_count (int): Number of expansion centers sampled from L.
        origin: The point about which perturbation monomials are taken.
    """

    def __init__(
        self,
        precision: int = CONSTRUCTOR_PRECISION,
        mesh: float = 0.02,
        fit_budget: int = 60,
        center_count: int = 4,
        origin=0,
        approximator: ConstructiveApproximator = None,
        pade: PadeEngine = None,
        logger=None,
    ):
        if not mesh > 0:
            raise ValueError("Mesh must be positive.")
        if center_count < 1:
            raise ValueError("At least one center is required.")
        self.precision = precision
        self.mesh = mesh
        self.fit_budget = fit_budget
        self.center_count = center_count
        self.origin = origin
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

    def type1_witness(self, g, K, h, L, table: QTable, s: int, epsilon, perturbation=None) -> WitnessReport:
        """
        u = P + d z^p with P fitting h on K and g on L to epsilon/2 and p the first
        usable table entry above deg P.
        """
        ctx = self.ctx
        epsilon = self._check_epsilon(epsilon, s)
        fit = self._fit([(K, h), (L, g)], epsilon)
        P = fit.polynomial.recenter(self.origin).trimmed()
        k = table.first_usable(0, P.degree)
        p = table.p_at(k)
        samples = self._union(K, L)
        if perturbation is None:
            d = (epsilon / 2) / self._sup_power(samples, p) / 2
        else:
            d = self._nonzero(perturbation)
        u = P + Polynomial.monomial(p, d, P.center, self.precision)
        self.log("info", f"Type I witness: deg P = {P.degree}, k = {k}, p = {p}, d = {ctx.nstr(d, 5)}")

        witness = RationalFunction.from_polynomial(u)
        sups = {
            "approximation_K": sup_distance(u, h, sample(K, self.mesh), EUCLIDEAN, self.precision),
            "approximation_L": sup_distance(u, g, sample(L, self.mesh), EUCLIDEAN, self.precision),
        }
        checks = self._pade_checks(witness, u, [(p, q) for q in table.qs_at(k)], L, K, h, EUCLIDEAN, sups)
        margins = {name: report.value if report else None for name, report in sups.items()}
        report = WitnessReport(
            TYPE1, u, d, k, (p,), table.qs_at(k), None, ctx.mpf(1) / s, epsilon, fit.degree,
            margins, tuple(checks), sups=sups,
        )
        if u.degree != p:
            self.log("warning", f"Witness degree {u.degree} differs from p = {p}")
        return self._logged(report)

    def type1_witness_qside(
        self, g, K, h, L, table: QSideTable, s: int, epsilon, perturbation=None
    ) -> WitnessReport:
        """
        u = P / (1 + d z^q) with one q per index and p-lists whose minimum is at
        least deg P.
        """
        ctx = self.ctx
        epsilon = self._check_epsilon(epsilon, s)
        fit = self._fit([(K, h), (L, g)], epsilon)
        P = fit.polynomial.recenter(self.origin).trimmed()
        k = table.first_usable(P.degree - 1)
        q = table.q_at(k)
        if q < 1:
            raise ValueError("The swapped table needs q >= 1 at the chosen index.")
        samples = self._union(K, L)
        if perturbation is None:
            largest = max(abs(P(ctx.mpc(z))) for z in samples.points)
            d = (epsilon / 2) / (self._sup_power(samples, q) * (largest + epsilon / 2)) / 2
        else:
            d = self._nonzero(perturbation)
        denominator = Polynomial((1,), P.center, self.precision) + Polynomial.monomial(
            q, d, P.center, self.precision
        )
        u = RationalFunction(P, denominator, coprime=True)
        reach = max(abs(ctx.mpc(z) - P.center) for z in samples.points)
        pole_margin = ctx.root(1 / abs(ctx.mpc(d)), q) - reach
        self.log("info", f"Type I (q-side) witness: k = {k}, q = {q}, d = {ctx.nstr(d, 5)}")

        sups = {
            "approximation_K": sup_distance(u, h, sample(K, self.mesh), EUCLIDEAN, self.precision),
            "approximation_L": sup_distance(u, g, sample(L, self.mesh), EUCLIDEAN, self.precision),
        }
        checks = self._pade_checks(u, u, [(p, q) for p in table.ps_at(k)], L, K, h, EUCLIDEAN, sups)
        margins = {name: report.value if report else None for name, report in sups.items()}
        report = WitnessReport(
            TYPE1_QSIDE, u, d, k, table.ps_at(k), (q,), None, ctx.mpf(1) / s, epsilon, fit.degree,
            margins, tuple(checks), pole_margin, sups,
        )
        if not pole_margin > 0:
            self.log("warning", f"Denominator root within the samples: margin {ctx.nstr(pole_margin, 5)}")
        return self._logged(report)

    def type2_witness(
        self, phi, h: RationalFunction, K, L, table: QTable, s: int, epsilon, perturbation=None, poles=()
    ) -> WitnessReport:
        """
        W = (A + d z^t B) / B where A/B is the principal part of h on K plus a fit of
        the remainder, and p_k = t + deg B is the numerator degree.
        """
        ctx = self.ctx
        if isinstance(h, Polynomial):
            h = RationalFunction.from_polynomial(h)
        epsilon = self._check_epsilon(epsilon, s)
        mu = self.approximator.principal_parts(h, K)

        def remainder_K(z):
            return h(z) - mu(z)

        def remainder_L(z):
            return phi(z) - mu(z)

        problem = FitProblem.piecewise(
            [(K, remainder_K), (L, remainder_L)], self.mesh, self.fit_budget, epsilon / 2
        )
        fit = self.approximator.runge_rational_fit(problem, poles)
        combined = mu + fit.value
        A = combined.numerator.recenter(self.origin).trimmed()
        B = combined.denominator.recenter(self.origin).trimmed()
        k = table.first_usable(0, max(A.degree, B.degree), min_q_above=B.degree)
        p = table.p_at(k)
        t = p - B.degree
        samples = self._union(K, L)
        if perturbation is None:
            d = (epsilon / 2) / self._sup_power(samples, t) / 2
        else:
            d = self._nonzero(perturbation)
        numerator = A + (B * Polynomial.monomial(t, d, B.center, self.precision))
        W = RationalFunction(numerator, B, coprime=True)
        self.log(
            "info",
            f"Type II witness: deg A = {A.degree}, deg B = {B.degree}, k = {k}, t = {t}, d = {ctx.nstr(d, 5)}",
        )

        sups = {
            "chordal_K": sup_distance(W, h, sample(K, self.mesh, interior=True), CHORDAL, self.precision),
            "approximation_L": sup_distance(W, phi, sample(L, self.mesh), EUCLIDEAN, self.precision),
        }
        checks = self._pade_checks(W, W, [(p, q) for q in table.qs_at(k)], L, K, h, CHORDAL, sups)
        margins = {name: report.value if report else None for name, report in sups.items()}
        report = WitnessReport(
            TYPE2, W, d, k, (p,), table.qs_at(k), t, ctx.mpf(1) / s, epsilon, fit.degree,
            margins, tuple(checks), sups=sups,
        )
        if numerator.degree != p:
            self.log("warning", f"Numerator degree {numerator.degree} differs from p = {p}")
        return self._logged(report)

    def _check_epsilon(self, epsilon, s: int):
        if s < 1:
            raise ValueError("s must be a positive integer.")
        epsilon = self.ctx.mpf(epsilon)
        if not 0 < epsilon < self.ctx.mpf(1) / s:
            raise ValueError("epsilon must lie in (0, 1/s).")
        return epsilon

    def _nonzero(self, d):
        d = to_mpc(self.ctx, d)
        if d == 0:
            raise InvalidPerturbation()
        return d

    def _fit(self, pieces, epsilon):
        problem = FitProblem.piecewise(pieces, self.mesh, self.fit_budget, epsilon / 2)
        return self.approximator.mergelyan_fit(problem)

    def _union(self, K, L):
        return sample(K, self.mesh).union(sample(L, self.mesh))

    def _sup_power(self, samples, power: int):
        ctx = self.ctx
        origin = to_mpc(ctx, self.origin)
        largest = max(abs(ctx.mpc(z) - origin) for z in samples.points) ** power
        return largest if largest > 0 else ctx.mpf(1)

    def _centers(self, L) -> list:
        points = sample(L, self.mesh).points
        step = max(1, len(points) // self.center_count)
        centers = list(points[::step][: self.center_count])
        origin = complex(self.origin)
        if L.contains(origin) and origin not in centers:
            centers.insert(0, origin)
        return centers

    def _pade_checks(self, witness, comparand, indices, L, K, h, metric, sups) -> list:
        """
        Membership and identity at every center and index, plus the worst sup reports
        of the approximants against h on K and against the witness on L.
        """
        k_samples = sample(K, self.mesh, interior=metric == CHORDAL)
        l_samples = sample(L, self.mesh)
        checks = []
        worst_K, worst_L = None, None
        for center in self._centers(L):
            for p, q in indices:
                try:
                    verdict = self.pade.classify_rational(witness, center, p, q)
                    value = self.pade.compute_pade(witness.taylor(center, p + q), PadeIndex(p, q)).value
                    on_K = sup_distance(value, h, k_samples, metric, self.precision)
                    on_L = sup_distance(value, comparand, l_samples, EUCLIDEAN, self.precision)
                    if worst_K is None or on_K.value > worst_K.value:
                        worst_K = on_K
                    if worst_L is None or on_L.value > worst_L.value:
                        worst_L = on_L
                    checks.append(
                        MembershipCheck(center, p, q, verdict.regime, verdict.member, verdict.identity_holds)
                    )
                except UnipadeError as e:
                    self.log("error", f"Check at center {center}, ({p}, {q}): {e}")
                    checks.append(MembershipCheck(center, p, q, type(e).__name__, False, False))
        sups["pade_K"] = worst_K
        sups["pade_L"] = worst_L
        return checks

    def _logged(self, report: WitnessReport) -> WitnessReport:
        ctx = self.ctx
        summary = ", ".join(
            f"{name}={ctx.nstr(value, 5) if value is not None else None}" for name, value in report.margins.items()
        )
        level = "info" if report.passed else "warning"
        self.log(level, f"{report.kind} witness at k = {report.k}: {summary}")
        return report

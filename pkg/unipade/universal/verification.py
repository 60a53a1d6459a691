"""
Search for table indices at which a series meets the approximation conditions.
"""
from dataclasses import dataclass

from ..base import Loggable
from ..core.exceptions import InfiniteValue, TruncationExceeded, UnipadeError
from ..core.metrics import CHORDAL, EUCLIDEAN, SupReport, sup_distance
from ..core.pade import PadeEngine, PadeIndex
from ..core.precision import get_context, to_mpc
from ..core.series import PowerSeries, recenter
from .tables import QTable


@dataclass(frozen=True)
class QMargin:
    q: int
    member: bool
    margin_K: object
    margin_L: object
    sup_K: SupReport = None
    sup_L: SupReport = None


@dataclass(frozen=True)
class UniversalityVerdict:
    found: bool
    n: int
    p: int
    threshold: object
    margins: tuple
    searched: int
    metric: str = EUCLIDEAN

    @property
    def max_margin_K(self):
        return max((m.margin_K for m in self.margins if m.margin_K is not None), default=None)

    @property
    def max_margin_L(self):
        return max((m.margin_L for m in self.margins if m.margin_L is not None), default=None)


class UniversalityVerifier(Loggable):
    """
    Checks, index by index, that every [f; p_n/q_j] exists, is within 1/s of the
    target on K and within 1/s of f on the check compact.

    The search returns the first qualifying index; exhaustion of the prefix is a
    verdict, not an error.
    """

    def __init__(self, pade: PadeEngine, logger=None):
        self.pade = pade
        self.logger = logger

    @property
    def precision(self) -> int:
        return self.pade.precision

    def verify_universality(
        self,
        f: PowerSeries,
        table: QTable,
        K,
        h,
        L_check,
        s: int,
        centers=None,
        candidates=None,
    ) -> UniversalityVerdict:
        return self._search(f, table, K, h, L_check, s, centers, candidates, EUCLIDEAN)

    def verify_type2(
        self,
        f: PowerSeries,
        table: QTable,
        K,
        h,
        L_check,
        s: int,
        centers=None,
        candidates=None,
    ) -> UniversalityVerdict:
        """The rational-target variant: chordal distance to h on K."""
        return self._search(f, table, K, h, L_check, s, centers, candidates, CHORDAL)

    def _expansions(self, f: PowerSeries, centers):
        if not centers:
            return [f]
        ctx = get_context(self.precision)
        out = []
        for c in centers:
            c = to_mpc(ctx, c)
            out.append(f if c == f.center else recenter(f, c, f.order))
        return out

    def _search(self, f, table, K, h, L_check, s, centers, candidates, metric) -> UniversalityVerdict:
        if s < 1:
            raise ValueError("s must be a positive integer.")
        ctx = get_context(self.precision)
        threshold = ctx.mpf(1) / s
        expansions = self._expansions(f, centers)
        indices = candidates if candidates is not None else range(1, table.length + 1)
        searched = 0
        for n in indices:
            if not table.is_allowed(n):
                continue
            p = table.p_at(n)
            if p + table.max_q(n) > f.order:
                continue
            searched += 1
            margins = self._margins(expansions, f, table, n, K, h, L_check, metric)
            if all(m.member and m.margin_K < threshold and m.margin_L < threshold for m in margins):
                self.log("info", f"Index n={n} (p={p}) meets 1/{s} for every q.")
                return UniversalityVerdict(True, n, p, threshold, tuple(margins), searched, metric)
        self.log("info", f"No index in {searched} candidates meets 1/{s}.")
        return UniversalityVerdict(False, None, None, threshold, (), searched, metric)

    def _margins(self, expansions, f, table, n, K, h, L_check, metric) -> list:
        p = table.p_at(n)
        reference = f.as_polynomial()
        margins = []
        for q in table.qs_at(n):
            worst_K, worst_L, member = None, None, True
            for series in expansions:
                try:
                    value = self.pade.compute_pade(series, PadeIndex(p, q)).value
                    on_K = sup_distance(value, h, K, metric, self.precision)
                    on_L = sup_distance(value, reference, L_check, EUCLIDEAN, self.precision)
                except (InfiniteValue, TruncationExceeded, UnipadeError) as e:
                    self.log("debug", f"n={n}, q={q}: {e}")
                    member = False
                    break
                if worst_K is None or on_K.value > worst_K.value:
                    worst_K = on_K
                if worst_L is None or on_L.value > worst_L.value:
                    worst_L = on_L
            margins.append(
                QMargin(
                    q,
                    member,
                    worst_K.value if worst_K else None,
                    worst_L.value if worst_L else None,
                    worst_K,
                    worst_L,
                )
            )
            if not member:
                break
        return margins

"""
Chordal metric on the extended plane, the coefficient-space metrics rho_c and rho_d,
and supremum estimates over sampled compacts.
"""
from dataclasses import dataclass

from .approx import locate_poles
from .exceptions import InfiniteValue, LengthMismatch, PoleInRegion
from .extended import INFINITY, is_infinite, reciprocal
from .precision import DEFAULT_PRECISION, get_context, to_mpc

EUCLIDEAN = "euclidean"
CHORDAL = "chordal"


@dataclass(frozen=True)
class SupReport:
    value: object
    witness: object
    witness_index: int
    metric: str
    n_samples: int
    mesh: float

    def as_row(self) -> dict:
        w = complex(self.witness)
        return {
            "metric": self.metric,
            "value": float(self.value),
            "witness_re": w.real,
            "witness_im": w.imag,
            "n_samples": self.n_samples,
            "mesh": self.mesh,
        }


@dataclass(frozen=True)
class CoefficientDistance:
    value: object
    length: int
    tail_bound: object


def _point(ctx, value):
    return value if is_infinite(value) else to_mpc(ctx, value)


def chordal(a, b, precision: int = DEFAULT_PRECISION):
    """
    |a-b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)), with 1/sqrt(1+|a|^2) against infinity.
    """
    ctx = get_context(precision)
    a, b = _point(ctx, a), _point(ctx, b)
    if is_infinite(a) or is_infinite(b):
        # z -> 1/z is an isometry of the chordal metric
        a, b = reciprocal(ctx, a), reciprocal(ctx, b)
        if is_infinite(a) or is_infinite(b):
            return ctx.mpf(1)
    return abs(a - b) / (ctx.sqrt(1 + abs(a) ** 2) * ctx.sqrt(1 + abs(b) ** 2))


def euclidean(a, b, precision: int = DEFAULT_PRECISION):
    ctx = get_context(precision)
    if is_infinite(a) or is_infinite(b):
        raise InfiniteValue()
    return abs(to_mpc(ctx, a) - to_mpc(ctx, b))


def sup_distance(f, g, samples, metric: str = EUCLIDEAN, precision: int = DEFAULT_PRECISION) -> SupReport:
    """
    Max over the samples of the pointwise distance; ties keep the lowest index.

    f and g are callables returning finite values or INFINITY.
    """
    if metric not in (EUCLIDEAN, CHORDAL):
        raise ValueError(f"Unknown metric {metric!r}.")
    points = samples.points
    if not points:
        raise ValueError("Sample set is empty.")
    distance = chordal if metric == CHORDAL else euclidean
    best, best_index = None, 0
    for i, z in enumerate(points):
        d = distance(f(z), g(z), precision)
        if best is None or d > best:
            best, best_index = d, i
    return SupReport(best, points[best_index], best_index, metric, len(points), samples.mesh)


def _check_lengths(a, b):
    if len(a) != len(b):
        raise LengthMismatch(f"{len(a)} != {len(b)}")


def rho_c(a, b, precision: int = DEFAULT_PRECISION) -> CoefficientDistance:
    """
    sum_n 2^-n |a_n - b_n| / (1 + |a_n - b_n|) over the stored range; the unseen
    tail contributes at most 2^-(len-1).
    """
    _check_lengths(a, b)
    ctx = get_context(precision)
    total = ctx.mpf(0)
    for n, (x, y) in enumerate(zip(a, b)):
        d = abs(to_mpc(ctx, x) - to_mpc(ctx, y))
        total += ctx.ldexp(d / (1 + d), -n)
    return CoefficientDistance(total, len(a), ctx.ldexp(ctx.mpf(1), -len(a) + 1))


def rho_d(a, b, precision: int = DEFAULT_PRECISION) -> CoefficientDistance:
    """2^-n0 at the first index of exact disagreement, 0 if none in the stored range."""
    _check_lengths(a, b)
    ctx = get_context(precision)
    for n, (x, y) in enumerate(zip(a, b)):
        if to_mpc(ctx, x) != to_mpc(ctx, y):
            return CoefficientDistance(ctx.ldexp(ctx.mpf(1), -n), len(a), ctx.mpf(0))
    return CoefficientDistance(ctx.mpf(0), len(a), ctx.ldexp(ctx.mpf(1), -len(a)))


def derivative_seminorm_gap(r, f, l: int, samples, precision: int = DEFAULT_PRECISION) -> SupReport:
    """
    sup over samples of |r^(l) - f^(l)|; r must be pole-free on the sampled region.
    """
    region = getattr(samples, "spec", None)
    for pole in locate_poles(r):
        location = complex(pole.location)
        inside = region.contains(location) if region is not None else False
        near = any(abs(location - z) <= samples.mesh for z in samples.points)
        if inside or near:
            raise PoleInRegion(f"Pole at {location} within the sampled region")
    return sup_distance(r.derivative(l), f.derivative(l), samples, EUCLIDEAN, precision)


__all__ = [
    "INFINITY",
    "SupReport",
    "CoefficientDistance",
    "chordal",
    "euclidean",
    "sup_distance",
    "rho_c",
    "rho_d",
    "derivative_seminorm_gap",
]

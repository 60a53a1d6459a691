"""
Truncated power series, polynomials and rational functions at a configurable precision.

All values are immutable; coefficients are stored as mpmath complex numbers of the
context matching `precision` (see `core.precision`). Polynomials are kept in the
monomial basis about an explicit center, i.e. p(z) = sum a_i (z - center)^i.
"""
from dataclasses import dataclass, field

from .exceptions import (
    CenterOnPole,
    NotCoprime,
    TruncationExceeded,
    ZeroDenominator,
)
from .extended import INFINITY, is_infinite
from .precision import (
    DEFAULT_PRECISION,
    get_context,
    is_finite,
    to_mpc,
    zero_threshold,
)


def _coerce(ctx, coeffs):
    values = tuple(to_mpc(ctx, c) for c in coeffs)
    if not values:
        values = (ctx.mpc(0),)
    for value in values:
        if not is_finite(ctx, value):
            raise ValueError("Coefficients must be finite.")
    return values


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple
    center: object = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        ctx = get_context(self.precision)
        object.__setattr__(self, "coeffs", _coerce(ctx, self.coeffs))
        object.__setattr__(self, "center", to_mpc(ctx, self.center))

    @property
    def ctx(self):
        return get_context(self.precision)

    @classmethod
    def zero(cls, center=0, precision=DEFAULT_PRECISION) -> "Polynomial":
        return cls((0,), center, precision)

    @classmethod
    def monomial(cls, power: int, coefficient=1, center=0, precision=DEFAULT_PRECISION):
        """coefficient * (z - center)^power"""
        if power < 0:
            raise ValueError("Monomial power must be nonnegative.")
        return cls((0,) * power + (coefficient,), center, precision)

    @property
    def degree(self) -> int:
        """
        Index of the last coefficient above the relative zero-threshold; -1 for zero.
        """
        magnitudes = [abs(c) for c in self.coeffs]
        top = max(magnitudes)
        if top == 0:
            return -1
        cutoff = zero_threshold(self.precision) * top
        for i in range(len(magnitudes) - 1, -1, -1):
            if magnitudes[i] > cutoff:
                return i
        return -1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def coefficient(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.ctx.mpc(0)

    def trimmed(self) -> "Polynomial":
        """Drops trailing coefficients below the zero-threshold."""
        return Polynomial(self.coeffs[: max(self.degree, 0) + 1], self.center, self.precision)

    def padded(self, length: int) -> tuple:
        return self.coeffs + (self.ctx.mpc(0),) * max(0, length - len(self.coeffs))

    def __call__(self, z):
        if is_infinite(z):
            return INFINITY if self.degree >= 1 else self.coeffs[0]
        ctx = self.ctx
        w = to_mpc(ctx, z) - self.center
        value = ctx.mpc(0)
        for c in reversed(self.coeffs):
            value = value * w + c
        return value

    def magnitude_at(self, z):
        """sum |a_i| |z - center|^i, the scale used for cancellation checks."""
        ctx = self.ctx
        r = abs(to_mpc(ctx, z) - self.center)
        total = ctx.mpf(0)
        for c in reversed(self.coeffs):
            total = total * r + abs(c)
        return total

    def _aligned(self, other: "Polynomial") -> "Polynomial":
        if other.center == self.center:
            return other
        return other.recenter(self.center)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + Polynomial((other,), self.center, self.precision)
        other = self._aligned(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a, b = self.padded(n), other.padded(n)
        return Polynomial(
            tuple(x + y for x, y in zip(a, b)),
            self.center,
            max(self.precision, other.precision),
        )

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs), self.center, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._aligned(other)
        precision = max(self.precision, other.precision)
        ctx = get_context(precision)
        out = [ctx.mpc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return Polynomial(tuple(out), self.center, precision)

    __rmul__ = __mul__

    def scale(self, factor) -> "Polynomial":
        factor = to_mpc(self.ctx, factor)
        return Polynomial(tuple(factor * c for c in self.coeffs), self.center, self.precision)

    def times_power(self, k: int) -> "Polynomial":
        """Multiplies by (z - center)^k without touching the stored values."""
        if k < 0:
            raise ValueError("Shift must be nonnegative.")
        return Polynomial((0,) * k + self.coeffs, self.center, self.precision)

    def derivative(self, l: int = 1) -> "Polynomial":
        if l < 0:
            raise ValueError("Derivative order must be nonnegative.")
        coeffs = list(self.coeffs)
        for _ in range(l):
            if len(coeffs) <= 1:
                return Polynomial.zero(self.center, self.precision)
            coeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
        return Polynomial(tuple(coeffs), self.center, self.precision)

    def antiderivative(self) -> "Polynomial":
        """The antiderivative vanishing at the center."""
        coeffs = (0,) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs))
        return Polynomial(coeffs, self.center, self.precision)

    def recenter(self, new_center, order: int = None) -> "Polynomial":
        """
        Exact Taylor shift (repeated synthetic division) to a new center.
        """
        ctx = self.ctx
        new_center = to_mpc(ctx, new_center)
        delta = new_center - self.center
        a = list(self.coeffs)
        n = len(a) - 1
        if delta != 0:
            for i in range(n):
                for j in range(n - 1, i - 1, -1):
                    a[j] += delta * a[j + 1]
        if order is not None:
            a = a[: order + 1] + [ctx.mpc(0)] * max(0, order + 1 - len(a))
        return Polynomial(tuple(a), new_center, self.precision)

    def deflate(self, root) -> "Polynomial":
        """Quotient of division by (z - root); the remainder is discarded."""
        ctx = self.ctx
        r = to_mpc(ctx, root) - self.center
        a = self.coeffs[: max(self.degree, 0) + 1]
        if len(a) == 1:
            return Polynomial.zero(self.center, self.precision)
        quotient = [ctx.mpc(0)] * (len(a) - 1)
        carry = ctx.mpc(0)
        for i in range(len(a) - 1, 0, -1):
            carry = a[i] + r * carry
            quotient[i - 1] = carry
        return Polynomial(tuple(quotient), self.center, self.precision)

    def taylor(self, center, order: int) -> "PowerSeries":
        shifted = self.recenter(center, order)
        return PowerSeries(shifted.coeffs, shifted.center, self.precision)

    def with_precision(self, precision: int) -> "Polynomial":
        return Polynomial(self.coeffs, self.center, precision)


@dataclass(frozen=True)
class PowerSeries:
    """
    A formal power series known through a finite truncation order.

    Indices beyond the stored order are unknown, never implicitly zero.
    """

    coeffs: tuple
    center: object = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        ctx = get_context(self.precision)
        if not self.coeffs:
            raise ValueError("A power series needs at least one coefficient.")
        object.__setattr__(self, "coeffs", _coerce(ctx, self.coeffs))
        object.__setattr__(self, "center", to_mpc(ctx, self.center))

    @property
    def ctx(self):
        return get_context(self.precision)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        if k < 0:
            return self.ctx.mpc(0)
        if k > self.order:
            raise TruncationExceeded(
                f"Coefficient a_{k} requested, series known through order {self.order}"
            )
        return self.coeffs[k]

    def partial_sum(self, k: int) -> Polynomial:
        if k < 0:
            return Polynomial.zero(self.center, self.precision)
        if k > self.order:
            raise TruncationExceeded(
                f"Partial sum S_{k} requested, series known through order {self.order}"
            )
        return Polynomial(self.coeffs[: k + 1], self.center, self.precision)

    def as_polynomial(self) -> Polynomial:
        return self.partial_sum(self.order)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise TruncationExceeded(f"Cannot extend a series of order {self.order}")
        return PowerSeries(self.coeffs[: order + 1], self.center, self.precision)

    def __call__(self, z):
        return self.as_polynomial()(z)

    def shifted(self, polynomial: Polynomial) -> "PowerSeries":
        """f + P for a polynomial P of degree at most the truncation order."""
        if polynomial.center != self.center:
            polynomial = polynomial.recenter(self.center)
        if polynomial.degree > self.order:
            raise TruncationExceeded("Polynomial degree exceeds the truncation order")
        extra = polynomial.padded(len(self.coeffs))[: len(self.coeffs)]
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coeffs, extra)), self.center, self.precision
        )

    def scaled(self, factor) -> "PowerSeries":
        factor = to_mpc(self.ctx, factor)
        return PowerSeries(tuple(factor * a for a in self.coeffs), self.center, self.precision)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        if other.center != self.center:
            raise ValueError("Series must share a center to be added.")
        n = min(len(self.coeffs), len(other.coeffs))
        return PowerSeries(
            tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])),
            self.center,
            max(self.precision, other.precision),
        )


@dataclass(frozen=True)
class RationalFunction:
    numerator: Polynomial
    denominator: Polynomial
    coprime: bool = field(default=False)

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ZeroDenominator()
        if self.numerator.center != self.denominator.center:
            object.__setattr__(
                self, "numerator", self.numerator.recenter(self.denominator.center)
            )
        if self.coprime and not self.is_coprime():
            raise NotCoprime(f"|resultant| = {self.ctx.nstr(abs(self.resultant()), 5)}")

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, Polynomial((1,), p.center, p.precision), coprime=True)

    @property
    def precision(self) -> int:
        return max(self.numerator.precision, self.denominator.precision)

    @property
    def ctx(self):
        return get_context(self.precision)

    @property
    def center(self):
        return self.denominator.center

    @property
    def degrees(self) -> tuple:
        return self.numerator.degree, self.denominator.degree

    def __call__(self, z):
        if is_infinite(z):
            p0, q0 = self.degrees
            if p0 > q0:
                return INFINITY
            if p0 < q0:
                return self.ctx.mpc(0)
            return self.numerator.coeffs[p0] / self.denominator.coeffs[q0]
        den = self.denominator(z)
        scale = self.denominator.magnitude_at(z)
        if abs(den) <= self.ctx.ldexp(scale, -(self.precision - 4)):
            return INFINITY
        return self.numerator(z) / den

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction.from_polynomial(other)
        if self.denominator.degree <= 0 and other.denominator.degree <= 0:
            num = self.numerator.scale(1 / self.denominator.coeffs[0]) + other.numerator.scale(
                1 / other.denominator.coeffs[0]
            )
            return RationalFunction(num, Polynomial((1,), num.center, num.precision))
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalFunction(num, self.denominator * other.denominator)

    def derivative(self, l: int = 1) -> "RationalFunction":
        """Quotient rule applied l times; no cancellation is attempted."""
        if l < 0:
            raise ValueError("Derivative order must be nonnegative.")
        result = self
        for _ in range(l):
            n, d = result.numerator, result.denominator
            result = RationalFunction(
                n.derivative() * d - n * d.derivative(), (d * d).trimmed()
            )
        return result

    def taylor(self, center, order: int) -> PowerSeries:
        """Taylor coefficients about `center` through `order` by series division."""
        ctx = self.ctx
        num = self.numerator.recenter(center, order)
        den = self.denominator.trimmed().recenter(center)
        b = den.coeffs
        scale = max(abs(c) for c in b)
        if abs(b[0]) <= zero_threshold(self.precision) * scale:
            raise CenterOnPole(f"Denominator vanishes at {ctx.nstr(den.center, 8)}")
        out = []
        for k in range(order + 1):
            acc = num.coeffs[k]
            for i in range(1, min(k, len(b) - 1) + 1):
                acc -= b[i] * out[k - i]
            out.append(acc / b[0])
        return PowerSeries(tuple(out), den.center, self.precision)

    def normalized_at(self, center) -> "RationalFunction":
        """Recenters both polynomials and scales so the denominator is 1 at center."""
        num = self.numerator.recenter(center)
        den = self.denominator.recenter(center)
        b0 = den.coeffs[0]
        if b0 == 0:
            raise CenterOnPole()
        return RationalFunction(num.scale(1 / b0), den.scale(1 / b0), self.coprime)

    def resultant(self):
        """Resultant of the max-normalized numerator and denominator."""
        return resultant(self.numerator, self.denominator)

    def is_coprime(self) -> bool:
        return abs(self.resultant()) > zero_threshold(self.precision)


def _normalized_trimmed(p: Polynomial):
    p = p.trimmed()
    top = max(abs(c) for c in p.coeffs)
    if top == 0:
        return p
    return p.scale(1 / top)


def resultant(a: Polynomial, b: Polynomial):
    """
    Sylvester resultant of a and b after scaling each to unit max coefficient.

    The resultant is invariant under translation, so both are expressed about b's center.
    """
    precision = max(a.precision, b.precision)
    ctx = get_context(precision)
    a = _normalized_trimmed(a.recenter(b.center))
    b = _normalized_trimmed(b)
    if a.is_zero or b.is_zero:
        # gcd(0, c) = 1 only for a nonzero constant partner
        other = b if a.is_zero else a
        return ctx.mpc(1) if not other.is_zero and other.degree == 0 else ctx.mpc(0)
    m, n = a.degree, b.degree
    if m == 0:
        return a.coeffs[0] ** n
    if n == 0:
        return b.coeffs[0] ** m
    size = m + n
    rows = []
    high_a = list(reversed(a.coeffs[: m + 1]))
    high_b = list(reversed(b.coeffs[: n + 1]))
    for i in range(n):
        rows.append([0] * i + high_a + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + high_b + [0] * (size - n - 1 - i))
    return ctx.mpc(ctx.det(ctx.matrix(rows)))


def partial_sum(f: PowerSeries, k: int) -> Polynomial:
    return f.partial_sum(k)


def evaluate(obj, z):
    """Horner evaluation of a polynomial, rational function or series prefix."""
    return obj(z)


def recenter(f, new_center, order: int):
    """
    Re-expands f about new_center through `order`.

    Exact for polynomials. A truncated PowerSeries is re-expanded from its stored
    prefix, so the result carries the prefix's truncation error; `order` may not exceed
    the stored order.
    """
    if isinstance(f, PowerSeries):
        if order > f.order:
            raise TruncationExceeded(f"Order {order} exceeds stored order {f.order}")
        shifted = f.as_polynomial().recenter(new_center, order)
        return PowerSeries(shifted.coeffs, shifted.center, f.precision)
    if isinstance(f, Polynomial):
        return f.taylor(new_center, order)
    if isinstance(f, RationalFunction):
        return f.taylor(new_center, order)
    raise TypeError(f"Cannot recenter {type(f).__name__}")


def derivative(p: Polynomial, l: int) -> Polynomial:
    return p.derivative(l)


def polynomial_from_roots(roots, leading=1, center=0, precision=DEFAULT_PRECISION):
    result = Polynomial((leading,), center, precision)
    for root in roots:
        result = result * Polynomial(
            (to_mpc(get_context(precision), center) - to_mpc(get_context(precision), root), 1),
            center,
            precision,
        )
    return result


def exp_series(order: int, center=0, precision=DEFAULT_PRECISION) -> PowerSeries:
    ctx = get_context(precision)
    scale = ctx.exp(to_mpc(ctx, center))
    return PowerSeries(
        tuple(scale / ctx.factorial(k) for k in range(order + 1)), center, precision
    )


def geometric_series(order: int, center=0, precision=DEFAULT_PRECISION) -> PowerSeries:
    """1/(1-z) about center; the center must not be 1."""
    ctx = get_context(precision)
    w = 1 - to_mpc(ctx, center)
    if w == 0:
        raise CenterOnPole()
    return PowerSeries(tuple(1 / w ** (k + 1) for k in range(order + 1)), center, precision)

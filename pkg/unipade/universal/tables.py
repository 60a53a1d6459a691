"""
Index tables, target enumerations and multi-system schedules.

Table indices n are 1-based throughout, matching step numbering in transcripts.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..core.exceptions import EnumerationExhausted, NoUsableIndex
from ..core.series import Polynomial

REPEAT = "repeat"
SINGLE = "single"


@dataclass(frozen=True)
class QTable:
    """
    The sequence (p_n) with the per-n lists q_1^(n), ..., q_N(n)^(n).

    `allowed` optionally restricts the usable indices n.
    """

    p: tuple
    q: tuple
    allowed: frozenset = None

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        q = tuple(tuple(int(x) for x in row) for row in self.q)
        if len(p) != len(q):
            raise ValueError("p and q must have one entry per index.")
        if not p:
            raise ValueError("A table needs at least one index.")
        if any(x < 0 for x in p):
            raise ValueError("p entries must be nonnegative.")
        if any(not row for row in q):
            raise ValueError("Every index needs at least one q (N(n) >= 1).")
        if any(x < 0 for row in q for x in row):
            raise ValueError("q entries must be nonnegative.")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if self.allowed is not None:
            object.__setattr__(self, "allowed", frozenset(int(n) for n in self.allowed))

    @classmethod
    def linear(cls, length: int, qs, allowed=None) -> "QTable":
        """p_n = n with the same q-list at every n."""
        return cls(tuple(range(1, length + 1)), (tuple(qs),) * length, allowed)

    @classmethod
    def growing(cls, length: int, offsets, rate: int = 1) -> "QTable":
        """p_n = n with q-lists offset + n // rate, so min_j q_j -> infinity."""
        if rate < 1:
            raise ValueError("Rate must be positive.")
        return cls(
            tuple(range(1, length + 1)),
            tuple(tuple(o + n // rate for o in offsets) for n in range(1, length + 1)),
        )

    @property
    def length(self) -> int:
        return len(self.p)

    def p_at(self, n: int) -> int:
        return self.p[n - 1]

    def qs_at(self, n: int) -> tuple:
        return self.q[n - 1]

    def count(self, n: int) -> int:
        return len(self.q[n - 1])

    def max_q(self, n: int) -> int:
        return max(self.q[n - 1])

    def min_q(self, n: int) -> int:
        return min(self.q[n - 1])

    def is_allowed(self, n: int) -> bool:
        return 1 <= n <= self.length and (self.allowed is None or n in self.allowed)

    def restricted(self, allowed) -> "QTable":
        allowed = frozenset(allowed)
        if self.allowed is not None:
            allowed &= self.allowed
        return QTable(self.p, self.q, allowed)

    def is_growing(self) -> bool:
        """The running maximum of p increases somewhere past the first index."""
        return self.length > 1 and max(self.p[1:]) > self.p[0]

    def first_usable(self, after: int, above: int, min_q_above: int = None) -> int:
        """
        Smallest allowed n > after with p_n > above (and min_j q_j^(n) > min_q_above).
        """
        for n in range(after + 1, self.length + 1):
            if not self.is_allowed(n) or self.p_at(n) <= above:
                continue
            if min_q_above is not None and self.min_q(n) <= min_q_above:
                continue
            return n
        raise NoUsableIndex(
            f"No allowed index after {after} with p > {above} in a prefix of length {self.length}"
        )


@dataclass(frozen=True)
class QSideTable:
    """
    Roles swapped: one q_n per index and a list p_1^(n), ..., p_N(n)^(n).
    """

    q: tuple
    p: tuple

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        p = tuple(tuple(int(x) for x in row) for row in self.p)
        if len(p) != len(q) or not q:
            raise ValueError("q and p must have one entry per index.")
        if any(not row for row in p) or any(x < 0 for row in p for x in row) or any(x < 0 for x in q):
            raise ValueError("Entries must be nonnegative and every index needs a p-list.")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "p", p)

    @classmethod
    def constant_q(cls, length: int, q: int, offsets=(0, 1)) -> "QSideTable":
        """q_n = q with p-lists n + offset."""
        return cls((q,) * length, tuple(tuple(n + o for o in offsets) for n in range(1, length + 1)))

    @property
    def length(self) -> int:
        return len(self.q)

    def q_at(self, n: int) -> int:
        return self.q[n - 1]

    def ps_at(self, n: int) -> tuple:
        return self.p[n - 1]

    def first_usable(self, above: int) -> int:
        for n in range(1, self.length + 1):
            if min(self.p[n - 1]) > above:
                return n
        raise NoUsableIndex(f"No index with min p > {above} in a prefix of length {self.length}")


# Enumerations


def cantor_unpair(k: int) -> tuple:
    """Inverse of the Cantor pairing on nonnegative integers."""
    w = 0
    while (w + 1) * (w + 2) // 2 <= k:
        w += 1
    y = k - w * (w + 1) // 2
    return w - y, y


def calkin_wilf(n: int) -> Fraction:
    """The n-th positive rational of the Calkin-Wilf sequence, n >= 1."""
    q = Fraction(1)
    for _ in range(n - 1):
        q = 1 / (2 * (q.numerator // q.denominator) + 1 - q)
    return q


def rational_from_index(n: int) -> Fraction:
    """0, 1, -1, 1/2, -1/2, 2, -2, ... enumerates Q."""
    if n == 0:
        return Fraction(0)
    value = calkin_wilf((n + 1) // 2)
    return value if n % 2 else -value


@lru_cache(maxsize=4096)
def gaussian_rational_coefficients(j: int) -> tuple:
    """
    Coefficients of the j-th polynomial (j >= 1) with coefficients in Q + iQ.
    """
    degree, rest = cantor_unpair(j - 1)
    coefficients = []
    for _ in range(degree + 1):
        head, rest = cantor_unpair(rest) if rest else (0, 0)
        re_index, im_index = cantor_unpair(head)
        coefficients.append((rational_from_index(re_index), rational_from_index(im_index)))
    return tuple(coefficients)


def gaussian_rational_polynomial(j: int, center=0, precision: int = 53) -> Polynomial:
    coefficients = [complex(float(a), float(b)) for a, b in gaussian_rational_coefficients(j)]
    return Polynomial(tuple(coefficients), center, precision)


def diagonal_pairs(m_count: int = None, j_count: int = None):
    """
    Yields (m, j) in diagonal order over [1..m_count] x [1..j_count]; None means
    unbounded in that coordinate.
    """
    s = 2
    while True:
        emitted = False
        for m in range(1, s):
            j = s - m
            if m_count is not None and m > m_count:
                break
            if j_count is not None and j > j_count:
                continue
            emitted = True
            yield m, j
        if not emitted and m_count is not None and j_count is not None and s > m_count + j_count:
            return
        s += 1


@dataclass(frozen=True)
class TargetEnumeration:
    """
    Stream of (K_m, f_j) pairs.

    Pair indices follow the diagonal order of (m, j). Under the repeat policy position
    t walks the triangular sequence 1; 1, 2; 1, 2, 3; ... (capped at the number of pairs
    when it is finite), so pair i first appears by position i (i + 1) / 2 and then once
    in every later block. Under the single policy position t is pair t.

    `targets=None` streams the Gaussian-rational polynomials.
    """

    compacts: tuple
    targets: tuple = None
    policy: str = REPEAT
    precision: int = 53

    def __post_init__(self):
        if not self.compacts:
            raise ValueError("At least one compact is required.")
        if self.policy not in (REPEAT, SINGLE):
            raise ValueError(f"Unknown repetition policy {self.policy!r}.")
        object.__setattr__(self, "compacts", tuple(self.compacts))
        if self.targets is not None:
            if not self.targets:
                raise ValueError("Explicit target lists must be non-empty.")
            object.__setattr__(self, "targets", tuple(self.targets))

    @property
    def pair_count(self):
        if self.targets is None:
            return None
        return len(self.compacts) * len(self.targets)

    def pair(self, i: int) -> tuple:
        """(m, j) for pair index i >= 1."""
        j_count = None if self.targets is None else len(self.targets)
        for index, pair in enumerate(diagonal_pairs(len(self.compacts), j_count), start=1):
            if index == i:
                return pair
        raise EnumerationExhausted(f"Pair index {i} beyond {self.pair_count} pairs")

    def pair_index(self, t: int) -> int:
        if t < 1:
            raise ValueError("Positions are 1-based.")
        total = self.pair_count
        if self.policy == SINGLE:
            if total is not None and t > total:
                raise EnumerationExhausted(f"Single-pass enumeration has {total} pairs")
            return t
        block = 1
        while True:
            size = block if total is None else min(block, total)
            if t <= size:
                return t
            t -= size
            block += 1

    def window(self, i: int) -> int:
        """Prefix length guaranteed to contain pair index i."""
        return i * (i + 1) // 2

    def target(self, j: int) -> Polynomial:
        if self.targets is None:
            return gaussian_rational_polynomial(j, precision=self.precision)
        return self.targets[j - 1]

    def entry(self, t: int) -> tuple:
        """(m, j, K_m, f_j) at position t."""
        m, j = self.pair(self.pair_index(t))
        return m, j, self.compacts[m - 1], self.target(j)


def schedule_systems(count: int = None, steps: int = 1) -> list:
    """
    Systems handled at each step: round-robin for a finite count, the triangular
    pattern {1..n} at step n when count is None (countably many systems).
    """
    if steps < 1:
        raise ValueError("steps must be at least 1.")
    if count is None:
        return [tuple(range(1, n + 1)) for n in range(1, steps + 1)]
    if count < 1:
        raise ValueError("System count must be positive.")
    return [(((i - 1) % count) + 1,) for i in range(1, steps + 1)]

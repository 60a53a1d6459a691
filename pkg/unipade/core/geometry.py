"""
Parametric compacts, deterministic boundary sampling and exhaustion families.

Shapes are plain-float value objects; sampling happens in numpy and returns Python
complex points, which are exact inputs at any working precision.

Filled shapes (Disk, Rectangle, Annulus, Intersection) are sampled on their boundary,
which is where holomorphic comparands attain their maxima; `interior=True` adds a
grid of interior points for chordal comparisons that may meet poles.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exceptions import DegenerateShape, UnsupportedDomain

_EDGE = 1e-9


def _segment_points(a: complex, b: complex, mesh: float, closed: bool = True) -> np.ndarray:
    length = abs(b - a)
    count = max(1, math.ceil(length / mesh - _EDGE))
    t = np.linspace(0.0, 1.0, count + 1)
    if not closed:
        t = t[:-1]
    return a + (b - a) * t


def _circle_points(center: complex, radius: float, mesh: float) -> np.ndarray:
    count = max(3, math.ceil(2 * math.pi * radius / mesh - _EDGE))
    theta = 2 * math.pi * np.arange(count) / count
    return center + radius * np.exp(1j * theta)


def _distance_to_segment(z: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((z - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise DegenerateShape(f"Disk radius must be positive, got {self.radius}")

    filled = True

    @property
    def perimeter(self) -> float:
        return 2 * math.pi * self.radius

    def boundary(self, mesh: float) -> np.ndarray:
        return _circle_points(self.center, self.radius, mesh)

    def contains(self, z, tol: float = _EDGE) -> bool:
        return abs(complex(z) - self.center) <= self.radius + tol

    def depth(self, z) -> float:
        """Distance from z to the complement (0 outside)."""
        return max(0.0, self.radius - abs(complex(z) - self.center))

    def distance(self, z) -> float:
        return max(0.0, abs(complex(z) - self.center) - self.radius)

    def bounding_box(self):
        c, r = self.center, self.radius
        return c.real - r, c.imag - r, c.real + r, c.imag + r

    def farthest_modulus(self) -> float:
        return abs(self.center) + self.radius


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))
        if self.start == self.end:
            raise DegenerateShape("Segment endpoints must be distinct")

    filled = False

    @property
    def perimeter(self) -> float:
        return abs(self.end - self.start)

    def boundary(self, mesh: float) -> np.ndarray:
        return _segment_points(self.start, self.end, mesh)

    def contains(self, z, tol: float = _EDGE) -> bool:
        return self.distance(z) <= tol

    def depth(self, z) -> float:
        return 0.0

    def distance(self, z) -> float:
        return _distance_to_segment(complex(z), self.start, self.end)

    def bounding_box(self):
        a, b = self.start, self.end
        return min(a.real, b.real), min(a.imag, b.imag), max(a.real, b.real), max(a.imag, b.imag)

    def farthest_modulus(self) -> float:
        return max(abs(self.start), abs(self.end))


@dataclass(frozen=True)
class Path:
    """An open polygonal path through the vertices."""

    vertices: tuple

    def __post_init__(self):
        vertices = tuple(complex(v) for v in self.vertices)
        if len(vertices) < 2 or any(a == b for a, b in zip(vertices, vertices[1:])):
            raise DegenerateShape("A path needs at least two vertices and no repeated neighbours")
        object.__setattr__(self, "vertices", vertices)

    filled = False

    @property
    def edges(self):
        return list(zip(self.vertices, self.vertices[1:]))

    @property
    def perimeter(self) -> float:
        return sum(abs(b - a) for a, b in self.edges)

    def boundary(self, mesh: float) -> np.ndarray:
        pieces = [_segment_points(a, b, mesh, closed=False) for a, b in self.edges]
        pieces.append(np.array([self.vertices[-1]]))
        return np.concatenate(pieces)

    def contains(self, z, tol: float = _EDGE) -> bool:
        return self.distance(z) <= tol

    def depth(self, z) -> float:
        return 0.0

    def distance(self, z) -> float:
        z = complex(z)
        return min(_distance_to_segment(z, a, b) for a, b in self.edges)

    def bounding_box(self):
        xs = [v.real for v in self.vertices]
        ys = [v.imag for v in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    def farthest_modulus(self) -> float:
        return max(abs(v) for v in self.vertices)


@dataclass(frozen=True)
class Rectangle:
    """The closed axis-parallel rectangle with the given corners."""

    lower_left: complex
    upper_right: complex

    def __post_init__(self):
        a, b = complex(self.lower_left), complex(self.upper_right)
        if not (b.real > a.real and b.imag > a.imag):
            raise DegenerateShape("Rectangle needs upper_right strictly above and right of lower_left")
        object.__setattr__(self, "lower_left", a)
        object.__setattr__(self, "upper_right", b)

    filled = True

    @property
    def corners(self):
        a, b = self.lower_left, self.upper_right
        return (a, complex(b.real, a.imag), b, complex(a.real, b.imag))

    @property
    def perimeter(self) -> float:
        d = self.upper_right - self.lower_left
        return 2 * (d.real + d.imag)

    def boundary(self, mesh: float) -> np.ndarray:
        c = self.corners
        return np.concatenate(
            [_segment_points(c[i], c[(i + 1) % 4], mesh, closed=False) for i in range(4)]
        )

    def contains(self, z, tol: float = _EDGE) -> bool:
        z = complex(z)
        a, b = self.lower_left, self.upper_right
        return a.real - tol <= z.real <= b.real + tol and a.imag - tol <= z.imag <= b.imag + tol

    def depth(self, z) -> float:
        z = complex(z)
        if not self.contains(z, 0.0):
            return 0.0
        a, b = self.lower_left, self.upper_right
        return min(z.real - a.real, b.real - z.real, z.imag - a.imag, b.imag - z.imag)

    def distance(self, z) -> float:
        z = complex(z)
        a, b = self.lower_left, self.upper_right
        dx = max(a.real - z.real, 0.0, z.real - b.real)
        dy = max(a.imag - z.imag, 0.0, z.imag - b.imag)
        return math.hypot(dx, dy)

    def bounding_box(self):
        return self.lower_left.real, self.lower_left.imag, self.upper_right.real, self.upper_right.imag

    def farthest_modulus(self) -> float:
        return max(abs(c) for c in self.corners)


@dataclass(frozen=True)
class Annulus:
    center: complex
    inner: float
    outer: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not 0 < self.inner < self.outer:
            raise DegenerateShape("Annulus needs 0 < inner < outer")

    filled = True

    @property
    def perimeter(self) -> float:
        return 2 * math.pi * (self.inner + self.outer)

    def boundary(self, mesh: float) -> np.ndarray:
        return np.concatenate(
            [_circle_points(self.center, self.outer, mesh), _circle_points(self.center, self.inner, mesh)]
        )

    def contains(self, z, tol: float = _EDGE) -> bool:
        r = abs(complex(z) - self.center)
        return self.inner - tol <= r <= self.outer + tol

    def depth(self, z) -> float:
        r = abs(complex(z) - self.center)
        return max(0.0, min(r - self.inner, self.outer - r))

    def distance(self, z) -> float:
        r = abs(complex(z) - self.center)
        return max(0.0, self.inner - r, r - self.outer)

    def bounding_box(self):
        c, r = self.center, self.outer
        return c.real - r, c.imag - r, c.real + r, c.imag + r

    def farthest_modulus(self) -> float:
        return abs(self.center) + self.outer


@dataclass(frozen=True)
class Intersection:
    """
    Intersection of filled convex pieces; its boundary is every piece boundary point
    lying in all other pieces.
    """

    pieces: tuple

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if len(pieces) < 2 or not all(getattr(p, "filled", False) for p in pieces):
            raise DegenerateShape("An intersection needs at least two filled pieces")
        object.__setattr__(self, "pieces", pieces)

    filled = True

    @property
    def perimeter(self) -> float:
        return min(p.perimeter for p in self.pieces)

    def boundary(self, mesh: float) -> np.ndarray:
        kept = []
        for i, piece in enumerate(self.pieces):
            others = self.pieces[:i] + self.pieces[i + 1 :]
            for z in piece.boundary(mesh):
                if all(o.contains(z) for o in others):
                    kept.append(z)
        if not kept:
            raise DegenerateShape("Intersection is empty at this mesh")
        return np.array(kept)

    def contains(self, z, tol: float = _EDGE) -> bool:
        return all(p.contains(z, tol) for p in self.pieces)

    def depth(self, z) -> float:
        return min(p.depth(z) for p in self.pieces)

    def distance(self, z) -> float:
        if self.contains(z, 0.0):
            return 0.0
        return min(abs(complex(z) - complex(w)) for w in self.boundary(0.01))

    def bounding_box(self):
        boxes = [p.bounding_box() for p in self.pieces]
        return (
            max(b[0] for b in boxes), max(b[1] for b in boxes),
            min(b[2] for b in boxes), min(b[3] for b in boxes),
        )

    def farthest_modulus(self) -> float:
        return min(p.farthest_modulus() for p in self.pieces)


@dataclass(frozen=True)
class Union:
    """Finite union of pairwise-disjoint pieces, each with connected complement."""

    pieces: tuple

    def __post_init__(self):
        pieces = tuple(self.pieces)
        if not pieces:
            raise DegenerateShape("A union needs at least one piece")
        object.__setattr__(self, "pieces", pieces)

    @property
    def filled(self) -> bool:
        return any(getattr(p, "filled", False) for p in self.pieces)

    @property
    def perimeter(self) -> float:
        return sum(p.perimeter for p in self.pieces)

    def boundary(self, mesh: float) -> np.ndarray:
        return np.concatenate([p.boundary(mesh) for p in self.pieces])

    def contains(self, z, tol: float = _EDGE) -> bool:
        return any(p.contains(z, tol) for p in self.pieces)

    def depth(self, z) -> float:
        return max(p.depth(z) for p in self.pieces)

    def distance(self, z) -> float:
        return min(p.distance(z) for p in self.pieces)

    def bounding_box(self):
        boxes = [p.bounding_box() for p in self.pieces]
        return (
            min(b[0] for b in boxes), min(b[1] for b in boxes),
            max(b[2] for b in boxes), max(b[3] for b in boxes),
        )

    def farthest_modulus(self) -> float:
        return max(p.farthest_modulus() for p in self.pieces)


@dataclass(frozen=True)
class SampledSet:
    points: tuple
    mesh: float
    spec: object = field(default=None, compare=False)

    def __post_init__(self):
        if not self.mesh > 0:
            raise ValueError("Mesh must be positive.")
        object.__setattr__(self, "points", tuple(complex(z) for z in self.points))

    def __len__(self):
        return len(self.points)

    def union(self, other: "SampledSet") -> "SampledSet":
        spec = Union((self.spec, other.spec)) if self.spec and other.spec else None
        return SampledSet(self.points + other.points, max(self.mesh, other.mesh), spec)


def _interior_grid(spec, mesh: float) -> np.ndarray:
    x0, y0, x1, y1 = spec.bounding_box()
    xs = np.arange(x0, x1 + mesh / 2, mesh)
    ys = np.arange(y0, y1 + mesh / 2, mesh)
    grid = (xs[None, :] + 1j * ys[:, None]).ravel()
    return np.array([z for z in grid if spec.depth(z) > 0])


def sample(spec, mesh: float, interior: bool = False) -> SampledSet:
    """
    Deterministic equispaced boundary samples; pieces of a union are concatenated.
    """
    if not mesh > 0:
        raise ValueError("Mesh must be positive.")
    points = spec.boundary(mesh)
    if interior and spec.filled:
        grid = _interior_grid(spec, mesh)
        if len(grid):
            points = np.concatenate([points, grid])
    return SampledSet(tuple(complex(z) for z in points), mesh, spec)


# Domains


@dataclass(frozen=True)
class DiskDomain:
    """The open disk |z - center| < radius."""

    center: complex = 0j
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise DegenerateShape("Domain radius must be positive")

    def contains(self, z) -> bool:
        return abs(complex(z) - self.center) < self.radius

    def clearance(self, z) -> float:
        """Distance from z to the closure of the domain."""
        return max(0.0, abs(complex(z) - self.center) - self.radius)

    @property
    def extent(self) -> float:
        return abs(self.center) + self.radius

    def inner(self, k: int):
        return Disk(self.center, self.radius - 1 / k)


@dataclass(frozen=True)
class RectangleDomain:
    """The open rectangle with the given corners."""

    lower_left: complex
    upper_right: complex

    def __post_init__(self):
        object.__setattr__(self, "lower_left", complex(self.lower_left))
        object.__setattr__(self, "upper_right", complex(self.upper_right))
        Rectangle(self.lower_left, self.upper_right)

    def contains(self, z) -> bool:
        return Rectangle(self.lower_left, self.upper_right).depth(z) > 0

    def clearance(self, z) -> float:
        return Rectangle(self.lower_left, self.upper_right).distance(z)

    @property
    def extent(self) -> float:
        return Rectangle(self.lower_left, self.upper_right).farthest_modulus()

    def inner(self, k: int):
        margin = complex(1 / k, 1 / k)
        return Rectangle(self.lower_left + margin, self.upper_right - margin)


@dataclass(frozen=True)
class HalfDiskDomain:
    """The disk |z - center| < radius cut by the half-plane Re z > cut."""

    center: complex = 0j
    radius: float = 1.0
    cut: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not (self.radius > 0 and self.center.real - self.radius < self.cut < self.center.real + self.radius):
            raise DegenerateShape("The cut must cross the disk")

    def contains(self, z) -> bool:
        z = complex(z)
        return abs(z - self.center) < self.radius and z.real > self.cut

    def clearance(self, z) -> float:
        z = complex(z)
        if abs(z - self.center) <= self.radius and z.real >= self.cut:
            return 0.0
        h = math.sqrt(self.radius ** 2 - (self.cut - self.center.real) ** 2)
        chord = _distance_to_segment(
            z, complex(self.cut, self.center.imag - h), complex(self.cut, self.center.imag + h)
        )
        w = z - self.center
        if w != 0:
            on_circle = self.center + self.radius * w / abs(w)
            if on_circle.real >= self.cut:
                return min(chord, abs(z - on_circle))
        return chord

    @property
    def extent(self) -> float:
        return abs(self.center) + self.radius

    def inner(self, k: int):
        r = self.radius - 1 / k
        left = self.cut + 1 / k
        if not self.center.real - r < left < self.center.real + r:
            raise DegenerateShape(f"Inner compact L_{k} is empty")
        c = self.center
        box = Rectangle(complex(left, c.imag - r), complex(c.real + r, c.imag + r))
        return Intersection((Disk(c, r), box))


@dataclass(frozen=True)
class AnnulusComplementDomain:
    """The complement of the closed annulus inner <= |z - center| <= outer."""

    center: complex = 0j
    inner_radius: float = 1.0
    outer_radius: float = 2.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        Annulus(self.center, self.inner_radius, self.outer_radius)

    def contains(self, z) -> bool:
        r = abs(complex(z) - self.center)
        return r < self.inner_radius or r > self.outer_radius

    def clearance(self, z) -> float:
        r = abs(complex(z) - self.center)
        return max(0.0, min(r - self.inner_radius, self.outer_radius - r))

    @property
    def extent(self) -> float:
        return abs(self.center) + self.outer_radius

    def inner(self, k: int):
        pieces = []
        if self.inner_radius - 1 / k > 0:
            pieces.append(Disk(self.center, self.inner_radius - 1 / k))
        outer = self.outer_radius + 1 / k
        limit = k - abs(self.center)
        if limit > outer:
            pieces.append(Annulus(self.center, outer, limit))
        if not pieces:
            raise DegenerateShape(f"Inner compact L_{k} is empty")
        return pieces[0] if len(pieces) == 1 else Union(tuple(pieces))


DOMAINS = (DiskDomain, RectangleDomain, HalfDiskDomain, AnnulusComplementDomain)


def _check_domain(domain):
    if not isinstance(domain, DOMAINS):
        raise UnsupportedDomain(f"Unsupported domain {type(domain).__name__}")


def _clip(shape, radius: float):
    if shape.farthest_modulus() <= radius:
        return shape
    if isinstance(shape, Union):
        return Union(tuple(_clip(p, radius) for p in shape.pieces))
    pieces = shape.pieces if isinstance(shape, Intersection) else (shape,)
    return Intersection(pieces + (Disk(0j, radius),))


def inner_exhaustion(domain, k: int):
    """
    L_k = {z in domain : |z| <= k, dist(z, boundary) >= 1/k} in the shape family.
    """
    _check_domain(domain)
    if not isinstance(k, int) or k < 1:
        raise ValueError("Exhaustion index must be a positive integer.")
    if isinstance(domain, DiskDomain) and domain.radius - 1 / k <= 0:
        raise DegenerateShape(f"Inner compact L_{k} is empty")
    if isinstance(domain, RectangleDomain):
        d = domain.upper_right - domain.lower_left
        if min(d.real, d.imag) <= 2 / k:
            raise DegenerateShape(f"Inner compact L_{k} is empty")
    return _clip(domain.inner(k), float(k))


def check_nesting(domain, k: int, mesh: float) -> bool:
    """Every sample of L_k has positive distance to the complement of L_{k+1}."""
    outer = inner_exhaustion(domain, k + 1)
    return all(outer.depth(z) > 0 for z in sample(inner_exhaustion(domain, k), mesh).points)


# Outer family: level l uses a 2^-l lattice, disks of radius 2^-(l+1), and keeps
# centers whose disk stays at least 1/l away from the closure of the domain.
_MAX_LEVEL = 12


def _level_disks(domain, level: int) -> list:
    spacing = 2.0 ** -level
    radius = 2.0 ** -(level + 1)
    clearance = radius + 1.0 / level
    window = domain.extent + 2 + level
    n = int(math.floor(window / spacing))
    axis = np.arange(-n, n + 1) * spacing
    grid = (axis[None, :] + 1j * axis[:, None]).ravel()
    kept = [complex(c) for c in grid if abs(c) <= window and domain.clearance(c) >= clearance]
    kept.sort(key=lambda c: (round(abs(c), 12), math.atan2(c.imag, c.real) % (2 * math.pi)))
    return [Disk(c, radius) for c in kept]


@lru_cache(maxsize=None)
def _outer_schedule(domain, count: int) -> tuple:
    schedule = []
    for level in range(1, _MAX_LEVEL + 1):
        schedule.extend(_level_disks(domain, level))
        if len(schedule) >= count:
            return tuple(schedule)
    raise UnsupportedDomain(f"Outer family has fewer than {count} members up to level {_MAX_LEVEL}")


def outer_family(domain, m: int):
    """K_m: the m-th disk of the fixed schedule in the complement of the closed domain."""
    _check_domain(domain)
    if not isinstance(m, int) or m < 1:
        raise ValueError("Outer family index must be a positive integer.")
    return _outer_schedule(domain, m)[m - 1]

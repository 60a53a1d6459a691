import math
import unittest
from unipade.core import (
    Annulus,
    AnnulusComplementDomain,
    DegenerateShape,
    Disk,
    DiskDomain,
    HalfDiskDomain,
    Intersection,
    Path,
    Rectangle,
    RectangleDomain,
    Segment,
    Union,
    UnsupportedDomain,
    inner_exhaustion,
    outer_family,
    sample,
)
from unipade.core.geometry import check_nesting


class TestShapes(unittest.TestCase):
    def test_degenerate_shapes(self):
        with self.assertRaises(DegenerateShape):
            Disk(0, 0)
        with self.assertRaises(DegenerateShape):
            Segment(1, 1)
        with self.assertRaises(DegenerateShape):
            Path((0, 1, 1))
        with self.assertRaises(DegenerateShape):
            Annulus(0, 2, 1)
        with self.assertRaises(DegenerateShape):
            Rectangle(1 + 1j, 0)

    def test_intersection_needs_filled_pieces(self):
        with self.assertRaises(DegenerateShape):
            Intersection((Disk(0, 1), Segment(0, 1)))

    def test_containment(self):
        self.assertTrue(Disk(2.5, 0.25).contains(2.6))
        self.assertTrue(Segment(0, 2).contains(1))
        self.assertFalse(Segment(0, 2).contains(1 + 0.1j))
        self.assertTrue(Annulus(0, 1, 2).contains(1.5j))
        self.assertFalse(Annulus(0, 1, 2).contains(0.5))


class TestSample(unittest.TestCase):
    def test_unit_circle(self):
        samples = sample(Disk(0, 1), 2 * math.pi / 8)
        self.assertEqual(len(samples), 8)
        for z in samples.points:
            self.assertAlmostEqual(abs(z), 1.0, places=12)

    def test_segment(self):
        samples = sample(Segment(2, 3), 0.25)
        self.assertEqual([z.real for z in samples.points], [2, 2.25, 2.5, 2.75, 3])

    def test_union_concatenates(self):
        a, b = Disk(0, 0.5), Disk(3, 0.25)
        mesh = 0.1
        samples = sample(Union((a, b)), mesh)
        self.assertEqual(len(samples), len(sample(a, mesh)) + len(sample(b, mesh)))

    def test_point_count_covers_perimeter(self):
        for shape in (Disk(1j, 0.3), Rectangle(0, 2 + 1j), Path((0, 1, 1 + 1j)), Annulus(0, 1, 2)):
            samples = sample(shape, 0.05)
            self.assertGreaterEqual(len(samples), shape.perimeter / 0.05 - 1e-9)
            for z in samples.points:
                self.assertTrue(shape.contains(z, 1e-9))

    def test_interior_grid(self):
        boundary = sample(Disk(0, 1), 0.1)
        filled = sample(Disk(0, 1), 0.1, interior=True)
        self.assertGreater(len(filled), len(boundary))
        self.assertTrue(any(abs(z) < 0.5 for z in filled.points))

    def test_deterministic(self):
        self.assertEqual(sample(Disk(0.3, 0.7), 0.01).points, sample(Disk(0.3, 0.7), 0.01).points)

    # Edge case: Non-positive mesh
    def test_invalid_mesh(self):
        with self.assertRaises(ValueError):
            sample(Disk(0, 1), 0)


class TestInnerExhaustion(unittest.TestCase):
    def test_unit_disk(self):
        domain = DiskDomain()
        self.assertEqual(inner_exhaustion(domain, 2), Disk(0, 0.5))
        self.assertEqual(inner_exhaustion(domain, 4), Disk(0, 0.75))

    def test_unit_disk_first_level_empty(self):
        with self.assertRaises(DegenerateShape):
            inner_exhaustion(DiskDomain(), 1)

    def test_rectangle_clipped(self):
        compact = inner_exhaustion(RectangleDomain(0, 4 + 2j), 4)
        self.assertIsInstance(compact, Intersection)
        rectangle, disk = compact.pieces
        self.assertEqual(rectangle, Rectangle(0.25 + 0.25j, 3.75 + 1.75j))
        self.assertEqual(disk, Disk(0, 4.0))

    def test_distance_to_boundary(self):
        mesh = 0.02
        for domain in (
            DiskDomain(),
            RectangleDomain(0, 4 + 2j),
            HalfDiskDomain(0, 1, 0.0),
            AnnulusComplementDomain(0, 1, 2),
        ):
            for k in (3, 4, 6):
                for z in sample(inner_exhaustion(domain, k), mesh).points:
                    self.assertTrue(domain.contains(z), (domain, k, z))

    def test_nesting(self):
        for domain in (DiskDomain(), RectangleDomain(0, 4 + 2j), HalfDiskDomain(0, 1, 0.0)):
            for k in (3, 4, 5):
                self.assertTrue(check_nesting(domain, k, 0.05), (domain, k))

    def test_unsupported_domain(self):
        with self.assertRaises(UnsupportedDomain):
            inner_exhaustion(Disk(0, 1), 2)


class TestOuterFamily(unittest.TestCase):
    def test_first_entry(self):
        compact = outer_family(DiskDomain(), 1)
        self.assertEqual(compact, Disk(2.5, 0.25))
        for z in sample(Segment(2.4, 2.6), 0.05).points:
            self.assertTrue(compact.contains(z))

    def test_disjoint_from_closure(self):
        domain = DiskDomain()
        for m in range(1, 25):
            for z in sample(outer_family(domain, m), 0.05).points:
                self.assertGreater(abs(z), 1.0)

    def test_annulus_complement(self):
        domain = AnnulusComplementDomain(0, 1, 2)
        for m in range(1, 6):
            for z in sample(outer_family(domain, m), 0.05).points:
                self.assertFalse(domain.contains(z))

    def test_invalid_index(self):
        with self.assertRaises(ValueError):
            outer_family(DiskDomain(), 0)


if __name__ == "__main__":
    unittest.main()

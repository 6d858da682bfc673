import random
from fractions import Fraction

import pytest

from tropiso import DomainError, hull_volume
from tropiso.geometry import convex_hull_2d


class TestHull2D:
    def test_square(self):
        vol, cells = hull_volume([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert vol == 1 and cells == 2

    def test_triangle(self):
        vol, cells = hull_volume([(0, 0), (1, 0), (0, 1)])
        assert vol == Fraction(1, 2) and cells == 1

    def test_interior_points_ignored(self):
        pts = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1), (1, Fraction(1, 2))]
        vol, cells = hull_volume(pts)
        assert vol == 4 and cells == 2

    def test_collinear_degenerate(self):
        vol, cells = hull_volume([(0, 0), (1, 1), (2, 2)])
        assert vol == 0 and cells == 0

    def test_hull_order_is_ccw(self):
        hull = convex_hull_2d([(0, 0), (1, 0), (1, 1), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
        assert hull == [(0, 0), (1, 0), (1, 1), (0, 1)]

    def test_shoelace_against_grid_counting(self):
        # area of a random polygon bracketed by exact unit-cell counting:
        # cells fully inside <= area <= cells touching
        rng = random.Random(3)
        pts = [(rng.randint(0, 8), rng.randint(0, 8)) for _ in range(7)]
        vol, _ = hull_volume(pts)
        # count unit cells fully inside vs touching: bounds the area
        lo = hi = 0
        hull = convex_hull_2d(pts)
        if len(hull) >= 3:
            def inside(x, y):
                for a, b in zip(hull, hull[1:] + hull[:1]):
                    cr = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0])
                    if cr < 0:
                        return False
                return True
            for x in range(9):
                for y in range(9):
                    corners = [inside(x + dx, y + dy) for dx in (0, 1) for dy in (0, 1)]
                    if all(corners):
                        lo += 1
                    if any(corners):
                        hi += 1
            assert lo <= vol <= hi


class TestHull3D:
    def test_unit_tetrahedron(self):
        vol, cells = hull_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert vol == Fraction(1, 6) and cells == 1

    def test_unit_cube(self):
        cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        vol, cells = hull_volume(cube)
        assert vol == 1 and cells == 6

    def test_coplanar_degenerate(self):
        vol, cells = hull_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
        assert vol == 0 and cells == 0

    def test_scaled_simplex(self):
        vol, _ = hull_volume([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 5)])
        assert vol == Fraction(2 * 3 * 5, 6)

    def test_interior_point_ignored(self):
        pts = [(0, 0, 0), (4, 0, 0), (0, 4, 0), (0, 0, 4), (1, 1, 1)]
        vol, _ = hull_volume(pts)
        assert vol == Fraction(4 ** 3, 6)

    def test_random_decomposition_additivity(self):
        # volume of a box equals the sum over an axis split
        lo, _ = hull_volume([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 1),
                             (2, 2, 0), (2, 0, 1), (0, 2, 1), (2, 2, 1)])
        a, _ = hull_volume([(0, 0, 0), (1, 0, 0), (0, 2, 0), (0, 0, 1),
                            (1, 2, 0), (1, 0, 1), (0, 2, 1), (1, 2, 1)])
        assert lo == 2 * a


class TestHull1D:
    def test_segment(self):
        vol, cells = hull_volume([(3,), (Fraction(1, 2),), (2,)])
        assert vol == Fraction(5, 2) and cells == 1

    def test_point_degenerate(self):
        vol, cells = hull_volume([(1,), (1,)])
        assert vol == 0 and cells == 0


def test_dimension_guard():
    with pytest.raises(DomainError):
        hull_volume([(0, 0, 0, 0), (1, 1, 1, 1)])


def test_float_inputs_embed_exactly():
    vol, cells = hull_volume([(0.0, 0.0), (0.5, 0.0), (0.0, 0.5)])
    assert vol == Fraction(1, 8) and cells == 1

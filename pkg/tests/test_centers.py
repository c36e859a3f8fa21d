"""Centers and the quantitative lemma checks on Euclidean and Pos(2) data."""

import numpy as np
import pytest

from cocyclelab import spd
from cocyclelab.centers import (
    EuclideanSpace,
    PointSet,
    SPDSpace,
    bt_center,
    center_equivariance_check,
    chebyshev_center,
    check_ball_intersection_radius,
    check_center_continuity,
    check_diameter_shrink,
    diameter,
    hausdorff_distance,
    midpoint_set,
    radius_at,
    space_selftest,
)
from cocyclelab.errors import EmptySet, NotIsometry, PreconditionViolated

from conftest import (
    acute_scalene_triangle,
    exact_min_enclosing_circle,
    lattice_min_radius,
    random_spd,
    tetrahedron,
)

E2 = EuclideanSpace(2)
E3 = EuclideanSpace(3)
S2 = SPDSpace(2)


def spd_set(rng, m, spread=0.5):
    return PointSet(S2, np.array([random_spd(rng, 2, spread) for _ in range(m)]))


class TestSpaces:
    def test_selftests(self, rng):
        planar = rng.random((30, 2))
        rep = space_selftest(E2, planar, rng, triples=120)
        assert rep["pass"], rep
        pts = np.array([random_spd(rng, 2, 0.6) for _ in range(20)])
        rep = space_selftest(S2, pts, rng, triples=120)
        assert rep["pass"], rep


class TestRadiusAndDiameter:
    def test_singleton(self):
        ps = PointSet(E2, np.zeros((1, 2)))
        assert radius_at(ps, ps.points[0]) == 0.0
        assert diameter(ps) == 0.0

    def test_two_points(self):
        ps = PointSet(E2, np.array([[0.0, 0.0], [1.0, 0.0]]))
        assert abs(radius_at(ps, np.zeros(2)) - 1.0) <= 1e-15

    def test_radius_matches_brute_scan(self, rng):
        pts = rng.random((40, 2))
        ps = PointSet(E2, pts)
        v = rng.random(2)
        brute = max(np.linalg.norm(p - v) for p in pts)
        assert abs(radius_at(ps, v) - brute) <= 1e-12

    def test_diameter_right_triangle(self):
        ps = PointSet(E2, np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
        assert abs(diameter(ps) - np.sqrt(2.0)) <= 1e-15

    def test_diameter_matches_brute_force(self, rng):
        pts = rng.random((25, 2))
        ps = PointSet(E2, pts)
        brute = max(
            np.linalg.norm(pts[i] - pts[j])
            for i in range(25) for j in range(i + 1, 25)
        )
        assert abs(diameter(ps) - brute) <= 1e-12

    def test_empty_rejected(self):
        with pytest.raises(EmptySet):
            PointSet(E2, np.zeros((0, 2)))


class TestChebyshevCenter:
    def test_two_points_midpoint(self, rng):
        p, q = rng.random(2), rng.random(2) + 2.0
        rep = chebyshev_center(PointSet(E2, np.array([p, q])), 1e-9)
        assert np.linalg.norm(rep.center - (p + q) / 2.0) <= 1e-12
        assert abs(rep.radius - np.linalg.norm(p - q) / 2.0) <= 1e-12

    def test_equilateral_triangle(self):
        # Circumcenter = centroid, radius 1/sqrt(3); oracle: fine lattice.
        pts = np.array([
            [0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]
        ])
        rep = chebyshev_center(PointSet(E2, pts), 1e-9)
        _, lattice_r = lattice_min_radius(pts)
        assert abs(rep.radius - 1.0 / np.sqrt(3.0)) <= 1e-9
        assert abs(rep.radius - lattice_r) <= 2e-4
        assert np.linalg.norm(rep.center - pts.mean(axis=0)) <= 1e-9

    def test_spd_two_points(self):
        # Midpoint of the geodesic minimizes the max distance; oracle:
        # 1-d grid search along the geodesic.
        P, Q = np.eye(2), np.diag([np.e ** 2, 1.0])
        ps = PointSet(S2, np.array([P, Q]))
        rep = chebyshev_center(ps, 1e-9)
        mid = spd.spd_geodesic(P, Q, 0.5)
        assert spd.spd_distance(rep.center, mid) <= 1e-9
        assert abs(rep.radius - 1.0) <= 1e-9
        grid_best = min(
            max(spd.spd_distance(spd.spd_geodesic(P, Q, t), P),
                spd.spd_distance(spd.spd_geodesic(P, Q, t), Q))
            for t in np.linspace(0, 1, 201)
        )
        assert rep.radius <= grid_best + 1e-9

    def test_covering_invariant(self, rng):
        for _ in range(10):
            pts = rng.random((int(rng.integers(2, 20)), 2))
            ps = PointSet(E2, pts)
            rep = chebyshev_center(ps, 1e-6)
            dists = np.linalg.norm(pts - rep.center, axis=1)
            assert dists.max() <= rep.radius + 1e-6
            assert rep.covering_residual <= 1e-7

    def test_optimality_against_lattice(self, rng):
        # Euclidean d <= 3: radius vs brute-force lattice minimization.
        for dim, space in ((2, E2), (3, E3)):
            pts = rng.random((7, dim))
            rep = chebyshev_center(
                PointSet(space, pts), 1e-9,
                max_iterations=150_000, stall=False,
            )
            _, lattice_r = lattice_min_radius(pts)
            assert abs(rep.radius - lattice_r) <= 2e-4

    def test_uniqueness_proxy_two_starts(self, rng):
        # The minimizer is unique; runs from different initial points meet.
        pts = rng.random((8, 2))
        ps = PointSet(E2, pts)
        a = chebyshev_center(ps, 1e-9, max_iterations=200_000, stall=False)
        b = chebyshev_center(
            ps, 1e-9, max_iterations=200_000, stall=False, start_index=4
        )
        assert np.linalg.norm(a.center - b.center) <= 1e-5

    def test_uniqueness_proxy_structured(self, rng):
        square = PointSet(E2, np.array(
            [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
        ))
        reps = [
            chebyshev_center(square, 1e-9, start_index=i) for i in range(4)
        ]
        for rep in reps[1:]:
            assert np.linalg.norm(rep.center - reps[0].center) <= 1e-9
        spd_pair = PointSet(S2, np.array([np.eye(2), np.diag([4.0, 0.5])]))
        a = chebyshev_center(spd_pair, 1e-9)
        b = chebyshev_center(spd_pair, 1e-9, start_index=1)
        assert spd.spd_distance(a.center, b.center) <= 1e-9

    def test_matches_exact_circle(self, rng):
        for _ in range(3):
            pts = rng.random((9, 2))
            rep = chebyshev_center(
                PointSet(E2, pts), 1e-9, max_iterations=120_000, stall=False
            )
            c_star, r_star = exact_min_enclosing_circle(pts)
            assert rep.radius - r_star <= 2e-4
            assert rep.radius >= r_star - 1e-12


class TestBTCenter:
    def test_two_points(self, rng):
        p, q = rng.random(2), rng.random(2) + 1.0
        ps = PointSet(E2, np.array([p, q]))
        assert np.linalg.norm(bt_center(ps) - (p + q) / 2.0) <= 1e-12

    def test_acute_scalene_longest_side_midpoint(self):
        pts = acute_scalene_triangle()
        sides = [
            (np.linalg.norm(pts[i] - pts[j]), i, j)
            for i in range(3) for j in range(i + 1, 3)
        ]
        _, i, j = max(sides)
        star = bt_center(PointSet(E2, pts))
        assert np.linalg.norm(star - (pts[i] + pts[j]) / 2.0) <= 1e-6

    def test_differs_from_chebyshev_on_scalene(self):
        pts = acute_scalene_triangle()
        ps = PointSet(E2, pts)
        star = bt_center(ps)
        cheb = chebyshev_center(ps, 1e-9).center
        assert np.linalg.norm(star - cheb) > 1e-3

    def test_coincide_on_two_point_sets(self, rng):
        p, q = rng.random(2), rng.random(2) + 1.0
        ps = PointSet(E2, np.array([p, q]))
        star = bt_center(ps)
        cheb = chebyshev_center(ps, 1e-9).center
        assert np.linalg.norm(star - cheb) <= 1e-9

    def test_tetrahedron_collapses_to_centroid(self):
        # Hand iteration: edge midpoints form an octahedron, whose
        # diametral midpoints all equal the centroid.
        pts = tetrahedron()
        star = bt_center(PointSet(E3, pts))
        assert np.linalg.norm(star - pts.mean(axis=0)) <= 1e-12


class TestMidpointSet:
    def test_pair(self, rng):
        p, q = rng.random(2), rng.random(2) + 1.0
        mids = midpoint_set(PointSet(E2, np.array([p, q])))
        assert len(mids) == 1
        assert np.linalg.norm(mids.points[0] - (p + q) / 2.0) <= 1e-12

    def test_square_collapses_to_center(self):
        # Both diagonals produce the same midpoint (enumeration oracle).
        corners = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        mids = midpoint_set(PointSet(E2, corners))
        assert len(mids) == 1
        assert np.linalg.norm(mids.points[0] - [0.5, 0.5]) <= 1e-12

    def test_tetrahedron_edge_midpoints(self):
        pts = tetrahedron(side=1.0)
        mids = midpoint_set(PointSet(E3, pts))
        assert len(mids) == 6
        # Opposite-edge midpoint pairs realize the diameter s/sqrt(2).
        assert abs(diameter(mids) - 1.0 / np.sqrt(2.0)) <= 1e-12


class TestDiameterShrink:
    def test_segment_ratio_zero(self):
        ps = PointSet(E2, np.array([[0.0, 0.0], [1.0, 0.0]]))
        rep = check_diameter_shrink(ps)
        assert rep.ratio == 0.0 and rep.passed

    def test_tetrahedron_sharpness(self):
        rep = check_diameter_shrink(PointSet(E3, tetrahedron()))
        assert abs(rep.ratio - 1.0 / np.sqrt(2.0)) <= 1e-9
        assert rep.passed

    def test_random_planar_sets(self, rng):
        for _ in range(100):
            pts = rng.random((int(rng.integers(3, 10)), 2))
            assert check_diameter_shrink(PointSet(E2, pts)).passed


class TestCenterContinuity:
    def test_identical_sets(self, rng):
        pts = rng.random((6, 2))
        rep = check_center_continuity(PointSet(E2, pts), PointSet(E2, pts))
        assert rep.lhs <= 1e-12 and rep.passed and rep.radius_gap_ok

    def test_two_point_shift(self):
        # Shift one endpoint by eps along the segment: the center moves
        # eps/2, so lhs = eps^2/4 <= 8 eps r_B.
        eps = 1e-3
        a = PointSet(E2, np.array([[0.0, 0.0], [1.0, 0.0]]))
        b = PointSet(E2, np.array([[0.0, 0.0], [1.0 + eps, 0.0]]))
        rep = check_center_continuity(a, b)
        assert abs(rep.lhs - eps ** 2 / 4.0) <= 1e-10
        assert rep.passed and rep.radius_gap_ok

    def test_random_perturbations(self, rng):
        for eps in (1e-2, 1e-1):
            for _ in range(20):
                m = int(rng.integers(4, 12))
                pts = rng.random((m, 2))
                ang = rng.random(m) * 2 * np.pi
                rad = eps * np.sqrt(rng.random(m))
                pts_e = pts + np.column_stack(
                    [rad * np.cos(ang), rad * np.sin(ang)]
                )
                rep = check_center_continuity(
                    PointSet(E2, pts), PointSet(E2, pts_e), center_tol=1e-5
                )
                assert rep.passed
                assert rep.radius_gap_ok

    def test_hausdorff_double_scan(self, rng):
        a = rng.random((8, 2))
        b = rng.random((5, 2))
        got = hausdorff_distance(PointSet(E2, a), PointSet(E2, b))
        d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
        want = max(d.min(axis=1).max(), d.min(axis=0).max())
        assert abs(got - want) <= 1e-12


class TestBallIntersection:
    def test_degenerate_centers(self, rng):
        rep = check_ball_intersection_radius(
            E2, np.zeros(2), np.zeros(2), 1.0, 0.01, 100, rng
        )
        assert rep.degenerate and rep.passed

    def test_precondition(self, rng):
        with pytest.raises(PreconditionViolated):
            check_ball_intersection_radius(
                E2, np.zeros(2), np.array([0.4, 0.0]), 1.0, 0.02, 100, rng
            )

    def test_planar(self, rng):
        rep = check_ball_intersection_radius(
            E2, np.zeros(2), np.array([0.4, 0.0]), 1.0, 0.01, 10_000, rng
        )
        assert rep.samples_accepted > 100
        assert rep.passed
        assert rep.max_distance_to_midpoint <= 0.99

    def test_spd(self, rng):
        v0 = np.eye(2)
        v0p = spd.spd_exp(0.5 * np.eye(2) / np.sqrt(2.0))
        assert abs(spd.spd_distance(v0, v0p) - 0.5) <= 1e-12
        rep = check_ball_intersection_radius(
            S2, v0, v0p, 1.0, 0.015, 2_000, rng
        )
        assert rep.samples_accepted > 50
        assert rep.passed


class TestEquivariance:
    def test_identity_map(self, rng):
        ps = PointSet(E2, rng.random((7, 2)))
        assert center_equivariance_check(ps, lambda p: p, center_tol=1e-6)

    def test_planar_rotation(self, rng):
        theta = 0.83
        rot = np.array([[np.cos(theta), -np.sin(theta)],
                        [np.sin(theta), np.cos(theta)]])
        shift = np.array([0.3, -1.2])
        ps = PointSet(E2, rng.random((9, 2)))
        assert center_equivariance_check(
            ps, lambda p: rot @ p + shift, center_tol=1e-6
        )

    def test_gl2_action_on_spd_sets(self, rng):
        ps = spd_set(rng, 6)
        g = rng.standard_normal((2, 2)) + 1.5 * np.eye(2)
        assert center_equivariance_check(
            ps, lambda p: spd.gl_action(g, p), center_tol=1e-6
        )

    def test_non_isometry_rejected(self, rng):
        ps = PointSet(E2, rng.random((5, 2)))
        with pytest.raises(NotIsometry):
            center_equivariance_check(ps, lambda p: 2.0 * p)

    def test_semigroup_fix_property(self, rng):
        # iso(B) = B (a symmetry of the set) forces iso to fix the center.
        theta = 2.0 * np.pi / 4.0
        rot = np.array([[np.cos(theta), -np.sin(theta)],
                        [np.sin(theta), np.cos(theta)]])
        center = np.array([0.4, -0.7])
        seed = rng.random(2)
        orbit = []
        p = seed.copy()
        for _ in range(4):
            orbit.append(center + p)
            p = rot @ p
        inner = 0.3 * (rng.random(2) - 0.5)
        q = inner.copy()
        for _ in range(4):
            orbit.append(center + q)
            q = rot @ q
        ps = PointSet(E2, np.array(orbit))

        def iso(v):
            return rot @ (v - center) + center

        mapped = np.array([iso(v) for v in ps.points])
        match = np.min(
            np.linalg.norm(mapped[:, None, :] - ps.points[None, :, :], axis=2),
            axis=1,
        )
        assert match.max() <= 1e-9  # iso(B) is B, pointwise
        rep = chebyshev_center(ps, 1e-9)
        assert np.linalg.norm(iso(rep.center) - rep.center) <= 1e-6

"""Reduction pipelines: coboundary construction, fiber sampling, centers,
orthogonal and conformal conjugation."""

import numpy as np
import pytest

from cocyclelab import spd
from cocyclelab.circle import ParabolicBase
from cocyclelab.cocycles import MatrixCocycle, matrix_products
from cocyclelab.errors import ConfigInvalid, EmptyCell, NotOrthogonal
from cocyclelab.presets import (
    coboundary_cocycle,
    conformal_coboundary_cocycle,
    conjugacy_direction,
    golden_rotation,
    rotation_matrix,
    scalar_orthogonal_cocycle,
)
from cocyclelab.reduction import (
    construct_coboundary,
    oracle_section_distance,
    reduce_to_conformal,
    reduce_to_orthogonal,
    sample_fibers,
    section_from_centers,
)


def identity_cocycle(base):
    return MatrixCocycle(
        base, 2, lambda x: np.eye(2),
        generator_batch=lambda xs: np.tile(np.eye(2), (len(xs), 1, 1)),
    )


class TestConstructCoboundary:
    def test_trivial_loops_give_identity(self):
        base = golden_rotation()
        c = construct_coboundary(
            lambda x: np.eye(2), lambda x: np.eye(2), base
        )
        for x in (0.0, 0.3, 0.9):
            assert np.max(np.abs(c.generator(x) - np.eye(2))) <= 1e-12

    def test_non_orthogonal_q_rejected(self):
        base = golden_rotation()
        with pytest.raises(NotOrthogonal):
            construct_coboundary(
                lambda x: np.eye(2), lambda x: np.diag([1.0, 1.1]), base
            )

    def test_products_bounded_by_conjugacy(self):
        # ||A(k, x)|| <= e^{2 ||S0||} for B = exp(sin(2 pi x) S0).
        c = coboundary_cocycle(s0_norm=0.7)
        rep = matrix_products(c, 0.2, 100_000)
        assert rep.max_norm <= np.exp(2 * 0.7) + 1e-9
        assert rep.max_inv_norm <= np.exp(2 * 0.7) + 1e-9

    def test_oracle_section_is_invariant(self):
        c = coboundary_cocycle()
        base = c.base
        for x in np.linspace(0.05, 0.95, 7):
            lhs = spd.gl_action(c.generator(x), c.oracle_section(x))
            rhs = c.oracle_section(base.step(x))
            assert np.max(np.abs(lhs - rhs)) <= 1e-10

    def test_conformal_oracle_section_is_invariant(self):
        c = conformal_coboundary_cocycle()
        base = c.base
        for x in np.linspace(0.05, 0.95, 7):
            lhs = spd.conf_action(c.generator(x), c.oracle_section(x))
            rhs = c.oracle_section(base.step(x))
            assert np.max(np.abs(lhs - rhs)) <= 1e-10
            assert abs(np.linalg.det(c.oracle_section(x)) - 1.0) <= 1e-10

    def test_generator_batch_matches_scalar(self):
        c = coboundary_cocycle()
        xs = np.linspace(0.0, 0.99, 13)
        batch = c.generators_along(xs)
        for x, a in zip(xs, batch):
            assert np.max(np.abs(a - c.generator(x))) <= 1e-12


class TestSampleFibers:
    def test_identity_cocycle_degenerate_fibers(self, rng):
        base = golden_rotation()
        c = identity_cocycle(base)
        v0 = spd.spd_exp(0.3 * np.eye(2))
        fb = sample_fibers(c, 0.2, v0, 3000, 32)
        assert fb.min_occupancy >= 1
        assert fb.diameters.max() <= 1e-12
        for pts in fb.cell_points:
            assert np.max(np.abs(pts - v0)) <= 1e-12

    def test_occupancy_heuristic_enforced(self):
        c = identity_cocycle(golden_rotation())
        with pytest.raises(ConfigInvalid):
            sample_fibers(c, 0.2, np.eye(2), 100, 32)

    def test_parabolic_base_fails_density(self):
        base = ParabolicBase()
        c = identity_cocycle(base)
        with pytest.raises(EmptyCell):
            sample_fibers(c, 0.3, np.eye(2), 3200, 64)

    def test_on_graph_diameters_shrink_under_refinement(self):
        c = coboundary_cocycle()
        v0 = c.oracle_section(0.2)
        coarse = sample_fibers(c, 0.2, v0, 8000, 32)
        fine = sample_fibers(c, 0.2, v0, 32000, 128)
        assert fine.diameters.max() < coarse.diameters.max()

    def test_off_graph_diameter_near_constancy(self):
        # Fibers of an orbit closure have constant diameter; the sampled
        # per-cell spread shrinks under refinement while the level stays.
        c = conformal_coboundary_cocycle()
        coarse = sample_fibers(c, 0.2, np.eye(2), 60_000, 64, conformal=True)
        fine = sample_fibers(c, 0.2, np.eye(2), 240_000, 128, conformal=True)
        assert fine.diameter_spread() < coarse.diameter_spread()
        assert abs(fine.diameters.mean() - coarse.diameters.mean()) <= 0.1
        assert coarse.diameters.mean() > 1.0  # genuinely non-degenerate


class TestSectionFromCenters:
    def test_singleton_fibers_return_the_point(self):
        c = identity_cocycle(golden_rotation())
        v0 = spd.spd_exp(0.4 * np.eye(2))
        fb = sample_fibers(c, 0.2, v0, 3000, 32)
        got = section_from_centers(fb, center_tol=1e-8)
        assert np.max(np.abs(got.section.values - v0)) <= 1e-12
        assert got.invariance_residual <= 1e-12

    def test_oracle_distance_decreases_under_refinement(self):
        c = coboundary_cocycle()
        v0 = c.oracle_section(0.2)
        coarse = section_from_centers(
            sample_fibers(c, 0.2, v0, 8000, 32), center_tol=3e-5
        )
        fine = section_from_centers(
            sample_fibers(c, 0.2, v0, 48000, 128), center_tol=3e-5
        )
        d_coarse = oracle_section_distance(coarse.section, c.oracle_section)
        d_fine = oracle_section_distance(fine.section, c.oracle_section)
        assert d_fine < d_coarse

    def test_centers_commute_with_congruence(self, rng):
        # Recomputing after a fixed g in GL(2) conjugates the section.
        c = coboundary_cocycle()
        v0 = c.oracle_section(0.2)
        fb = sample_fibers(c, 0.2, v0, 4000, 16)
        got = section_from_centers(fb, center_tol=1e-4)
        g = rng.standard_normal((2, 2)) + 1.5 * np.eye(2)
        mapped_cells = [
            np.array([spd.gl_action(g, p) for p in pts])
            for pts in fb.cell_points
        ]
        from cocyclelab.centers import PointSet, SPDSpace, chebyshev_center

        space = SPDSpace(2)
        for i in (0, 7, 15):
            mapped_center = chebyshev_center(
                PointSet(space, mapped_cells[i]), 1e-4
            ).center
            want = spd.gl_action(g, got.section.values[i])
            assert spd.spd_distance(mapped_center, want) <= 1e-6

    def test_threads_give_identical_results(self):
        c = coboundary_cocycle()
        v0 = c.oracle_section(0.2)
        fb = sample_fibers(c, 0.2, v0, 4000, 16)
        a = section_from_centers(fb, center_tol=1e-4, threads=1)
        b = section_from_centers(fb, center_tol=1e-4, threads=4)
        assert np.array_equal(a.section.values, b.section.values)


class TestReduceToOrthogonal:
    def test_identity_everything(self):
        c = identity_cocycle(golden_rotation())
        thetas = (np.arange(16) + 0.5) / 16
        from cocyclelab.solvers import Section

        phi = Section.from_samples(
            thetas, np.tile(np.eye(2), (16, 1, 1)), fiber="spd"
        )
        res = reduce_to_orthogonal(c, phi)
        assert res.defect <= 1e-14

    def test_oracle_section_reduces_exactly(self):
        c = coboundary_cocycle()
        res = reduce_to_orthogonal(c, c.oracle_section)
        assert res.defect <= 1e-9

    def test_center_section_reduces_with_cell_bias(self):
        c = coboundary_cocycle()
        v0 = c.oracle_section(0.2)
        fb = sample_fibers(c, 0.2, v0, 25_600, 128)
        got = section_from_centers(fb, center_tol=1e-5)
        res = reduce_to_orthogonal(c, got.section)
        assert res.defect <= 5e-2  # O(1/cells) lookup bias at 128 cells
        # Defect is controlled by the invariance residual (empirical 5x).
        assert res.defect <= 5.0 * max(got.invariance_residual, 1e-12)

    def test_b_is_spd_square_root(self):
        c = coboundary_cocycle()
        res = reduce_to_orthogonal(c, c.oracle_section)
        for i, theta in enumerate(res.section.thetas):
            b = res.b_values[i]
            assert spd.symmetry_defect(b) <= 1e-12
            assert spd.sym_eigen(b).values[-1] > 0
            phi = res.section.values[i]
            assert np.max(np.abs(b @ b.T - phi)) <= 1e-10


class TestReduceToConformal:
    def test_scalar_orthogonal_is_exactly_conformal(self):
        c = scalar_orthogonal_cocycle()
        res = reduce_to_conformal(c, x0=0.2, steps=8000, cells=64,
                                  center_tol=1e-5)
        assert res.defect <= 1e-9
        assert res.distortion_max_deviation <= 1e-6

    def test_conformal_oracle_reduces_exactly(self):
        c = conformal_coboundary_cocycle()
        res = reduce_to_conformal(c, phi=c.oracle_section)
        assert res.defect <= 1e-9
        assert res.distortion_max_deviation <= 1e-6

    def test_conformal_center_path(self):
        c = conformal_coboundary_cocycle()
        res = reduce_to_conformal(
            c, x0=0.2, v0=c.oracle_section(0.2),
            steps=25_600, cells=128, center_tol=1e-5,
        )
        assert res.defect <= 5e-2
        # Where the defect is tiny the reduced distortion is 1.
        assert res.distortion_max_deviation <= res.defect + 1e-9


def test_s0_scaling():
    s0 = conjugacy_direction(0.7)
    assert abs(np.linalg.norm(s0) - 0.7) <= 1e-12
    s0t = conjugacy_direction(0.7, traceless=True)
    assert abs(np.trace(s0t)) <= 1e-12

import numpy as np
import pytest

from padicwave import (
    TranslateFamily,
    block_orthogonality,
    frame_bounds,
    gram_matrix,
    indicator_ball,
    inner_product,
    multi_scale_bounds,
)
from padicwave.frames import DegenerateFamily, gram_of


class TestGramMatrix:
    def test_single_unit_ball(self):
        g = gram_matrix(TranslateFamily(indicator_ball(2, 0), 0, 0))
        assert g.shape == (1, 1)
        assert abs(g[0, 0] - 1) < 1e-14

    def test_wavelet_translates_identity(self, package_haar):
        g = gram_matrix(TranslateFamily(package_haar.psi, 0, 2))
        assert g.shape == (4, 4)
        assert np.abs(g - np.eye(4)).max() < 1e-12

    def test_e1_translates_hermitian_not_identity(self, phi_e1):
        g = gram_matrix(TranslateFamily(phi_e1, 0, 2))
        assert np.abs(g - g.conj().T).max() < 1e-12
        assert np.abs(g - np.eye(4)).max() > 0.1


class TestFrameBounds:
    def test_wavelet_family_tight_unit(self, package_haar):
        report = frame_bounds(TranslateFamily(package_haar.psi, 0, 2))
        assert abs(report.lower_bound - 1) < 1e-9
        assert abs(report.upper_bound - 1) < 1e-9
        assert report.stable_under_radius_growth
        assert report.block_orthogonal

    def test_unit_ball_translates_tight_unit(self):
        report = frame_bounds(TranslateFamily(indicator_ball(2, 0), 0, 2))
        assert abs(report.lower_bound - 1) < 1e-12
        assert abs(report.upper_bound - 1) < 1e-12

    def test_e1_bounds_positive_and_radius_stable(self, package_e1):
        psi = package_e1.psi
        n_exp = psi.grid.support_exp
        a = frame_bounds(TranslateFamily(psi, 0, n_exp))
        b = frame_bounds(TranslateFamily(psi, 0, n_exp + 2))
        assert 0 < a.lower_bound <= a.upper_bound
        assert abs(a.lower_bound - b.lower_bound) < 1e-8
        assert abs(a.upper_bound - b.upper_bound) < 1e-8
        assert a.stable_under_radius_growth

    def test_rank_deficient_family_bounds_over_span(self):
        # shifts inside B_1 fix the ball, so half the members are duplicates
        big_ball = indicator_ball(2, 1)
        report = frame_bounds(TranslateFamily(big_ball, 0, 2))
        assert report.rank == 2
        assert report.lower_bound > 1e-6
        assert len(report.gram_eigenvalues) == 4

    def test_zero_generator_degenerate(self):
        from padicwave import CosetGrid, TestFunction

        zero = TestFunction(CosetGrid(2, 0, 0), [0.0])
        with pytest.raises(DegenerateFamily):
            frame_bounds(TranslateFamily(zero, 0, 1))


class TestBlockOrthogonality:
    def test_wavelet_blocks(self, package_haar):
        assert block_orthogonality(package_haar.psi, 2)

    def test_e1_blocks(self, package_e1):
        assert block_orthogonality(package_e1.psi, 2)

    def test_misdeclared_support_fails(self, package_e1):
        psi = package_e1.psi
        assert not block_orthogonality(psi, 2, support_exp=psi.grid.support_exp - 2)


class TestMultiScale:
    def test_wavelet_across_scales_unit(self, package_haar):
        report = multi_scale_bounds(package_haar.psi, -1, 1, 2)
        assert abs(report.lower_bound - 1) < 1e-9
        assert abs(report.upper_bound - 1) < 1e-9

    def test_e1_matches_single_block(self, package_e1):
        psi = package_e1.psi
        single = frame_bounds(TranslateFamily(psi, 0, 2))
        multi = multi_scale_bounds(psi, 0, 1, 2)
        assert abs(multi.lower_bound - single.lower_bound) < 1e-8
        assert abs(multi.upper_bound - single.upper_bound) < 1e-8

    def test_empty_scale_range(self, package_haar):
        with pytest.raises(DegenerateFamily):
            multi_scale_bounds(package_haar.psi, 1, 0, 2)

    def test_cross_scale_gram_vanishes(self, package_e1):
        fam0 = TranslateFamily(package_e1.psi, 0, 2).members()
        fam1 = TranslateFamily(package_e1.psi, 1, 2).members()
        worst = max(
            abs(inner_product(f, g)) for f in fam0 for g in fam1
        )
        assert worst < 1e-9


class TestDeterminism:
    def test_gram_hermitian_and_eigs_reproducible(self, package_e1):
        members = TranslateFamily(package_e1.psi, 0, 2).members()
        g1 = gram_of(members)
        g2 = gram_of(members)
        assert np.array_equal(g1, g2)
        e1_ = np.linalg.eigvalsh(g1)
        e2_ = np.linalg.eigvalsh(g2)
        assert np.array_equal(e1_, e2_)

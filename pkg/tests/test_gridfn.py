import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from padicwave import (
    CosetGrid,
    PAdicRational,
    TestFunction,
    affine_arg,
    dilate,
    embed,
    evaluate,
    fourier,
    indicator_ball,
    inner_product,
    inverse_fourier,
    max_abs_diff,
    shift,
)
from padicwave.oracle import naive_dft

from support import random_point, random_test_function


def haar(p=2):
    return indicator_ball(p, 0)


def rat(p, value):
    return PAdicRational.from_fraction(p, Fraction(value))


class TestIndicatorAndEvaluate:
    def test_unit_ball(self):
        f = haar()
        assert f.grid == CosetGrid(2, 0, 0)
        assert list(f.values) == [1.0]

    def test_small_ball_on_refined_grid(self):
        f = embed(indicator_ball(2, -1), 0, 1)
        assert list(f.values) == [1.0, 0.0]

    def test_p3_ball_on_refined_grid(self):
        f = embed(indicator_ball(3, 0), 1, 0)
        assert list(f.values) == [1.0, 0.0, 0.0]

    def test_evaluate_inside_and_outside(self):
        f = haar()
        assert evaluate(f, 5) == 1
        assert evaluate(f, Fraction(1, 2)) == 0
        g = TestFunction(CosetGrid(2, 0, 1), [1.0, 0.0])
        assert evaluate(g, 7) == 0


class TestEmbed:
    def test_constancy_refinement_replicates(self):
        f = embed(haar(), 0, 1)
        assert list(f.values) == [1.0, 1.0]

    def test_support_padding(self):
        f = embed(haar(), 1, 0)
        assert list(f.values) == [1.0, 0.0]

    def test_p3_joint_refinement(self):
        c = 0.7 - 0.2j
        f = embed(TestFunction(CosetGrid(3, 0, 0), [c]), 1, 1)
        grid = CosetGrid(3, 1, 1)
        for j in range(grid.size):
            x = grid.node(j)
            inside = x.is_zero() or x.norm_exp() >= 0
            assert f.values[j] == (c if inside else 0)

    def test_pointwise_equality_everywhere(self):
        rng = np.random.default_rng(3)
        f = random_test_function(rng, 2, 1, 1)
        g = embed(f, 2, 3)
        for _ in range(50):
            x = random_point(rng, 2)
            assert evaluate(f, x) == evaluate(g, x)


class TestFourier:
    def test_unit_ball_is_fixed_point(self):
        fhat = fourier(haar())
        assert fhat.grid == CosetGrid(2, 0, 0)
        assert abs(fhat.values[0] - 1.0) < 1e-12

    def test_small_ball_maps_to_scaled_big_ball(self):
        f = embed(indicator_ball(2, -1), 0, 1)
        fhat = fourier(f)
        assert fhat.grid == CosetGrid(2, 1, 0)
        assert np.abs(fhat.values - np.array([0.5, 0.5])).max() < 1e-12

    def test_p3_unit_ball_on_fine_grid(self):
        f = TestFunction(CosetGrid(3, 1, 0), [1.0, 0.0, 0.0])
        fhat = fourier(f)
        assert fhat.grid == CosetGrid(3, 0, 1)
        assert np.abs(fhat.values - 1.0).max() < 1e-12

    @pytest.mark.parametrize("p,n_exp,m_exp", [(2, 2, 2), (3, 1, 2), (5, 1, 1)])
    def test_matches_naive_oracle(self, p, n_exp, m_exp):
        rng = np.random.default_rng(n_exp * 10 + m_exp)
        f = random_test_function(rng, p, n_exp, m_exp)
        assert max_abs_diff(fourier(f), naive_dft(f)) < 1e-12

    def test_inverse_round_trip_exact_cases(self):
        f = haar()
        assert max_abs_diff(inverse_fourier(fourier(f)), f) < 1e-14

    def test_inverse_round_trip_random(self):
        rng = np.random.default_rng(11)
        f = random_test_function(rng, 2, 2, 2)
        assert max_abs_diff(inverse_fourier(fourier(f)), f) < 1e-12

    def test_double_transform_is_reflection(self):
        f = shift(indicator_ball(2, -2), 1)  # indicator of B_{-2}(1)
        g = fourier(fourier(f))
        grid = g.grid
        for j in range(grid.size):
            want = evaluate(f, -grid.node(j))
            assert abs(g.values[j] - want) < 1e-12

    def test_embed_commutes_with_transform(self):
        rng = np.random.default_rng(5)
        f = random_test_function(rng, 3, 1, 1)
        lhs = fourier(embed(f, 2, 2))
        rhs = embed(fourier(f), 2, 2)
        assert max_abs_diff(lhs, rhs) < 1e-12


class TestShift:
    def test_integer_shift_fixes_unit_ball(self):
        f = shift(haar(), 1)
        assert f.grid == CosetGrid(2, 0, 0)
        assert list(f.values) == [1.0]

    def test_half_shift(self):
        f = shift(haar(), Fraction(1, 2))
        assert f.grid == CosetGrid(2, 1, 0)
        assert np.abs(f.values - np.array([0.0, 1.0])).max() < 1e-15

    def test_pointwise_definition(self):
        rng = np.random.default_rng(13)
        f = random_test_function(rng, 2, 1, 2)
        b = rat(2, Fraction(3, 8))
        g = shift(f, b)
        for _ in range(60):
            x = random_point(rng, 2)
            assert abs(evaluate(g, x) - evaluate(f, x - b)) < 1e-15

    def test_group_law(self):
        rng = np.random.default_rng(17)
        f = random_test_function(rng, 3, 1, 1)
        a, b = rat(3, Fraction(2, 9)), rat(3, Fraction(5, 3))
        assert max_abs_diff(shift(shift(f, a), b), shift(f, a + b)) < 1e-14

    def test_frequency_law(self):
        rng = np.random.default_rng(19)
        f = random_test_function(rng, 2, 1, 2)
        b = rat(2, Fraction(5, 4))
        lhs = fourier(shift(f, b))
        fhat = naive_dft(f)
        for j in range(lhs.grid.size):
            xi = lhs.grid.node(j)
            want = (b * xi).character().value * evaluate(fhat, xi)
            assert abs(lhs.values[j] - want) < 1e-10


class TestDilate:
    def test_unit_ball_shrinks(self):
        g = dilate(haar(), 1)
        assert g.grid == CosetGrid(2, -1, 1)
        assert list(g.values) == [1.0]

    def test_group_law_and_values_preserved(self):
        rng = np.random.default_rng(23)
        f = random_test_function(rng, 2, 2, 1)
        assert dilate(dilate(f, 1), -1).grid == f.grid
        assert np.array_equal(dilate(f, 3).values, f.values)

    @pytest.mark.parametrize("j", [-1, 1, 2])
    def test_frequency_law(self, j):
        rng = np.random.default_rng(29 + j)
        f = random_test_function(rng, 2, 1, 2)
        lhs = fourier(dilate(f, j))
        rhs = naive_dft(f).values * float(2) ** (-j)
        assert np.abs(lhs.values - rhs).max() < 1e-10


class TestInnerProduct:
    def test_unit_ball_mass(self):
        assert abs(inner_product(haar(), haar()) - 1) < 1e-15

    def test_disjoint_balls(self):
        assert abs(inner_product(haar(), shift(haar(), Fraction(1, 2)))) < 1e-15

    @pytest.mark.parametrize("p", [2, 3])
    def test_parseval(self, p):
        rng = np.random.default_rng(31 + p)
        f = random_test_function(rng, p, 2, 1)
        g = random_test_function(rng, p, 1, 2)
        lhs = inner_product(f, g)
        rhs = inner_product(fourier(f), fourier(g))
        assert abs(lhs - rhs) < 1e-10


def _character_of_quotient(y: PAdicRational, a: int) -> complex:
    """chi_p(y / a) for an integer a coprime to p, via a modular inverse."""
    if y.is_zero() or y.exp >= 0:
        return 1.0
    s = -y.exp
    mod = y.p**s
    num = (y.unit * pow(a, -1, mod)) % mod
    return cmath.exp(2j * cmath.pi * num / mod)


class TestAffineLaw:
    @pytest.mark.parametrize("p", [2, 3])
    @pytest.mark.parametrize("a_kind", ["p", "1/p", "unit"])
    def test_transform_of_affine_argument(self, p, a_kind):
        rng = np.random.default_rng(37 + p)
        f = random_test_function(rng, p, 1, 1)
        b = rat(p, Fraction(int(rng.integers(-8, 9)), p))
        unit = 3 if p == 2 else 2
        a_val = {"p": Fraction(p), "1/p": Fraction(1, p), "unit": Fraction(unit)}[a_kind]
        a = rat(p, a_val)
        lhs = fourier(affine_arg(f, a, b))
        fhat = naive_dft(f)
        norm_inv = float(p) ** a.exp  # |a|_p^{-1}
        n = fhat.grid.size
        for j in range(lhs.grid.size):
            xi = lhs.grid.node(j)
            if a_kind == "unit":
                idx = fhat.grid.index_of(xi)
                fh = 0j
                if idx is not None:
                    fh = fhat.values[(idx * pow(unit, -1, n)) % n]
                twist = _character_of_quotient(-b * xi, unit)
            else:
                inv = rat(p, 1 / a_val)
                fh = evaluate(fhat, xi * inv)
                twist = (-b * inv * xi).character().value
            assert abs(lhs.values[j] - norm_inv * twist * fh) < 1e-10


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3]),
    st.integers(0, 2),
    st.integers(0, 2),
    st.integers(0, 2**20),
)
def test_parseval_property(p, n_exp, m_exp, seed):
    rng = np.random.default_rng(seed)
    f = random_test_function(rng, p, n_exp, m_exp)
    g = random_test_function(rng, p, n_exp, m_exp)
    assert abs(inner_product(f, g) - inner_product(fourier(f), fourier(g))) < 1e-10

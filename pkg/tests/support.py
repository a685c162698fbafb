"""Seeded generators shared by the unit and acceptance suites."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from padicwave import (
    CosetGrid,
    PAdicRational,
    TestFunction,
    TrigPolynomial,
    mask_from_zeros,
)
from padicwave.masks import SingularSystem

E1_ZEROS = (Fraction(1, 4), Fraction(3, 8), Fraction(7, 16), Fraction(15, 16))


def e1_mask() -> TrigPolynomial:
    """Degree-4 mask with the depth-covering zero set {1/4, 3/8, 7/16, 15/16}."""
    return mask_from_zeros(2, 4, list(E1_ZEROS))


def random_test_function(rng, p: int, n_exp: int, m_exp: int) -> TestFunction:
    grid = CosetGrid(p, n_exp, m_exp)
    vals = rng.standard_normal(grid.size) + 1j * rng.standard_normal(grid.size)
    return TestFunction(grid, vals)


def random_point(rng, p: int, max_abs_exp: int = 3) -> PAdicRational:
    e = int(rng.integers(-max_abs_exp, max_abs_exp + 1))
    u = int(rng.integers(-(p**4), p**4 + 1))
    return PAdicRational.from_fraction(p, Fraction(u) * Fraction(p) ** e)


def covering_zero_set(rng, p: int, max_depth: int) -> list[PAdicRational]:
    """Zeros r/p**s whose residue classes cover every integer coprime to p.

    A mask vanishing on such a set forces the scaling product to vanish on a
    full sphere, hence compact spectral support.
    """
    zeros: list[PAdicRational] = []

    def descend(r: int, s: int) -> None:
        if s >= max_depth or rng.random() < 0.55:
            zeros.append(PAdicRational.from_fraction(p, Fraction(r, p**s)))
            return
        for t in range(p):
            descend(r + t * p**s, s + 1)

    for r0 in range(1, p):
        descend(r0, 1)
    return zeros


def random_covering_mask(rng, p: int, n_exp: int, tries: int = 20) -> TrigPolynomial:
    """A random mask with m(0) = 1 whose scaling function has compact spectrum."""
    depth = n_exp + 2
    for _ in range(tries):
        zeros = covering_zero_set(rng, p, depth)
        try:
            return mask_from_zeros(p, len(zeros), zeros)
        except SingularSystem:
            continue
    raise RuntimeError("covering-mask sampler kept hitting singular systems")


def unimodular_pattern_mask(rng, p: int, n_exp: int) -> TrigPolynomial:
    """Interpolated mask matching the orthogonality pattern: zero at points
    with unit numerator, random unimodular value at the rest."""
    n = p ** (n_exp + 1)
    vals = np.zeros(n, dtype=np.complex128)
    vals[0] = 1.0
    for k in range(p, n, p):
        vals[k] = np.exp(2j * np.pi * rng.random())
    coeffs = p * np.fft.fft(vals) / n
    return TrigPolynomial(p, coeffs)

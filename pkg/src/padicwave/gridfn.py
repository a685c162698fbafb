"""Locally constant, compactly supported functions as finite coset-grid vectors.

A function supported on the ball of radius p**N and constant on balls of
radius p**(-M) is determined by its values on the p**(N+M) cosets of
B_{-M}(0) inside B_N(0).  Node j of the grid represents the coset of
j * p**(-N), j = 0, ..., p**(N+M)-1; this indexing is shared by every module
so that dilation is free and the Fourier transform is a plain prime-radix DFT.

Values are complex doubles.  Exact zero questions for rational data are
delegated to the cyclotomic evaluator in `oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fftcore import fft_prime_radix
from .padic import PAdicRational, require_prime


@dataclass(frozen=True)
class CosetGrid:
    """Coset representatives of B_{-constancy_exp}(0) inside B_{support_exp}(0)."""

    p: int
    support_exp: int
    constancy_exp: int

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.support_exp + self.constancy_exp < 0:
            raise ValueError("support_exp + constancy_exp must be nonnegative")

    @property
    def size(self) -> int:
        return self.p ** (self.support_exp + self.constancy_exp)

    def node(self, j: int) -> PAdicRational:
        """The grid point j * p**(-support_exp)."""
        return PAdicRational.from_fraction(
            self.p, Fraction(j) * Fraction(self.p) ** (-self.support_exp)
        )

    def nodes(self) -> list[PAdicRational]:
        return [self.node(j) for j in range(self.size)]

    def index_of(self, x: PAdicRational) -> int | None:
        """Index of the coset containing x, or None if |x|_p > p**support_exp."""
        if x.unit == 0:
            return 0
        t = x.exp + self.support_exp
        if t < 0:
            return None
        return (x.unit * self.p**t) % self.size


@dataclass(frozen=True, eq=False)
class TestFunction:
    """A member of the class D: values over a coset grid."""

    __test__ = False  # not a pytest case, despite the mathematical name

    grid: CosetGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.array(self.values, dtype=np.complex128)
        if vals.shape != (self.grid.size,):
            raise ValueError(f"expected {self.grid.size} values, got {vals.shape}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def at(self, x) -> complex:
        return evaluate(self, x)


def _coerce_point(p: int, x) -> PAdicRational:
    if isinstance(x, PAdicRational):
        if x.p != p:
            raise ValueError(f"point has prime {x.p}, function has {p}")
        return x
    return PAdicRational.from_fraction(p, x)


def indicator_ball(p: int, gamma: int) -> TestFunction:
    """Indicator of the ball B_gamma(0) on its minimal grid (one node)."""
    return TestFunction(CosetGrid(p, gamma, -gamma), np.ones(1))


def evaluate(f: TestFunction, x) -> complex:
    """f at any point of Z[1/p]: 0 outside the support ball, else the coset value."""
    x = _coerce_point(f.grid.p, x)
    j = f.grid.index_of(x)
    if j is None:
        return 0j
    return complex(f.values[j])


def embed(f: TestFunction, support_exp: int, constancy_exp: int) -> TestFunction:
    """The same function on a finer grid (pointwise equal on all of Q_p)."""
    grid = f.grid
    if support_exp < grid.support_exp or constancy_exp < grid.constancy_exp:
        raise ValueError("embedding must not shrink the grid")
    new = CosetGrid(grid.p, support_exp, constancy_exp)
    if new == grid:
        return f
    step = grid.p ** (support_exp - grid.support_exp)
    idx = np.arange(new.size)
    inside = idx % step == 0
    vals = np.zeros(new.size, dtype=np.complex128)
    vals[inside] = f.values[(idx[inside] // step) % grid.size]
    return TestFunction(new, vals)


def common_grid(f: TestFunction, g: TestFunction) -> CosetGrid:
    if f.grid.p != g.grid.p:
        raise ValueError("mixed primes")
    return CosetGrid(
        f.grid.p,
        max(f.grid.support_exp, g.grid.support_exp),
        max(f.grid.constancy_exp, g.grid.constancy_exp),
    )


def fourier(f: TestFunction) -> TestFunction:
    """Fourier transform; support and constancy exponents swap roles.

    On the grid this is the scaled prime-radix DFT
    F[l] = p**(-M) * sum_j f[j] * exp(2*pi*i*j*l/n),  n = p**(N+M).
    """
    grid = f.grid
    out = fft_prime_radix(f.values, grid.p, sign=1)
    out *= float(grid.p) ** (-grid.constancy_exp)
    return TestFunction(CosetGrid(grid.p, grid.constancy_exp, grid.support_exp), out)


def inverse_fourier(f: TestFunction) -> TestFunction:
    """Inverse transform: conjugate kernel, weight p**(-constancy_exp)."""
    grid = f.grid
    out = fft_prime_radix(f.values, grid.p, sign=-1)
    out *= float(grid.p) ** (-grid.constancy_exp)
    return TestFunction(CosetGrid(grid.p, grid.constancy_exp, grid.support_exp), out)


def shift(f: TestFunction, b) -> TestFunction:
    """The translate x -> f(x - b) for any b in Z[1/p].

    Translation preserves the local constancy radius, so the constancy
    exponent is unchanged; the support ball grows to contain B_N(0) + b.
    """
    b = _coerce_point(f.grid.p, b)
    if b.unit == 0:
        return f
    n_new = max(f.grid.support_exp, -b.exp)
    grid = CosetGrid(f.grid.p, n_new, f.grid.constancy_exp)
    vals = np.empty(grid.size, dtype=np.complex128)
    for j in range(grid.size):
        vals[j] = evaluate(f, grid.node(j) - b)
    return TestFunction(grid, vals)


def dilate(f: TestFunction, j: int) -> TestFunction:
    """x -> f(p**(-j) x): grid exponents move to (N-j, M+j), values unchanged."""
    grid = f.grid
    return TestFunction(
        CosetGrid(grid.p, grid.support_exp - j, grid.constancy_exp + j), f.values
    )


def affine_arg(f: TestFunction, a, b) -> TestFunction:
    """x -> f(a*x + b) for a nonzero a in Z[1/p] (generalizes shift and dilate)."""
    a = _coerce_point(f.grid.p, a)
    b = _coerce_point(f.grid.p, b)
    if a.unit == 0:
        raise ValueError("a must be nonzero")
    n_eff = f.grid.support_exp if b.unit == 0 else max(f.grid.support_exp, -b.exp)
    grid = CosetGrid(f.grid.p, a.exp + n_eff, f.grid.constancy_exp - a.exp)
    vals = np.empty(grid.size, dtype=np.complex128)
    for j in range(grid.size):
        vals[j] = evaluate(f, a * grid.node(j) + b)
    return TestFunction(grid, vals)


def inner_product(f: TestFunction, g: TestFunction) -> complex:
    """<f, g> = integral of f * conj(g) (unit ball has measure 1)."""
    grid = common_grid(f, g)
    fv = embed(f, grid.support_exp, grid.constancy_exp).values
    gv = embed(g, grid.support_exp, grid.constancy_exp).values
    return complex(np.vdot(gv, fv)) * float(grid.p) ** (-grid.constancy_exp)


def norm(f: TestFunction) -> float:
    return float(np.sqrt(abs(inner_product(f, f))))


def scale(f: TestFunction, c) -> TestFunction:
    return TestFunction(f.grid, f.values * complex(c))


def linear_combination(coeffs, fns) -> TestFunction:
    """sum_i coeffs[i] * fns[i] on the common refinement grid."""
    fns = list(fns)
    if not fns:
        raise ValueError("need at least one function")
    grid = fns[0].grid
    for g in fns[1:]:
        grid = CosetGrid(
            grid.p,
            max(grid.support_exp, g.grid.support_exp),
            max(grid.constancy_exp, g.grid.constancy_exp),
        )
    acc = np.zeros(grid.size, dtype=np.complex128)
    for c, g in zip(coeffs, fns, strict=True):
        acc += complex(c) * embed(g, grid.support_exp, grid.constancy_exp).values
    return TestFunction(grid, acc)


def max_abs_diff(f: TestFunction, g: TestFunction) -> float:
    grid = common_grid(f, g)
    fv = embed(f, grid.support_exp, grid.constancy_exp).values
    gv = embed(g, grid.support_exp, grid.constancy_exp).values
    return float(np.abs(fv - gv).max())

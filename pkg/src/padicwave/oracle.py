"""Independent slow-but-sure computations used by tests and certification.

Nothing here shares code with the fast paths it checks: the reference
transform is a direct double sum, mask zeros of rational masks are certified
in exact cyclotomic arithmetic, and refinement equations are verified by
evaluating both sides on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .gridfn import CosetGrid, TestFunction, dilate, linear_combination, max_abs_diff, shift
from .masks import TrigPolynomial
from .padic import PAdicRational

_NAIVE_LIMIT = 2**16


def naive_dft(f: TestFunction) -> TestFunction:
    """Reference for the fast transform: the defining sums, term by term."""
    n = f.grid.size
    if n > _NAIVE_LIMIT:
        raise ValueError(f"naive transform capped at size {_NAIVE_LIMIT}")
    p = f.grid.p
    table = np.exp(2j * np.pi * np.arange(n) / n)
    out = np.empty(n, dtype=np.complex128)
    js = np.arange(n, dtype=np.int64)
    for l in range(n):
        out[l] = (f.values * table[(js * l) % n]).sum()
    out *= float(p) ** (-f.grid.constancy_exp)
    return TestFunction(
        CosetGrid(p, f.grid.constancy_exp, f.grid.support_exp), out
    )


def naive_dft_rows(values: np.ndarray, rows) -> np.ndarray:
    """Selected output coordinates of the unnormalized DFT, by direct sums.

    Used to spot-check large transforms where the full n**2 reference is out
    of budget.
    """
    vals = np.asarray(values, dtype=np.complex128)
    n = vals.size
    js = np.arange(n, dtype=np.int64)
    out = np.empty(len(rows), dtype=np.complex128)
    for i, l in enumerate(rows):
        out[i] = (vals * np.exp(2j * np.pi * ((js * int(l)) % n) / n)).sum()
    return out


@dataclass(frozen=True)
class CyclotomicValue:
    """An element sum_t c_t * zeta**t of Q(zeta), zeta = exp(2*pi*i/p**level).

    Zero testing reduces the coefficient vector modulo the p**level-th
    cyclotomic polynomial sum_{t<p} x**(t*p**(level-1)); the value is zero as
    a complex number iff the reduction vanishes identically.
    """

    p: int
    level: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.p**self.level:
            raise ValueError("coefficient vector must have length p**level")

    def reduced(self) -> tuple[Fraction, ...]:
        """Coordinates in the power basis {zeta**t : t < p**(level-1)*(p-1)}."""
        if self.level == 0:
            return self.coeffs
        p, s = self.p, self.level
        block = p ** (s - 1)
        deg = block * (p - 1)
        out = list(self.coeffs[:deg])
        for i in range(deg, p**s):
            c = self.coeffs[i]
            if c == 0:
                continue
            r = i - deg
            for t in range(p - 1):
                out[r + t * block] -= c
        return tuple(out)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.reduced())

    def to_complex(self) -> complex:
        n = self.p**self.level
        zeta = np.exp(2j * np.pi / n)
        return complex(sum(float(c) * zeta**t for t, c in enumerate(self.coeffs) if c))


def cyclotomic_eval(m: TrigPolynomial, l: int, s: int) -> CyclotomicValue:
    """Exact value of p * m(l / p**s) for a mask with rational coefficients.

    The 1/p normalization is a nonzero rational, so the zero verdict is
    unaffected by dropping it.
    """
    if m.exact is None:
        raise ValueError("mask does not carry exact rational coefficients")
    if s < 0:
        raise ValueError("level must be nonnegative")
    p = m.p
    n = p**s
    coeffs = [Fraction(0)] * n
    for k, h in enumerate(m.exact):
        coeffs[(k * l) % n] += h
    return CyclotomicValue(p, s, tuple(coeffs))


def mask_is_zero_exact(m: TrigPolynomial, l: int, s: int) -> bool:
    return cyclotomic_eval(m, l, s).is_zero()


def mask_values_highprec(m: TrigPolynomial, points, dps: int = 50):
    """Mask values at rational points with mpmath at `dps` digits.

    Fallback for masks with non-rational coefficients: the coefficients are
    lifted from their float64 representation, so results carry the solve's
    own accuracy, evaluated without extra rounding.
    """
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(c) for c in m.coeffs]
        out = []
        for x in points:
            if not isinstance(x, PAdicRational):
                x = PAdicRational.from_fraction(m.p, x)
            total = mpmath.mpc(0)
            for k, h in enumerate(coeffs):
                f = (x * k).frac_part().as_fraction()
                total += h * mpmath.expjpi(2 * mpmath.mpf(f.numerator) / f.denominator)
            out.append(total / m.p)
        return out


def direct_refinement_residual(phi: TestFunction, m: TrigPolynomial) -> float:
    """Max grid deviation of phi from its refinement expansion under mask m.

    Evaluates phi(x) - sum_k h_k phi(x/p - k/p**(N+1)) on the common
    refinement grid; a residual at float noise level certifies the equation.
    """
    p = phi.grid.p
    n_exp = phi.grid.support_exp
    fine = dilate(phi, 1)
    terms = [
        shift(fine, PAdicRational.from_fraction(p, Fraction(k) * Fraction(p) ** (-n_exp)))
        for k in range(m.coeffs.size)
    ]
    rhs = linear_combination(m.coeffs, terms)
    return max_abs_diff(phi, rhs)

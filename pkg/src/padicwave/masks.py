"""Trigonometric-polynomial masks m(xi) = (1/p) * sum_k h_k chi_p(k xi).

The 1/p factor lives in the evaluation, not in the stored coefficients, so
`coeffs` matches the refinement coefficients h_k verbatim.  Coefficients known
to be rational may be carried exactly (tuple of Fractions) alongside the float
vector; the exact layer in `oracle` uses them for certified zero tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .padic import PAdicRational, require_prime

_INT64_SAFE_MODULUS = 2**40


class SingularSystem(Exception):
    """No mask satisfies the requested interpolation constraints within tolerance."""


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    p: int
    coeffs: np.ndarray
    exact: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        require_prime(self.p)
        vals = np.atleast_1d(np.array(self.coeffs, dtype=np.complex128))
        if vals.size == 0:
            raise ValueError("mask needs at least one coefficient")
        d = vals.size
        while d > 1 and vals[d - 1] == 0:
            d -= 1
        vals = vals[:d]
        vals.setflags(write=False)
        object.__setattr__(self, "coeffs", vals)
        if self.exact is not None:
            ex = tuple(Fraction(c) for c in self.exact)[:d]
            if any(abs(complex(fr) - c) > 1e-12 for fr, c in zip(ex, vals)):
                raise ValueError("exact coefficients disagree with float coefficients")
            object.__setattr__(self, "exact", ex)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1


def haar_mask(p: int) -> TrigPolynomial:
    """All-ones coefficients h_r = 1, r = 0..p-1; the natural self-similar mask."""
    return TrigPolynomial(p, np.ones(p), exact=(Fraction(1),) * p)


def eval_mask(m: TrigPolynomial, x) -> complex:
    """(1/p) * sum_k h_k chi_p(k*x); depends on x only through its fractional part."""
    if not isinstance(x, PAdicRational):
        x = PAdicRational.from_fraction(m.p, x)
    f = x.frac_part()
    if f.unit == 0:
        return complex(m.coeffs.sum()) / m.p
    s = -f.exp
    return complex(mask_values_at_level(m, s, np.array([f.unit]))[0])


def mask_values_at_level(m: TrigPolynomial, s: int, ls) -> np.ndarray:
    """Vectorized m(l / p**s) for an integer array ls (s <= 0 means integers)."""
    ls = np.asarray(ls)
    if s <= 0:
        return np.full(ls.shape, m.coeffs.sum() / m.p)
    mod = m.p**s
    ks = np.arange(m.coeffs.size)
    if mod <= _INT64_SAFE_MODULUS:
        expo = np.outer(ls % mod, ks) % mod
        w = np.exp(2j * np.pi / mod * expo)
    else:
        # int64 would overflow; fall back to exact Python integers
        w = np.array(
            [[_unit_root(mod, (int(l) * int(k)) % mod) for k in ks] for l in ls]
        )
    return (w @ m.coeffs) / m.p


def _unit_root(mod: int, num: int) -> complex:
    return np.exp(2j * np.pi * (num / mod))


def mask_from_zeros(p: int, degree: int, zeros, tol: float = 1e-10) -> TrigPolynomial:
    """A mask with m(0) = 1 vanishing at each prescribed point, degree <= `degree`.

    Solves the interpolation system over the character values.  With
    len(zeros) <= degree the square system on the first len(zeros)+1
    coefficients is tried first; if it is singular the full-width system is
    solved in the least-squares sense and the minimum-norm solution is kept.
    Raises SingularSystem when no candidate meets the residual tolerance.
    """
    require_prime(p)
    pts = [
        z
        if isinstance(z, PAdicRational)
        else PAdicRational.from_string(z, p)
        if isinstance(z, str)
        else PAdicRational.from_fraction(p, z)
        for z in zeros
    ]
    if len(pts) > degree:
        raise ValueError("need degree >= number of prescribed zeros")

    def rows(width: int) -> np.ndarray:
        a = np.ones((len(pts) + 1, width), dtype=np.complex128)
        for i, z in enumerate(pts):
            a[i + 1] = [(z * k).character().value for k in range(width)]
        return a

    rhs = np.zeros(len(pts) + 1, dtype=np.complex128)
    rhs[0] = p  # sum h_k = p * m(0)
    full = rows(degree + 1)

    square = full[:, : len(pts) + 1]
    try:
        h = np.linalg.solve(square, rhs)
        residual = np.abs(square @ h - rhs).max()
    except np.linalg.LinAlgError:
        residual = np.inf
    if residual > tol:
        h, *_ = np.linalg.lstsq(full, rhs, rcond=None)
        residual = np.abs(full @ h - rhs).max()
        if residual > tol:
            raise SingularSystem(
                f"interpolation residual {residual:.3e} exceeds {tol:.1e}"
            )
    return TrigPolynomial(p, h)

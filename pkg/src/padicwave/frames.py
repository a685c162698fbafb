"""Gram matrices of translate families and frame bounds via Hermitian spectra.

A finite translate family spans a subspace; its frame bounds over that span
are the extreme nonzero eigenvalues of the Gram matrix.  The block structure
behind the frame theorem is checked directly: translates beyond the support
radius land on disjoint spheres, so cross blocks must vanish, and bounds must
be stable when the truncation radius grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gridfn import TestFunction, dilate, inner_product, scale, shift
from .mra import DEFAULT_TOL
from .padic import PAdicRational, enumerate_shifts

RANK_TOL = 1e-9
STABILITY_TOL = 1e-8


class DegenerateFamily(Exception):
    """All Gram eigenvalues sit below the rank tolerance (or no members)."""


@dataclass(frozen=True)
class TranslateFamily:
    """{p**(j/2) * g(p**(-j) x - a) : a natural shift, |a|_p <= p**R}."""

    generator: TestFunction
    scale_exp: int = 0
    shift_radius_exp: int = 0

    def __post_init__(self) -> None:
        if self.shift_radius_exp < 0:
            raise ValueError("shift radius exponent must be nonnegative")

    @property
    def p(self) -> int:
        return self.generator.grid.p

    def members(self) -> list[TestFunction]:
        j = self.scale_exp
        base = dilate(self.generator, j)
        amp = float(self.p) ** (j / 2)
        pj = Fraction(self.p) ** j
        out = []
        for a in enumerate_shifts(self.p, self.shift_radius_exp):
            # g(p**(-j) x - a) = (dilated g) translated by p**j * a
            c = PAdicRational.from_fraction(self.p, a.as_fraction() * pj)
            out.append(scale(shift(base, c), amp))
        return out


@dataclass(frozen=True)
class FrameReport:
    gram_eigenvalues: tuple[float, ...]
    rank: int
    lower_bound: float
    upper_bound: float
    block_orthogonal: bool
    stable_under_radius_growth: bool


def gram_matrix(family: TranslateFamily) -> np.ndarray:
    return gram_of(family.members())


def gram_of(members: list[TestFunction]) -> np.ndarray:
    n = len(members)
    g = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        for k in range(i, n):
            val = inner_product(members[i], members[k])
            g[i, k] = val
            g[k, i] = np.conj(val)
    return g


def _bounds_of(members: list[TestFunction]) -> tuple[np.ndarray, int, float, float]:
    if not members:
        raise DegenerateFamily("empty family")
    eig = np.linalg.eigvalsh(gram_of(members))
    top = float(eig[-1])
    if top <= 0 or not np.isfinite(top):
        raise DegenerateFamily("Gram matrix has no positive spectrum")
    cut = RANK_TOL * top
    kept = eig[eig > cut]
    if kept.size == 0:
        raise DegenerateFamily("all eigenvalues below rank tolerance")
    return eig, int(kept.size), float(kept[0]), float(kept[-1])


def frame_bounds(family: TranslateFamily, tol: float = DEFAULT_TOL) -> FrameReport:
    """Frame bounds of the family over its span, with stability diagnostics.

    The lower/upper bounds are the extreme Gram eigenvalues above a relative
    rank tolerance.  Stability recomputes them with the shift radius grown by
    two and requires agreement, which is the finite-truncation content of the
    frame theorem's block decomposition.
    """
    eig, rank, lo, hi = _bounds_of(family.members())
    grown = TranslateFamily(family.generator, family.scale_exp, family.shift_radius_exp + 2)
    _, _, lo2, hi2 = _bounds_of(grown.members())
    stable = abs(lo - lo2) <= STABILITY_TOL and abs(hi - hi2) <= STABILITY_TOL
    blocks = _blocks_orthogonal(family.generator, 2, tol)
    return FrameReport(
        gram_eigenvalues=tuple(float(v) for v in eig),
        rank=rank,
        lower_bound=lo,
        upper_bound=hi,
        block_orthogonal=blocks,
        stable_under_radius_growth=stable,
    )


def _blocks_orthogonal(
    psi: TestFunction, n_max: int, tol: float, support_exp: int | None = None
) -> bool:
    p = psi.grid.p
    n_exp = psi.grid.support_exp if support_exp is None else support_exp
    base_radius = max(n_exp, 0)
    block0 = [shift(psi, a) for a in enumerate_shifts(p, base_radius)]
    for n in range(1, n_max + 1):
        ring = [
            a
            for a in enumerate_shifts(p, base_radius + n)
            if a.unit != 0 and -a.exp == base_radius + n
        ]
        for a in ring:
            member = shift(psi, a)
            for f in block0:
                if abs(inner_product(f, member)) > tol:
                    return False
    return True


def block_orthogonality(
    psi: TestFunction,
    n_max: int,
    tol: float = DEFAULT_TOL,
    support_exp: int | None = None,
) -> bool:
    """Cross inner products between the core translate block (|a| <= 2**N) and
    each sphere block (|a| = 2**(N+n), n = 1..n_max) vanish.

    `support_exp` overrides the grid's declared N, which lets tests exercise
    the failure mode of a generator whose support exceeds the declared ball.
    """
    if psi.grid.p != 2:
        raise ValueError("block orthogonality is a p = 2 check")
    return _blocks_orthogonal(psi, n_max, tol, support_exp)


def multi_scale_bounds(
    psi: TestFunction,
    j_min: int,
    j_max: int,
    shift_radius_exp: int,
    tol: float = DEFAULT_TOL,
) -> FrameReport:
    """Frame bounds of the union family over scales j in [j_min, j_max].

    Scales of a true wavelet are mutually orthogonal, so the union spectrum
    repeats the single-scale spectrum and the bounds must match it.
    """
    if psi.grid.p != 2:
        raise ValueError("multi-scale bounds is a p = 2 check")
    if j_min > j_max:
        raise DegenerateFamily("empty scale range")
    members: list[TestFunction] = []
    for j in range(j_min, j_max + 1):
        members.extend(TranslateFamily(psi, j, shift_radius_exp).members())
    eig, rank, lo, hi = _bounds_of(members)
    grown: list[TestFunction] = []
    for j in range(j_min, j_max + 1):
        grown.extend(TranslateFamily(psi, j, shift_radius_exp + 2).members())
    _, _, lo2, hi2 = _bounds_of(grown)
    stable = abs(lo - lo2) <= STABILITY_TOL and abs(hi - hi2) <= STABILITY_TOL
    return FrameReport(
        gram_eigenvalues=tuple(float(v) for v in eig),
        rank=rank,
        lower_bound=lo,
        upper_bound=hi,
        block_orthogonal=_blocks_orthogonal(psi, 2, tol),
        stable_under_radius_growth=stable,
    )

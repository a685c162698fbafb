"""Scaling functions from masks, refinability, MRA certification, orthogonality.

The pipeline: a mask with m(0) = 1 defines a candidate transform
phi_hat(xi) = prod_{j>=0} m(xi / p**(N-j)).  At a point l/p**t all factors
with level beyond N+t equal m(0) = 1, so the product is the finite
prod_{s=1}^{N+t} m(l/p**s).  Compact support is detected sphere by sphere:
once phi_hat vanishes on the whole sphere of radius p**(M+1), the shared
leading factors force it to vanish on every larger sphere.

Certification follows the two-condition criterion: refinable, and at least
p**(M+N) - p**N zeros of phi_hat among the grid points l/p**M.  Orthogonality
of the translate family is decided twice, by Gram inner products in the time
domain and by the spectral identity on |phi_hat|**2, which must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError
from .fftcore import fft_prime_radix
from .gridfn import (
    CosetGrid,
    TestFunction,
    fourier,
    inner_product,
    shift,
)
from .masks import TrigPolynomial, eval_mask, mask_values_at_level
from .oracle import mask_is_zero_exact
from .padic import PAdicRational, enumerate_shifts

DEFAULT_TOL = 1e-9
REFINE_TOL = 1e-8


class NoCompactSupport(Exception):
    """The mask's infinite product never vanishes on a full sphere."""


class Inconsistent(Exception):
    """The refinement system has no solution within tolerance."""

    def __init__(self, mask: TrigPolynomial, residual: float):
        super().__init__(f"refinement residual {residual:.3e}")
        self.mask = mask
        self.residual = residual


class ScalingResult(NamedTuple):
    phi_hat: TestFunction
    support_exp: int


def mask_product_value(m: TrigPolynomial, n_exp: int, x) -> complex:
    """phi_hat(x) for the normalized product: finite once |x|_p is fixed.

    At x = u/p**t only the factors m(u/p**s), s = 1..N+t, differ from
    m(0) = 1.
    """
    if not isinstance(x, PAdicRational):
        x = PAdicRational.from_fraction(m.p, x)
    if x.unit == 0:
        return 1.0 + 0j
    t = -x.exp
    out = 1.0 + 0j
    for s in range(1, n_exp + t + 1):
        out *= complex(mask_values_at_level(m, s, np.array([x.unit % m.p**s]))[0])
    return out


class _ExactZeroMemo:
    """Memoized exact zero tests m(r / p**s) = 0 for a rational mask."""

    def __init__(self, m: TrigPolynomial):
        if m.exact is None:
            raise ValueError("mask has no exact coefficients")
        self.m = m
        self._cache: dict[tuple[int, int], bool] = {}

    def is_zero(self, l: int, s: int) -> bool:
        r = l % self.m.p**s
        key = (s, r)
        if key not in self._cache:
            self._cache[key] = mask_is_zero_exact(self.m, r, s)
        return self._cache[key]

    def product_is_zero(self, l: int, levels: int) -> bool:
        return any(self.is_zero(l, s) for s in range(1, levels + 1))


def _product_on_levels(m: TrigPolynomial, ls: np.ndarray, levels: int) -> np.ndarray:
    out = np.ones(ls.shape, dtype=np.complex128)
    for s in range(1, levels + 1):
        out *= mask_values_at_level(m, s, ls)
    return out


def scaling_from_mask(
    m: TrigPolynomial,
    n_exp: int,
    max_support: int = 20,
    tol: float = DEFAULT_TOL,
    exact: bool = False,
) -> ScalingResult:
    """Least support exponent M and the grid values of phi_hat on (M, N).

    Searches M upward from -N; candidate M is accepted when phi_hat vanishes
    at every point l/p**(M+1) of the next sphere (l coprime to p).  With
    `exact` and a rational mask the vanishing verdict is the cyclotomic one;
    otherwise |value| <= tol.
    """
    p = m.p
    if n_exp < 0:
        raise PreconditionError("support scale N must be nonnegative")
    if abs(eval_mask(m, 0) - 1) > 1e-9:
        raise PreconditionError("mask must satisfy m(0) = 1")
    memo = _ExactZeroMemo(m) if exact and m.exact is not None else None

    for m_exp in range(-n_exp, max_support + 1):
        levels = n_exp + m_exp + 1
        ls = np.array([l for l in range(1, p**levels) if l % p], dtype=np.int64)
        if memo is not None:
            ok = all(memo.product_is_zero(int(l), levels) for l in ls)
        else:
            vals = _product_on_levels(m, ls, levels)
            ok = bool(np.abs(vals).max() <= tol)
        if ok:
            grid = CosetGrid(p, m_exp, n_exp)
            values = _product_on_levels(m, np.arange(grid.size), n_exp + m_exp)
            if memo is not None:
                zero = [
                    memo.product_is_zero(l, n_exp + m_exp) for l in range(grid.size)
                ]
                values[np.array(zero, dtype=bool)] = 0.0
            return ScalingResult(TestFunction(grid, values), m_exp)
    raise NoCompactSupport(
        f"no support exponent up to {max_support} gives a vanishing sphere"
    )


def _refinement_system(phi: TestFunction):
    """Matrix and right side of phi_hat(xi) = m(xi/p**N) * phi_hat(p*xi) at
    every point xi = l/p**(M+1): the full grid where either side can live."""
    grid = phi.grid
    p, n_exp, m_exp = grid.p, grid.support_exp, grid.constancy_exp
    if n_exp < 0:
        raise PreconditionError("phi must be supported in a ball B_N with N >= 0")
    ph = fourier(phi)
    n_rows = p ** (m_exp + n_exp + 1)
    n_cols = p ** (n_exp + 1)
    ls = np.arange(n_rows, dtype=np.int64)
    ks = np.arange(n_cols, dtype=np.int64)
    w = np.exp(2j * np.pi / n_rows * (np.outer(ls, ks) % n_rows))
    phi_at_pl = ph.values[ls % ph.grid.size]
    a = w * phi_at_pl[:, None] / p
    b = np.zeros(n_rows, dtype=np.complex128)
    inside = ls % p == 0
    b[inside] = ph.values[(ls[inside] // p) % ph.grid.size]
    return a, b


def extract_mask(phi: TestFunction, tol: float = REFINE_TOL):
    """Recover the refinement mask of phi by solving the frequency-side system.

    Returns (mask, max residual); raises Inconsistent, with the least-squares
    mask attached, when the residual exceeds `tol` (meaning: not refinable).
    """
    a, b = _refinement_system(phi)
    h, *_ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.abs(a @ h - b).max())
    mask = TrigPolynomial(phi.grid.p, h)
    if residual > tol:
        raise Inconsistent(mask, residual)
    return mask, residual


def shift_closure_residual(phi: TestFunction) -> float:
    """Worst least-squares residual of expanding any natural translate of phi
    (|b|_p <= p**N) over the fine translates phi(./p - k/p**(N+1)).

    A residual at noise level certifies the inclusion that makes the ladder
    of translate spans nested; it is computed independently of zero counting,
    so the two can be played against each other as theorem checks.
    """
    grid = phi.grid
    a, b0 = _refinement_system(phi)
    p, n_exp = grid.p, grid.support_exp
    n_rows = a.shape[0]
    ls = np.arange(n_rows, dtype=np.int64)
    shifts = p ** max(n_exp, 0)
    rhs = np.empty((n_rows, shifts), dtype=np.complex128)
    for k in range(shifts):
        rhs[:, k] = np.exp(2j * np.pi / n_rows * ((k * ls) % n_rows)) * b0
    sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    return float(np.abs(a @ sol - rhs).max())


def zero_indices(
    phi_hat: TestFunction,
    tol: float = DEFAULT_TOL,
    exact_mask: TrigPolynomial | None = None,
) -> tuple[int, ...]:
    """Grid indices l with phi_hat(l / p**M) = 0.

    With a rational `exact_mask` (assumed to generate phi_hat through the
    product formula) the cyclotomic verdict wins over the float comparison.
    """
    if exact_mask is not None and exact_mask.exact is not None:
        memo = _ExactZeroMemo(exact_mask)
        levels = phi_hat.grid.support_exp + phi_hat.grid.constancy_exp
        return tuple(
            l for l in range(phi_hat.grid.size) if memo.product_is_zero(l, levels)
        )
    return tuple(int(l) for l in np.nonzero(np.abs(phi_hat.values) <= tol)[0])


def zero_count(
    phi_hat: TestFunction,
    tol: float = DEFAULT_TOL,
    exact_mask: TrigPolynomial | None = None,
) -> int:
    return len(zero_indices(phi_hat, tol, exact_mask))


def effective_support_exp(f: TestFunction, tol: float = DEFAULT_TOL) -> int | None:
    """Least gamma with f = 0 outside B_gamma(0); None for the zero vector."""
    nz = np.nonzero(np.abs(f.values) > tol)[0]
    if nz.size == 0:
        return None
    s_exp = f.grid.support_exp
    total = s_exp + f.grid.constancy_exp
    best = None
    for l in nz:
        l = int(l)
        v = total
        if l:
            v = 0
            while l % f.grid.p == 0:
                l //= f.grid.p
                v += 1
            v = min(v, total)
        cand = s_exp - v
        best = cand if best is None else max(best, cand)
    return best


@dataclass(frozen=True)
class MraReport:
    p: int
    support_exp: int
    constancy_exp: int
    refinable: bool
    extracted_mask: TrigPolynomial | None
    residual: float
    zero_count: int
    zero_index_set: tuple[int, ...]
    threshold: int
    phi_hat_at_zero: complex
    is_mra: bool
    orthonormal_gram: bool
    orthonormal_spectral: bool
    phi_hat_support_exp: int | None
    sphere_checks: tuple[tuple[str, float], ...]
    tol: float
    refine_tol: float


def verify_mra(
    phi: TestFunction,
    tol: float = DEFAULT_TOL,
    refine_tol: float = REFINE_TOL,
    exact_mask: TrigPolynomial | None = None,
) -> MraReport:
    """Certify whether phi generates an MRA: refinable, enough spectrum zeros,
    nonvanishing phi_hat(0); orthogonality of translates reported both ways."""
    grid = phi.grid
    if grid.support_exp < 0:
        raise PreconditionError("phi must be supported in a ball B_N with N >= 0")
    ph = fourier(phi)
    try:
        mask, residual = extract_mask(phi, refine_tol)
        refinable = True
    except Inconsistent as bad:
        mask, residual, refinable = bad.mask, bad.residual, False
    zidx = zero_indices(ph, tol, exact_mask)
    threshold = grid.size - grid.p**grid.support_exp
    phi0 = complex(ph.values[0])
    is_mra = refinable and len(zidx) >= threshold and abs(phi0) > tol
    eff = effective_support_exp(ph, tol)
    checks = _sphere_checks(ph, eff, tol)
    return MraReport(
        p=grid.p,
        support_exp=grid.support_exp,
        constancy_exp=grid.constancy_exp,
        refinable=refinable,
        extracted_mask=mask,
        residual=residual,
        zero_count=len(zidx),
        zero_index_set=zidx,
        threshold=threshold,
        phi_hat_at_zero=phi0,
        is_mra=is_mra,
        orthonormal_gram=orthonormality_gram(phi, tol),
        orthonormal_spectral=orthonormality_spectral(phi, tol),
        phi_hat_support_exp=eff,
        sphere_checks=checks,
        tol=tol,
        refine_tol=refine_tol,
    )


def _sphere_checks(
    ph: TestFunction, eff: int | None, tol: float
) -> tuple[tuple[str, float], ...]:
    """|phi_hat| on the first grid sphere beyond the effective support."""
    if eff is None or eff >= ph.grid.support_exp:
        return ()
    p = ph.grid.p
    gap = ph.grid.support_exp - (eff + 1)
    out = []
    for l in range(ph.grid.size):
        if l and _valuation_capped(l, p, gap + 1) == gap:
            out.append((str(ph.grid.node(l)), float(abs(ph.values[l]))))
    return tuple(out)


def _valuation_capped(l: int, p: int, cap: int) -> int:
    v = 0
    while v < cap and l % p == 0:
        l //= p
        v += 1
    return v


def orthonormality_gram(phi: TestFunction, tol: float = DEFAULT_TOL) -> bool:
    """Translate orthonormality by direct inner products.

    Distinct natural shifts differ by another natural shift, so checking
    <phi, phi(.-a)> = delta_{a,0} over |a|_p <= p**N covers every pair; one
    ring beyond the support radius is checked too, where disjoint supports
    force zero.
    """
    p = phi.grid.p
    n_exp = max(phi.grid.support_exp, 0)
    for a in enumerate_shifts(p, n_exp + 1):
        val = inner_product(phi, shift(phi, a))
        want = 1.0 if a.unit == 0 else 0.0
        if abs(val - want) > tol:
            return False
    return True


def orthonormality_spectral(phi: TestFunction, tol: float = DEFAULT_TOL) -> bool:
    """Translate orthonormality via the discrete transform of |phi_hat|**2.

    The family is orthonormal iff sum_l |phi_hat(l/p**M)|**2 chi_p(l*k/p**(M+N))
    equals p**N * delta_{k0} for k = 0, ..., p**N - 1.
    """
    ph = fourier(phi)
    n = ph.grid.size
    spectrum = fft_prime_radix(np.abs(ph.values) ** 2, ph.grid.p, sign=1)
    n_exp = max(phi.grid.support_exp, 0)
    scale = float(ph.grid.p) ** n_exp
    for k in range(ph.grid.p**n_exp):
        want = scale if k == 0 else 0.0
        if abs(spectrum[k % n] - want) > tol * max(scale, 1.0):
            return False
    return True


def classify_orthogonal_mask(
    m: TrigPolynomial, n_exp: int, tol: float = DEFAULT_TOL
) -> bool:
    """Zero/modulus pattern deciding orthonormality of the resulting translates:
    m vanishes at k/p**(N+1) for p coprime to k and has modulus one there for
    p dividing k (k = 1, ..., p**(N+1)-1)."""
    if abs(eval_mask(m, 0) - 1) > tol:
        raise PreconditionError("mask must satisfy m(0) = 1")
    p = m.p
    ks = np.arange(1, p ** (n_exp + 1), dtype=np.int64)
    vals = mask_values_at_level(m, n_exp + 1, ks)
    coprime = ks % p != 0
    if np.abs(vals[coprime]).max(initial=0.0) > tol:
        return False
    if np.abs(np.abs(vals[~coprime]) - 1.0).max(initial=0.0) > tol:
        return False
    return True


def density_criterion(phi: TestFunction, tol: float = DEFAULT_TOL) -> bool:
    """Whether the dilates of span{phi(.-a)} can be dense in L2.

    For a locally constant compactly supported function the union of the
    dilated supports of phi_hat is all of Q_p iff phi_hat(0) != 0: a nonzero
    value at 0 puts a whole ball around 0 inside the support, whose dilates
    exhaust Q_p; a zero value leaves 0 outside every dilated support (the
    support of a locally constant function is open).
    """
    ph = fourier(phi)
    return bool(abs(ph.values[0]) > tol)


def orthogonal_support_bound_holds(phi: TestFunction, tol: float = DEFAULT_TOL) -> bool:
    """Orthogonal scaling functions have spectrum inside the unit ball.

    Returns False exactly on a counterexample: an MRA-certified phi with
    orthonormal translates, phi_hat(0) != 0, and effective spectral support
    strictly larger than B_0(0).
    """
    report = verify_mra(phi, tol)
    eff = report.phi_hat_support_exp
    return not (
        report.is_mra
        and report.orthonormal_gram
        and abs(report.phi_hat_at_zero) > tol
        and eff is not None
        and eff > 0
    )

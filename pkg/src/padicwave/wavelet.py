"""Wavelet synthesis over the 2-adic line: mask, function, and span checks.

Given a certified MRA scaling function with mask m0 of degree at most 2**N,
a wavelet mask n0 (degree <= 2**N) is any trigonometric polynomial vanishing
at l/2**(M+N) wherever phi_hat(l/2**M) does not, chosen so that the algebraic
polynomials of n0 and m0 share no root.  The wavelet is
psi_hat(xi) = n0(xi/2**N) * phi_hat(2*xi); its translates are orthogonal to
every translate of phi, and the banded resultant system of shifted
coefficient rows reconstructs the fine-scale translates of phi from
translates of psi and phi, which is the spanning property.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError
from .gridfn import (
    CosetGrid,
    TestFunction,
    dilate,
    evaluate,
    fourier,
    inner_product,
    inverse_fourier,
    linear_combination,
    max_abs_diff,
    shift,
)
from .masks import TrigPolynomial, mask_values_at_level
from .mra import DEFAULT_TOL, scaling_from_mask, verify_mra
from .padic import PAdicRational

SEARCH_TRIALS = 256


class NoWaveletMask(Exception):
    """The null-space search found no candidate with nonzero resultant."""


class NotApplicable(Exception):
    """A check whose precondition fails (for example, zero resultant)."""


class WaveletConstructionError(Exception):
    """A constructed candidate failed its verification checks."""


def _require_p2(p: int) -> None:
    if p != 2:
        raise PreconditionError("wavelet synthesis is implemented for p = 2 only")


@dataclass(frozen=True, eq=False)
class ResultantSystem:
    """The banded matrix of shifted n0 rows over shifted m0 rows.

    Row l of each block carries the coefficient vector shifted right by l,
    l = 0..2**N-1; the determinant is the resultant of the two algebraic
    polynomials of formal degree 2**N, nonzero iff they share no root.
    """

    size: int
    g_row: np.ndarray
    h_row: np.ndarray
    matrix: np.ndarray
    det: complex


def _padded(coeffs: np.ndarray, width: int) -> np.ndarray:
    if coeffs.size > width:
        raise PreconditionError(f"degree {coeffs.size - 1} exceeds bound {width - 1}")
    out = np.zeros(width, dtype=np.complex128)
    out[: coeffs.size] = coeffs
    return out


def resultant_system(m0: TrigPolynomial, n0: TrigPolynomial, n_exp: int) -> ResultantSystem:
    _require_p2(m0.p)
    _require_p2(n0.p)
    half = 2**n_exp
    g = _padded(n0.coeffs, half + 1)
    h = _padded(m0.coeffs, half + 1)
    mat = np.zeros((2 * half, 2 * half), dtype=np.complex128)
    for l in range(half):
        mat[l, l : l + half + 1] = g
        mat[half + l, l : l + half + 1] = h
    det = complex(np.linalg.det(mat))
    return ResultantSystem(2 * half, g, h, mat, det)


def polynomials_share_root(g: np.ndarray, h: np.ndarray, tol: float = 1e-7) -> bool:
    """Brute-force common-root test for the algebraic polynomials sum c_k z**k."""
    gs = np.trim_zeros(np.asarray(g, dtype=np.complex128), "b")
    hs = np.trim_zeros(np.asarray(h, dtype=np.complex128), "b")
    if gs.size <= 1 or hs.size <= 1:
        return False
    rg = np.roots(gs[::-1])
    rh = np.roots(hs[::-1])
    return bool(min(abs(a - b) for a in rg for b in rh) < tol)


def resultant_nonzero(
    m0: TrigPolynomial, n0: TrigPolynomial, n_exp: int, tol: float = DEFAULT_TOL
):
    """(|det| > tol, the assembled system); cross-checked against root isolation.

    The determinant is the formal degree-2**N resultant, so the root
    comparison is meaningful only when at least one leading entry is nonzero
    (otherwise the formal resultant vanishes identically).
    """
    system = resultant_system(m0, n0, n_exp)
    nonzero = bool(abs(system.det) > tol)
    if system.size <= 16 and (system.g_row[-1] != 0 or system.h_row[-1] != 0):
        shared = polynomials_share_root(system.g_row, system.h_row)
        if nonzero and shared and abs(system.det) > 1e-6:
            raise RuntimeError("resultant and root isolation disagree")
    return nonzero, system


def build_wavelet_mask(
    m0: TrigPolynomial,
    phi_hat: TestFunction,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    trials: int = SEARCH_TRIALS,
) -> TrigPolynomial:
    """A wavelet mask for the MRA of m0: vanishes where phi_hat does not.

    The constraint system fixes n0 on the nonzero set of phi_hat; candidates
    come from its null space, first the leading singular direction, then a
    seeded deterministic stream of random combinations, until one clears the
    nonzero-resultant requirement.  The largest-magnitude coefficient is
    normalized to 1.
    """
    _require_p2(m0.p)
    half = 2 ** phi_hat.grid.constancy_exp
    if m0.degree > half:
        raise PreconditionError("mask degree must be at most 2**N")
    nonzero = [int(l) for l in np.nonzero(np.abs(phi_hat.values) > tol)[0]]
    if len(nonzero) > half:
        raise PreconditionError(
            "phi_hat has too many nonzero grid values; certify the MRA first"
        )
    n = phi_hat.grid.size
    ks = np.arange(half + 1, dtype=np.int64)
    rows = np.exp(2j * np.pi / n * (np.outer(np.array(nonzero, dtype=np.int64), ks) % n))
    _, sv, vh = np.linalg.svd(rows) if nonzero else (None, np.zeros(0), np.eye(half + 1, dtype=complex))
    rank = int((sv > 1e-10 * (sv[0] if sv.size else 1.0)).sum())
    basis = vh[rank:].conj().T
    if basis.shape[1] == 0:
        raise NoWaveletMask("constraint system has a trivial null space")

    rng = np.random.default_rng(seed)
    for trial in range(trials):
        if trial == 0:
            vec = basis[:, 0]
        else:
            mix = rng.standard_normal(basis.shape[1]) + 1j * rng.standard_normal(
                basis.shape[1]
            )
            vec = basis @ mix
        peak = np.argmax(np.abs(vec))
        if abs(vec[peak]) <= tol:
            continue
        cand = TrigPolynomial(m0.p, vec / vec[peak])
        ok, _ = resultant_nonzero(m0, cand, phi_hat.grid.constancy_exp, tol)
        if ok:
            return cand
    raise NoWaveletMask(f"no nonzero-resultant candidate in {trials} trials")


def psi_from_mask(n0: TrigPolynomial, phi_hat: TestFunction) -> TestFunction:
    """The wavelet from its mask: psi_hat(xi) = n0(xi/2**N) * phi_hat(2*xi).

    Multiplying the argument by 2 halves the 2-adic norm, so the spectrum can
    reach one ball beyond phi_hat's grid: the result lives on (M+1, N).
    """
    _require_p2(n0.p)
    m_exp = phi_hat.grid.support_exp
    n_exp = phi_hat.grid.constancy_exp
    grid = CosetGrid(2, m_exp + 1, n_exp)
    ls = np.arange(grid.size, dtype=np.int64)
    mask_vals = mask_values_at_level(n0, m_exp + 1 + n_exp, ls)
    phi_vals = np.array(
        [
            evaluate(phi_hat, PAdicRational.from_fraction(2, Fraction(int(l)) * Fraction(2) ** (-m_exp)))
            for l in ls
        ]
    )
    psi_hat = TestFunction(grid, mask_vals * phi_vals)
    return inverse_fourier(psi_hat)


def complement_check(phi: TestFunction, psi: TestFunction, tol: float = DEFAULT_TOL) -> bool:
    """Orthogonality of every psi translate to every phi translate.

    The inner product as a function of the relative shift c is constant on
    balls of radius 2**(-M) and supported in |c| <= 2**N, so the finite coset
    grid of shifts decides all pairs.
    """
    _require_p2(phi.grid.p)
    n_exp = max(phi.grid.support_exp, psi.grid.support_exp)
    m_exp = phi.grid.constancy_exp
    for k in range(2 ** (n_exp + m_exp)):
        c = PAdicRational.from_fraction(2, Fraction(k) * Fraction(2) ** (-n_exp))
        if abs(inner_product(phi, shift(psi, c))) > tol:
            return False
    return True


def spanning_check(
    m0: TrigPolynomial,
    n0: TrigPolynomial,
    phi_hat: TestFunction,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Fine-scale translates of phi recovered from psi and phi translates.

    Inverts the resultant system on the stacked translate identities and
    verifies each phi(./2 - k/2**(N+1)) against the recovered combination on
    the common grid.  Raises NotApplicable when the resultant vanishes.
    """
    ok, system = resultant_nonzero(m0, n0, phi_hat.grid.constancy_exp)
    if not ok:
        raise NotApplicable("resultant is zero; the translate system is singular")
    phi = inverse_fourier(phi_hat)
    psi = psi_from_mask(n0, phi_hat)
    n_exp = phi_hat.grid.constancy_exp
    half = 2**n_exp
    lhs = [
        shift(psi, PAdicRational.from_fraction(2, Fraction(l) * Fraction(2) ** (-n_exp)))
        for l in range(half)
    ] + [
        shift(phi, PAdicRational.from_fraction(2, Fraction(l) * Fraction(2) ** (-n_exp)))
        for l in range(half)
    ]
    inv = np.linalg.inv(system.matrix)
    fine = dilate(phi, 1)
    for k in range(2 * half):
        # phi(x/2 - k/2**(N+1)) is the dilated phi translated by k/2**N
        target = shift(
            fine, PAdicRational.from_fraction(2, Fraction(k) * Fraction(2) ** (-n_exp))
        )
        combo = linear_combination(inv[k], lhs)
        if max_abs_diff(combo, target) > tol:
            return False
    return True


@dataclass(frozen=True, eq=False)
class WaveletPackage:
    m0: TrigPolynomial
    n0: TrigPolynomial
    psi: TestFunction
    psi_hat: TestFunction
    system: ResultantSystem
    complement_ok: bool
    spanning_ok: bool
    seed: int


def build_wavelet_package(
    m0: TrigPolynomial,
    n_exp: int,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_support: int = 20,
) -> WaveletPackage:
    """Full synthesis for a certified mask: scaling, wavelet mask, wavelet, checks.

    Fails loudly (WaveletConstructionError) rather than emitting a package
    whose complement or spanning verification does not hold.
    """
    _require_p2(m0.p)
    phi_hat, _ = scaling_from_mask(m0, n_exp, max_support=max_support, tol=tol)
    phi = inverse_fourier(phi_hat)
    report = verify_mra(phi, tol)
    if not report.is_mra:
        raise PreconditionError("mask does not certify as an MRA generator")
    n0 = build_wavelet_mask(m0, phi_hat, seed=seed, tol=tol)
    psi = psi_from_mask(n0, phi_hat)
    psi_hat = fourier(psi)
    _, system = resultant_nonzero(m0, n0, n_exp, tol)
    complement_ok = complement_check(phi, psi, tol)
    spanning_ok = spanning_check(m0, n0, phi_hat, max(tol, 1e-9))
    if not (complement_ok and spanning_ok):
        raise WaveletConstructionError(
            f"verification failed: complement={complement_ok} spanning={spanning_ok}"
        )
    return WaveletPackage(m0, n0, psi, psi_hat, system, complement_ok, spanning_ok, seed)

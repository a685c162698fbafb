"""Scaling functions, MRA certification and wavelet frames on the p-adic line.

Everything is computed on finite coset grids: exact arithmetic in Z[1/p]
locates points, a prime-radix FFT moves between a function and its spectrum,
and certification criteria reduce to finitely many grid identities.
"""

from .config import RunConfig
from .frames import (
    DegenerateFamily,
    FrameReport,
    TranslateFamily,
    block_orthogonality,
    frame_bounds,
    gram_matrix,
    multi_scale_bounds,
)
from .gridfn import (
    CosetGrid,
    TestFunction,
    affine_arg,
    dilate,
    embed,
    evaluate,
    fourier,
    indicator_ball,
    inner_product,
    inverse_fourier,
    linear_combination,
    max_abs_diff,
    norm,
    scale,
    shift,
)
from .masks import SingularSystem, TrigPolynomial, eval_mask, haar_mask, mask_from_zeros
from .mra import (
    Inconsistent,
    MraReport,
    NoCompactSupport,
    classify_orthogonal_mask,
    density_criterion,
    effective_support_exp,
    extract_mask,
    mask_product_value,
    orthogonal_support_bound_holds,
    orthonormality_gram,
    orthonormality_spectral,
    scaling_from_mask,
    shift_closure_residual,
    verify_mra,
    zero_count,
    zero_indices,
)
from .padic import POS_INFINITY, PAdicRational, RootOfUnity, enumerate_shifts
from .wavelet import (
    NoWaveletMask,
    NotApplicable,
    ResultantSystem,
    WaveletConstructionError,
    WaveletPackage,
    build_wavelet_mask,
    build_wavelet_package,
    complement_check,
    psi_from_mask,
    resultant_nonzero,
    spanning_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Iterative radix-p FFT for transform sizes p**k.

The coset-grid Fourier transform reduces to the discrete transform
X[l] = sum_j x[j] * exp(sign * 2*pi*i * j*l / n) with n a prime power, so a
single prime radix suffices.  Decimation in time: the input is permuted into
base-p digit-reversed order, then k stages each merge p interleaved
sub-transforms of length L into one of length p*L,

    X[r*L + t] = sum_q w_p^(q*r) * (w_m^(q*t) * A_q[t]),   m = p*L,

i.e. a twiddle multiply followed by a p-point DFT across the sub-transform
axis.  Stages are vectorized over all blocks at once; the radix-2 butterfly
is special-cased (no general p-point DFT needed).
"""

from __future__ import annotations

import numpy as np


def prime_power_log(n: int, p: int) -> int:
    """The k with n == p**k, or a ValueError."""
    if n < 1:
        raise ValueError("size must be positive")
    k = 0
    m = 1
    while m < n:
        m *= p
        k += 1
    if m != n:
        raise ValueError(f"size {n} is not a power of {p}")
    return k


def digit_reversal_permutation(n: int, p: int) -> np.ndarray:
    """Index permutation reversing base-p digits (length n = p**k)."""
    k = prime_power_log(n, p)
    rev = np.zeros(n, dtype=np.int64)
    tmp = np.arange(n, dtype=np.int64)
    for _ in range(k):
        rev = rev * p + tmp % p
        tmp //= p
    return rev


def fft_prime_radix(values, p: int, sign: int = 1) -> np.ndarray:
    """Unnormalized DFT with kernel exp(sign * 2*pi*i * j*l / n).

    `values` must have length p**k.  sign=+1 matches the p-adic analysis
    convention chi_p(j*l/n); sign=-1 gives the conjugate transform.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x = np.asarray(values, dtype=np.complex128)
    n = x.size
    if n == 1:
        return x.copy()
    y = x[digit_reversal_permutation(n, p)]
    dft_p = np.exp(sign * 2j * np.pi / p * np.outer(np.arange(p), np.arange(p)))
    length = 1
    while length < n:
        step = length * p
        ang = sign * 2j * np.pi / step
        blocks = y.reshape(-1, p, length)
        if p == 2:
            tw = np.exp(ang * np.arange(length))
            lo = blocks[:, 0, :]
            hi = blocks[:, 1, :] * tw
            out = np.empty_like(blocks)
            out[:, 0, :] = lo + hi
            out[:, 1, :] = lo - hi
        else:
            tw = np.exp(ang * np.outer(np.arange(p), np.arange(length)))
            out = np.einsum("rq,bql->brl", dft_p, blocks * tw)
        y = out.reshape(-1)
        length = step
    return y

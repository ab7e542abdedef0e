"""Numba-jitted scalar kernels for truncated q-products.

Every function here has a drop-in twin in ``_kernels_numpy``; the active
implementation is chosen once at import time by :mod:`ellqg.backend`.
All products use uniform truncation: exactly N factors per base, no
adaptive early exit, so results are bit-reproducible across backends up
to floating-point associativity.
"""

import numba as nb

NAME = "numba"

_sig1 = nb.complex128(nb.complex128, nb.complex128, nb.int64)
_sig2 = nb.complex128(nb.complex128, nb.complex128, nb.complex128, nb.int64)


@nb.njit(_sig1, cache=True)
def qpoch1(z, b, n):
    """(z; b)_n = prod_{k<n} (1 - z b^k)."""
    acc = 1.0 + 0.0j
    w = 1.0 + 0.0j
    for _ in range(n):
        acc *= 1.0 - z * w
        w *= b
    return acc


@nb.njit(_sig2, cache=True)
def qpoch2(z, b1, b2, n):
    """(z; b1, b2)_n = prod_{j,k<n} (1 - z b1^j b2^k)."""
    acc = 1.0 + 0.0j
    w1 = 1.0 + 0.0j
    for _ in range(n):
        zz = z * w1
        w2 = 1.0 + 0.0j
        for _ in range(n):
            acc *= 1.0 - zz * w2
            w2 *= b2
        w1 *= b1
    return acc


@nb.njit(_sig1, cache=True)
def theta_pair(z, p, n):
    """(z; p)_n (p/z; p)_n, the z-dependent part of the triple product."""
    acc = 1.0 + 0.0j
    w = 1.0 + 0.0j
    pz = p / z
    for _ in range(n):
        acc *= (1.0 - z * w) * (1.0 - pz * w)
        w *= p
    return acc


@nb.njit(
    nb.complex128(nb.complex128, nb.complex128, nb.complex128, nb.complex128, nb.complex128, nb.int64),
    cache=True,
)
def qpoch2_pair_ratio(zn, zd, b1n, b1d, b2, n):
    """prod_{j,k<n} (1 - zn b1n^j b2^k) / (1 - zd b1d^j b2^k).

    Factor-wise ratio of two double-base products; when zn == zd the
    j = k = 0 factors coincide, so removable common zeros cancel exactly
    instead of producing 0/0.
    """
    acc = 1.0 + 0.0j
    wn = 1.0 + 0.0j
    wd = 1.0 + 0.0j
    for _ in range(n):
        an = zn * wn
        ad = zd * wd
        if an != ad:  # identical rows contribute exactly 1 (shared zeros cancel)
            w2 = 1.0 + 0.0j
            for _ in range(n):
                acc *= (1.0 - an * w2) / (1.0 - ad * w2)
                w2 *= b2
        wn *= b1n
        wd *= b1d
    return acc


@nb.njit(_sig1, cache=True)
def ratio_1144_22(zi, q2, n):
    """prod_{k<n} (1 - zi*q2^{2k})(1 - zi*q2^{2k+2}) / (1 - zi*q2^{2k+1})^2.

    Grouped form of (zi;q^4)(q^4 zi;q^4)/(q^2 zi;q^4)^2 that stays O(1) per
    factor even when |zi| is huge (the z -> 0 limit of the trigonometric
    normalization), where the ungrouped products overflow.
    """
    acc = 1.0 + 0.0j
    w = 1.0 + 0.0j
    q4 = q2 * q2
    for _ in range(n):
        a = zi * w
        acc *= (1.0 - a) * (1.0 - a * q4) / ((1.0 - a * q2) * (1.0 - a * q2))
        w *= q4
    return acc

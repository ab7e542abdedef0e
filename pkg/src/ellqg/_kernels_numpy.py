"""Pure-numpy fallback kernels, vectorized over the truncation index.

Same contracts as ``_kernels_numba``; selected via ELLQG_BACKEND=numpy or
automatically when numba is unavailable.
"""

import numpy as np

NAME = "numpy"


def _powers(b, n):
    return np.power(complex(b), np.arange(n))


def qpoch1(z, b, n):
    return complex(np.prod(1.0 - z * _powers(b, n)))


def qpoch2(z, b1, b2, n):
    grid = np.outer(_powers(b1, n), _powers(b2, n))
    return complex(np.prod(1.0 - z * grid))


def theta_pair(z, p, n):
    w = _powers(p, n)
    return complex(np.prod((1.0 - z * w) * (1.0 - (p / z) * w)))


def qpoch2_pair_ratio(zn, zd, b1n, b1d, b2, n):
    g2 = _powers(b2, n)
    an = zn * np.outer(_powers(b1n, n), g2)
    ad = zd * np.outer(_powers(b1d, n), g2)
    ratio = np.where(an == ad, 1.0, (1.0 - an) / np.where(an == ad, 1.0, 1.0 - ad))
    return complex(np.prod(ratio))


def ratio_1144_22(zi, q2, n):
    a = zi * np.power(complex(q2) ** 2, np.arange(n))
    q4 = complex(q2) ** 2
    return complex(np.prod((1.0 - a) * (1.0 - a * q4) / (1.0 - a * q2) ** 2))

"""Theta-function kernels: multi-base Pochhammer products, Theta_p, the
Jacobi bracket [u], elliptic shifted factorials and branch-fixed powers.

Conventions:
    Theta_p(z) = (z;p) (p/z;p) (p;p)
    [u]        = q^(u^2/r - u) Theta_p(q^(2u)) / (p;p)^3
    [u]_m      = [u][u+1]...[u+m-1]
    upow(u, a) = q^(2ua) = exp(2ua log q), principal log q.

[u] is odd and satisfies [u+r] = -[u]; the tau-direction law as implemented
here carries an extra sign relative to the usual citation of it, see
quasiperiod_tau_factor.
"""

import cmath
from functools import lru_cache

from .backend import kernels as _K
from .errors import DomainError, PoleError
from .params import POLE_EPS


def qpoch(z, bases, n):
    """Truncated multi-base product (z; b1, ..., bm) with n factors per base."""
    if n < 1:
        raise DomainError("need n >= 1")
    z = complex(z)
    bases = [complex(b) for b in bases]
    for b in bases:
        if not abs(b) < 1.0:
            raise DomainError(f"non-convergent product: |base| = {abs(b)} >= 1")
    if len(bases) == 1:
        return _K.qpoch1(z, bases[0], n)
    if len(bases) == 2:
        return _K.qpoch2(z, bases[0], bases[1], n)
    # m >= 3 is cold; recurse on the leading base
    acc = 1.0 + 0.0j
    w = 1.0 + 0.0j
    for _ in range(n):
        acc *= qpoch(z * w, bases[1:], n)
        w *= bases[0]
    return acc


@lru_cache(maxsize=None)
def _pochp(p, n):
    """(p; p)_n, cached per nome."""
    return _K.qpoch1(p, p, n)


def theta_big(z, params, starred=False):
    """Theta_p(z) = (z;p)(p/z;p)(p;p) at truncation trunc_N."""
    z = complex(z)
    if z == 0:
        raise DomainError("Theta_p(0) is undefined")
    p = params.p_star if starred else params.p
    return _K.theta_pair(z, p, params.trunc_N) * _pochp(p, params.trunc_N)


def upow(u, a, params):
    """q^(2ua) = exp(2ua log q); multiplicative in a for fixed u."""
    return cmath.exp(2.0 * complex(u) * complex(a) * params.logq)


def bracket(u, params, starred=False):
    """The Jacobi bracket [u] (or [u]* with r -> r*)."""
    u = complex(u)
    r = params.r_star if starred else params.r
    p = params.p_star if starred else params.p
    n = params.trunc_N
    pref = cmath.exp((u * u / r - u) * params.logq)
    z = cmath.exp(2.0 * u * params.logq)
    pp = _pochp(p, n)
    return pref * _K.theta_pair(z, p, n) / (pp * pp)


def bracket_fact(u, m, params, starred=False):
    """Elliptic shifted factorial [u]_m = prod_{j<m} [u+j]; [u]_0 = 1."""
    if m < 0:
        raise DomainError("need m >= 0")
    acc = 1.0 + 0.0j
    for j in range(m):
        acc *= bracket(u + j, params, starred)
    return acc


def bracket_prod_fact(args, m, params, starred=False):
    """prod over a of [a]_m, the [a1, a2, ...]_m multi-symbol."""
    acc = 1.0 + 0.0j
    for a in args:
        acc *= bracket_fact(a, m, params, starred)
    return acc


def quasiperiod_tau_factor(u, params):
    """Multiplier f with [u + r*tau] = f(u) [u].

    Direct expansion of the prefactor exponent gives
    f(u) = -exp(-pi i (2u/r + tau)); the sign in front is forced by
    r*tau*log q = -pi i and is confirmed numerically by the theta suite.
    """
    return -cmath.exp(-1j * cmath.pi * (2.0 * u / params.r + params.tau))


def guarded_div(num, den):
    """num/den raising PoleError when den sits on (or hugs) a theta zero."""
    if abs(den) < POLE_EPS:
        raise PoleError(f"denominator {den!r} within {POLE_EPS} of a zero")
    return num / den

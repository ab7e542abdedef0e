"""Arithmetic context: the modular parameters (q, r, r*) and derived nomes.

All fractional powers of q are taken through exp(. * log q) with the
principal branch of log q, fixed once here; every other module routes its
powers through :func:`upow` so branch choices cannot drift apart.
"""

import cmath
import os
from dataclasses import dataclass, field

from .errors import DomainError

#: absolute magnitude below which a denominator counts as a theta zero
POLE_EPS = 1e-12

#: environment variable overriding the default truncation order
TRUNC_ENV = "ELLQG_TRUNC_N"


def default_trunc():
    raw = os.environ.get(TRUNC_ENV)
    if raw is None:
        return 64
    n = int(raw)
    if n < 1:
        raise DomainError(f"{TRUNC_ENV} must be >= 1, got {n}")
    return n


@dataclass(frozen=True)
class ModularParams:
    """Fixed (q, r, r*) context with derived p = q^{2r}, p* = q^{2r*}.

    r_star defaults to r, the c = 0 regime in which all representation
    suites run; a distinct r_star is only meaningful for the scalar
    rho-function identities.
    """

    q: complex
    r: complex
    r_star: complex = None
    trunc_N: int = field(default_factory=default_trunc)
    tol: float = 1e-8

    def __post_init__(self):
        q = complex(self.q)
        r = complex(self.r)
        rs = r if self.r_star is None else complex(self.r_star)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "r_star", rs)
        if not 0.0 < abs(q) < 1.0:
            raise DomainError(f"need 0 < |q| < 1, got |q| = {abs(q)}")
        if self.trunc_N < 1:
            raise DomainError("trunc_N must be >= 1")
        if not self.tol > 0.0:
            raise DomainError("tol must be positive")
        logq = cmath.log(q)
        object.__setattr__(self, "logq", logq)
        p = cmath.exp(2.0 * r * logq)
        ps = cmath.exp(2.0 * rs * logq)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "p_star", ps)
        for label, nome in (("p", p), ("p*", ps)):
            if not abs(nome) < 1.0:
                raise DomainError(f"need |{label}| < 1, got {abs(nome)}")
        tol2 = self.tol * self.tol
        n = self.trunc_N
        if abs(p) ** n >= tol2 or abs(q) ** (4 * n) >= tol2:
            raise DomainError(
                f"trunc_N={n} too small: need |p|^N and |q|^(4N) below tol^2"
            )
        # tau with p = exp(-2 pi i / tau)
        object.__setattr__(self, "tau", -2j * cmath.pi / cmath.log(p))

    @property
    def is_unstarred(self):
        return self.r_star == self.r

    def starred(self):
        """The same context with r replaced by r*."""
        return ModularParams(self.q, self.r_star, self.r_star, self.trunc_N, self.tol)


@dataclass(frozen=True)
class UPoint:
    """Additive spectral/dynamical coordinate u with its multiplicative image.

    z is always computed from u (never the reverse), so fractional powers
    z^a = exp(2ua log q) are single-valued in u.
    """

    u: complex
    z: complex = None

    @classmethod
    def of(cls, u, params):
        u = complex(u)
        return cls(u, cmath.exp(2.0 * u * params.logq))

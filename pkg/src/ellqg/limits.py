"""Degeneration chain checks: the R-matrix collapse
elliptic -> trigonometric -> non-affine / non-dynamical -> constant, and
the series collapse 12_V_11 -> 10_W_9 -> 8_W_7 / 4_phi_3 -> 3_phi_2,
with q-Racah / q-Hahn identifications of the basic end.

Limits are verified numerically only; each limit stage is evaluated at a
decreasing sequence of limit parameters and must improve monotonically,
while exact-transformation stages must meet tolerance outright.  The
trigonometric normalization is evaluated factor-grouped so the z -> 0
stage does not overflow.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .params import ModularParams
from .rmatrix import (r_constant_matrix, r_nonaffine_matrix,
                      r_nondynamical_matrix, r_trig_matrix, rho_plus,
                      rho_trig)
from .series import PhiSeriesSpec, VSeriesSpec, basic_W, basic_phi, elliptic_V, qshifted


@dataclass
class LimitStage:
    name: str
    knob: str
    values: tuple
    deviations: tuple
    threshold: float
    exact: bool = False

    @property
    def monotone(self):
        return all(b < a for a, b in zip(self.deviations, self.deviations[1:]))

    @property
    def passed(self):
        ok = self.deviations[-1] < self.threshold
        return ok and (self.exact or self.monotone)


@dataclass
class LimitReport:
    stages: list = field(default_factory=list)

    @property
    def passed(self):
        return all(st.passed for st in self.stages)


def _rel(a, b):
    return float(np.abs(np.asarray(a) - np.asarray(b)).max()
                 / max(1.0, np.abs(np.asarray(b)).max()))


def _params_for_p(q, p, trunc_N, tol):
    r = math.log(abs(p)) / (2.0 * math.log(abs(q)))
    return ModularParams(q, r, trunc_N=trunc_N, tol=tol)


def _reduced_bracket(u, pa):
    """[u] with its q^(u^2/r) prefactor stripped: q^{-u} Theta_p(q^{2u})/(p;p)^3.

    The degeneration arrows hold up to fractional powers of q; the
    q^(u^2/r)-type dressings die only at rate 1/r, so entrywise limits are
    taken on the stripped brackets, whose p -> 0 error is O(p)."""
    from .theta import bracket

    u = complex(u)
    return bracket(u, pa) * cmath.exp(-(u * u / pa.r) * pa.logq)


def _reduced_r_entries(u, s, pa):
    br = lambda x: _reduced_bracket(x, pa)
    den = br(1 + u)
    bs = br(s)
    m = np.eye(4, dtype=complex)
    m[1, 1] = br(s + 1) * br(s - 1) * br(u) / (bs * bs * den)
    m[1, 2] = br(1) * br(s + u) / (bs * den)
    m[2, 1] = br(1) * br(s - u) / (bs * den)
    m[2, 2] = br(u) / den
    return m


def r_limit_chain(u, P, q=0.5, trunc_N=64, tol=1e-8,
                  p_values=(1e-6, 1e-8, 1e-10), lim_tol=1e-5):
    """Verify the R-matrix degeneration arrows plus the commuting square.

    Matrix parts are compared entrywise on stripped brackets; the scalar
    normalization is checked on the p -> 0 arrow only (at fixed z the
    z -> 0 arrows of the scalar are defined only up to its exact period-2
    oscillation in u, whose constant representative the displayed matrices
    absorb as q^(1/2))."""
    report = LimitReport()
    z = cmath.exp(2.0 * complex(u) * cmath.log(q))
    x = cmath.exp(2.0 * complex(P) * cmath.log(q))
    n = trunc_N
    rq = cmath.sqrt(q)

    trig = r_trig_matrix(z, x, q)
    devs = []
    rhodevs = []
    for p in p_values:
        pa = _params_for_p(q, p, trunc_N, tol)
        devs.append(_rel(_reduced_r_entries(u, P, pa), trig))
        # strip z^(1/2r); the conventional q^(1/2) is the display's choice
        red_rho = rho_plus(u, pa) / cmath.exp(complex(u) / pa.r * pa.logq)
        rhodevs.append(abs(rq * red_rho - rho_trig(z, q, n))
                       / abs(rho_trig(z, q, n)))
    report.stages.append(LimitStage("R_elliptic->R_trig", "p", p_values,
                                    tuple(devs), lim_tol))
    report.stages.append(LimitStage("rho->rho_trig", "p", p_values,
                                    tuple(rhodevs), lim_tol))

    # u -> infinity (z -> 0) of the trigonometric matrix part
    zs = tuple(cmath.exp(2.0 * (ub + complex(u).imag * 1j) * cmath.log(q))
               for ub in (8.0, 12.0, 16.0))
    target = r_nonaffine_matrix(x, q) / rq
    devs = tuple(_rel(r_trig_matrix(zz, x, q), target) for zz in zs)
    report.stages.append(LimitStage("R_trig->R_nonaffine", "z", zs, devs, lim_tol))

    # P -> infinity (x -> 0) of the trigonometric matrix part
    xs = tuple(cmath.exp(2.0 * (pb + complex(P).imag * 1j) * cmath.log(q))
               for pb in (8.0, 12.0, 16.0))
    target = r_nondynamical_matrix(z, q)
    devs = tuple(_rel(r_trig_matrix(z, xx, q), target) for xx in xs)
    report.stages.append(LimitStage("R_trig->R_nondynamical", "x", xs, devs, lim_tol))

    # both routes into the constant matrix
    const = r_constant_matrix(q)
    devs = tuple(_rel(r_nonaffine_matrix(xx, q), const) for xx in xs)
    report.stages.append(LimitStage("R_nonaffine->R_const", "x", xs, devs, lim_tol))
    devs = tuple(_rel(r_nondynamical_matrix(zz, q), const / rq) for zz in zs)
    report.stages.append(LimitStage("R_nondynamical->R_const", "z", zs, devs, lim_tol))

    # commuting square: both routes agree entrywise at the tightest knobs
    route1 = r_trig_matrix(zs[-1], xs[-1], q)
    route2 = r_nondynamical_matrix(zs[-1], q)
    report.stages.append(LimitStage("square_commutes", "z,x", (zs[-1],),
                                    (_rel(route1, route2),), 1e-6, exact=True))
    return report


@dataclass(frozen=True)
class ChainParams:
    """Integer data of the Theorem-4.19 series family plus numeric points."""

    s: int
    k: int
    m: int
    l1: int
    l2: int
    u: complex
    a: complex
    P: complex

    @property
    def l(self):
        return self.l1 + self.l2 - 2 * self.s

    def v_args(self):
        u0 = self.P + self.m - 2 * self.k
        args = (-self.k, -self.s, self.P - self.k, self.l2 - self.s + 1,
                -self.u + self.a - (self.l1 - 1) / 2.0,
                self.u - self.a - self.l + (self.l1 - 1) / 2.0
                + 2 * self.m - 2 * self.k + self.P,
                self.P + self.m - 2 * self.k + self.l1 + 1)
        return u0, args


def v12_chain(cp, q=0.5, trunc_N=64, tol=1e-8,
              p_values=(1e-6, 1e-8, 1e-10), lim_tol=1e-5, exact_tol=1e-9):
    """Verify the 12_V_11 -> 10_W_9 -> 8_W_7 = 4_phi_3 -> 3_phi_2 chain."""
    report = LimitReport()
    lq = cmath.log(q)
    qe = lambda x: cmath.exp(2.0 * complex(x) * lq)
    Q = q * q
    u0, args = cp.v_args()
    s, k, m, l1, l2, l = cp.s, cp.k, cp.m, cp.l1, cp.l2, cp.l
    P = cp.P

    # stage 1: elliptic series -> 10_W_9 as p -> 0
    w10 = basic_W(qe(u0), [qe(x) for x in args], Q, Q)
    devs = []
    for p in p_values:
        pa = _params_for_p(q, p, trunc_N, tol)
        v = elliptic_V(VSeriesSpec(u0, args, 11, pa))
        devs.append(abs(v - w10) / max(1.0, abs(w10)))
    report.stages.append(LimitStage("12V11->10W9", "p", p_values, tuple(devs), lim_tol))

    # stage 2: u -> infinity collapses the u-parameter pair; argument q^{-2(l-m)}
    bs8 = [qe(-s), qe(-k), qe(P - k), qe(l2 - s + 1), qe(P + m - 2 * k + l1 + 1)]
    w8 = basic_W(qe(u0), bs8, Q, qe(-(l - m)))
    devs = []
    ubigs = (8.0, 12.0, 16.0)
    for ub in ubigs:
        uu = ub + complex(cp.u).imag * 1j
        cpu = ChainParams(s, k, m, l1, l2, uu, cp.a, P)
        _, args_u = cpu.v_args()
        w10u = basic_W(qe(u0), [qe(x) for x in args_u], Q, Q)
        devs.append(abs(w10u - w8) / max(1.0, abs(w8)))
    report.stages.append(LimitStage("10W9->8W7", "u", ubigs, tuple(devs), lim_tol))

    # stage 3: exact transformation 8_W_7 = prefactor * 4_phi_3
    qs = lambda x, nn: qshifted(qe(x), Q, nn)
    pref = (qs(P + m - 2 * k + 1, s) * qs(m + 1, s)
            * qs(P + m - k - l2 + s, s) * qs(k - l1, s)) \
        / (qs(P + m - k + 1, s) * qs(m - k + 1, s)
           * qs(P + m - 2 * k - l2 + s, s) * qs(-l1, s)) * qe(-s * k)
    phi4 = basic_phi(PhiSeriesSpec(
        (qe(-s), qe(-k), qe(-(P + m - k + s)), qe(l - m + 1)),
        (qe(-(s + m)), qe(-(P + m - k + l1 - l - 1)), qe(l1 + 1 - s - k)),
        Q, Q))
    report.stages.append(LimitStage("8W7=pref*4phi3", "-", ("exact",),
                                    (abs(w8 - pref * phi4) / max(1.0, abs(w8)),),
                                    exact_tol, exact=True))

    # stage 4: P -> infinity to the 3_phi_2 form
    phi3 = basic_phi(PhiSeriesSpec(
        (qe(-s), qe(-k), qe(-(s + l + 1))), (qe(-(s + m)), qe(-l1)), Q, Q))
    target = qs(m + 1, s) / qs(m - k + 1, s) * phi3
    devs = []
    pbigs = (8.0, 12.0, 16.0)
    for pb in pbigs:
        pp = pb + complex(P).imag * 1j
        prefp = (qs(pp + m - 2 * k + 1, s) * qs(m + 1, s)
                 * qs(pp + m - k - l2 + s, s) * qs(k - l1, s)) \
            / (qs(pp + m - k + 1, s) * qs(m - k + 1, s)
               * qs(pp + m - 2 * k - l2 + s, s) * qs(-l1, s)) * qe(-s * k)
        phi4p = basic_phi(PhiSeriesSpec(
            (qe(-s), qe(-k), qe(-(pp + m - k + s)), qe(l - m + 1)),
            (qe(-(s + m)), qe(-(pp + m - k + l1 - l - 1)), qe(l1 + 1 - s - k)),
            Q, Q))
        devs.append(abs(prefp * phi4p - target) / max(1.0, abs(target)))
    report.stages.append(LimitStage("4phi3->3phi2", "P", pbigs, tuple(devs), lim_tol))
    return report


# --- q-Racah / q-Hahn identification ------------------------------------


def q_racah(n, x, alpha, beta, gamma, delta, q):
    """R_n(mu(x)) = 4phi3(q^-n, ab q^{n+1}, q^-x, gd q^{x+1}; aq, bdq, gq; q, q)."""
    return basic_phi(PhiSeriesSpec(
        (q ** -n, alpha * beta * q ** (n + 1), q ** -x, gamma * delta * q ** (x + 1)),
        (alpha * q, beta * delta * q, gamma * q), q, q, kmax=n))


def q_hahn(n, x, alpha, beta, N, q):
    """Q_n(q^-x) = 3phi2(q^-n, ab q^{n+1}, q^-x; aq, q^-N; q, q)."""
    return basic_phi(PhiSeriesSpec(
        (q ** -n, alpha * beta * q ** (n + 1), q ** -x),
        (alpha * q, q ** -N), q, q, kmax=n))


def q_hahn_orthogonality(N, alpha, beta, q):
    """Max |off-diagonal| / max |diagonal| of the weighted Gram matrix."""
    w = []
    for x in range(N + 1):
        num = qshifted(alpha * q, q, x) * qshifted(q ** -N, q, x)
        den = qshifted(q, q, x) * qshifted(q ** -N / beta, q, x)
        w.append(num / den * (alpha * beta * q) ** (-x))
    gram = np.zeros((N + 1, N + 1), dtype=complex)
    for n1 in range(N + 1):
        for n2 in range(N + 1):
            gram[n1, n2] = sum(
                w[x] * q_hahn(n1, x, alpha, beta, N, q)
                * q_hahn(n2, x, alpha, beta, N, q) for x in range(N + 1))
    diag = max(abs(gram[i, i]) for i in range(N + 1))
    off = max((abs(gram[i, j]) for i in range(N + 1) for j in range(N + 1) if i != j),
              default=0.0)
    return off / diag


def q_racah_ttr_residual(n, x, alpha, beta, gamma, delta, q):
    """Three-term recurrence residual of the q-Racah family."""
    if n < 1:
        raise DomainError("need n >= 1")
    An = ((1 - alpha * q ** (n + 1)) * (1 - alpha * beta * q ** (n + 1))
          * (1 - beta * delta * q ** (n + 1)) * (1 - gamma * q ** (n + 1))) \
        / ((1 - alpha * beta * q ** (2 * n + 1)) * (1 - alpha * beta * q ** (2 * n + 2)))
    Cn = (q * (1 - q ** n) * (1 - beta * q ** n)
          * (gamma - alpha * beta * q ** n) * (delta - alpha * q ** n)) \
        / ((1 - alpha * beta * q ** (2 * n)) * (1 - alpha * beta * q ** (2 * n + 1)))
    lam = -(1 - q ** -x) * (1 - gamma * delta * q ** (x + 1))
    r = lambda nn: q_racah(nn, x, alpha, beta, gamma, delta, q)
    lhs = lam * r(n)
    rhs = An * r(n + 1) - (An + Cn) * r(n) + Cn * r(n - 1)
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def q_racah_duality_residual(n, x, alpha, beta, gamma, delta, q):
    """R_n(mu(x); a,b,g,d) = R_x(mu*(n); g,d,a,b)."""
    lhs = q_racah(n, x, alpha, beta, gamma, delta, q)
    rhs = q_racah(x, n, gamma, delta, alpha, beta, q)
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def qracah_identify(q=0.6, N=3):
    """Desk-scale structural checks tying the basic end of the chain to the
    q-Racah / q-Hahn families."""
    alpha = q ** (-N - 1)  # alpha q = q^-N fixes the finite grid
    beta = 0.43
    gamma, delta = 0.37, 0.81
    out = {}
    out["hahn_orthogonality"] = q_hahn_orthogonality(N, 0.52, 0.43, q)
    out["racah_degree0"] = abs(q_racah(0, 2, alpha, beta, gamma, delta, q) - 1.0)
    out["hahn_degree0"] = abs(q_hahn(0, 1, 0.52, 0.43, N, q) - 1.0)
    out["racah_ttr"] = max(q_racah_ttr_residual(n, x, alpha, beta, gamma, delta, q)
                           for n in (1, 2) for x in (0, 1, 2))
    out["racah_duality"] = max(q_racah_duality_residual(n, x, alpha, beta, gamma, delta, q)
                               for n in (0, 1, 2) for x in (0, 1, 2))
    return out

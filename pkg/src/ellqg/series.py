"""Terminating hypergeometric series: the very-well-poised balanced
elliptic sum s+1_V_s, its Frenkel-Turaev closed form, and the basic
(trigonometric) series r+1_phi_r and very-well-poised r+1_W_r used by the
degeneration chain.

Series are summed in increasing order with Kahan compensation; termination
indices come from nonpositive-integer (resp. q^(-2k)-type) parameters and
adding terms past them changes nothing, since the extra factorial carries
an exact zero.
"""

from dataclasses import dataclass, field

from .errors import DomainError, NonTerminatingError, PoleError
from .params import POLE_EPS, ModularParams
from .theta import bracket, bracket_fact, guarded_div

_INT_EPS = 1e-9


def _as_nonpos_int(x):
    """The nonnegative k with x = -k, or None."""
    x = complex(x)
    k = round(x.real)
    if k <= 0 and abs(x - k) < _INT_EPS:
        return -k
    return None


class _Kahan:
    """Compensated accumulator for complex terms."""

    def __init__(self):
        self.s = 0.0 + 0.0j
        self.c = 0.0 + 0.0j

    def add(self, x):
        y = x - self.c
        t = self.s + y
        self.c = (t - self.s) - y
        self.s = t


@dataclass(frozen=True)
class VSeriesSpec:
    """Arguments of s+1_V_s(u0; u1, ..., u_{s-4})."""

    u0: complex
    numerator_params: tuple
    s: int
    params: ModularParams

    def __post_init__(self):
        object.__setattr__(self, "numerator_params",
                           tuple(complex(x) for x in self.numerator_params))
        if len(self.numerator_params) != self.s - 4:
            raise DomainError(
                f"{self.s + 1}_V_{self.s} takes {self.s - 4} parameters, "
                f"got {len(self.numerator_params)}"
            )


def termination_index(spec):
    """Least k with some u_i = -k; NonTerminatingError if no u_i qualifies."""
    ks = [k for k in map(_as_nonpos_int, spec.numerator_params) if k is not None]
    if not ks:
        raise NonTerminatingError("no numerator parameter is a nonpositive integer")
    return min(ks)


def check_balanced(spec):
    """Residual of sum(u_i) = (s-7)/2 + (s-5)/2 * u0 and pass/fail."""
    target = (spec.s - 7) / 2.0 + (spec.s - 5) / 2.0 * complex(spec.u0)
    resid = abs(sum(spec.numerator_params) - target)
    return resid < spec.params.tol, resid


def elliptic_V(spec):
    """Terminating s+1_V_s(u0; u1, ...) summed to its termination index."""
    pa = spec.params
    u0 = complex(spec.u0)
    kmax = termination_index(spec)
    b0 = bracket(u0, pa)
    if abs(b0) < POLE_EPS:
        raise PoleError("[u0] = 0")
    acc = _Kahan()
    term = 1.0 + 0.0j  # running product of the factorial ratios
    for j in range(kmax + 1):
        acc.add(guarded_div(bracket(u0 + 2 * j, pa), b0) * term)
        num = bracket(u0 + j, pa)
        den = bracket(1 + j, pa)
        for ui in spec.numerator_params:
            num *= bracket(ui + j, pa)
            den *= bracket(u0 + 1 - ui + j, pa)
        if j < kmax and abs(den) < POLE_EPS:
            raise PoleError(f"denominator factorial vanished at order {j + 1}")
        term *= num / den if abs(den) >= POLE_EPS else 0.0
    return acc.s


def frenkel_turaev_rhs(alpha, beta, gamma, delta, s, params):
    """Closed product side of the 10_V_9 summation:
    [g-b, g+b, a+d, a-d]_s / [a-b, a+b, g+d, g-d]_s."""
    if s < 0:
        raise DomainError("need s >= 0")
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for x in (gamma - beta, gamma + beta, alpha + delta, alpha - delta):
        num *= bracket_fact(x, s, params)
    for x in (alpha - beta, alpha + beta, gamma + delta, gamma - delta):
        den *= bracket_fact(x, s, params)
    return guarded_div(num, den)


def frenkel_turaev_spec(alpha, beta, gamma, delta, s, params):
    """The 10_V_9 whose sum frenkel_turaev_rhs evaluates."""
    return VSeriesSpec(
        beta - gamma - s,
        (-s, alpha - gamma, -alpha - gamma + 1 - s, beta + delta, beta - delta),
        9,
        params,
    )


# --- basic (trigonometric) series --------------------------------------


@dataclass(frozen=True)
class PhiSeriesSpec:
    """Terminating r+1_phi_r data: numerators, denominators, base, argument."""

    numerators: tuple
    denominators: tuple
    base: complex
    z: complex
    kmax: int = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "numerators", tuple(complex(a) for a in self.numerators))
        object.__setattr__(self, "denominators", tuple(complex(b) for b in self.denominators))
        if self.kmax is None:
            object.__setattr__(self, "kmax", _phi_termination(self.numerators, self.base))


def _phi_termination(numerators, base):
    """Least k with some numerator equal to base^(-k)."""
    ks = []
    for a in numerators:
        if a == 0:
            continue
        w = 1.0 + 0.0j
        for k in range(0, 65):
            if abs(a * w - 1.0) < _INT_EPS:
                ks.append(k)
                break
            w *= base
    if not ks:
        raise NonTerminatingError("no numerator parameter of the form base^(-k)")
    return min(ks)


def qshifted(a, base, j):
    """(a; base)_j."""
    acc = 1.0 + 0.0j
    w = 1.0 + 0.0j
    for _ in range(j):
        acc *= 1.0 - a * w
        w *= base
    return acc


def basic_phi(spec):
    """Terminating r+1_phi_r(numerators; denominators; base, z)."""
    if len(spec.numerators) != len(spec.denominators) + 1:
        raise DomainError("r+1_phi_r needs one more numerator than denominators")
    acc = _Kahan()
    term = 1.0 + 0.0j
    w = 1.0 + 0.0j  # base^j
    for j in range(spec.kmax + 1):
        acc.add(term)
        num = 1.0 + 0.0j
        for a in spec.numerators:
            num *= 1.0 - a * w
        den = 1.0 - spec.base * w
        for b in spec.denominators:
            den *= 1.0 - b * w
        if j < spec.kmax and abs(den) < POLE_EPS:
            raise PoleError(f"denominator vanished at order {j + 1}")
        term *= spec.z * num / den if abs(den) >= POLE_EPS else 0.0
        w *= spec.base
    return acc.s


def basic_W(a, bs, base, z):
    """Terminating very-well-poised r+1_W_r(a; b1, ..., b_{r-2}; base, z):
    sum_j (1 - a base^{2j})/(1 - a) (a;base)_j/(base;base)_j
          prod_i (b_i;base)_j/(a base/b_i;base)_j z^j."""
    a = complex(a)
    bs = tuple(complex(b) for b in bs)
    kmax = _phi_termination(bs, base)
    acc = _Kahan()
    term = 1.0 + 0.0j
    w = 1.0 + 0.0j  # base^j
    for j in range(kmax + 1):
        acc.add(guarded_div(1.0 - a * w * w, 1.0 - a) * term)
        num = 1.0 - a * w
        den = 1.0 - base * w
        for b in bs:
            num *= 1.0 - b * w
            den *= 1.0 - (a * base / b) * w
        if j < kmax and abs(den) < POLE_EPS:
            raise PoleError(f"denominator vanished at order {j + 1}")
        term *= z * num / den if abs(den) >= POLE_EPS else 0.0
        w *= base
    return acc.s

"""Evaluation modules and the operator images living on them.

An (l+1)-dimensional module has basis v_0..v_l with weights mu_m = l - 2m
and evaluation point v (w = q^{2v}).  The images of the L-operator entries
alpha, beta, gamma, delta and of the half currents K+, E+, F+, H are built
as single atoms per basis state by reading the written operator words
right to left: e^{aQ} contributes qshift a, S^± the transition m -> m-+1,
and every function of (P, h) binds h to the weight of the state on its
immediate right at that point of the word.  e^{aQ} factors standing left
of a coefficient shift its P argument, which the composition rule supplies
automatically; the images below come out with all such shifts absorbed.

phi_l is the scalar normalization with phi_l(u) phi_l(u-1)
= [u - (l+1)/2][u + (l+1)/2]; for l = 0 it collapses to -[u + 1/2], making
the l = 0 module the counit: alpha acts as T_+, delta as T_-.
"""

import cmath
from dataclasses import dataclass

from .amplitude import PAmplitude
from .atoms import Atom, SlotOperator, TensorOperator
from .backend import kernels as _K
from .errors import DomainError, PoleError
from .params import POLE_EPS, ModularParams
from .theta import bracket, guarded_div, upow

ENTRY_KINDS = ("alpha", "beta", "gamma", "delta")

#: e^Q content of each entry (its column sign in the L-matrix)
ENTRY_QSHIFT = {"alpha": +1, "beta": -1, "gamma": +1, "delta": -1}


@dataclass(frozen=True)
class EvalModule:
    """Spec of the (l+1)-dimensional evaluation module V^(l)(q^{2v})."""

    l: int
    v: complex
    params: ModularParams

    def __post_init__(self):
        if self.l < 0:
            raise DomainError("need l >= 0")
        object.__setattr__(self, "v", complex(self.v))

    @property
    def dim(self):
        return self.l + 1

    def weight(self, m):
        return self.l - 2 * m

    @property
    def weights(self):
        return tuple(self.l - 2 * m for m in range(self.dim))


def _w2(z, p, q4, n):
    return _K.qpoch2(complex(z), complex(p), complex(q4), n)


def rho_1l(z, l, params):
    """rho+_{1l}(z, p), the double product entering phi_l."""
    pa = params
    q = pa.q
    q2 = q * q
    q4 = q2 * q2
    p = pa.p
    n = pa.trunc_N
    qp = lambda k: q ** k if isinstance(k, int) else cmath.exp(k * cmath.log(q))
    num = (
        _w2(p * qp(3 - l) * z, p, q4, n)
        * _w2(p * qp(l + 1) * z, p, q4, n)
        * _w2(qp(l + 3) / z, p, q4, n)
        * _w2(qp(1 - l) / z, p, q4, n)
    )
    den = (
        _w2(p * qp(l + 3) * z, p, q4, n)
        * _w2(p * qp(1 - l) * z, p, q4, n)
        * _w2(qp(3 - l) / z, p, q4, n)
        * _w2(qp(l + 1) / z, p, q4, n)
    )
    return cmath.exp(0.5 * l * cmath.log(q)) * guarded_div(num, den)


def phi_l(u, l, params):
    """phi_l(u) = -z^{-l/2r} rho+_{1l}(z,p)^{-1} [u + (l+1)/2]."""
    u = complex(u)
    z = cmath.exp(2.0 * u * params.logq)
    rho = rho_1l(z, l, params)
    if abs(rho) < POLE_EPS:
        raise PoleError("rho+_{1l} vanished")
    return -upow(u, -l / (2.0 * params.r), params) * bracket(u + (l + 1) / 2.0, params) / rho


def _br_amp(pa, pre, num_terms, den_terms):
    """Amplitude P -> pre * prod [s P + c] over num / den, terms as (s, c)."""

    def fn(P):
        num = pre
        for s, c in num_terms:
            num *= bracket(s * P + c, pa)
        den = 1.0 + 0.0j
        for s, c in den_terms:
            den *= bracket(s * P + c, pa)
        return guarded_div(num, den)

    return PAmplitude(fn)


def entry_op(kind, u, module):
    """The image of alpha/beta/gamma/delta(u) as a SlotOperator."""
    pa = module.params
    l = module.l
    d = u - module.v
    phi = phi_l(d, l, pa)
    atoms = []
    for m in range(module.dim):
        mu = module.weight(m)
        if kind == "alpha":
            # -[d+(h+1)/2][P-(l-h)/2][P+(l+h+2)/2] / (phi [P][P+h+1]) e^Q
            pre = -guarded_div(bracket(d + (mu + 1) / 2.0, pa), phi)
            atoms.append(Atom(m, m, _br_amp(
                pa, pre,
                ((1, -(l - mu) / 2.0), (1, (l + mu + 2) / 2.0)),
                ((1, 0.0), (1, mu + 1.0))), +1))
        elif kind == "beta":
            # -S^- [d+(h-1)/2+P][(l-h+2)/2] / (phi [P+h-1]) e^{-Q}
            if m + 1 >= module.dim:
                continue
            pre = -guarded_div(bracket((l - mu + 2) / 2.0, pa), phi)
            atoms.append(Atom(m, m + 1, _br_amp(
                pa, pre, ((1, d + (mu - 1) / 2.0),), ((1, mu - 1.0),)), -1))
        elif kind == "gamma":
            # S^+ [d-(h+1)/2-P][(l+h+2)/2] / (phi [P]) e^Q
            if m - 1 < 0:
                continue
            pre = guarded_div(bracket((l + mu + 2) / 2.0, pa), phi)
            atoms.append(Atom(m, m - 1, _br_amp(
                pa, pre, ((-1, d - (mu + 1) / 2.0),), ((1, 0.0),)), +1))
        elif kind == "delta":
            # -[d-(h-1)/2] / phi e^{-Q}
            pre = -guarded_div(bracket(d - (mu - 1) / 2.0, pa), phi)
            atoms.append(Atom(m, m, PAmplitude.const(pre), -1))
        else:
            raise DomainError(f"unknown entry kind {kind!r}")
    return SlotOperator(module.dim, atoms)


def half_current_op(kind, u, module):
    """The image of K+/Kinv/E+/F+/H(u) as a SlotOperator."""
    pa = module.params
    l = module.l
    d = u - module.v
    atoms = []
    if kind == "K":
        phi = phi_l(d, l, pa)
        for m in range(module.dim):
            mu = module.weight(m)
            c = -guarded_div(phi, bracket(d - (mu - 1) / 2.0, pa))
            atoms.append(Atom(m, m, PAmplitude.const(c), +1))
    elif kind == "Kinv":
        # diagonal inverse: (c(P) T_a)^{-1} = c(P-a)^{-1} T_{-a}; here the
        # K coefficient is P-independent, so this is exactly delta(u)
        phi = phi_l(d, l, pa)
        for m in range(module.dim):
            mu = module.weight(m)
            c = -guarded_div(bracket(d - (mu - 1) / 2.0, pa), phi)
            atoms.append(Atom(m, m, PAmplitude.const(c), -1))
    elif kind == "E":
        # -e^Q S^+ [d-(h+1)/2-P][(l+h+2)/2] / ([d-(h+1)/2][P]) e^Q:
        # the leftmost e^Q shifts the coefficient's P argument by +1
        for m in range(1, module.dim):
            mu = module.weight(m)
            pre = -guarded_div(bracket((l + mu + 2) / 2.0, pa),
                               bracket(d - (mu + 1) / 2.0, pa))
            atoms.append(Atom(m, m - 1, _br_amp(
                pa, pre, ((-1, d - (mu + 1) / 2.0 - 1.0),), ((1, 1.0),)), +2))
        return SlotOperator(module.dim, atoms)
    elif kind == "F":
        # S^- [d+(h-1)/2+P][(l-h+2)/2] / ([d-(h-1)/2][P+h-1])
        for m in range(module.dim - 1):
            mu = module.weight(m)
            pre = guarded_div(bracket((l - mu + 2) / 2.0, pa),
                              bracket(d - (mu - 1) / 2.0, pa))
            atoms.append(Atom(m, m + 1, _br_amp(
                pa, pre, ((1, d + (mu - 1) / 2.0),), ((1, mu - 1.0),)), 0))
        return SlotOperator(module.dim, atoms)
    elif kind == "H":
        # H(u) = K+(u) K+(u-1) at c = 0 (kappa = 1)
        return half_current_op("K", u, module) @ half_current_op("K", u - 1, module)
    else:
        raise DomainError(f"unknown half-current kind {kind!r}")
    return SlotOperator(module.dim, atoms)


def coproduct_op(kind, u, modules):
    """Delta applied (nslots-1) times to an entry: the sum over all
    intermediate index paths of slot-wise entry operators."""
    eps = {"alpha": ("+", "+"), "beta": ("+", "-"),
           "gamma": ("-", "+"), "delta": ("-", "-")}[kind]
    k = len(modules)
    terms = []
    for path in _index_paths(eps[0], eps[1], k - 1):
        ops = []
        for j in range(k):
            e1, e2 = path[j], path[j + 1]
            name = {("+", "+"): "alpha", ("+", "-"): "beta",
                    ("-", "+"): "gamma", ("-", "-"): "delta"}[(e1, e2)]
            ops.append(entry_op(name, u, modules[j]))
        terms.append(tuple(ops))
    return TensorOperator(terms)


def _index_paths(e1, e2, n_mid):
    if n_mid == 0:
        yield (e1, e2)
        return
    for mid in ("+", "-"):
        for rest in _index_paths(mid, e2, n_mid - 1):
            yield (e1,) + rest


def antipode_op(kind, u, module):
    """The antipode image S(entry)(u) at c = 0 ([.]* = [.])."""
    pa = module.params
    if kind == "alpha":
        return entry_op("delta", u - 1, module)
    if kind == "beta":
        # -[P+h+1]/[P+h] beta(u-1); h binds to the written word's output
        return _hfunc_mul(_ratio_amp(pa, 1.0, 0.0), entry_op("beta", u - 1, module),
                          module).scaled(-1.0)
    if kind == "gamma":
        op = entry_op("gamma", u - 1, module)
        return op.amp_left(_ratio_amp(pa, 0.0, 1.0)).scaled(-1.0)
    if kind == "delta":
        op = entry_op("alpha", u - 1, module)
        op = _hfunc_mul(_ratio_amp(pa, 1.0, 0.0), op, module)
        return op.amp_left(_ratio_amp(pa, 0.0, 1.0))
    raise DomainError(f"unknown entry kind {kind!r}")


def _ratio_amp(pa, a, b):
    """Amplitude [P+a]/[P+b]."""
    return PAmplitude(lambda P: guarded_div(bracket(P + a, pa), bracket(P + b, pa)))


def _hfunc_mul(f, op, module):
    """Compose the h-bound multiplier f(P + h) onto op from the left."""
    head = SlotOperator(module.dim, [
        Atom(m, m, PAmplitude((lambda mu: (lambda P: f(P + mu)))(module.weight(m))), 0)
        for m in range(module.dim)
    ])
    return head @ op

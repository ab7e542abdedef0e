"""Finite atom calculus for dynamical operators on evaluation modules.

An Atom is one summand of an operator word S^± g(P,h) e^{aQ} read off a
written expression: a basis transition src -> dst, a coefficient amplitude
(every h already bound to the weight of the state adjacent on the right),
and an integer qshift a recording the net e^{aQ} content.  Its action on
an amplitude-carrying state is

    A . F(P)|src>  =  coeff(P) F(P + a) |dst>,

so composition obeys

    (A o B).coeff(P) = A.coeff(P) * B.coeff(P + A.qshift),
    (A o B).qshift   = A.qshift + B.qshift.

SlotOperator is a finite sum of atoms on one module; TensorOperator a
finite sum of slot tuples.  Tensor states are kept in slot-1 normal form:
all P-dependence attached to the first factor.  The balancing rule moving
a local amplitude g(P) attached to a slot-j basis state left to slot 1
shifts by every weight it crosses, its own state included:
g(P - nu_2 - ... - nu_j).

Application order matters: a TensorOperator must be fully composed
slot-locally before a single application/normalization pass, because
normalization does not commute with acting in the later slots.
"""

from dataclasses import dataclass
from typing import Tuple

from .amplitude import ONE, PAmplitude


@dataclass(frozen=True)
class Atom:
    src: int
    dst: int
    coeff: PAmplitude
    qshift: int


def _compose_coeff(a, b):
    fa, fb, sa = a.coeff.fn, b.coeff.fn, a.qshift
    return PAmplitude(lambda P: fa(P) * fb(P + sa))


class SlotOperator:
    """Finite list of atoms acting on one (dim)-dimensional module."""

    __slots__ = ("dim", "atoms")

    def __init__(self, dim, atoms=()):
        self.dim = dim
        self.atoms = tuple(a for a in atoms if 0 <= a.src < dim and 0 <= a.dst < dim)

    @classmethod
    def identity(cls, dim):
        return cls(dim, [Atom(m, m, ONE, 0) for m in range(dim)])

    @classmethod
    def zero(cls, dim):
        return cls(dim, [])

    def __add__(self, other):
        assert self.dim == other.dim
        merged = {}
        for a in self.atoms + other.atoms:
            key = (a.src, a.dst, a.qshift)
            merged[key] = merged[key] + a.coeff if key in merged else a.coeff
        return SlotOperator(
            self.dim, [Atom(s, d, c, q) for (s, d, q), c in merged.items()]
        )

    def __matmul__(self, other):
        """self o other: other acts first."""
        assert self.dim == other.dim
        merged = {}
        by_src = {}
        for a in self.atoms:
            by_src.setdefault(a.src, []).append(a)
        for b in other.atoms:
            for a in by_src.get(b.dst, ()):
                key = (b.src, a.dst, a.qshift + b.qshift)
                c = _compose_coeff(a, b)
                merged[key] = merged[key] + c if key in merged else c
        return SlotOperator(
            self.dim, [Atom(s, d, c, q) for (s, d, q), c in merged.items()]
        )

    def scaled(self, c):
        """Multiply every coefficient by a P-independent scalar."""
        return SlotOperator(
            self.dim, [Atom(a.src, a.dst, c * a.coeff, a.qshift) for a in self.atoms]
        )

    def amp_left(self, f):
        """f(P) . self: multiplication by an amplitude written on the left."""
        return SlotOperator(
            self.dim, [Atom(a.src, a.dst, f * a.coeff, a.qshift) for a in self.atoms]
        )

    def amp_right(self, f):
        """self . f(P): the amplitude acts first, so it is read at P + qshift."""
        return SlotOperator(
            self.dim,
            [Atom(a.src, a.dst, a.coeff * f.shift(a.qshift), a.qshift) for a in self.atoms],
        )

    def apply(self, state):
        """Act on {m: amplitude}; returns the same shape."""
        out = {}
        for a in self.atoms:
            amp = state.get(a.src)
            if amp is None:
                continue
            contrib = a.coeff * amp.shift(a.qshift)
            out[a.dst] = out[a.dst] + contrib if a.dst in out else contrib
        return out


class TensorOperator:
    """Finite sum of slot-operator tuples on a tensor product of modules."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = tuple(tuple(t) for t in terms)

    @property
    def nslots(self):
        return len(self.terms[0]) if self.terms else 0

    def __add__(self, other):
        return TensorOperator(self.terms + other.terms)

    def __matmul__(self, other):
        """Slot-local composition: required before any application."""
        out = []
        for ta in self.terms:
            for tb in other.terms:
                out.append(tuple(a @ b for a, b in zip(ta, tb)))
        return TensorOperator(out)

    def scaled(self, c):
        return TensorOperator(
            [(t[0].scaled(c),) + tuple(t[1:]) for t in self.terms]
        )


@dataclass(frozen=True)
class TensorState:
    """Amplitudes over a weight basis of a tensor product, slot-1 normal form."""

    weights: Tuple[Tuple[int, ...], ...]  # per slot, weight of each basis index
    amps: dict  # (m1, ..., mk) -> PAmplitude

    def norm_at(self, samples):
        """max |amplitude| over basis keys and sampled P."""
        best = 0.0
        for amp in self.amps.values():
            for P in samples:
                best = max(best, abs(amp(P)))
        return best


def apply_tensor(op, state):
    """Apply a slot-locally composed TensorOperator to a TensorState.

    Slot 1 acts on the carried amplitude per the Atom rule; every later
    slot acts on its bare basis state, and the resulting local coefficient
    g(P) next to the slot-j output state moves to slot 1 as
    g(P - sum of output weights of slots 2..j), in one normalization pass.
    """
    out = {}
    weights = state.weights
    for term in op.terms:
        for key, amp in state.amps.items():
            for a in term[0].atoms:
                if a.src != key[0]:
                    continue
                base = a.coeff * amp.shift(a.qshift)
                _accumulate(term, key, weights, (a.dst,), base, 1, out)
    return TensorState(state.weights, out)


def _accumulate(term, key, weights, dst_prefix, acc_amp, slot, out):
    if slot == len(term):
        out[dst_prefix] = out[dst_prefix] + acc_amp if dst_prefix in out else acc_amp
        return
    crossed = sum(weights[j][dst_prefix[j]] for j in range(1, slot))
    for b in term[slot].atoms:
        if b.src != key[slot]:
            continue
        shift = -(crossed + weights[slot][b.dst])
        amp = acc_amp * b.coeff.shift(shift)
        _accumulate(term, key, weights, dst_prefix + (b.dst,), amp, slot + 1, out)

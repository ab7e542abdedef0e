"""Amplitudes over the dynamical parameter P.

A PAmplitude wraps an evaluable map P -> complex and is closed under
pointwise algebra and the integer shift action (T_a f)(P) = f(P + a).
Equality of amplitudes is never decided symbolically; callers certify it
by sampling at generic complex P (meromorphic functions agreeing on a
sampled set with an accumulation point are equal, and the fixed imaginary
offset used by the suites keeps samples off the real zero lattice).
"""

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class PAmplitude:
    fn: Callable[[complex], complex]

    def __call__(self, P):
        return self.fn(complex(P))

    @classmethod
    def const(cls, c):
        c = complex(c)
        return cls(lambda P: c)

    def shift(self, a):
        """T_a f with (T_a f)(P) = f(P + a)."""
        if a == 0:
            return self
        f = self.fn
        return PAmplitude(lambda P: f(P + a))

    def __add__(self, other):
        if not isinstance(other, PAmplitude):
            other = PAmplitude.const(other)
        f, g = self.fn, other.fn
        return PAmplitude(lambda P: f(P) + g(P))

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, PAmplitude):
            other = PAmplitude.const(other)
        f, g = self.fn, other.fn
        return PAmplitude(lambda P: f(P) * g(P))

    __rmul__ = __mul__

    def __neg__(self):
        f = self.fn
        return PAmplitude(lambda P: -f(P))


ONE = PAmplitude.const(1.0)
ZERO = PAmplitude.const(0.0)

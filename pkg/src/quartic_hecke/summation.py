"""Compensated (error-free running) accumulators for deterministic reductions.

Neumaier's variant of Kahan summation: the running compensation also
absorbs the case where the addend dominates the partial sum.  Every
floating reduction in this package goes through these helpers in a fixed
term order, so repeated runs produce bit-identical totals.
"""

from __future__ import annotations


class Kahan:
    """Compensated accumulator for real floats."""

    __slots__ = ("s", "c")

    def __init__(self) -> None:
        self.s = 0.0
        self.c = 0.0

    def add(self, x: float) -> None:
        s = self.s
        t = s + x
        if abs(s) >= abs(x):
            self.c += (s - t) + x
        else:
            self.c += (x - t) + s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


class KahanComplex:
    """Compensated accumulator for complex values (independent real/imag lanes)."""

    __slots__ = ("re", "im")

    def __init__(self) -> None:
        self.re = Kahan()
        self.im = Kahan()

    def add(self, z: complex) -> None:
        self.re.add(z.real)
        self.im.add(z.imag)

    @property
    def value(self) -> complex:
        return complex(self.re.value, self.im.value)


def kahan_sum(values) -> float:
    acc = Kahan()
    for v in values:
        acc.add(v)
    return acc.value


def kahan_sum_complex(values) -> complex:
    acc = KahanComplex()
    for v in values:
        acc.add(v)
    return acc.value

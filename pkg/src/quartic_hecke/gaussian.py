"""Exact arithmetic, factorization and enumeration in the Gaussian integers.

All arithmetic is exact (Python integers are unbounded), so intermediate
products of norms near 10^7 cannot overflow.  The canonical associates
used throughout are the *primary* elements: an odd a + bi is primary iff
a = 1, b = 0 (mod 4) or a = 3, b = 2 (mod 4), equivalently
a + bi = 1 mod (1+i)^3.  Nonzero ideals correspond bijectively to
generators (1+i)^r * a with a primary.

Enumerations are sorted by (norm, re, im) so that parallel reductions
are reproducible.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass
from functools import lru_cache


def _round_half_even(num: int, den: int) -> int:
    """Round num/den (den > 0) to the nearest integer, ties to even."""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q & 1):
        q += 1
    return q


class GaussianInt:
    """Immutable element a + b*i of Z[i] with unbounded integer parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = re
        self.im = im

    # -- basic ring operations -------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined in Z[i]")
        result = GaussianInt(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    # -- Euclidean structure ---------------------------------------------

    def __divmod__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return divrem(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- predicates and conversions --------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_unit(self) -> bool:
        return self.norm() == 1

    @property
    def is_odd(self) -> bool:
        """Coprime to 1+i, i.e. odd norm."""
        return (self.re + self.im) & 1 == 1

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianInt):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.re == other and self.im == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_part(abs(self.im))}"

    # -- parsing ----------------------------------------------------------

    _GRAMMAR = _re.compile(
        r"^(?P<re>[+-]?\d+)?(?P<im>[+-]?(?:\d+)?i)?$"
    )

    @classmethod
    def parse(cls, text: str) -> "GaussianInt":
        """Parse the whitespace-free grammar: optional sign, integer,
        optional +/- integer followed by 'i' (e.g. "3+2i", "-15", "i")."""
        m = cls._GRAMMAR.match(text)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"cannot parse Gaussian integer: {text!r}")
        re_part = int(m.group("re")) if m.group("re") else 0
        im_text = m.group("im")
        if im_text is None:
            im_part = 0
        else:
            body = im_text[:-1]
            if body in ("", "+"):
                im_part = 1
            elif body == "-":
                im_part = -1
            else:
                im_part = int(body)
        return cls(re_part, im_part)


def _imag_str(im: int) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def _imag_part(im_abs: int) -> str:
    return "i" if im_abs == 1 else f"{im_abs}i"


def _coerce(x):
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    return NotImplemented


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I_UNIT = GaussianInt(0, 1)
ONE_PLUS_I = GaussianInt(1, 1)
I_POWS = (GaussianInt(1, 0), GaussianInt(0, 1), GaussianInt(-1, 0), GaussianInt(0, -1))


def norm(z: GaussianInt) -> int:
    return z.norm()


def divrem(a: GaussianInt, b: GaussianInt) -> tuple[GaussianInt, GaussianInt]:
    """Euclidean division: a = q*b + rem with norm(rem) <= norm(b)/2.

    Each coordinate of a/b is rounded to the nearest integer, ties to even.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by zero in Z[i]")
    n = b.norm()
    tre = a.re * b.re + a.im * b.im
    tim = a.im * b.re - a.re * b.im
    qre = _round_half_even(tre, n)
    qim = _round_half_even(tim, n)
    rem = GaussianInt(a.re - (qre * b.re - qim * b.im), a.im - (qre * b.im + qim * b.re))
    return GaussianInt(qre, qim), rem


def divides(d: GaussianInt, z: GaussianInt) -> bool:
    return divrem(z, d)[1].is_zero


def exact_div(z: GaussianInt, d: GaussianInt) -> GaussianInt:
    q, r = divrem(z, d)
    if not r.is_zero:
        raise ValueError(f"{d} does not divide {z}")
    return q


def _halve_one_plus_i(z: GaussianInt) -> GaussianInt:
    # z / (1+i) = z * (1-i) / 2; exact when norm(z) is even
    return GaussianInt((z.re + z.im) >> 1, (z.im - z.re) >> 1)


def is_primary(z: GaussianInt) -> bool:
    """z = 1 mod (1+i)^3, i.e. re = 1, im = 0 or re = 3, im = 2 (mod 4)."""
    r4 = z.re & 3
    i4 = z.im & 3
    return (r4 == 1 and i4 == 0) or (r4 == 3 and i4 == 2)


def _primary_decompose(re: int, im: int) -> tuple[int, int, int]:
    """(u, pre, pim) with re + im*i = i^u * (pre + pim*i) and the latter primary."""
    for u, (pre, pim) in enumerate(((re, im), (im, -re), (-re, -im), (-im, re))):
        r4 = pre & 3
        i4 = pim & 3
        if (r4 == 1 and i4 == 0) or (r4 == 3 and i4 == 2):
            return u, pre, pim
    raise ValueError("no primary associate (element is even or zero)")


def primary_associate(z: GaussianInt) -> tuple[int, GaussianInt]:
    """For odd z, the unique (unit_exp, p) with z = i^unit_exp * p, p primary."""
    if z.is_zero or not z.is_odd:
        raise ValueError("primary associates exist only for odd nonzero elements")
    u, pre, pim = _primary_decompose(z.re, z.im)
    return u, GaussianInt(pre, pim)


def normalize_generator(g: GaussianInt) -> GaussianInt:
    """Canonical generator of the ideal (g): (1+i)^r * primary."""
    if g.is_zero:
        raise ValueError("zero has no canonical generator")
    r = 0
    while g.norm() & 1 == 0:
        g = _halve_one_plus_i(g)
        r += 1
    _, p = primary_associate(g)
    return ONE_PLUS_I ** r * p


def gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    """Greatest common divisor, normalized to the (1+i)^r * primary form."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, divrem(a, b)[1]
    return normalize_generator(a)


# -- rational factorization helpers ---------------------------------------

def _factor_int(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of a positive integer."""
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        d += 6
    if n > 1:
        out.append((n, 1))
    out.sort()
    return out


def _is_rational_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


@lru_cache(maxsize=None)
def _split_prime(p: int) -> GaussianInt:
    """Primary prime of norm p for a rational prime p = 1 (mod 4)."""
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    pi = gcd(GaussianInt(p, 0), GaussianInt(x, 1))
    assert pi.norm() == p
    return pi


@dataclass(frozen=True)
class Factorization:
    """n = i^unit_exp * (1+i)^r * prod(pi^e) with all pi primary primes."""

    unit_exp: int
    r: int
    factors: tuple[tuple[GaussianInt, int], ...]

    def reassemble(self) -> GaussianInt:
        z = I_POWS[self.unit_exp & 3] * ONE_PLUS_I ** self.r
        for pi, e in self.factors:
            z = z * pi ** e
        return z

    @property
    def is_squarefree(self) -> bool:
        return self.r <= 1 and all(e == 1 for _, e in self.factors)

    @property
    def odd_exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)


@lru_cache(maxsize=1 << 16)
def factor(n: GaussianInt) -> Factorization:
    """Complete factorization into primary primes.

    Obtained by factoring norm(n) over Z: rational p = 1 (mod 4) split via a
    square root of -1 mod p, p = 3 (mod 4) stay inert (primary associate -p),
    and 2 = -i (1+i)^2.
    """
    if n.is_zero:
        raise ValueError("cannot factor zero")
    r = 0
    m = n
    while m.norm() & 1 == 0:
        m = _halve_one_plus_i(m)
        r += 1
    pairs = []
    for p, _e in _factor_int(m.norm()):
        if p % 4 == 3:
            q = GaussianInt(-p, 0)
            cnt = 0
            while True:
                quo, rem = divrem(m, q)
                if not rem.is_zero:
                    break
                m = quo
                cnt += 1
            if cnt:
                pairs.append((q, cnt))
        else:
            pi = _split_prime(p)
            for q in (pi, GaussianInt(pi.re, -pi.im)):
                cnt = 0
                while True:
                    quo, rem = divrem(m, q)
                    if not rem.is_zero:
                        break
                    m = quo
                    cnt += 1
                if cnt:
                    pairs.append((q, cnt))
    assert m.is_unit
    unit_exp = I_POWS.index(m)
    pairs.sort(key=lambda t: (t[0].norm(), t[0].re, t[0].im))
    return Factorization(unit_exp, r, tuple(pairs))


def is_prime(z: GaussianInt) -> bool:
    f = factor(z)
    return f.r + sum(e for _, e in f.factors) == 1


def moebius(n: GaussianInt) -> int:
    """Mobius function on odd Gaussian integers (0 on non-squarefree)."""
    if n.is_zero:
        raise ValueError("Mobius function of zero")
    if not n.is_odd:
        raise ValueError("Mobius function is used on odd arguments only")
    f = factor(n)
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) & 1 else 1


def is_squarefree(n: GaussianInt) -> bool:
    if n.is_zero:
        raise ValueError("squarefreeness of zero")
    return factor(n).is_squarefree


def euler_phi_ideal(pi: GaussianInt, l: int) -> int:
    """#(Z[i]/(pi^l))^* = N(pi)^l - N(pi)^(l-1) for a prime pi."""
    if l < 1:
        raise ValueError("exponent must be positive")
    npi = pi.norm()
    return npi ** l - npi ** (l - 1)


# -- enumeration -----------------------------------------------------------

def _disk_points(max_norm: int, predicate) -> list[GaussianInt]:
    pts = []
    bound = math.isqrt(max_norm)
    for a in range(-bound, bound + 1):
        rest = max_norm - a * a
        bb = math.isqrt(rest)
        for b in range(-bb, bb + 1):
            if predicate(a, b):
                pts.append((a * a + b * b, a, b))
    pts.sort()
    return [GaussianInt(a, b) for _, a, b in pts]


def primary_in_disk(max_norm: int) -> list[GaussianInt]:
    """Primary elements of norm <= max_norm, sorted by (norm, re, im)."""
    def pred(a, b):
        r4 = a & 3
        i4 = b & 3
        return (r4 == 1 and i4 == 0) or (r4 == 3 and i4 == 2)
    return _disk_points(max_norm, pred)


def enumerate_primary(max_norm: int):
    """Stream of primary n with norm(n) <= max_norm in (norm, re, im) order."""
    if max_norm < 1:
        raise ValueError("max_norm must be >= 1")
    yield from primary_in_disk(max_norm)


def enumerate_c_1mod16(max_norm: int):
    """Stream of c = 1 (mod 16): re = 1, im = 0 (mod 16), norm <= max_norm."""
    if max_norm < 1:
        raise ValueError("max_norm must be >= 1")
    yield from _disk_points(max_norm, lambda a, b: a % 16 == 1 and b % 16 == 0)


@dataclass(frozen=True)
class IdealGen:
    """Canonical generator (1+i)^r * a (a primary) of a nonzero ideal."""

    r: int
    a: GaussianInt
    norm: int

    @classmethod
    def from_parts(cls, r: int, a: GaussianInt) -> "IdealGen":
        if r < 0 or not is_primary(a):
            raise ValueError("need r >= 0 and a primary")
        return cls(r, a, (1 << r) * a.norm())

    @property
    def generator(self) -> GaussianInt:
        return ONE_PLUS_I ** self.r * self.a


def enumerate_ideals(max_norm: int):
    """Stream of nonzero ideals with norm <= max_norm, ordered by
    (norm, generator.re, generator.im)."""
    if max_norm < 1:
        raise ValueError("max_norm must be >= 1")
    items = []
    r = 0
    while (1 << r) <= max_norm:
        for a in primary_in_disk(max_norm >> r):
            ideal = IdealGen.from_parts(r, a)
            g = ideal.generator
            items.append((ideal.norm, g.re, g.im, ideal))
        r += 1
    items.sort(key=lambda t: t[:3])
    for _, _, _, ideal in items:
        yield ideal


@lru_cache(maxsize=8)
def primary_primes(max_norm: int) -> tuple[GaussianInt, ...]:
    """Odd primary primes of norm <= max_norm, sorted by (norm, re, im)."""
    out = []
    for p in range(3, max_norm + 1, 2):
        if not _is_rational_prime(p):
            continue
        if p % 4 == 1:
            pi = _split_prime(p)
            out.append(pi)
            out.append(GaussianInt(pi.re, -pi.im))
        elif p * p <= max_norm:
            out.append(GaussianInt(-p, 0))
    out.sort(key=lambda z: (z.norm(), z.re, z.im))
    return tuple(out)

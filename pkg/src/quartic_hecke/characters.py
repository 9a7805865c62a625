"""Quartic residue symbols, reciprocity, the sign psi_a, and ray class
characters mod 16.

Symbol values are carried exactly as exponents in Z/4 (QuarticValue), so
every identity test is exact equality.  Two independent evaluation routes
are provided: a reciprocity-based Euclidean reduction (the production
path) and the definition-level route that factors the modulus and matches
a^((N(pi)-1)/4) against i^k mod pi (kept permanently as the test oracle).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _iproduct

from .gaussian import (
    GaussianInt,
    I_POWS,
    ONE,
    _primary_decompose,
    _round_half_even,
    divrem,
    factor,
    is_primary,
    is_squarefree,
)


class QuarticValue:
    """Fourth root of unity or zero; nonzero values stored as i^k, k in Z/4."""

    __slots__ = ("_exp",)

    def __init__(self, exp: int | None):
        self._exp = exp if exp is None else exp & 3

    @property
    def is_zero(self) -> bool:
        return self._exp is None

    @property
    def exp(self) -> int | None:
        return self._exp

    @property
    def value(self) -> complex:
        if self._exp is None:
            return 0j
        return (1 + 0j, 1j, -1 + 0j, -1j)[self._exp]

    def __mul__(self, other: "QuarticValue") -> "QuarticValue":
        if self._exp is None or other._exp is None:
            return ZERO
        return _QUARTIC[(self._exp + other._exp) & 3]

    def conjugate(self) -> "QuarticValue":
        if self._exp is None:
            return ZERO
        return _QUARTIC[(-self._exp) & 3]

    def __pow__(self, n: int) -> "QuarticValue":
        if self._exp is None:
            if n <= 0:
                raise ValueError("zero cannot be raised to a non-positive power")
            return ZERO
        return _QUARTIC[(self._exp * n) & 3]

    def __eq__(self, other) -> bool:
        if isinstance(other, QuarticValue):
            return self._exp == other._exp
        return NotImplemented

    def __hash__(self):
        return hash(("QuarticValue", self._exp))

    def __repr__(self) -> str:
        if self._exp is None:
            return "0"
        return ("1", "i", "-1", "-i")[self._exp]


_QUARTIC = tuple(QuarticValue(k) for k in range(4))
ZERO = QuarticValue(None)
ONE_VALUE, I_VALUE, MINUS_ONE, MINUS_I = _QUARTIC


def from_exp(k: int | None) -> QuarticValue:
    return ZERO if k is None or k < 0 else _QUARTIC[k & 3]


# -- Euclidean evaluation (hot path, raw integer pairs) --------------------

def _sym_exp(are: int, aim: int, nre: int, nim: int) -> int:
    """Exponent k with (a/n)_4 = i^k, or -1 when the symbol vanishes.

    n must be primary (or 1).  Uses the supplements to peel units and
    1+i from the numerator and quartic reciprocity to swap; norms of the
    moduli at least halve every round, so the loop is O(log norm).
    """
    k = 0
    while True:
        nn = nre * nre + nim * nim
        if nn == 1:
            return k & 3
        # reduce a mod n (nearest, ties to even)
        tre = are * nre + aim * nim
        tim = aim * nre - are * nim
        qre = _round_half_even(tre, nn)
        qim = _round_half_even(tim, nn)
        are -= qre * nre - qim * nim
        aim -= qre * nim + qim * nre
        if are == 0 and aim == 0:
            return -1
        t = 0
        while (are * are + aim * aim) & 1 == 0:
            are, aim = (are + aim) >> 1, (aim - are) >> 1
            t += 1
        u, are, aim = _primary_decompose(are, aim)
        if u:
            k += u * ((1 - nre) >> 1)
        if t:
            k += t * ((nre - nim - 1 - nim * nim) >> 2)
        if are == 1 and aim == 0:
            return k & 3
        aa = are * are + aim * aim
        if ((aa - 1) >> 2) & 1 and ((nn - 1) >> 2) & 1:
            k += 2
        are, aim, nre, nim = nre, nim, are, aim


def _require_symbol_modulus(n: GaussianInt) -> None:
    if n == ONE:
        return
    if not n.is_odd:
        raise ValueError("symbol modulus must be odd")
    if not is_primary(n):
        raise ValueError("symbol modulus must be primary (or 1)")


def quartic_symbol(a: GaussianInt, n: GaussianInt) -> QuarticValue:
    """(a/n)_4 for n primary or n = 1 (with (./1)_4 = 1)."""
    _require_symbol_modulus(n)
    return from_exp(_sym_exp(a.re, a.im, n.re, n.im))


# -- definition-level routes (oracles) -------------------------------------

def _powmod(base: GaussianInt, e: int, mod: GaussianInt) -> GaussianInt:
    result = divrem(ONE, mod)[1]
    base = divrem(base, mod)[1]
    while e:
        if e & 1:
            result = divrem(result * base, mod)[1]
        base = divrem(base * base, mod)[1]
        e >>= 1
    return result


def quartic_symbol_prime_brute(a: GaussianInt, pi: GaussianInt) -> QuarticValue:
    """Defining congruence at a prime: the i^k with a^((N-1)/4) = i^k mod pi."""
    npi = pi.norm()
    if divrem(a, pi)[1].is_zero:
        return ZERO
    t = _powmod(a, (npi - 1) // 4, pi)
    for k in range(4):
        if divrem(t - I_POWS[k], pi)[1].is_zero:
            return _QUARTIC[k]
    raise ArithmeticError(f"{a}^((N-1)/4) is not a power of i mod {pi}")


def quartic_symbol_via_factorization(a: GaussianInt, n: GaussianInt) -> QuarticValue:
    """(a/n)_4 by factoring n and extending the prime symbol multiplicatively."""
    _require_symbol_modulus(n)
    if n == ONE:
        return ONE_VALUE
    result = ONE_VALUE
    for pi, e in factor(n).factors:
        result = result * quartic_symbol_prime_brute(a, pi) ** e
        if result.is_zero:
            return ZERO
    return result


# -- supplements and reciprocity -------------------------------------------

def supplement_i(n: GaussianInt) -> QuarticValue:
    """(i/n)_4 = i^((1-a)/2) for primary n = a+bi."""
    if not is_primary(n):
        raise ValueError("supplement requires a primary argument")
    return _QUARTIC[((1 - n.re) >> 1) & 3]


def supplement_1plusi(n: GaussianInt) -> QuarticValue:
    """((1+i)/n)_4 = i^((a-b-1-b^2)/4) for primary n = a+bi."""
    if not is_primary(n):
        raise ValueError("supplement requires a primary argument")
    num = n.re - n.im - 1 - n.im * n.im
    assert num & 3 == 0
    return _QUARTIC[(num >> 2) & 3]


def reciprocity_check(m: GaussianInt, n: GaussianInt) -> bool:
    """Whether (m/n)_4 = (n/m)_4 * (-1)^(((N(n)-1)/4)((N(m)-1)/4)).

    A test oracle: should return True for every coprime primary pair.
    """
    if not (is_primary(m) and is_primary(n)):
        raise ValueError("reciprocity applies to primary elements")
    lhs = quartic_symbol(m, n)
    rhs = quartic_symbol(n, m)
    if ((m.norm() - 1) >> 2) & 1 and ((n.norm() - 1) >> 2) & 1:
        rhs = rhs * MINUS_ONE
    return lhs == rhs


def psi(a: GaussianInt, c: GaussianInt) -> int:
    """The sign (-1)^(((N(a)-1)/4)((N(c)-1)/4)) for odd a, c."""
    if not (a.is_odd and c.is_odd):
        raise ValueError("psi requires odd arguments")
    if ((a.norm() - 1) >> 2) & 1 and ((c.norm() - 1) >> 2) & 1:
        return -1
    return 1


# -- ray class group mod 16 -------------------------------------------------

def _canon_orbit(u: int, v: int) -> tuple[int, int]:
    best = (u, v)
    x, y = u, v
    for _ in range(3):
        x, y = (-y) % 16, x
        if (x, y) < best:
            best = (x, y)
    return best


def _orbit_mul(p: tuple[int, int], q: tuple[int, int]) -> tuple[int, int]:
    u = (p[0] * q[0] - p[1] * q[1]) % 16
    v = (p[0] * q[1] + p[1] * q[0]) % 16
    return _canon_orbit(u, v)


@dataclass(frozen=True)
class RayClassGroup:
    """(Z[i]/16)^* modulo the units {1, i, -1, -i}, with a cyclic basis."""

    reps: tuple[tuple[int, int], ...]
    basis: tuple[tuple[int, int], ...]
    orders: tuple[int, ...]
    exponent: int
    coords: dict

    @property
    def order(self) -> int:
        return len(self.reps)


class RayClassChar:
    """A character of the ray class group mod 16.

    Values are exact roots of unity stored as exponent numerators over the
    group exponent; complex values are derived from that table.
    """

    __slots__ = ("exps", "_group", "_exp_table", "_val_table")

    def __init__(self, exps: tuple[int, ...], group: RayClassGroup):
        self.exps = exps
        self._group = group
        L = group.exponent
        self._exp_table = {}
        for rep, vec in group.coords.items():
            e = 0
            for ei, ai, di in zip(exps, vec, group.orders):
                e += ei * ai * (L // di)
            self._exp_table[rep] = e % L
        roots = [cmath.exp(2j * cmath.pi * k / L) for k in range(L)]
        self._val_table = {rep: roots[e] for rep, e in self._exp_table.items()}

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exps)

    def exponent_of(self, z: GaussianInt) -> tuple[int, int]:
        """(k, L) with chi(z) = exp(2*pi*i*k/L), exact."""
        if not z.is_odd:
            raise ValueError("character arguments must be odd")
        return self._exp_table[_canon_orbit(z.re % 16, z.im % 16)], self._group.exponent

    def value(self, z: GaussianInt) -> complex:
        if not z.is_odd:
            raise ValueError("character arguments must be odd")
        return self._val_table[_canon_orbit(z.re % 16, z.im % 16)]

    def value_table_mod16(self) -> dict:
        """dict over all odd residues (u, v) mod 16 -> complex value."""
        out = {}
        for u in range(16):
            for v in range(16):
                if (u + v) & 1:
                    out[(u, v)] = self._val_table[_canon_orbit(u, v)]
        return out

    def __mul__(self, other: "RayClassChar") -> "RayClassChar":
        exps = tuple((a + b) % d for a, b, d in zip(self.exps, other.exps, self._group.orders))
        return char_by_exps(exps)

    def conjugate(self) -> "RayClassChar":
        exps = tuple((-a) % d for a, d in zip(self.exps, self._group.orders))
        return char_by_exps(exps)

    def __pow__(self, n: int) -> "RayClassChar":
        exps = tuple((a * n) % d for a, d in zip(self.exps, self._group.orders))
        return char_by_exps(exps)

    def __eq__(self, other) -> bool:
        if isinstance(other, RayClassChar):
            return self.exps == other.exps
        return NotImplemented

    def __hash__(self):
        return hash(("RayClassChar", self.exps))

    def __repr__(self) -> str:
        return f"RayClassChar{self.exps}"


def _element_order(g, op, ident):
    k = 1
    x = g
    while x != ident:
        x = op(x, g)
        k += 1
    return k


def _find_basis(elems, op, ident):
    """Cyclic-factor basis of a small abelian group by exhaustive search."""
    n = len(elems)
    orders = {g: _element_order(g, op, ident) for g in elems}
    cands = sorted(elems, key=lambda g: (-orders[g], g))

    def span_of(basis):
        table = {ident: (0,) * len(basis)}
        for idx, g in enumerate(basis):
            new = dict(table)
            x = ident
            for k in range(1, orders[g]):
                x = op(x, g)
                for el, vec in table.items():
                    y = op(el, x)
                    if y in new:
                        return None
                    nv = list(vec)
                    nv[idx] = k
                    new[y] = tuple(nv)
            table = new
        return table

    def extend(basis, size):
        if size == n:
            return basis, span_of(basis)
        for g in cands:
            o = orders[g]
            if o < 2 or size * o > n or n % (size * o):
                continue
            table = span_of(basis + [g])
            if table is not None:
                got = extend(basis + [g], size * o)
                if got is not None:
                    return got
        return None

    basis, table = extend([], 1)
    return basis, [orders[g] for g in basis], table


@lru_cache(maxsize=1)
def ray_class_group() -> tuple[RayClassGroup, tuple[RayClassChar, ...]]:
    """The ray class group mod 16 and its full character set.

    (Z[i]/16)^* has 128 elements; the unit orbits {z, iz, -z, -iz} all have
    size 4, so the quotient has order 32.
    """
    reps = sorted({
        _canon_orbit(u, v)
        for u in range(16)
        for v in range(16)
        if (u + v) & 1
    })
    ident = _canon_orbit(1, 0)
    basis, orders, coords = _find_basis(reps, _orbit_mul, ident)
    exponent = 1
    for d in orders:
        exponent = exponent * d // _gcd_int(exponent, d)
    group = RayClassGroup(tuple(reps), tuple(basis), tuple(orders), exponent, coords)
    chars = tuple(
        RayClassChar(exps, group)
        for exps in _iproduct(*(range(d) for d in orders))
    )
    return group, chars


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@lru_cache(maxsize=None)
def char_by_exps(exps: tuple[int, ...]) -> RayClassChar:
    group, chars = ray_class_group()
    index = 0
    for e, d in zip(exps, group.orders):
        index = index * d + (e % d)
    return chars[index]


def principal_char() -> RayClassChar:
    group, _ = ray_class_group()
    return char_by_exps((0,) * len(group.orders))


@lru_cache(maxsize=2)
def _psi_nonprincipal() -> RayClassChar:
    """The real ray class character z -> (-1)^((N(z)-1)/4)."""
    group, chars = ray_class_group()
    wanted = {}
    for rep in group.reps:
        nz = rep[0] * rep[0] + rep[1] * rep[1]
        wanted[rep] = -1.0 if ((nz - 1) >> 2) & 1 else 1.0
    for chi in chars:
        if all(abs(chi._val_table[rep] - wanted[rep]) < 1e-12 for rep in group.reps):
            return chi
    raise ArithmeticError("psi is not a ray class character mod 16")


def psi_char(a: GaussianInt) -> RayClassChar:
    """psi_a as a RayClassChar: principal when (N(a)-1)/4 is even."""
    if not a.is_odd:
        raise ValueError("psi_a requires an odd a")
    if ((a.norm() - 1) >> 2) & 1:
        return _psi_nonprincipal()
    return principal_char()


# -- the conductor characters chi_c ----------------------------------------

def chi_c_on_ideal(c: GaussianInt, ideal) -> QuarticValue:
    """chi_c of an ideal (1+i)^r * a: ((1+i)/c)_4^r * (a/c)_4.

    c must be squarefree and = 1 (mod 16), or c = 1 (principal character).
    """
    if c != ONE:
        if c.re % 16 != 1 or c.im % 16 != 0:
            raise ValueError("conductor must be 1 mod 16 (or 1)")
        if not is_squarefree(c):
            raise ValueError("conductor must be squarefree")
        first = supplement_1plusi(c) ** ideal.r if ideal.r else ONE_VALUE
    else:
        first = ONE_VALUE
    return first * quartic_symbol(ideal.a, c)

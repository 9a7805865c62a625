"""Quartic and quadratic Gauss sums over Z[i] and the root number W(chi_c).

g(r, n) = sum over x mod n of (x/n)_4 * e~(r x / n), where
e~(z) = exp(2 pi i Im(z)); the additive-character exponent
Im(r x conj(n)) is carried as an exact integer mod N(n), and all floating
accumulation is compensated with a deterministic term order.

Two evaluation routes exist: literal summation over a rectangular
transversal of the lattice n Z[i] (`gauss_sum`) and a multiplicative
route (`gauss_sum_fast`) that factors n, reduces prime powers by the
g(pi^k, pi^l) case table, twists by the coprime part of r, and stitches
coprime pieces with cross symbols.  The two must agree; the direct route
is the oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .characters import _sym_exp
from .gaussian import (
    GaussianInt,
    ONE,
    divrem,
    factor,
    is_primary,
    _factor_int,
    _is_rational_prime,
)
from .summation import KahanComplex

_I4 = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class GaussSumValue:
    value: complex
    n_norm: int
    exact_zero: bool = False


def e_tilde_exponent(x: GaussianInt, n: GaussianInt) -> int:
    """t with e~(x/n) = exp(2 pi i t / N(n)): t = Im(x conj(n)) mod N(n)."""
    if n.is_zero:
        raise ZeroDivisionError("additive character needs a nonzero modulus")
    nn = n.norm()
    return (x.im * n.re - x.re * n.im) % nn


def residue_system(n: GaussianInt):
    """Rectangular transversal of Z[i]/(n): {s + t*i : 0 <= s < N/g, 0 <= t < g}
    with g = gcd(re, im); the lattice n Z[i] meets Z exactly in (N/g) Z."""
    if n.is_zero:
        raise ZeroDivisionError("residue system of the zero ideal")
    nn = n.norm()
    g = math.gcd(n.re, n.im)
    width = nn // g
    for t in range(g):
        for s in range(width):
            yield GaussianInt(s, t)


def _require_gauss_modulus(n: GaussianInt) -> None:
    if n == ONE:
        return
    if not n.is_odd:
        raise ValueError("Gauss sum modulus must be odd")
    if not is_primary(n):
        raise ValueError("Gauss sum modulus must be primary (or 1)")


def _direct_value(rre: int, rim: int, n: GaussianInt, squared: bool) -> complex:
    nn = n.norm()
    if nn == 1:
        return 1 + 0j
    nre, nim = n.re, n.im
    g = math.gcd(nre, nim)
    width = nn // g
    # exact phase bookkeeping: coefficient of exp(2 pi i t / N) in Z[i]
    cre = [0] * nn
    cim = [0] * nn
    for t in range(g):
        for s in range(width):
            k = _sym_exp(s, t, nre, nim)
            if k < 0:
                continue
            if squared:
                k = (k << 1) & 3
            xr = rre * s - rim * t
            xi = rre * t + rim * s
            e = (xi * nre - xr * nim) % nn
            if k == 0:
                cre[e] += 1
            elif k == 1:
                cim[e] += 1
            elif k == 2:
                cre[e] -= 1
            else:
                cim[e] -= 1
    tau = 2.0 * math.pi / nn
    acc = KahanComplex()
    for e in range(nn):
        a, b = cre[e], cim[e]
        if a or b:
            acc.add(complex(a, b) * cmath.exp(1j * (tau * e)))
    return acc.value


def gauss_sum(r: GaussianInt, n: GaussianInt) -> GaussSumValue:
    """g(r, n) by direct summation over a complete residue system."""
    _require_gauss_modulus(n)
    return GaussSumValue(_direct_value(r.re, r.im, n, squared=False), n.norm())


def gauss_sum_g2(n: GaussianInt) -> GaussSumValue:
    """Quadratic companion g_2(n): the squared symbol, r = 1."""
    _require_gauss_modulus(n)
    return GaussSumValue(_direct_value(1, 0, n, squared=True), n.norm())


# -- fast prime Gauss sums ---------------------------------------------------

def _primitive_root(p: int) -> int:
    fac = [q for q, _ in _factor_int(p - 1)]
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
        g += 1


def _gmul_mod(a, b, p):
    return ((a[0] * b[0] - a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)


def _gpow_mod(base, e, p):
    result = (1, 0)
    while e:
        if e & 1:
            result = _gmul_mod(result, base, p)
        base = _gmul_mod(base, base, p)
        e >>= 1
    return result


def _field_generator(p: int):
    """Generator of F_{p^2}^* realized as pairs (u, v) = u + v*i mod p."""
    order = p * p - 1
    fac = [q for q, _ in _factor_int(order)]
    for u in range(1, p):
        for v in range(1, p):
            cand = (u, v)
            if all(_gpow_mod(cand, order // q, p) != (1, 0) for q in fac):
                return cand
    raise ArithmeticError(f"no generator found for F_{p}^2")


@lru_cache(maxsize=None)
def _prime_gauss_pair(pi: GaussianInt) -> tuple[complex, complex]:
    """(g(pi), g_2(pi)) for a primary prime, via multiplicative-group tables.

    Split pi (norm p): Z[i]/(pi) = F_p with i -> s = -re/im; the symbol is
    the quartic character chi(gen^j) = i^(k0 j) and e~(x/pi) = e(-im(pi) x / p).
    Inert pi = -p: F_{p^2} with e~((u,v)/pi) = e(-v/p).
    """
    npi = pi.norm()
    buckets = [KahanComplex() for _ in range(4)]
    if pi.im != 0:
        p = npi
        b = pi.im % p
        s = (-pi.re) * pow(b, -1, p) % p
        gen = _primitive_root(p)
        m = pow(gen, (p - 1) // 4, p)
        if m == s:
            k0 = 1
        elif m == p - s:
            k0 = 3
        else:
            raise ArithmeticError("split-prime character mismatch")
        tau = 2.0 * math.pi / p
        cis = [cmath.exp(1j * (tau * t)) for t in range(p)]
        x = 1
        for j in range(p - 1):
            buckets[j & 3].add(cis[(-b * x) % p])
            x = x * gen % p
    else:
        p = -pi.re
        gen = _field_generator(p)
        w = _gpow_mod(gen, (npi - 1) // 4, p)
        if w == (0, 1):
            k0 = 1
        elif w == (0, p - 1):
            k0 = 3
        else:
            raise ArithmeticError("inert-prime character mismatch")
        tau = 2.0 * math.pi / p
        cis = [cmath.exp(-1j * (tau * v)) for v in range(p)]
        x = (1, 0)
        for j in range(npi - 1):
            buckets[j & 3].add(cis[x[1]])
            x = _gmul_mod(x, gen, p)
    b0, b1, b2, b3 = (kc.value for kc in buckets)
    g = b0 + _I4[k0] * b1 + _I4[(2 * k0) & 3] * b2 + _I4[(3 * k0) & 3] * b3
    g2 = b0 - b1 + b2 - b3
    return g, g2


def prime_gauss(pi: GaussianInt) -> complex:
    return _prime_gauss_pair(pi)[0]


def prime_gauss_g2(pi: GaussianInt) -> complex:
    return _prime_gauss_pair(pi)[1]


def _v_pi(r: GaussianInt, pi: GaussianInt) -> tuple[int, GaussianInt]:
    """(k, r / pi^k) with pi^k || r."""
    k = 0
    while True:
        q, rem = divrem(r, pi)
        if not rem.is_zero:
            return k, r
        r = q
        k += 1


def _minus_one_exp(pi: GaussianInt) -> int:
    # (-1/pi)_4 = (i/pi)_4^2 = i^(1 - re) for primary pi
    return (1 - pi.re) & 3


def _prime_power_value(pi: GaussianInt, l: int, k: int, g: complex, g2: complex):
    """g(pi^k, pi^l) from the six-case table; None encodes an exact zero."""
    npi = pi.norm()
    if l == k + 1:
        m = k & 3
        if m == 0:
            base = g
        elif m == 1:
            base = g2
        elif m == 2:
            base = g.conjugate() * _I4[_minus_one_exp(pi)]
        else:
            base = -1.0 + 0j
        return base * float(npi ** k)
    if k >= l and l & 3 == 0:
        return complex(npi ** l - npi ** (l - 1))
    return None


def gauss_sum_fast(r: GaussianInt, n: GaussianInt) -> GaussSumValue:
    """g(r, n) via factorization, the prime-power table, twists and
    coprime cross factors.  Agrees with `gauss_sum` (tested)."""
    _require_gauss_modulus(n)
    if r.is_zero:
        raise ValueError("r must be nonzero")
    nn = n.norm()
    if nn == 1:
        return GaussSumValue(1 + 0j, 1)
    parts = factor(n).factors
    phase = 0
    for i in range(len(parts)):
        pi_i, e_i = parts[i]
        for j in range(i + 1, len(parts)):
            pi_j, e_j = parts[j]
            s_ij = _sym_exp(pi_i.re, pi_i.im, pi_j.re, pi_j.im)
            s_ji = _sym_exp(pi_j.re, pi_j.im, pi_i.re, pi_i.im)
            phase += e_i * e_j * (s_ij + s_ji)
    val = 1 + 0j
    for pi, l in parts:
        k, rr = _v_pi(r, pi)
        se = _sym_exp(rr.re, rr.im, pi.re, pi.im)
        assert se >= 0
        phase -= l * se
        g, g2 = _prime_gauss_pair(pi)
        piece = _prime_power_value(pi, l, k, g, g2)
        if piece is None:
            return GaussSumValue(0j, nn, exact_zero=True)
        val *= piece
    return GaussSumValue(val * _I4[phase & 3], nn)


# -- root number -------------------------------------------------------------

def root_number(c: GaussianInt, rel_tol: float = 1e-9) -> complex:
    """W(chi_c), computed both ways and cross-checked.

    Route A sums chi_c(a) e(Tr(a/(delta c))) over a mod c with delta = 2i
    and floating-point traces; route B is g(c) through the multiplicative
    machinery.  Disagreement beyond rel_tol raises (implementation fault).
    """
    if c != ONE:
        if c.re % 16 != 1 or c.im % 16 != 0:
            raise ValueError("conductor must be 1 mod 16 (or 1)")
        if not factor(c).is_squarefree:
            raise ValueError("conductor must be squarefree")
    fast = gauss_sum_fast(ONE, c).value
    delta_c = 2j * complex(c)
    acc = KahanComplex()
    for x in residue_system(c):
        k = _sym_exp(x.re, x.im, c.re, c.im)
        if k < 0:
            continue
        tr = 2.0 * (complex(x) / delta_c).real
        acc.add(_I4[k] * cmath.exp(2j * math.pi * tr))
    direct = acc.value
    scale = max(abs(fast), 1.0)
    if abs(direct - fast) > rel_tol * scale:
        raise ArithmeticError(
            f"root number mismatch for c={c}: direct={direct}, g(c)={fast}"
        )
    return fast

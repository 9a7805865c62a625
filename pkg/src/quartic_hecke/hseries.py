"""Truncated Dirichlet series h(r, s; chi) = sum chi(n) g(r, n) / N(n)^s over
primary n, with the coprimality-restricted variants, the decomposition
r = r1 r2^2 r3^3 r4^4, the telescoping product P(a), and numerical checks
of the five h-identities.

Evaluation is restricted to Re(s) >= 7/4: the identities hold as Dirichlet
series well inside the convergence region, comfortably right of the
possible pole at s = 5/4.  Each truncated value carries the declared tail
budget 50 * T^(3/2 - sigma) * ln(T + 2), which is validated empirically by
T -> 2T doubling.
"""

from __future__ import annotations

import cmath
import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations

from .characters import (
    ONE_VALUE,
    QuarticValue,
    RayClassChar,
    _sym_exp,
    psi,
    psi_char,
    quartic_symbol,
)
from .gaussian import (
    GaussianInt,
    ONE,
    exact_div,
    factor,
    gcd,
    is_primary,
    is_squarefree,
    primary_in_disk,
    primary_primes,
)
from .gauss_sums import _I4, _prime_gauss_pair, _prime_power_value, gauss_sum_fast
from .summation import KahanComplex

TAIL_COEFF = 50.0
MIN_SIGMA = 1.75
MIN_TRUNCATION = 100


def tail_bound(T: int, sigma: float) -> float:
    """Declared truncation budget for one h-series cut at norm T."""
    return TAIL_COEFF * T ** (1.5 - sigma) * math.log(T + 2)


@dataclass(frozen=True)
class HValue:
    value: complex
    truncation_T: int
    sigma: float
    tail_bound: float


@dataclass(frozen=True)
class RDecomposition:
    """r = r1 * r2^2 * r3^3 * r4^4 with r1 r2 r3 squarefree."""

    r1: GaussianInt
    r2: GaussianInt
    r3: GaussianInt
    r4: GaussianInt
    r4_star: GaussianInt

    def reassemble(self) -> GaussianInt:
        return self.r1 * self.r2 ** 2 * self.r3 ** 3 * self.r4 ** 4


def decompose_r(r: GaussianInt) -> RDecomposition:
    """Split each prime power pi^e of r by e = a + 4b: pi goes to the a-th
    squarefree layer (a >= 1) and pi^b into r4."""
    if r.is_zero or not is_primary(r):
        raise ValueError("decompose_r expects a nonzero primary argument")
    layers = [ONE, ONE, ONE, ONE]  # index 1..3 used
    r4 = ONE
    r4_star = ONE
    for pi, e in factor(r).factors:
        a, b = e % 4, e // 4
        if a:
            layers[a] = layers[a] * pi
        if b:
            r4 = r4 * pi ** b
            r4_star = r4_star * pi
    return RDecomposition(layers[1], layers[2], layers[3], r4, r4_star)


def _canonical_primes(a: GaussianInt) -> list[GaussianInt]:
    return [pi for pi, _ in factor(a).factors]


def _p_of_ordered(a: GaussianInt, order) -> QuarticValue:
    val = ONE_VALUE
    rest = a
    for pi in order:
        rest = exact_div(rest, pi)
        val = val * (quartic_symbol(rest * rest, pi) ** 3).conjugate()
    return val


def p_of(a: GaussianInt) -> QuarticValue:
    """P(a) = prod_i conj( ((a / pi_1...pi_i)^2 / pi_i^3)_4 ) over the
    distinct primes of squarefree a in canonical (norm, re, im) order.

    The i-th numerator excludes pi_1..pi_i, so every factor is a nonzero
    root of unity; for a single prime the product is empty-numerator = 1.
    Order independence is a tested property.
    """
    if not is_primary(a) or a.is_unit:
        raise ValueError("P(a) expects a primary non-unit")
    if not is_squarefree(a):
        raise ValueError("P(a) expects a squarefree argument")
    return _p_of_ordered(a, _canonical_primes(a))


# -- series context -----------------------------------------------------------

class HSeriesContext:
    """Shared tables for h-series up to a fixed norm cutoff.

    Holds the primary elements with factorizations, per-prime Gauss sums,
    and per-element coprime-part cross factors, so one h evaluation is a
    single pass over the element list.
    """

    def __init__(self, max_norm: int):
        self.max_norm = max_norm
        self.primes = list(primary_primes(max_norm))
        self.pidx = {(p.re, p.im): i for i, p in enumerate(self.primes)}
        self.gpairs = [_prime_gauss_pair(p) for p in self.primes]
        entries = []
        for a in primary_in_disk(max_norm):
            fac = factor(a)
            idx_fac = tuple((self.pidx[(pi.re, pi.im)], e) for pi, e in fac.factors)
            cross = 0
            parts = fac.factors
            for i in range(len(parts)):
                pi_i, e_i = parts[i]
                for j in range(i + 1, len(parts)):
                    pi_j, e_j = parts[j]
                    cross += e_i * e_j * (
                        _sym_exp(pi_i.re, pi_i.im, pi_j.re, pi_j.im)
                        + _sym_exp(pi_j.re, pi_j.im, pi_i.re, pi_i.im)
                    )
            squarefree = all(e == 1 for _, e in idx_fac)
            if squarefree:
                base = _I4[cross & 3]
                for idx, _ in idx_fac:
                    base *= self.gpairs[idx][0]
            else:
                base = None
            entries.append((a.norm(), a.re, a.im, idx_fac, squarefree, base, cross))
        entries.sort(key=lambda t: t[:3])
        self.entries = entries
        self.norms = [t[0] for t in entries]

    def _avoid_indices(self, coprime_to) -> set[int]:
        avoid = set()
        for z in coprime_to:
            if z == ONE:
                continue
            for pi, _ in factor(z).factors:
                key = (pi.re, pi.im)
                idx = self.pidx.get(key)
                if idx is not None:
                    avoid.add(idx)
        return avoid

    def h(self, r: GaussianInt, s, chi: RayClassChar, T: int, coprime_to=()) -> HValue:
        """Truncated h-series: sum over primary n with norm <= T, n coprime
        to every element of `coprime_to`, of chi(n) g(r, n) / N(n)^s."""
        s = complex(s)
        sigma = s.real
        if sigma < MIN_SIGMA:
            raise ValueError(f"Re(s) must be >= {MIN_SIGMA} (pole safety margin)")
        if T < MIN_TRUNCATION:
            raise ValueError(f"T must be >= {MIN_TRUNCATION}")
        if T > self.max_norm:
            raise ValueError("T exceeds this context's cutoff")
        if r.is_zero:
            raise ValueError("r must be nonzero")
        avoid = self._avoid_indices(coprime_to)
        rfac = {}
        rdiv = {}
        for pi, e in factor(r).factors:
            idx = self.pidx.get((pi.re, pi.im))
            if idx is None:
                raise ValueError("r has a prime factor beyond the context cutoff")
            rfac[idx] = e
            rr = r
            for _ in range(e):
                rr = exact_div(rr, pi)
            rdiv[idx] = rr
        r_idx = set(rfac)
        cv = chi.value_table_mod16()
        syms = [-2] * len(self.primes)  # lazy (r / pi)_4 exponents
        primes = self.primes
        gpairs = self.gpairs
        npow = {}
        acc = KahanComplex()
        hi = bisect_right(self.norms, T)
        rre, rim = r.re, r.im
        for pos in range(hi):
            nrm, are, aim, fac, squarefree, base, cross = self.entries[pos]
            skip = False
            slow = False
            for idx, e in fac:
                if idx in avoid:
                    skip = True
                    break
                if e != 1 or idx in r_idx:
                    slow = True
            if skip:
                continue
            if not slow:
                tw = 0
                for idx, _ in fac:
                    se = syms[idx]
                    if se == -2:
                        p = primes[idx]
                        se = syms[idx] = _sym_exp(rre, rim, p.re, p.im)
                    tw += se
                gval = base * _I4[(-tw) & 3]
            else:
                gval = _I4[cross & 3]
                dead = False
                for idx, l in fac:
                    k = rfac.get(idx, 0)
                    rr = rdiv[idx] if k else r
                    p = primes[idx]
                    se = _sym_exp(rr.re, rr.im, p.re, p.im)
                    gval *= _I4[(-l * se) & 3]
                    piece = _prime_power_value(p, l, k, *gpairs[idx])
                    if piece is None:
                        dead = True
                        break
                    gval *= piece
                if dead:
                    continue
            w = npow.get(nrm)
            if w is None:
                w = npow[nrm] = cmath.exp(-s * math.log(nrm)) if nrm > 1 else 1 + 0j
            acc.add(cv[(are & 15, aim & 15)] * gval * w)
        return HValue(acc.value, T, sigma, tail_bound(T, sigma))


_CONTEXTS: dict[int, HSeriesContext] = {}


def context(max_norm: int) -> HSeriesContext:
    ctx = _CONTEXTS.get(max_norm)
    if ctx is None:
        ctx = _CONTEXTS[max_norm] = HSeriesContext(max_norm)
    return ctx


def _ctx_for(T: int, ctx: HSeriesContext | None) -> HSeriesContext:
    if ctx is not None:
        return ctx
    return context(T)


def h_truncated(r, s, chi, T, ctx=None) -> HValue:
    """h(r, s; chi): the sum restricted to (n, r) = 1."""
    return _ctx_for(T, ctx).h(r, s, chi, T, coprime_to=(r,))


def h_f_truncated(r, f, s, chi, T, ctx=None) -> HValue:
    """h(r, f, s; chi): the sum restricted to (n, r f) = 1."""
    return _ctx_for(T, ctx).h(r, s, chi, T, coprime_to=(r, f))


def h_alpha_truncated(alpha, r, s, chi, T, ctx=None) -> HValue:
    """h_alpha(r, s; chi): the sum restricted to (n, alpha) = 1 only."""
    return _ctx_for(T, ctx).h(r, s, chi, T, coprime_to=(alpha,))


def _squarefree_divisors(f: GaussianInt):
    """(a, mu(a), primes of a) over divisors a of squarefree f."""
    primes = _canonical_primes(f)
    for size in range(len(primes) + 1):
        for combo in combinations(primes, size):
            a = ONE
            for pi in combo:
                a = a * pi
            yield a, (-1) ** size, combo


def h_star_truncated(r1, r2, r3, s, chi, T, ctx=None) -> HValue:
    """h*_{r1}(r1 r2^2 r3^3, s; chi): the Moebius-twisted divisor sum over
    a | r2 with the telescoping symbol, P(a), and conjugate prime Gauss sums."""
    ctx = _ctx_for(T, ctx)
    s = complex(s)
    prod123 = r1 * r2 * r3
    if not is_squarefree(prod123):
        raise ValueError("r1 r2 r3 must be squarefree (pairwise coprime)")
    total = KahanComplex()
    budget = 0.0
    for a, mu, primes_a in _squarefree_divisors(r2):
        r2_over_a = exact_div(r2, a)
        inner_arg = r1 * r2_over_a ** 2 * r3 ** 3
        x = -r1 * r2_over_a ** 2 * r3 ** 3
        sym = (quartic_symbol(x, a) ** 3).conjugate()
        p_val = ONE_VALUE if a == ONE else _p_of_ordered(a, list(primes_a))
        gconj = 1 + 0j
        for pi in primes_a:
            gconj *= _prime_gauss_pair(pi)[0].conjugate()
        na = a.norm()
        napow = cmath.exp((2 - 3 * s) * math.log(na)) if na > 1 else 1 + 0j
        coef = mu * chi.value(a) ** 3 * napow * sym.value * p_val.value * gconj
        inner = ctx.h(inner_arg, s, psi_char(a ** 3) * chi, T, coprime_to=(r1,))
        total.add(coef * inner.value)
        budget += abs(coef) * inner.tail_bound
    return HValue(total.value, T, s.real, budget)


# -- the identity ladder -------------------------------------------------------

@dataclass(frozen=True)
class IdentityInstance:
    r: GaussianInt | None = None
    f: GaussianInt | None = None
    r1: GaussianInt = ONE
    r2: GaussianInt = ONE
    r3: GaussianInt = ONE
    r4: GaussianInt = ONE

    def __str__(self) -> str:
        if self.r is not None:
            return f"r={self.r}, f={self.f}"
        return f"r1={self.r1}, r2={self.r2}, r3={self.r3}, r4={self.r4}"


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    instance: IdentityInstance
    s: complex
    lhs: complex
    rhs: complex
    discrepancy: float
    tail_budget: float
    passed: bool


IDENTITIES = ("2.11", "2.12", "2.13", "2.14", "2.15")


def verify_identity(identity: str, inst: IdentityInstance, s, chi: RayClassChar,
                    T: int, ctx: HSeriesContext | None = None) -> IdentityReport:
    """Evaluate both sides of one h-identity at truncation T.

    PASS means |LHS - RHS| is within the combined declared tail budget of
    every truncated series involved (weighted by coefficient sizes).
    """
    ctx = _ctx_for(T, ctx)
    s = complex(s)
    if identity == "2.11":
        lhs, rhs, budget = _identity_211(inst, s, chi, T, ctx)
    elif identity == "2.12":
        lhs, rhs, budget = _identity_212(inst, s, chi, T, ctx)
    elif identity == "2.13":
        lhs, rhs, budget = _identity_213(inst, s, chi, T, ctx)
    elif identity == "2.14":
        lhs, rhs, budget = _identity_214(inst, s, chi, T, ctx)
    elif identity == "2.15":
        lhs, rhs, budget = _identity_215(inst, s, chi, T, ctx)
    else:
        raise ValueError(f"unknown identity {identity!r}")
    disc = abs(lhs - rhs)
    return IdentityReport(identity, inst, s, lhs, rhs, disc, budget, disc <= budget)


def _identity_211(inst, s, chi, T, ctx):
    r, f = inst.r, inst.f
    if r is None or f is None:
        raise ValueError("identity 2.11 needs (r, f)")
    if not is_squarefree(f):
        raise ValueError("f must be squarefree")
    if gcd(r, f) != ONE:
        raise ValueError("(r, f) = 1 required")
    lhs_h = ctx.h(r, s, chi, T, coprime_to=(r, f))
    rhs = KahanComplex()
    budget = lhs_h.tail_bound
    for a, mu, _primes in _squarefree_divisors(f):
        g_ra = gauss_sum_fast(r, a).value
        na = a.norm()
        napow = cmath.exp(-s * math.log(na)) if na > 1 else 1 + 0j
        coef = mu * chi.value(a) * g_ra * napow
        inner = ctx.h(a * a * r, s, psi_char(a) * chi, T, coprime_to=(a * a * r,))
        rhs.add(coef * inner.value)
        budget += abs(coef) * inner.tail_bound
    return lhs_h.value, rhs.value, budget


def _identity_212(inst, s, chi, T, ctx):
    dec_r = inst.r1 * inst.r2 ** 2 * inst.r3 ** 3
    if not is_squarefree(inst.r1 * inst.r2 * inst.r3):
        raise ValueError("r1 r2 r3 must be squarefree")
    r4_star = ONE
    for pi in _canonical_primes(inst.r4):
        r4_star = r4_star * pi
    r = dec_r * inst.r4 ** 4
    lhs_h = ctx.h(r, s, chi, T, coprime_to=(r,))
    rhs_h = ctx.h(dec_r, s, chi, T, coprime_to=(dec_r, r4_star))
    return lhs_h.value, rhs_h.value, lhs_h.tail_bound + rhs_h.tail_bound


def _identity_213(inst, s, chi, T, ctx):
    r1, r2, r3 = inst.r1, inst.r2, inst.r3
    if not is_squarefree(r1 * r2 * r3):
        raise ValueError("r1 r2 r3 must be squarefree")
    r = r1 * r2 ** 2 * r3 ** 3
    lhs_h = ctx.h(r, s, chi, T, coprime_to=(r,))
    euler = 1 + 0j
    for pi in _canonical_primes(r3):
        npi = pi.norm()
        euler *= 1.0 / (1 - chi.value(pi) ** 4 * npi ** (3 - 4 * s))
    rhs_h = ctx.h(r, s, chi, T, coprime_to=(r1 * r2,))
    return lhs_h.value, euler * rhs_h.value, \
        lhs_h.tail_bound + abs(euler) * rhs_h.tail_bound


def _identity_214(inst, s, chi, T, ctx):
    r1, r2, r3 = inst.r1, inst.r2, inst.r3
    if not is_squarefree(r1 * r2 * r3):
        raise ValueError("r1 r2 r3 must be squarefree")
    r = r1 * r2 ** 2 * r3 ** 3
    lhs_h = ctx.h(r, s, chi, T, coprime_to=(r1 * r2,))
    euler = 1 + 0j
    for pi in _canonical_primes(r2):
        npi = pi.norm()
        g_pi = _prime_gauss_pair(pi)[0]
        minus_one = (quartic_symbol(GaussianInt(-1, 0), pi) ** 3).conjugate()
        euler *= 1.0 / (
            1
            - psi(pi ** 3, pi) * chi.value(pi) ** 4 * npi ** (2 - 4 * s)
            * abs(g_pi) ** 2 * minus_one.value
        )
    star = h_star_truncated(r1, r2, r3, s, chi, T, ctx=ctx)
    return lhs_h.value, euler * star.value, \
        lhs_h.tail_bound + abs(euler) * star.tail_bound


def _identity_215(inst, s, chi, T, ctx):
    r1, r2, r3 = inst.r1, inst.r2, inst.r3
    if not is_squarefree(r1 * r2 * r3):
        raise ValueError("r1 r2 r3 must be squarefree")
    r = r1 * r2 ** 2 * r3 ** 3
    lhs_h = ctx.h(r, s, chi, T, coprime_to=(r1,))
    euler = 1 + 0j
    for pi in _canonical_primes(r1):
        npi = pi.norm()
        g2_pi = _prime_gauss_pair(pi)[1]
        sym = (quartic_symbol(exact_div(r, pi), pi) ** 2).conjugate()
        euler *= 1.0 / (
            1 + chi.value(pi) ** 2 * npi ** (1 - 2 * s) * g2_pi * sym.value
        )
    rhs_h = ctx.h(r, s, chi, T, coprime_to=())
    return lhs_h.value, euler * rhs_h.value, \
        lhs_h.tail_bound + abs(euler) * rhs_h.tail_bound


# -- randomized suites ---------------------------------------------------------

def _prime_pool(max_norm: int = 60) -> list[GaussianInt]:
    return list(primary_primes(max_norm))


def identity_instances(identity: str, count: int, seed: int) -> list[IdentityInstance]:
    """Randomized instances satisfying the hypotheses of one identity."""
    rng = random.Random(f"{identity}:{seed}")
    pool = _prime_pool()
    out = []
    while len(out) < count:
        rng.shuffle(pool := list(pool))
        if identity == "2.11":
            n_r = rng.choice((0, 1, 1, 2))
            r = ONE
            for pi in pool[:n_r]:
                r = r * pi ** rng.choice((1, 1, 2))
            n_f = rng.choice((1, 1, 2))
            f = ONE
            for pi in pool[n_r:n_r + n_f]:
                f = f * pi
            if r.norm() > 300 or f.norm() > 300:
                continue
            out.append(IdentityInstance(r=r, f=f))
        elif identity == "2.12":
            n_p = rng.choice((1, 1, 2))
            exps = [rng.choice((1, 2, 3, 4, 4, 5, 6)) for _ in range(n_p)]
            if not any(e >= 4 for e in exps) and rng.random() < 0.7:
                exps[0] = 4
            r = ONE
            ok = True
            for pi, e in zip(pool[:n_p], exps):
                r = r * pi ** e
                if r.norm() > 5000:
                    ok = False
                    break
            if not ok:
                continue
            dec = decompose_r(r)
            out.append(IdentityInstance(r1=dec.r1, r2=dec.r2, r3=dec.r3, r4=dec.r4))
        else:
            counts = {
                "2.13": ((0, 1), (0, 1), (1,)),
                "2.14": ((0, 1), (1, 1, 2), (0, 0, 1)),
                "2.15": ((1, 1, 2), (0, 1), (0, 0, 1)),
            }[identity]
            k1 = rng.choice(counts[0])
            k2 = rng.choice(counts[1])
            k3 = rng.choice(counts[2])
            picks = pool[: k1 + k2 + k3]
            r1 = ONE
            for pi in picks[:k1]:
                r1 = r1 * pi
            r2 = ONE
            for pi in picks[k1:k1 + k2]:
                r2 = r2 * pi
            r3 = ONE
            for pi in picks[k1 + k2:]:
                r3 = r3 * pi
            if (r1 * r2 ** 2 * r3 ** 3).norm() > 5000:
                continue
            out.append(IdentityInstance(r1=r1, r2=r2, r3=r3))
    return out


def run_identity_suite(identity: str, count: int, seed: int, s_values, T: int,
                       ctx: HSeriesContext | None = None, chars=None):
    """Reports for `count` random instances, cycling over s_values and the
    full (or supplied) character set."""
    from .characters import ray_class_group

    ctx = _ctx_for(T, ctx)
    if chars is None:
        _, chars = ray_class_group()
    rng = random.Random(f"suite:{identity}:{seed}")
    instances = identity_instances(identity, count, seed)
    reports = []
    for i, inst in enumerate(instances):
        s = s_values[i % len(s_values)]
        chi = chars[rng.randrange(len(chars))]
        reports.append(verify_identity(identity, inst, s, chi, T, ctx=ctx))
    return reports


def doubling_check(r, s, chi, T, coprime_to=(), ctx_small=None, ctx_big=None):
    """|h(..., 2T) - h(..., T)| against tail_bound(T): validates the budget."""
    small = _ctx_for(T, ctx_small).h(r, s, chi, T, coprime_to=coprime_to)
    big = _ctx_for(2 * T, ctx_big).h(r, s, chi, 2 * T, coprime_to=coprime_to)
    diff = abs(big.value - small.value)
    return diff, small.tail_bound, diff <= small.tail_bound

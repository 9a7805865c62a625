"""The smoothed first-moment experiment over conductors c = 1 (mod 16).

sum* L(1/2, chi_c) exp(-N(c)/y) is evaluated per conductor through the
approximate functional equation and compared against the main term A*y,
where A is assembled exactly from its displayed ingredients:

    A = (2 + sqrt(2)) * res_{s=1} zeta_K / (#h_(16) * zeta_K(2)) * S,
    S = sum over odd ideals of N^(-2) * prod_{p | (16) A} (1 + N(p)^(-1))^(-1).

S is computed through its Euler product (the (1+i) factor contributes a
constant 2/3; the odd part telescopes to
(1/2) zeta_K(2) prod_pi (1 - 1/(N^2 (N+1))), which converges ~ P^-2), with
the literal truncated ideal series kept as a small-scale oracle.

Also here: the Polya-Vinogradov-style ratio reporter for character sums
over conductors and the bilinear large-sieve ratio reporter.  Both are
empirical monitors with fixed thresholds, not theorems.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .characters import _sym_exp, ray_class_group
from .gaussian import (
    GaussianInt,
    ONE,
    enumerate_c_1mod16,
    factor,
    is_squarefree,
    primary_in_disk,
    primary_primes,
)
from .gauss_sums import _I4
from .lfunctions import afe_parts, default_cache, l_half, xi_cutoff, zeta_K, zeta_K_residue
from .summation import Kahan, KahanComplex

DEFAULT_CUT = 1e-12


def default_x(y: float) -> float:
    return math.sqrt(4.0 * y)


def conductor_norm_limit(y: float, cut: float) -> int:
    """Largest conductor norm kept by the weight cutoff exp(-N/y) >= cut."""
    return int(y * math.log(1.0 / cut))


def conductors(y: float, cut: float = DEFAULT_CUT, include_one: bool = True):
    """Squarefree c = 1 (mod 16) within the weight cutoff, in canonical order."""
    cs = [c for c in enumerate_c_1mod16(conductor_norm_limit(y, cut)) if is_squarefree(c)]
    if not include_one:
        cs = [c for c in cs if c != ONE]
    return cs


@dataclass(frozen=True)
class MomentRow:
    c: GaussianInt
    norm: int
    weight: float
    s1: complex
    s2: complex

    @property
    def l_value(self) -> complex:
        return self.s1 + self.s2


@dataclass(frozen=True)
class ConstantABreakdown:
    geometric: float
    residue: float
    class_number: int
    zeta2: float
    ideal_sum: float
    A: float


@dataclass(frozen=True)
class MomentReport:
    y: float
    x: float
    tol: float
    cut: float
    include_one: bool
    rows: tuple[MomentRow, ...]
    sigma1: complex
    sigma2: complex
    total: complex
    constant: ConstantABreakdown
    main_term: float
    ratio: float
    imag_leak: float


def constant_A(tol: float = 1e-8) -> ConstantABreakdown:
    """The first-moment constant with its displayed breakdown.

    The ideal sum converges through its Euler product; the prime cutoff is
    chosen so the product tail (~ sum 1/N^3 over omitted primes) is far
    below tol, and doubling the cutoff moves the value by less than tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    geometric = 2.0 + math.sqrt(2.0)
    residue = zeta_K_residue()
    class_number = ray_class_group()[0].order
    zeta2 = zeta_K(2.0)
    ideal_sum = _ideal_sum_euler(_prime_cutoff(tol), zeta2)
    a_value = geometric * residue / (class_number * zeta2) * ideal_sum
    return ConstantABreakdown(geometric, residue, class_number, zeta2, ideal_sum, a_value)


def _prime_cutoff(tol: float) -> int:
    return max(100, int(2.0 / math.sqrt(tol)) + 1)


def _ideal_sum_euler(prime_cutoff: int, zeta2: float | None = None) -> float:
    """S = (1/2) zeta_K(2) prod over odd primary primes of (1 - 1/(N^2(N+1)))."""
    if zeta2 is None:
        zeta2 = zeta_K(2.0)
    prod = 1.0
    for pi in primary_primes(prime_cutoff):
        n = pi.norm()
        prod *= 1.0 - 1.0 / (n * n * (n + 1))
    return 0.5 * zeta2 * prod


def ideal_sum_direct(max_norm: int) -> float:
    """The literal truncated series: sum over primary a with N(a) <= max_norm
    of (2/3) N(a)^(-2) prod_{pi | a} (1 + N(pi)^(-1))^(-1).  Test oracle; the
    tail beyond max_norm is below (pi/4)/max_norm."""
    acc = Kahan()
    for a in primary_in_disk(max_norm):
        term = 2.0 / 3.0 / (a.norm() ** 2)
        for pi, _e in factor(a).factors:
            npi = pi.norm()
            term *= npi / (npi + 1.0)
        acc.add(term)
    return acc.value


# -- per-conductor evaluation (parallelizable) --------------------------------

def _row_batch(payload):
    pairs, x, tol, max_norm = payload
    cache = default_cache()
    cache.ensure(max_norm)
    out = []
    for re, im in pairs:
        s1, s2, _nterms, _est = afe_parts(GaussianInt(re, im), x, tol, cache=cache)
        out.append((s1, s2))
    return out


def _chunks(seq, n):
    step = max(1, -(-len(seq) // n))
    return [seq[i:i + step] for i in range(0, len(seq), step)]


def first_moment(y: float, x: float | None = None, tol: float = 1e-8,
                 cut: float = DEFAULT_CUT, threads: int | None = None,
                 include_one: bool = True) -> MomentReport:
    """The smoothed first moment at scale y, with the sigma1/sigma2 split.

    Deterministic: rows are reduced in conductor order regardless of the
    worker count.
    """
    if y < 10:
        raise ValueError("y must be at least 10")
    if not (0 < cut <= 1e-12):
        raise ValueError("cut must be in (0, 1e-12]")
    if x is None:
        x = default_x(y)
    if x <= 1:
        raise ValueError("x must exceed 1")
    if threads is None:
        threads = os.cpu_count() or 1
    cs = conductors(y, cut, include_one=include_one)
    xi = xi_cutoff(tol)
    max_c_norm = max((c.norm() for c in cs), default=1)
    max_norm = max(
        int(x * xi / (2.0 * math.pi)),
        int(4.0 * max_c_norm * xi / (2.0 * math.pi * x)),
        16,
    )
    pairs = [(c.re, c.im) for c in cs]
    if threads > 1 and len(cs) > 8:
        default_cache().ensure(max_norm)  # built pre-fork so workers share it
        payloads = [(chunk, x, tol, max_norm) for chunk in _chunks(pairs, threads * 4)]
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = [row for batch in ex.map(_row_batch, payloads) for row in batch]
    else:
        parts = _row_batch((pairs, x, tol, max_norm))

    rows = []
    acc1 = KahanComplex()
    acc2 = KahanComplex()
    for c, (s1, s2) in zip(cs, parts):
        w = math.exp(-c.norm() / y)
        rows.append(MomentRow(c, c.norm(), w, s1, s2))
        acc1.add(s1 * w)
        acc2.add(s2 * w)
    sigma1 = acc1.value
    sigma2 = acc2.value
    total = sigma1 + sigma2

    _x_independence_spot_check(cs, x, tol)

    const = constant_A(tol)
    main_term = const.A * y
    ratio = total.real / main_term
    imag_leak = abs(total.imag) / abs(total) if total != 0 else 0.0
    return MomentReport(y, x, tol, cut, include_one, tuple(rows),
                        sigma1, sigma2, total, const, main_term, ratio, imag_leak)


def _x_independence_spot_check(cs, x, tol) -> None:
    """Re-verify one conductor at a second balance parameter."""
    sample = next((c for c in cs if c != ONE), None)
    if sample is None:
        return
    cache = default_cache()
    v1 = l_half(sample, x=x, tol=tol, cache=cache).value
    v2 = l_half(sample, x=None, tol=tol, cache=cache).value
    if abs(v1 - v2) > 2.0 * tol:
        raise ArithmeticError(
            f"x-independence violated at c={sample}: {v1} vs {v2}"
        )


def sigma_split(y: float, x: float | None = None, tol: float = 1e-8,
                cut: float = DEFAULT_CUT, threads: int | None = None,
                include_one: bool = True) -> tuple[complex, complex]:
    """(Sigma_1, Sigma_2): the same per-conductor AFE evaluations regrouped;
    their sum is the first-moment total exactly."""
    report = first_moment(y, x=x, tol=tol, cut=cut, threads=threads,
                          include_one=include_one)
    return report.sigma1, report.sigma2


# -- empirical ratio reporters -------------------------------------------------

@dataclass(frozen=True)
class PvRow:
    a: GaussianInt
    norm: int
    ratio: float


@dataclass(frozen=True)
class PvReport:
    y: float
    norm_bound: int
    cut: float
    threshold: float
    rows: tuple[PvRow, ...]
    max_ratio: float
    passed: bool


def _is_fourth_power(a: GaussianInt) -> bool:
    return all(e % 4 == 0 for _pi, e in factor(a).factors)


def pv_ratio_report(y: float = 400.0, norm_bound: int = 200,
                    cut: float = DEFAULT_CUT, threshold: float = 10.0) -> PvReport:
    """For non-fourth-power primary a: |sum over primary c of
    (c/a)_4 exp(-N(c)/y)| / N(a)^(1/2), c within the weight cutoff.

    The fixed threshold is a monitoring device (the bound is a theorem
    only up to unspecified constants), not a proof.
    """
    if y < 10:
        raise ValueError("y must be at least 10")
    cs = primary_in_disk(conductor_norm_limit(y, cut))
    weights = [math.exp(-c.norm() / y) for c in cs]
    rows = []
    for a in primary_in_disk(norm_bound):
        if a == ONE or _is_fourth_power(a):
            continue
        acc = KahanComplex()
        are, aim = a.re, a.im
        for c, w in zip(cs, weights):
            k = _sym_exp(c.re, c.im, are, aim)
            if k >= 0:
                acc.add(_I4[k] * w)
        rows.append(PvRow(a, a.norm(), abs(acc.value) / math.sqrt(a.norm())))
    max_ratio = max(row.ratio for row in rows)
    return PvReport(y, norm_bound, cut, threshold, tuple(rows), max_ratio,
                    max_ratio <= threshold)


@dataclass(frozen=True)
class SieveRow:
    trial: int
    ratio: float


@dataclass(frozen=True)
class SieveReport:
    m_bound: int
    n_bound: int
    trials: int
    seed: int
    coeff_kind: str
    threshold: float
    rows: tuple[SieveRow, ...]
    max_ratio: float
    passed: bool


def sieve_ratio_report(m_bound: int = 500, n_bound: int = 500, trials: int = 20,
                       seed: int = 1, threshold: float = 50.0,
                       coeff_kind: str = "pm1") -> SieveReport:
    """Bilinear ratio sum*_m |sum*_n a_n (n/m)_4|^2 against
    (M + N + (MN)^(2/3)) * sum |a_n|^2 over random coefficient vectors.

    m, n run over squarefree primary elements; the seed fully determines
    the coefficients (recorded in the report).
    """
    if m_bound < 16 or n_bound < 16:
        raise ValueError("m and n bounds must be at least 16")
    if trials < 1:
        raise ValueError("need at least one trial")
    ms = [m for m in primary_in_disk(m_bound) if m != ONE and is_squarefree(m)]
    ns = [n for n in primary_in_disk(n_bound) if is_squarefree(n)]
    matrix = np.zeros((len(ms), len(ns)), dtype=complex)
    for i, m in enumerate(ms):
        mre, mim = m.re, m.im
        for j, n in enumerate(ns):
            k = _sym_exp(n.re, n.im, mre, mim)
            if k >= 0:
                matrix[i, j] = _I4[k]
    rng = np.random.default_rng(seed)
    bound = m_bound + n_bound + (m_bound * n_bound) ** (2.0 / 3.0)
    rows = []
    for t in range(trials):
        if coeff_kind == "pm1":
            coeffs = rng.choice((-1.0, 1.0), size=len(ns)).astype(complex)
        elif coeff_kind == "gauss":
            coeffs = (rng.standard_normal(len(ns))
                      + 1j * rng.standard_normal(len(ns))) / math.sqrt(2.0)
        else:
            raise ValueError("coeff_kind must be 'pm1' or 'gauss'")
        lhs = float(np.sum(np.abs(matrix @ coeffs) ** 2))
        denom = bound * float(np.sum(np.abs(coeffs) ** 2))
        rows.append(SieveRow(t, lhs / denom))
    max_ratio = max(row.ratio for row in rows)
    return SieveReport(m_bound, n_bound, trials, seed, coeff_kind, threshold,
                       tuple(rows), max_ratio, max_ratio <= threshold)

"""Exact arithmetic, factorization and enumeration over Z[i]."""

import math
import random
from fractions import Fraction

import pytest

from quartic_hecke.gaussian import (
    Factorization,
    GaussianInt as G,
    IdealGen,
    ONE,
    ONE_PLUS_I,
    divrem,
    enumerate_c_1mod16,
    enumerate_ideals,
    enumerate_primary,
    euler_phi_ideal,
    factor,
    gcd,
    is_primary,
    is_prime,
    is_squarefree,
    moebius,
    normalize_generator,
    primary_associate,
    primary_in_disk,
    primary_primes,
)


def test_norm_examples():
    assert G(3, 2).norm() == 13
    assert G(0, 0).norm() == 0
    assert (ONE_PLUS_I ** 2).norm() == 4
    assert ONE_PLUS_I ** 2 == G(0, 2)


def test_norm_multiplicative_random():
    rng = random.Random(1)
    for _ in range(10_000):
        a = G(rng.randrange(-300, 301), rng.randrange(-300, 301))
        b = G(rng.randrange(-300, 301), rng.randrange(-300, 301))
        assert (a * b).norm() == a.norm() * b.norm()


def test_divrem_examples():
    q, r = divrem(G(5, 0), ONE_PLUS_I)
    assert q * ONE_PLUS_I + r == G(5, 0)
    assert 2 * r.norm() <= ONE_PLUS_I.norm()
    q, r = divrem(G(6, 7), G(3, 2))
    assert q * G(3, 2) + r == G(6, 7)
    assert 2 * r.norm() <= G(3, 2).norm()
    z = G(-11, 40)
    assert divmod(z, ONE) == (z, G(0, 0))


def test_divrem_rounding_rule_exhaustive():
    # each coordinate of a/b rounds to nearest, ties to even
    for are in range(-6, 7):
        for aim in range(-6, 7):
            for bre in range(-3, 4):
                for bim in range(-3, 4):
                    b = G(bre, bim)
                    if b.is_zero:
                        continue
                    a = G(are, aim)
                    q, r = divrem(a, b)
                    assert q * b + r == a
                    assert 2 * r.norm() <= b.norm()
                    n = b.norm()
                    for got, num in ((q.re, are * bre + aim * bim),
                                     (q.im, aim * bre - are * bim)):
                        exact = Fraction(num, n)
                        lo = math.floor(exact)
                        frac = exact - lo
                        if frac < Fraction(1, 2):
                            want = lo
                        elif frac > Fraction(1, 2):
                            want = lo + 1
                        else:
                            want = lo if lo % 2 == 0 else lo + 1
                        assert got == want


def test_divrem_by_zero():
    with pytest.raises(ZeroDivisionError):
        divrem(G(1, 0), G(0, 0))


def _divisors_brute(z):
    out = []
    bound = math.isqrt(z.norm())
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            d = G(a, b)
            if d.is_zero or d.norm() > z.norm():
                continue
            if divrem(z, d)[1].is_zero:
                out.append(d)
    return out


def test_gcd_examples_and_brute_force():
    assert gcd(G(5, 0), G(3, 2)) == ONE
    assert gcd(ONE_PLUS_I ** 3, G(2, 0)) == ONE_PLUS_I ** 2
    z = G(4, 7)
    assert gcd(z, z) == normalize_generator(z)
    rng = random.Random(2)
    for _ in range(40):
        a = G(rng.randrange(-12, 13), rng.randrange(-12, 13))
        b = G(rng.randrange(-12, 13), rng.randrange(-12, 13))
        if a.is_zero or b.is_zero:
            continue
        g = gcd(a, b)
        assert divrem(a, g)[1].is_zero and divrem(b, g)[1].is_zero
        # every common divisor divides g
        for d in _divisors_brute(a):
            if divrem(b, d)[1].is_zero:
                assert divrem(g, d)[1].is_zero
        assert g == normalize_generator(g)


def test_gcd_zero_pair():
    with pytest.raises(ValueError):
        gcd(G(0, 0), G(0, 0))


def test_primary_associate_examples():
    assert primary_associate(G(2, -3)) == (3, G(3, 2))
    assert primary_associate(G(3, 2)) == (0, G(3, 2))
    assert primary_associate(G(-1, 2)) == (0, G(-1, 2))
    with pytest.raises(ValueError):
        primary_associate(ONE_PLUS_I)


def test_primary_associate_unique_and_idempotent():
    for re in range(-9, 10):
        for im in range(-9, 10):
            z = G(re, im)
            if z.is_zero or not z.is_odd:
                continue
            hits = [u for u in range(4)
                    if is_primary(z * G(0, 1) ** ((4 - u) % 4))]
            assert len(hits) == 1
            u, p = primary_associate(z)
            assert G(0, 1) ** u * p == z
            assert primary_associate(p) == (0, p)


def test_factor_examples():
    f = factor(G(5, 0))
    assert f.unit_exp == 0 and f.r == 0
    assert f.factors == ((G(-1, -2), 1), (G(-1, 2), 1))
    assert all(is_primary(pi) for pi, _ in f.factors)

    f = factor(G(3, 0))
    assert f.r == 0 and len(f.factors) == 1
    assert f.factors[0] == (G(-3, 0), 1)
    assert f.reassemble() == G(3, 0)

    f = factor(G(3, 2) ** 2)
    assert f.factors == ((G(3, 2), 2),)


def test_factor_reassembles_random():
    rng = random.Random(3)
    for _ in range(10_000):
        z = G(rng.randrange(-200, 201), rng.randrange(-200, 201))
        if z.is_zero:
            continue
        f = factor(z)
        assert f.reassemble() == z
        for pi, _ in f.factors:
            assert is_primary(pi) and is_prime(pi)


def test_moebius_and_squarefree():
    assert moebius(ONE) == 1
    assert moebius(G(3, 2)) == -1
    assert moebius(G(5, 12)) == 0  # (3+2i)^2
    assert is_squarefree(G(3, 2) * G(-1, 2))
    assert not is_squarefree(G(5, 12))
    with pytest.raises(ValueError):
        moebius(G(0, 0))
    with pytest.raises(ValueError):
        moebius(G(2, 0))


def test_euler_phi_ideal():
    pi5 = G(-1, 2)
    assert euler_phi_ideal(pi5, 1) == 4
    assert euler_phi_ideal(pi5, 2) == 20
    assert euler_phi_ideal(G(3, 2), 1) == 12
    # enumeration oracle: count units of Z[i]/(pi^2) for N(pi) = 5
    mod = pi5 ** 2
    units = 0
    for s in range(mod.norm()):
        x = G(s, 0)
        seen = gcd(x, mod) if not x.is_zero else mod
        if seen == ONE:
            units += 1
    # rectangular transversal for pi^2 = -3-4i is {s : 0 <= s < 25}
    assert math.gcd(mod.re, mod.im) == 1
    assert units == 20


def test_primary_iff_one_mod_one_plus_i_cubed():
    cube = ONE_PLUS_I ** 3
    for n in primary_in_disk(10_000):
        assert divrem(n - ONE, cube)[1].is_zero
    # and conversely on a small grid
    for re in range(-9, 10):
        for im in range(-9, 10):
            z = G(re, im)
            if z.is_zero or not z.is_odd:
                continue
            expected = divrem(z - ONE, cube)[1].is_zero
            assert is_primary(z) == expected


def test_enumerate_primary_small():
    assert list(enumerate_primary(2)) == [ONE]
    got = list(enumerate_primary(30))
    assert got == sorted(got, key=lambda z: (z.norm(), z.re, z.im))
    assert G(-1, 2) in got and G(3, 2) in got


def test_enumerate_c_1mod16_example():
    got = list(enumerate_c_1mod16(300))
    brute = []
    for a in range(-17, 18):
        for b in range(-17, 18):
            if a % 16 == 1 and b % 16 == 0 and a * a + b * b <= 300:
                brute.append(G(a, b))
    brute.sort(key=lambda z: (z.norm(), z.re, z.im))
    assert got == brute
    assert got[0] == ONE
    assert {G(17, 0), G(1, 16), G(1, -16), G(-15, 0)} <= set(got)


def test_enumerate_ideals_small():
    got = list(enumerate_ideals(4))
    assert [(ideal.r, ideal.a) for ideal in got] == [(0, ONE), (1, ONE), (2, ONE)]
    assert [ideal.norm for ideal in got] == [1, 2, 4]


def test_ideal_count_matches_fundamental_domain():
    max_norm = 10_000
    count = sum(1 for _ in enumerate_ideals(max_norm))
    # one lattice point per associate class: a > 0, b >= 0
    brute = 0
    bound = math.isqrt(max_norm)
    for a in range(1, bound + 1):
        for b in range(0, math.isqrt(max_norm - a * a) + 1):
            brute += 1
    assert count == brute


def test_ideal_generator_norm():
    ideal = IdealGen.from_parts(3, G(3, 2))
    assert ideal.norm == 8 * 13
    assert ideal.generator.norm() == ideal.norm
    with pytest.raises(ValueError):
        IdealGen.from_parts(1, G(2, 1))


def test_primary_primes_contents():
    ps = primary_primes(50)
    assert G(-3, 0) in ps  # inert 3, norm 9
    assert all(is_primary(p) and is_prime(p) for p in ps)
    assert all(p.norm() <= 50 for p in ps)
    norms = sorted({p.norm() for p in ps})
    assert norms == [5, 9, 13, 17, 29, 37, 41, 49]


def test_parse_and_str_roundtrip():
    for text in ("3+2i", "-15", "1-16i", "i", "-i", "0", "7", "2i", "-3-4i"):
        z = G.parse(text)
        assert G.parse(str(z)) == z
    assert G.parse("i") == G(0, 1)
    assert G.parse("3+2i") == G(3, 2)
    with pytest.raises(ValueError):
        G.parse("3 + 2i")
    with pytest.raises(ValueError):
        G.parse("foo")


def test_factorization_reassemble_type():
    f = factor(G(7, 24))
    assert isinstance(f, Factorization)
    assert f.reassemble() == G(7, 24)

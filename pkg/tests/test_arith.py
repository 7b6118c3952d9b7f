"""Tests for the exact number-theoretic primitives."""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

import pytest

from qsift.arith import (
    EvenInput,
    ExactScalar,
    NonCoprimeModuli,
    crt,
    dedekind_sum,
    epsilon_d,
    jacobi,
    prime_factors,
)


# -------------------------------------------------------------- dedekind


def test_dedekind_empty_sum():
    for d in (-7, 0, 1, 12):
        assert dedekind_sum(d, 1) == 0


def test_dedekind_two_terms():
    # r=1: (1/3-1/2)^2, r=2: (2/3-1/2)^2
    assert dedekind_sum(1, 3) == Fraction(1, 18)


def test_dedekind_odd_in_first_argument():
    rng = random.Random(0)
    for _ in range(40):
        c = rng.randint(2, 60)
        d = rng.randint(1, 200)
        if gcd(d, c) != 1:
            continue
        assert dedekind_sum(-d, c) == -dedekind_sum(d, c)


def test_dedekind_reciprocity_oracle():
    # independent identity: s(d,c) + s(c,d) = -1/4 + (d/c + c/d + 1/(c d))/12
    rng = random.Random(1)
    for _ in range(40):
        c = rng.randint(2, 80)
        d = rng.randint(1, c - 1)
        if gcd(d, c) != 1:
            continue
        lhs = dedekind_sum(d, c) + dedekind_sum(c, d)
        rhs = Fraction(-1, 4) + (
            Fraction(d, c) + Fraction(c, d) + Fraction(1, c * d)
        ) / 12
        assert lhs == rhs


def test_dedekind_denominator_bound():
    rng = random.Random(2)
    for _ in range(40):
        c = rng.randint(1, 50)
        d = rng.randint(-100, 100)
        if c > 1 and gcd(d, c) != 1:
            continue
        assert (6 * c * c) % dedekind_sum(d, c).denominator == 0


# ---------------------------------------------------------------- jacobi


def test_jacobi_examples():
    assert jacobi(2, 5) == -1
    assert jacobi(0, 3) == 0
    for n in (1, 3, 5, 7, 9, 15, 21):
        assert jacobi(1, n) == 1


def test_jacobi_euler_criterion_oracle():
    rng = random.Random(3)
    for p in (3, 5, 7, 11, 13, 17, 19, 23, 29):
        for _ in range(10):
            a = rng.randint(-50, 50)
            e = pow(a % p, (p - 1) // 2, p)
            expected = 0 if e == 0 else (1 if e == 1 else -1)
            assert jacobi(a, p) == expected


def test_jacobi_multiplicative_in_top():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.choice((3, 5, 9, 15, 21, 35))
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        assert jacobi(a * b, n) == jacobi(a, n) * jacobi(b, n)


def test_jacobi_rejects_even():
    with pytest.raises(ValueError):
        jacobi(3, 4)


# ------------------------------------------------------------------- crt


def test_crt_examples():
    assert crt([(4, 5), (1, 7)]) == 29
    assert crt([(3, 5)]) == 3
    assert crt([(0, 2), (0, 3)]) == 0


def test_crt_exhaustive_oracle():
    rng = random.Random(5)
    for _ in range(25):
        m1, m2 = rng.choice(((2, 3), (3, 4), (4, 9), (5, 7), (8, 15)))
        r1, r2 = rng.randrange(m1), rng.randrange(m2)
        brute = next(
            x for x in range(m1 * m2) if x % m1 == r1 and x % m2 == r2
        )
        assert crt([(r1, m1), (r2, m2)]) == brute


def test_crt_rejects_common_factor():
    with pytest.raises(NonCoprimeModuli):
        crt([(1, 4), (3, 6)])


def test_prime_factors():
    assert prime_factors(1) == {}
    assert prime_factors(360) == {2: 3, 3: 2, 5: 1}


# ----------------------------------------------------------- ExactScalar


def test_scalar_normal_form():
    assert ExactScalar(Fraction(1), 12) == ExactScalar(Fraction(2), 3)
    assert ExactScalar(Fraction(-2)) == ExactScalar(2, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        ExactScalar(Fraction(0))


def test_scalar_mul_examples():
    sqrt2 = ExactScalar(1, 2)
    assert sqrt2 * sqrt2 == ExactScalar(2)
    i = ExactScalar.unit_phase(Fraction(1, 4))
    assert i * i == ExactScalar.unit_phase(Fraction(1, 2))
    lhs = ExactScalar(1, 3, Fraction(1, 8)) * ExactScalar(2, 6, Fraction(7, 8))
    assert lhs == ExactScalar(6, 2, 0)


def test_scalar_pow():
    q = 7
    assert ExactScalar(1, q) ** 2 == ExactScalar(q)
    assert ExactScalar.unit_phase(Fraction(1, 24)) ** 24 == ExactScalar.one()
    assert ExactScalar(Fraction(3, 2), 5, Fraction(1, 3)) ** -1 == ExactScalar(
        Fraction(2, 15), 5, Fraction(2, 3)
    )


def test_scalar_pow_matches_repeated_mul():
    rng = random.Random(6)
    for _ in range(30):
        x = ExactScalar(
            Fraction(rng.randint(1, 9), rng.randint(1, 9)),
            rng.randint(1, 30),
            Fraction(rng.randint(0, 23), 24),
        )
        acc = x
        for e in range(2, 8):
            acc = acc * x
            assert x**e == acc


def test_scalar_mul_associative_commutative():
    rng = random.Random(7)
    for _ in range(30):
        xs = [
            ExactScalar(
                Fraction(rng.randint(1, 5)), rng.randint(1, 12),
                Fraction(rng.randint(0, 11), 12),
            )
            for _ in range(3)
        ]
        a, b, c = xs
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_scalar_matches_complex_evaluation():
    rng = random.Random(8)
    for _ in range(50):
        x = ExactScalar(
            Fraction(rng.randint(1, 20), rng.randint(1, 20)),
            rng.randint(1, 40),
            Fraction(rng.randint(0, 47), 48),
        )
        y = ExactScalar(
            Fraction(rng.randint(1, 20), rng.randint(1, 20)),
            rng.randint(1, 40),
            Fraction(rng.randint(0, 47), 48),
        )
        direct = complex(x * y)
        floated = complex(x) * complex(y)
        assert abs(direct - floated) <= 1e-12 * abs(floated)


def test_sqrt_of():
    assert ExactScalar.sqrt_of(Fraction(1, 25)) == ExactScalar(Fraction(1, 5))
    assert ExactScalar.sqrt_of(Fraction(1, 10)) == ExactScalar(Fraction(1, 10), 10)
    assert ExactScalar.sqrt_of(18) == ExactScalar(3, 2)


def test_epsilon_d():
    assert epsilon_d(1) == ExactScalar.one()
    assert epsilon_d(3) == ExactScalar.unit_phase(Fraction(1, 4))
    assert epsilon_d(-1) == ExactScalar.unit_phase(Fraction(1, 4))
    assert epsilon_d(5) == ExactScalar.one()
    with pytest.raises(EvenInput):
        epsilon_d(4)

"""Exact number-theoretic primitives.

Dedekind sums, Jacobi symbols and CRT over plain integers/fractions, plus
:class:`ExactScalar`, a decidable algebra for the constants that appear in
half-integral-weight transformation laws: every such constant is a product
``r * sqrt(s) * e^(2*pi*i*u)`` with rational r > 0, squarefree integer s >= 1
and rational phase u in [0, 1).  That monomial form is a normal form, so
equality of represented complex numbers is componentwise equality.

All functions are pure and all values immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "NonCoprimeModuli",
    "EvenInput",
    "dedekind_sum",
    "jacobi",
    "crt",
    "prime_factors",
    "ExactScalar",
    "epsilon_d",
]


class NonCoprimeModuli(Exception):
    """CRT moduli must be pairwise coprime."""


class EvenInput(Exception):
    """The quarter-period sign epsilon_d is only defined for odd d."""


def dedekind_sum(d: int, c: int) -> Fraction:
    """The Dedekind sum s(d, c) as an exact rational.

    Evaluates the defining sum of sawtooth products directly (empty for
    c = 1); O(c) integer work.  The literal summand is used, so a term with
    c | d*r contributes a factor -1/2 rather than the symmetrized 0 -- the
    two conventions agree whenever gcd(d, c) = 1, which covers every use in
    this package.
    """
    if c < 1:
        raise ValueError("c must be a positive integer")
    total = 0
    for r in range(1, c):
        total += (2 * r - c) * (2 * ((d * r) % c) - c)
    return Fraction(total, 4 * c * c)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n; the Legendre symbol when n is
    an odd prime."""
    if n < 1 or n % 2 == 0:
        raise ValueError("n must be a positive odd integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def crt(residues) -> int:
    """Solve x = r_i (mod m_i) for pairwise coprime moduli; returns the
    unique solution in [0, prod m_i)."""
    x, modulus = 0, 1
    for r, m in residues:
        if m < 1:
            raise ValueError("moduli must be positive")
        if gcd(modulus, m) != 1:
            raise NonCoprimeModuli(f"moduli {modulus} and {m} share a factor")
        # x' = x (mod modulus), x' = r (mod m)
        inv = pow(modulus % m, -1, m) if m > 1 else 0
        x = x + modulus * (((r - x) * inv) % m)
        modulus *= m
    return x % modulus


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization by trial division (desk-scale inputs)."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = g*g*s with s squarefree; returns (g, s)."""
    g, s = 1, 1
    for p, e in prime_factors(n).items():
        g *= p ** (e // 2)
        if e % 2:
            s *= p
    return g, s


@dataclass(frozen=True)
class ExactScalar:
    """A nonzero complex constant ``r * sqrt(s) * e^(2*pi*i*u)`` in normal
    form: r rational > 0, s squarefree integer >= 1, u rational in [0, 1).

    The constructor normalizes arbitrary input: negative r folds into the
    phase, square parts of s fold into r, u is reduced mod 1.
    """

    r: Fraction
    s: int = 1
    u: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        r = Fraction(self.r)
        u = Fraction(self.u)
        s = int(self.s)
        if r == 0:
            raise ValueError("ExactScalar cannot represent zero")
        if s < 1:
            raise ValueError("radicand must be a positive integer")
        if r < 0:
            r = -r
            u += Fraction(1, 2)
        g, s = _squarefree_split(s)
        object.__setattr__(self, "r", r * g)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "u", u % 1)

    # ------------------------------------------------------------ builders

    @classmethod
    def one(cls) -> "ExactScalar":
        return cls(Fraction(1))

    @classmethod
    def unit_phase(cls, u) -> "ExactScalar":
        """The root of unity e^(2*pi*i*u)."""
        return cls(Fraction(1), 1, Fraction(u))

    @classmethod
    def minus_one_pow(cls, x) -> "ExactScalar":
        """(-1)**x for rational x, read as e^(pi*i*x)."""
        return cls.unit_phase(Fraction(x) / 2)

    @classmethod
    def sqrt_of(cls, x) -> "ExactScalar":
        """The principal square root of a positive rational."""
        x = Fraction(x)
        if x <= 0:
            raise ValueError("sqrt_of needs a positive rational")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(1, x.denominator), x.numerator * x.denominator)

    # ------------------------------------------------------------- algebra

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return ExactScalar(self.r * other.r, self.s * other.s, self.u + other.u)

    def __pow__(self, e: int) -> "ExactScalar":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            # 1/(r sqrt(s)) = sqrt(s)/(r s)
            inv = ExactScalar(1 / (self.r * self.s), self.s, -self.u)
            return inv ** (-e)
        r = self.r**e * Fraction(self.s) ** (e // 2)
        s = self.s if e % 2 else 1
        return ExactScalar(r, s, self.u * e)

    def __complex__(self) -> complex:
        import cmath

        mag = float(self.r) * float(self.s) ** 0.5
        return mag * cmath.exp(2j * cmath.pi * float(self.u))

    def __str__(self) -> str:
        parts = []
        if self.r != 1 or (self.s == 1 and self.u == 0):
            parts.append(str(self.r))
        if self.s != 1:
            parts.append(f"sqrt({self.s})")
        if self.u != 0:
            parts.append(f"e(2*pi*i*{self.u})")
        return "*".join(parts)


def epsilon_d(d: int) -> ExactScalar:
    """The quarter-period sign: 1 for d = 1 (mod 4), i for d = 3 (mod 4)."""
    if d % 2 == 0:
        raise EvenInput("epsilon_d needs odd d")
    if d % 4 == 1:
        return ExactScalar.one()
    return ExactScalar.unit_phase(Fraction(1, 4))

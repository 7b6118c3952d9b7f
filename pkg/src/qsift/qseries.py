"""Exact truncated power series with a rational exponent offset.

A :class:`QSeries` stores ``q**offset * (c[0] + c[1]*q + ... + c[P-1]*q**(P-1))``
with an exact rational ``offset`` and coefficients in one of three rings:
arbitrary-precision integers, exact rationals, or integers modulo m.  The
series is exact for every exponent below ``offset + prec``; operations track
precision explicitly and never extend a series with assumed zeros.

Exponent steps above the offset are always integral; the offset itself may be
any rational (series such as the partition generating function carry offset
-1/24).  Storage is dense.

Every value is immutable and every operation is a pure function, so series
may be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "QSeriesError",
    "RingMismatch",
    "OffsetMismatch",
    "NonUnitLeadingCoefficient",
    "IncompatibleModulus",
    "BeyondPrecision",
    "CoefficientRing",
    "INTEGER",
    "RATIONAL",
    "integer_mod",
    "QSeries",
    "monomial",
    "FAST_MUL_MIN_PREC",
]


class QSeriesError(Exception):
    """Base class for series-arithmetic errors."""


class RingMismatch(QSeriesError):
    """Operands live in different coefficient rings."""


class OffsetMismatch(QSeriesError):
    """Offsets differ by a non-integer, so slots cannot be aligned."""


class NonUnitLeadingCoefficient(QSeriesError):
    """Inversion requires the constant slot to be a unit of the ring."""


class IncompatibleModulus(QSeriesError):
    """Requested modular reduction is not a ring homomorphism from here."""


class BeyondPrecision(QSeriesError):
    """Coefficient query past the exactly-known range."""


@dataclass(frozen=True)
class CoefficientRing:
    """Coefficient domain: integers (``int``), rationals (``rat``), or
    integers modulo m (``mod``)."""

    kind: str
    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("int", "rat", "mod"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("modulus must be an integer >= 2")
        elif self.modulus is not None:
            raise ValueError("modulus only applies to the 'mod' ring")

    def normalize(self, value):
        if self.kind == "mod":
            return int(value) % self.modulus
        if self.kind == "rat":
            return value if isinstance(value, Fraction) else Fraction(value)
        return int(value)

    def is_unit(self, value) -> bool:
        if self.kind == "mod":
            return gcd(int(value), self.modulus) == 1
        if self.kind == "rat":
            return value != 0
        return value in (1, -1)

    def inverse(self, value):
        """Multiplicative inverse of a unit; raises NonUnitLeadingCoefficient."""
        if not self.is_unit(value):
            raise NonUnitLeadingCoefficient(f"{value!r} is not a unit in {self}")
        if self.kind == "mod":
            return pow(int(value) % self.modulus, -1, self.modulus)
        if self.kind == "rat":
            return 1 / Fraction(value)
        return value  # +-1 over the integers

    def __str__(self) -> str:
        if self.kind == "mod":
            return f"Z/{self.modulus}"
        return "Z" if self.kind == "int" else "Q"


INTEGER = CoefficientRing("int")
RATIONAL = CoefficientRing("rat")


def integer_mod(m: int) -> CoefficientRing:
    return CoefficientRing("mod", m)


# Products whose output precision reaches this size are routed through the
# exact Kronecker-substitution convolution (big-integer multiply, subquadratic
# in CPython); below it the schoolbook loop wins.  Semantics are identical.
FAST_MUL_MIN_PREC = 1 << 14


def _pack(values, width: int) -> int:
    buf = bytearray(width * len(values))
    for i, v in enumerate(values):
        if v:
            buf[i * width : (i + 1) * width] = v.to_bytes(width, "little")
    return int.from_bytes(buf, "little")


def _unpack(number: int, width: int, count: int) -> list[int]:
    nbytes = max(width * count, (number.bit_length() + 7) // 8)
    data = number.to_bytes(nbytes, "little")
    return [
        int.from_bytes(data[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


def _conv_kronecker(xs, ys, n_out: int, ring: CoefficientRing) -> list:
    """Exact convolution via big-integer multiplication.

    Integer coefficients are split into positive/negative parts so every
    packed value is nonnegative; slot widths are sized from an a-priori bound
    on the convolution terms, so no carries can bleed between slots.
    """
    n_min = min(len(xs), len(ys))
    if ring.kind == "mod":
        m = ring.modulus
        bound = n_min * (m - 1) * (m - 1)
        width = bound.bit_length() // 8 + 1
        prod = _pack(xs, width) * _pack(ys, width)
        return [v % m for v in _unpack(prod, width, n_out)]

    max_x = max((abs(v) for v in xs), default=0)
    max_y = max((abs(v) for v in ys), default=0)
    if max_x == 0 or max_y == 0:
        return [0] * n_out
    bound = 2 * n_min * max_x * max_y
    width = bound.bit_length() // 8 + 1
    xp = _pack([v if v > 0 else 0 for v in xs], width)
    xn = _pack([-v if v < 0 else 0 for v in xs], width)
    yp = _pack([v if v > 0 else 0 for v in ys], width)
    yn = _pack([-v if v < 0 else 0 for v in ys], width)
    plus = _unpack(xp * yp + xn * yn, width, n_out)
    minus = _unpack(xp * yn + xn * yp, width, n_out)
    return [u - v for u, v in zip(plus, minus)]


def _conv_schoolbook(xs, ys, n_out: int, ring: CoefficientRing) -> list:
    """Schoolbook convolution; iterates the factor with fewer nonzero slots,
    so sparse factors cost O(prec * nnz)."""
    if sum(1 for v in xs if v) > sum(1 for v in ys if v):
        xs, ys = ys, xs
    out = [0] * n_out
    len_y = len(ys)
    for i, x in enumerate(xs):
        if not x:
            continue
        if i >= n_out:
            break
        lim = min(len_y, n_out - i)
        for j in range(lim):
            y = ys[j]
            if y:
                out[i + j] += x * y
    if ring.kind == "mod":
        m = ring.modulus
        out = [v % m for v in out]
    return out


@dataclass(frozen=True)
class QSeries:
    """Truncated series ``q**offset * sum(coeffs[n] q**n, n < prec)``.

    ``prec == len(coeffs)``; coefficients are exact for all exponents below
    ``offset + prec``.
    """

    offset: Fraction
    coeffs: tuple
    ring: CoefficientRing

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", Fraction(self.offset))
        object.__setattr__(
            self, "coeffs", tuple(self.ring.normalize(c) for c in self.coeffs)
        )
        if len(self.coeffs) < 1:
            raise ValueError("a series needs at least one coefficient slot")

    @property
    def prec(self) -> int:
        return len(self.coeffs)

    # ------------------------------------------------------------------ ops

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        shift = self.offset - other.offset
        if shift.denominator != 1:
            raise OffsetMismatch(f"offsets differ by {shift}, not an integer")
        lo = min(self.offset, other.offset)
        exact_to = min(self.offset + self.prec, other.offset + other.prec)
        n_out = int(exact_to - lo)
        out = [0] * n_out
        for series in (self, other):
            start = int(series.offset - lo)
            for i, c in enumerate(series.coeffs):
                if start + i >= n_out:
                    break
                if c:
                    out[start + i] += c
        return QSeries(lo, tuple(out), self.ring)

    def __neg__(self) -> "QSeries":
        return QSeries(self.offset, tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        n_out = min(self.prec, other.prec)
        if self.ring.kind != "rat" and n_out >= FAST_MUL_MIN_PREC:
            out = _conv_kronecker(self.coeffs, other.coeffs, n_out, self.ring)
        else:
            out = _conv_schoolbook(self.coeffs, other.coeffs, n_out, self.ring)
        return QSeries(self.offset + other.offset, tuple(out), self.ring)

    def invert(self) -> "QSeries":
        """Multiplicative inverse up to precision; the offset negates.

        Requires a unit constant slot.  The recurrence walks the nonzero
        slots of ``self`` only, so inverting a sparse series (eta-style) is
        O(prec * nnz).
        """
        ring = self.ring
        inv0 = ring.inverse(self.coeffs[0])
        p = self.prec
        support = [(k, self.coeffs[k]) for k in range(1, p) if self.coeffs[k]]
        out = [0] * p
        out[0] = inv0
        mod = ring.modulus if ring.kind == "mod" else None
        for n in range(1, p):
            acc = 0
            for k, ak in support:
                if k > n:
                    break
                h = out[n - k]
                if h:
                    acc += ak * h
            if acc:
                v = -inv0 * acc
                out[n] = v % mod if mod is not None else v
        return QSeries(-self.offset, tuple(out), ring)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e == 0:
            return monomial(Fraction(0), self.ring, self.prec)
        base = self if e > 0 else self.invert()
        e = abs(e)
        result = None
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                break
            base = base * base
        return result

    def reduce_mod(self, m: int) -> "QSeries":
        """Reduce coefficients into Z/m.  Allowed from the integers or from
        Z/(km); anything else raises IncompatibleModulus."""
        if m < 2:
            raise ValueError("modulus must be >= 2")
        if self.ring.kind == "rat":
            raise IncompatibleModulus("rational coefficients cannot be reduced")
        if self.ring.kind == "mod" and self.ring.modulus % m != 0:
            raise IncompatibleModulus(
                f"cannot reduce Z/{self.ring.modulus} to Z/{m}"
            )
        ring = integer_mod(m)
        return QSeries(self.offset, tuple(c % m for c in self.coeffs), ring)

    def extract_progression(self, m: int, t: int) -> "QSeries":
        """Keep the slots with index ``m*n + t``; slot n of the result is
        slot ``m*n + t`` of the input and the offset becomes (offset + t)/m.

        The input precision must exceed ``t`` so the result is nonempty.
        """
        if not 0 <= t < m:
            raise ValueError("need 0 <= t < m")
        if self.prec <= t:
            raise ValueError("precision does not reach the first selected slot")
        n_out = (self.prec - t + m - 1) // m
        coeffs = self.coeffs[t::m][:n_out]
        return QSeries((self.offset + t) / m, coeffs, self.ring)

    def substitute_power(self, k: int) -> "QSeries":
        """Replace q by q**k: all exponents multiply by k."""
        if k < 1:
            raise ValueError("k must be a positive integer")
        out = [0] * (k * self.prec)
        out[::k] = self.coeffs
        return QSeries(self.offset * k, tuple(out), self.ring)

    def coefficient_at(self, exponent):
        """Exact coefficient of ``q**exponent``.

        Returns None (absent) when the exponent is not congruent to the
        offset mod 1; returns 0 for on-lattice exponents below the offset.
        Raises BeyondPrecision past the exactly-known range.
        """
        e = Fraction(exponent)
        if e >= self.offset + self.prec:
            raise BeyondPrecision(f"exponent {e} >= {self.offset + self.prec}")
        delta = e - self.offset
        if delta.denominator != 1:
            return None
        idx = delta.numerator
        if 0 <= idx < self.prec:
            return self.coeffs[idx]
        return self.ring.normalize(0)

    # ------------------------------------------------------------- display

    def __str__(self) -> str:
        shown = []
        for n, c in enumerate(self.coeffs):
            if c:
                shown.append(f"{c}*q^{n}")
            if len(shown) >= 6:
                shown.append("...")
                break
        body = " + ".join(shown) if shown else "0"
        if self.offset:
            return f"q^({self.offset})*({body}) + O(q^({self.offset + self.prec}))"
        return f"{body} + O(q^{self.prec})"


def monomial(exponent, ring: CoefficientRing, prec: int) -> QSeries:
    """The series ``q**exponent`` known to precision ``prec``."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    coeffs = [0] * prec
    coeffs[0] = 1
    return QSeries(Fraction(exponent), tuple(coeffs), ring)

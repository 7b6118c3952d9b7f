"""Generating functions: eta-quotients, the mock theta functions f and omega,
the weight-3/2 theta series, and brute-force combinatorial oracles.

Construction loops exploit the sparse pentagonal structure of the eta factors
(multiplying or dividing a dense prefix by a polynomial with O(sqrt(P))
terms), so building P coefficients costs O(P^(3/2)) instead of going through
generic dense products.  The mock theta accumulators divide by the sparse
squared binomials (1 +- q^j)^2 directly for the same reason.

Every generator accepts an optional coefficient ring; constructing directly
in Z/m agrees with constructing over Z and reducing (all loops use only ring
operations), which the test suite checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .qseries import (
    INTEGER,
    RATIONAL,
    CoefficientRing,
    QSeries,
    integer_mod,
)

__all__ = [
    "OracleBoundExceeded",
    "UnknownSeries",
    "EtaQuotientSpec",
    "SeriesCatalogEntry",
    "eta_series",
    "eta_quotient",
    "mock_f",
    "mock_omega",
    "theta_g",
    "rank_diff_oracle",
    "omega_partition_oracle",
    "catalog",
    "catalog_entry",
    "build_series",
    "BUILTIN_NAMES",
]


class OracleBoundExceeded(Exception):
    """Brute-force oracles refuse inputs past their configured bound."""


class UnknownSeries(KeyError):
    """No catalog entry with that name."""


DEFAULT_ORACLE_BOUND = 60


@dataclass(frozen=True)
class EtaQuotientSpec:
    """A finite product of rescaled eta factors, one (delta, r) pair per
    factor; deltas are kept distinct and sorted ascending."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        factors = tuple(sorted((int(d), int(r)) for d, r in self.factors))
        if not factors:
            raise ValueError("an eta-quotient needs at least one factor")
        deltas = [d for d, _ in factors]
        if len(set(deltas)) != len(deltas):
            raise ValueError("deltas must be pairwise distinct")
        for d, r in factors:
            if d < 1:
                raise ValueError("deltas must be positive")
            if r == 0:
                raise ValueError("exponents must be nonzero")
        object.__setattr__(self, "factors", factors)

    @property
    def B(self) -> int:
        """sum(delta * r) -- controls the fractional exponent B/24."""
        return sum(d * r for d, r in self.factors)

    @property
    def weight_twice(self) -> int:
        """Twice the weight: sum of the exponents."""
        return sum(r for _, r in self.factors)

    @property
    def level(self) -> int:
        return lcm(*(d for d, _ in self.factors))

    def __str__(self) -> str:
        return ",".join(f"{d}^{r}" for d, r in self.factors)


@dataclass(frozen=True)
class SeriesCatalogEntry:
    name: str
    spec: EtaQuotientSpec | str  # an eta-quotient or a builtin tag
    description: str


def _pentagonal_pairs(limit: int, delta: int = 1) -> list[tuple[int, int]]:
    """Sparse coefficients of prod(1 - q^(delta*n)): pairs (exponent, sign)
    with exponent = delta*k(3k+1)/2 < limit, k over Z, sorted by exponent."""
    pairs = [(0, 1)]
    k = 1
    while True:
        hit = False
        for kk in (k, -k):
            e = delta * kk * (3 * kk + 1) // 2
            if e < limit:
                pairs.append((e, 1 if k % 2 == 0 else -1))
                hit = True
        if not hit:
            break
        k += 1
    pairs.sort()
    return pairs


def _mul_pass(coeffs: list, pairs, ring: CoefficientRing) -> list:
    """Multiply a dense prefix by a sparse polynomial (list of (exp, coef))."""
    p = len(coeffs)
    out = [0] * p
    for e, s in pairs:
        if e >= p:
            break
        for i in range(p - e):
            c = coeffs[i]
            if c:
                out[i + e] += s * c
    if ring.kind == "mod":
        m = ring.modulus
        out = [v % m for v in out]
    return out


def _div_pass(coeffs: list, pairs, ring: CoefficientRing) -> list:
    """Divide a dense prefix by a sparse polynomial with constant term 1."""
    assert pairs[0] == (0, 1)
    tail = pairs[1:]
    p = len(coeffs)
    out = list(coeffs)
    mod = ring.modulus if ring.kind == "mod" else None
    for i in range(p):
        v = out[i]
        for e, s in tail:
            if e > i:
                break
            h = out[i - e]
            if h:
                v -= s * h
        out[i] = v % mod if mod is not None else v
    return out


def eta_series(prec: int, ring: CoefficientRing = INTEGER) -> QSeries:
    """q^(1/24) * prod(1 - q^n): offset 1/24, pentagonal-number support."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    coeffs = [0] * prec
    for e, s in _pentagonal_pairs(prec):
        coeffs[e] = s
    return QSeries(Fraction(1, 24), tuple(coeffs), ring)


def eta_quotient(
    spec: EtaQuotientSpec, prec: int, ring: CoefficientRing = INTEGER
) -> QSeries:
    """The q-expansion of the eta-quotient: offset B/24, leading coefficient 1."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    coeffs = [0] * prec
    coeffs[0] = 1
    for delta, r in spec.factors:
        pairs = _pentagonal_pairs(prec, delta)
        for _ in range(abs(r)):
            if r > 0:
                coeffs = _mul_pass(coeffs, pairs, ring)
            else:
                coeffs = _div_pass(coeffs, pairs, ring)
    return QSeries(Fraction(spec.B, 24), tuple(coeffs), ring)


def mock_f(prec: int, ring: CoefficientRing = INTEGER) -> QSeries:
    """The mock theta function f(q) = 1 + sum(q^(n^2) / ((1+q)...(1+q^n))^2).

    The running product of (1+q^j)^(-2) factors is updated by dividing by the
    three-term polynomial (1+q^j)^2, and the term loop stops at the first n
    with n^2 >= prec.
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    acc = [0] * prec
    acc[0] = 1
    running = [0] * prec
    running[0] = 1
    n = 1
    while n * n < prec:
        need = prec - n * n
        running = _div_pass(running[:need], [(0, 1), (n, 2), (2 * n, 1)], ring)
        base = n * n
        for i, v in enumerate(running):
            if v:
                acc[base + i] += v
        n += 1
    return QSeries(Fraction(0), tuple(acc), ring)


def mock_omega(prec: int, ring: CoefficientRing = INTEGER) -> QSeries:
    """The mock theta function omega(q) = sum(q^(2n^2+2n) / ((q; q^2)_{n+1})^2).

    The running odd-Pochhammer inverse square gains a (1 - q^(2n+1))^(-2)
    factor per term; loop stops once 2n^2+2n >= prec.  Expansion starts
    1 + 2q + 3q^2 + 4q^3 + 6q^4 + ...
    """
    if prec < 1:
        raise ValueError("prec must be >= 1")
    acc = [0] * prec
    running = [0] * prec
    running[0] = 1
    n = 0
    while True:
        base = 2 * n * n + 2 * n
        if base >= prec:
            break
        odd = 2 * n + 1
        running = _div_pass(
            running[: prec - base], [(0, 1), (odd, -2), (2 * odd, 1)], ring
        )
        for i, v in enumerate(running):
            if v:
                acc[base + i] += v
        n += 1
    return QSeries(Fraction(0), tuple(acc), ring)


def theta_g(index: int, prec: int) -> QSeries:
    """The weight-3/2 theta series g_0, g_1, g_2 over the rationals.

    g_1 has exponents (6n+1)^2/24 (offset 1/24, integer steps) and
    coefficients -(n + 1/6).  The exponents of g_0 and g_2, (3n+1)^2/6, step
    by half-integers, so those two are returned in the variable q^(1/2):
    every exponent is doubled, giving offset 1/3 and integer slots at
    3n^2 + 2n with coefficients (-1)^n (n + 1/3) and (n + 1/3) respectively.
    """
    if index not in (0, 1, 2):
        raise ValueError("index must be 0, 1 or 2")
    if prec < 1:
        raise ValueError("prec must be >= 1")
    coeffs = [Fraction(0)] * prec
    n = 0
    while True:
        # the smaller of the two slots contributed by +-n
        low = n * (3 * n - 1) // 2 if index == 1 else 3 * n * n - 2 * n
        if n > 0 and low >= prec:
            break
        for nn in {n, -n}:
            if index == 1:
                slot = nn * (3 * nn + 1) // 2
                coef = -Fraction(6 * nn + 1, 6)
            else:
                slot = 3 * nn * nn + 2 * nn
                coef = Fraction(3 * nn + 1, 3)
                if index == 0 and nn % 2:
                    coef = -coef
            if 0 <= slot < prec:
                coeffs[slot] += coef
        n += 1
    offset = Fraction(1, 24) if index == 1 else Fraction(1, 3)
    return QSeries(offset, tuple(coeffs), RATIONAL)


def _iter_partition_shapes(n: int):
    """Yield (largest_part, number_of_parts) over all partitions of n."""
    if n == 0:
        yield (0, 0)
        return

    def rec(remaining: int, cap: int, largest: int, count: int):
        if remaining == 0:
            yield (largest, count)
            return
        top = min(remaining, cap)
        for part in range(top, 0, -1):
            yield from rec(remaining - part, part, largest or part, count + 1)

    yield from rec(n, n, 0, 0)


def rank_diff_oracle(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """N_e(n) - N_o(n) by exhaustive enumeration: the signed count of
    partitions by parity of rank = largest part - number of parts."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise OracleBoundExceeded(f"n={n} exceeds oracle bound {bound}")
    total = 0
    for largest, count in _iter_partition_shapes(n):
        total += 1 if (largest - count) % 2 == 0 else -1
    return total


def omega_partition_oracle(n: int, bound: int = DEFAULT_ORACLE_BOUND) -> int:
    """The count c(n) of partitions of n+1 in which every part except
    possibly the largest occurs inside a consecutive pair (k+1) + k, k >= 0.

    Concretely a configuration is one marked part L >= 1 plus a multiset of
    pairs (k+1, k) with k+1 <= L (pair weight 2k+1); the six listed
    partitions of 5 arise exactly this way, with the k = 0 pair written
    (1 + 0).  Exhaustive recursive enumeration.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise OracleBoundExceeded(f"n={n} exceeds oracle bound {bound}")
    target = n + 1

    def count_pairs(remaining: int, max_weight: int) -> int:
        # multisets of odd pair weights <= max_weight summing to remaining
        if remaining == 0:
            return 1
        total = 0
        w = min(max_weight, remaining)
        if w % 2 == 0:
            w -= 1
        while w >= 1:
            total += count_pairs(remaining - w, w)
            w -= 2
        return total

    total = 0
    for largest in range(1, target + 1):
        total += count_pairs(target - largest, 2 * largest - 1)
    return total


BUILTIN_NAMES = ("mock_f", "mock_omega", "theta_g0", "theta_g1", "theta_g2")

_CATALOG = (
    SeriesCatalogEntry(
        "partition", EtaQuotientSpec(((1, -1),)), "partition numbers p(n)"
    ),
    SeriesCatalogEntry(
        "multipartition_2", EtaQuotientSpec(((1, -2),)), "2-multipartitions"
    ),
    SeriesCatalogEntry(
        "multipartition_3", EtaQuotientSpec(((1, -3),)), "3-multipartitions"
    ),
    SeriesCatalogEntry(
        "cubic",
        EtaQuotientSpec(((1, -1), (2, -1))),
        "cubic partitions (second component even parts only)",
    ),
    SeriesCatalogEntry(
        "crank_diff",
        EtaQuotientSpec(((1, 3), (2, -2))),
        "even-minus-odd crank counts",
    ),
    SeriesCatalogEntry(
        "cphi2",
        EtaQuotientSpec(((1, -4), (2, 5), (4, -2))),
        "generalized Frobenius symbols cphi_2(n)",
    ),
    SeriesCatalogEntry(
        "core4", EtaQuotientSpec(((1, -1), (4, 4))), "4-core partitions"
    ),
    SeriesCatalogEntry(
        "eta5inv", EtaQuotientSpec(((5, -1),)), "inverse eta at level 5"
    ),
    SeriesCatalogEntry("mock_f", "mock_f", "mock theta function f(q)"),
    SeriesCatalogEntry("mock_omega", "mock_omega", "mock theta function omega(q)"),
    SeriesCatalogEntry("theta_g0", "theta_g0", "weight-3/2 theta series g_0"),
    SeriesCatalogEntry("theta_g1", "theta_g1", "weight-3/2 theta series g_1"),
    SeriesCatalogEntry("theta_g2", "theta_g2", "weight-3/2 theta series g_2"),
)


def catalog() -> tuple[SeriesCatalogEntry, ...]:
    """The named series this package knows how to build; the names are the
    stable identifiers used by the CLI and scan reports."""
    return _CATALOG


def catalog_entry(name: str) -> SeriesCatalogEntry:
    for entry in _CATALOG:
        if entry.name == name:
            return entry
    raise UnknownSeries(name)


def build_series(
    spec: EtaQuotientSpec | str, prec: int, modulus: int | None = None
) -> QSeries:
    """Build a catalog series or an explicit eta-quotient, optionally
    directly over Z/modulus."""
    ring = INTEGER if modulus is None else integer_mod(modulus)
    if isinstance(spec, EtaQuotientSpec):
        return eta_quotient(spec, prec, ring)
    entry = catalog_entry(spec)
    if isinstance(entry.spec, EtaQuotientSpec):
        return eta_quotient(entry.spec, prec, ring)
    if entry.spec == "mock_f":
        return mock_f(prec, ring)
    if entry.spec == "mock_omega":
        return mock_omega(prec, ring)
    index = int(entry.spec[-1])
    if modulus is not None:
        raise ValueError("theta series have rational coefficients; no reduction")
    return theta_g(index, prec)

"""Shared independent oracles for the test suite.

These deliberately avoid the package's construction paths: partition counts
come from the bounded-part DP recurrence, and product prefixes from naive
dense polynomial multiplication, so they can serve as ground truth for the
pentagonal/eta machinery.
"""

from __future__ import annotations

import pytest


def _partition_counts(n_max: int) -> list[int]:
    ways = [0] * (n_max + 1)
    ways[0] = 1
    for part in range(1, n_max + 1):
        for total in range(part, n_max + 1):
            ways[total] += ways[total - part]
    return ways


def _euler_product_prefix(prec: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) by direct dense multiplication."""
    coeffs = [0] * prec
    coeffs[0] = 1
    for n in range(1, prec):
        # multiply by (1 - q^n) in place
        for i in range(prec - 1, n - 1, -1):
            coeffs[i] -= coeffs[i - n]
    return coeffs


@pytest.fixture(scope="session")
def partition_oracle():
    cache: dict[int, list[int]] = {}

    def counts(n_max: int) -> list[int]:
        if n_max not in cache:
            cache[n_max] = _partition_counts(n_max)
        return cache[n_max]

    return counts


@pytest.fixture(scope="session")
def euler_product_oracle():
    return _euler_product_prefix

"""Integer power series, truncated, for the dimension identities.

All arithmetic is exact: division needs a divisor whose constant term is a
unit over the integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients c_0..c_N of a power series truncated at order N."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def _common_order(self, other) -> int:
        return min(self.order, other.order)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common_order(other)
        return TruncatedSeries(tuple(self[k] + other[k] for k in range(n + 1)))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common_order(other)
        return TruncatedSeries(tuple(self[k] - other[k] for k in range(n + 1)))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = self._common_order(other)
        out = [0] * (n + 1)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                out[i + j] += self[i] * other[j]
        return TruncatedSeries(tuple(out))

    def __truediv__(self, other: TruncatedSeries) -> TruncatedSeries:
        if other[0] not in (1, -1):
            raise ValueError("divisor constant term must be a unit over the integers")
        n = self._common_order(other)
        out = [0] * (n + 1)
        for k in range(n + 1):
            acc = self[k] - sum(out[j] * other[k - j] for j in range(k))
            out[k] = acc * other[0]  # multiplying by 1 or -1 inverts it
        return TruncatedSeries(tuple(out))

    def pretty(self) -> str:
        parts = [str(self[0])]
        for k in range(1, self.order + 1):
            q = "q" if k == 1 else f"q^{k}"
            parts.append(f"{self[k]} {q}")
        return " + ".join(parts)


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def bileveled_count(n: int) -> int:
    """Number of bi-leveled trees on n nodes, by the convolution recurrence."""
    if n < 1:
        return 0
    return catalan(n - 1) + sum(bileveled_count(k) * bileveled_count(n - k)
                                for k in range(1, n))


def counts(family: str, order: int) -> TruncatedSeries:
    """Dimension series of a family up to the given order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if family == "S":
        return TruncatedSeries(tuple(math.factorial(n) for n in range(order + 1)))
    if family == "Y":
        return TruncatedSeries(tuple(catalan(n) for n in range(order + 1)))
    if family == "M":
        return TruncatedSeries(tuple(bileveled_count(n) for n in range(order + 1)))
    raise ValueError(f"unknown family {family!r}")


def series_quotient(numer: TruncatedSeries, denom: TruncatedSeries) -> TruncatedSeries:
    if denom[0] != 1:
        raise ValueError("quotient needs a denominator with constant term 1")
    return numer / denom


@dataclass(frozen=True)
class DimensionReport:
    n_max: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_dimension_identities(n_max: int) -> DimensionReport:
    """Counting series versus direct enumeration, and the quotient versus the
    coinvariant keys."""
    from .algebra import coinvariant_basis
    from .trees import enumerate_family

    failures = []
    for family in ("S", "Y", "M"):
        series = counts(family, n_max)
        start = 1 if family == "M" else 0
        for n in range(start, n_max + 1):
            found = len(enumerate_family(family, n))
            if found != series[n]:
                failures.append(f"{family} size {n}: enumerated {found}, series {series[n]}")
    quotient = series_quotient(counts("M", n_max), counts("Y", n_max))
    for n in range(1, n_max + 1):
        found = len(coinvariant_basis(n))
        if found != quotient[n]:
            failures.append(f"coinvariants size {n}: {found} keys, quotient {quotient[n]}")
    return DimensionReport(n_max, tuple(failures))

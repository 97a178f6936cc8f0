"""Exact integer combinatorics: binomials, set-partition counts and the
signed blow-down weights Theta(k, m)."""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

__all__ = [
    "binomial",
    "stirling_split",
    "ThetaTable",
    "theta_recursive",
    "theta_closed",
    "homog_monomials",
    "compositions",
    "bounded_compositions",
    "set_partitions",
]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def stirling_split(k_star: int, k: int) -> int:
    """Number of ways to split a ``k_star``-element set into ``k`` nonempty blocks.

    Uses ``S(k*, k) = k S(k*-1, k) + S(k*-1, k-1)`` with ``S(k, k) = 1``.
    """
    if k_star < 0 or k < 0:
        return 0
    if k == k_star:
        return 1
    if k == 0 or k > k_star:
        return 0
    return k * stirling_split(k_star - 1, k) + stirling_split(k_star - 1, k - 1)


class ThetaTable:
    """Memo table for Theta(k, m), filled by the inductive definition.

    Writes are serialized with a lock; reads of filled entries are lock-free.
    """

    def __init__(self) -> None:
        self._entries: dict[tuple[int, int], Fraction] = {(1, 0): Fraction(1)}
        self._lock = threading.Lock()

    def __contains__(self, key: tuple[int, int]) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def get(self, k: int, m: int) -> Fraction:
        if k < 1 or m < 0:
            raise ValueError(f"Theta is defined for (k, m) >= (1, 0), got ({k}, {m})")
        hit = self._entries.get((k, m))
        if hit is not None:
            return hit
        # fill every smaller pair first so the recursion below never nests deeply
        for kk in range(1, k + 1):
            for mm in range(0, m + 1):
                if (kk, mm) not in self._entries:
                    self._fill(kk, mm)
        return self._entries[(k, m)]

    def _fill(self, k_star: int, m_star: int) -> None:
        total = Fraction(0)
        for k in range(1, k_star + 1):
            split = stirling_split(k_star, k)
            if split == 0:
                continue
            for m in range(0, m_star + 1):
                if (k, m) == (k_star, m_star):
                    continue
                total += comb(m_star, m) * k ** (m_star - m) * split * self._entries[(k, m)]
        with self._lock:
            self._entries.setdefault((k_star, m_star), -total)


_THETA = ThetaTable()


def theta_recursive(k: int, m: int, table: ThetaTable | None = None) -> Fraction:
    """Theta(k, m) from its inductive definition (memoized)."""
    return (table or _THETA).get(k, m)


def theta_closed(k: int, m: int) -> Fraction:
    """Closed form ``(-1)^(k+m-1) k^m (k-1)!``."""
    if k < 1 or m < 0:
        raise ValueError(f"Theta is defined for (k, m) >= (1, 0), got ({k}, {m})")
    sign = -1 if (k + m - 1) % 2 else 1
    return Fraction(sign * k**m * factorial(k - 1))


def bounded_compositions(total: int, parts: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    """All ordered ``parts``-tuples with entries in ``[lo, hi]`` summing to ``total``.

    Lexicographically descending.
    """
    if parts == 0:
        return [()] if total == 0 else []
    out: list[tuple[int, ...]] = []
    for first in range(min(hi, total - lo * (parts - 1)), lo - 1, -1):
        rest = total - first
        if rest < lo * (parts - 1) or rest > hi * (parts - 1):
            continue
        for tail in bounded_compositions(rest, parts - 1, lo, hi):
            out.append((first,) + tail)
    return out


def homog_monomials(k: int, l: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the degree-``l`` monomials in ``k`` variables."""
    if l < 0:
        return []
    return bounded_compositions(l, k, 0, l)


def compositions(d: int, k: int) -> list[tuple[int, ...]]:
    """Ordered splits of ``d`` into ``k`` positive parts."""
    if k < 1 or d < 1:
        return []
    return bounded_compositions(d, k, 1, d)


def set_partitions(items: list) -> Iterator[list[list]]:
    """Every partition of ``items`` into nonempty blocks (brute force)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        yield [[first], *partial]
        for i in range(len(partial)):
            yield [*partial[:i], [first, *partial[i]], *partial[i + 1 :]]

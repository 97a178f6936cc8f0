"""Top intersections of a^l with complete homogeneous psi-polynomials on the
spaces of k-tuples of rational maps sharing the image of their special points.

An ordered k-tuple is a product of one-pointed moduli spaces of stable maps
cut by the small diagonal of (P^n)^k at the special points.  The diagonal
has Kunneth expansion ``sum h_1^{e_1} ... h_k^{e_k}`` over
``sum e_i = (k-1)n``; all classes living at the common point (``a^l`` and
the constraints imposed there) are put on the first factor.  Unordered
tuples are ordered ones divided by ``k!``.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import product
from math import comb, factorial

from .combinatorics import bounded_compositions, compositions
from .genus0 import engine
from .problem import ProblemSpec, require_nodal, vbar_dimension

__all__ = ["diagonal_exponents", "eta_tilde_number", "eta_number", "clear_memo", "memo_stats"]

_MEMO: dict[tuple, Fraction] = {}
_MEMO_LOCK = threading.Lock()
_STATS = {"hits": 0, "misses": 0}


def clear_memo() -> None:
    with _MEMO_LOCK:
        _MEMO.clear()
        _STATS.update(hits=0, misses=0)


def memo_stats() -> dict[str, int]:
    return dict(_STATS)


def diagonal_exponents(k: int, n: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the small diagonal of (P^n)^k, each with coefficient 1."""
    return bounded_compositions((k - 1) * n, k, 0, n)


def _sub_vectors(avail: tuple[int, ...], size: int | None = None):
    """Sub-multiplicity vectors of ``avail`` with their labelled weight."""
    for taken in product(*(range(a + 1) for a in avail)):
        if size is not None and sum(taken) != size:
            continue
        ways = 1
        for a, t in zip(avail, taken):
            ways *= comb(a, t)
        yield taken, ways


def _split_sum(
    n: int,
    degrees: tuple[int, ...],
    codims: tuple[int, ...],
    avail: tuple[int, ...],
    extra: int,
) -> Fraction:
    """Sum over distributions of the constraints and diagonal terms for one degree split.

    ``avail`` is the multiplicity vector of the free constraints, aligned with
    ``codims``; ``extra`` is the codimension pinned at the common point.
    The psi-exponent of each factor is forced by its dimension.
    """
    eng = engine(n)
    k = len(degrees)

    def factor(i: int, taken: tuple[int, ...], e: int) -> Fraction:
        c = e + (extra if i == 0 else 0)
        if c > n:
            return Fraction(0)
        classes = [cd for cd, t in zip(codims, taken) for _ in range(t)]
        b = eng.vdim(degrees[i], len(classes) + 1) - c - sum(classes)
        if b < 0:
            return Fraction(0)
        return eng.descendant(degrees[i], b, c, classes)

    def walk(i: int, left: tuple[int, ...], budget: int) -> Fraction:
        if i == k - 1:
            if budget > n:
                return Fraction(0)
            return factor(i, left, budget)
        total = Fraction(0)
        for taken, ways in _sub_vectors(left):
            rest = tuple(a - t for a, t in zip(left, taken))
            for e in range(min(n, budget) + 1):
                x = factor(i, taken, e)
                if x:
                    total += ways * x * walk(i + 1, rest, budget - e)
        return total

    return walk(0, avail, (k - 1) * n)


def eta_tilde_number(spec: ProblemSpec, k: int, m: int, l: int, r: int, cache=None) -> Fraction:
    """<a^l eta~_r, [V_{k,m}(mu)]> with eta~ built from the uncorrected psi-classes.

    Zero unless ``l + r`` is the (nonnegative) dimension of the space.
    """
    require_nodal(spec)
    n, d = spec.n, spec.d
    dim = vbar_dimension(n, k, m)
    if k < 1 or m < 0 or l < 0 or r < 0 or dim < 0 or l + r != dim:
        return Fraction(0)
    key = (n, d, spec.mu.codims, k, m, l, r)
    hit = _MEMO.get(key)
    if hit is not None:
        _STATS["hits"] += 1
        return hit
    if cache is not None:
        stored = cache.get_invariant("eta_tilde", spec, k=k, m=m, l=l, r=r)
        if stored is not None:
            with _MEMO_LOCK:
                _MEMO.setdefault(key, stored)
            return stored
    _STATS["misses"] += 1

    mult = spec.mu.multiplicities()
    codims = tuple(mult)
    counts = tuple(mult.values())
    total = Fraction(0)
    for at_node, ways in _sub_vectors(counts, m):
        pinned = sum(c * t for c, t in zip(codims, at_node))
        if l + pinned > n:
            continue
        free = tuple(a - t for a, t in zip(counts, at_node))
        for degrees in compositions(d, k):
            total += ways * _split_sum(n, degrees, codims, free, l + pinned)
    value = total / factorial(k)

    with _MEMO_LOCK:
        _MEMO.setdefault(key, value)
    if cache is not None:
        cache.put_invariant("eta_tilde", spec, value, k=k, m=m, l=l, r=r)
    return value


def eta_number(spec: ProblemSpec, k: int, m: int, l: int, r: int, cache=None) -> Fraction:
    """<a^l eta_r, [V_{k,m}(mu)]> with eta built from the boundary-corrected classes.

    Inverts the triangular relation
    ``eta~(m) = sum_{m* >= m} C(m*, m) k^(m*-m) eta(m*)``, where each
    term pairs a^l with the top-degree class on its own space.
    """
    require_nodal(spec)
    n = spec.n
    dim = vbar_dimension(n, k, m)
    if k < 1 or m < 0 or l < 0 or r < 0 or dim < 0 or l + r != dim:
        return Fraction(0)
    total = Fraction(0)
    m_star = m
    while vbar_dimension(n, k, m_star) - l >= 0:
        r_star = vbar_dimension(n, k, m_star) - l
        sign = -1 if (m_star - m) % 2 else 1
        total += sign * comb(m_star, m) * k ** (m_star - m) * eta_tilde_number(
            spec, k, m_star, l, r_star, cache=cache
        )
        m_star += 1
    return total

"""Genus-zero Gromov-Witten invariants of P^n with at most one psi-class.

Primary invariants are reconstructed from the line through two points by
WDVV; one-point descendants are reduced by the genus-zero topological
recursion relation together with the string and divisor equations.
Insertions are recorded by the codimension ``c`` of the class ``h^c``.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Iterator

from .combinatorics import bounded_compositions
from .problem import (
    ConstraintTuple,
    DimensionMismatchError,
    ProblemSpec,
    require_genus0,
)

__all__ = [
    "DescendantSpec",
    "Genus0Engine",
    "engine",
    "count_rational",
    "descendant",
    "schubert_lines_oracle",
    "plane_recursion_oracle",
    "psi_moduli_oracle",
    "psi_moduli_closed",
    "j_function_oracle",
]


def sub_multisets(items: tuple[tuple[int, int], ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Split a labelled multiset ``((value, count), ...)`` into two parts.

    Yields ``(left, right, ways)`` where ``ways`` counts the labelled splits
    giving those two multisets.
    """
    values = [v for v, _ in items]
    for taken in product(*(range(cnt + 1) for _, cnt in items)):
        ways = 1
        left: list[int] = []
        right: list[int] = []
        for v, cnt, t in zip(values, (cnt for _, cnt in items), taken):
            ways *= comb(cnt, t)
            left.extend([v] * t)
            right.extend([v] * (cnt - t))
        yield tuple(left), tuple(right), ways


def _grouped(codims: Iterable[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(codims).items(), reverse=True))


def _canon(codims: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(codims, reverse=True))


class Genus0Engine:
    """Memoized genus-zero invariants of P^n for one fixed ``n``."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        self.n = n
        self._primary: dict[tuple[int, tuple[int, ...]], int] = {}
        self._desc: dict[tuple[int, int, int, tuple[int, ...]], Fraction] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def vdim(self, d: int, points: int) -> int:
        """Dimension of the space of degree-d stable maps with ``points`` marks."""
        return (self.n + 1) * d + self.n - 3 + points

    # -- primary invariants -------------------------------------------------

    def primary(self, d: int, classes: Iterable[int]) -> int:
        """<h^{c_1}, ..., h^{c_N}>_d for arbitrary exponents ``c_i >= 0``."""
        n = self.n
        classes = list(classes)
        if any(c > n or c < 0 for c in classes):
            return 0
        if d == 0:
            return 1 if len(classes) == 3 and sum(classes) == n else 0
        if 0 in classes:
            return 0
        ones = classes.count(1)
        rest = _canon(c for c in classes if c != 1)
        value = self._primary_canonical(d, rest)
        return value * d**ones if value else 0

    def _primary_canonical(self, d: int, codims: tuple[int, ...]) -> int:
        if sum(codims) != self.vdim(d, len(codims)):
            return 0
        key = (d, codims)
        hit = self._primary.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        value = self._wdvv(d, codims)
        with self._lock:
            self._primary.setdefault(key, value)
        return value

    def _wdvv(self, d: int, codims: tuple[int, ...]) -> int:
        n = self.n
        if len(codims) < 3:
            # dimension forces d = 1: the line through two points, or the
            # unique line of P^1 once its point insertions became divisors
            assert d == 1 and codims in ((n, n), ()), (d, codims)
            return 1
        # h^a = h . h^(a-1) with a minimal; k >= a guarantees the same-degree,
        # same-length term below moves to a strictly larger sum of squares
        a = codims[-1]
        k, l = codims[0], codims[1]
        rest = _grouped(codims[2:-1])
        i, j = 1, a - 1

        def side(first: tuple[int, int], second: tuple[int, int]) -> int:
            total = 0
            for d1 in range(d + 1):
                d2 = d - d1
                for left, right, ways in sub_multisets(rest):
                    if d1 == 0 and left:
                        # degree zero with four or more points vanishes
                        continue
                    if d2 == 0 and right:
                        continue
                    for e in range(n + 1):
                        if first == (i, j) and d1 == 0 and not left and e == n - a:
                            continue  # the term being solved for
                        x = self.primary(d1, (*first, *left, e))
                        if not x:
                            continue
                        y = self.primary(d2, (n - e, *second, *right))
                        if y:
                            total += ways * x * y
            return total

        lhs_rest = side((i, j), (k, l))
        rhs = side((i, k), (j, l))
        return rhs - lhs_rest

    # -- one-point descendants ----------------------------------------------

    def descendant(self, d: int, b: int, c: int, classes: Iterable[int]) -> Fraction:
        """<tau_b(h^c), h^{c_1}, ..., h^{c_s}>_d with the psi-class at the first point."""
        n = self.n
        classes = list(classes)
        if b < 0 or c < 0 or c > n or any(x > n or x < 0 for x in classes):
            return Fraction(0)
        if d == 0:
            m = len(classes) + 1
            if m < 3:
                return Fraction(0)
            return Fraction(1 if b == m - 3 and c + sum(classes) == n else 0)
        if b + c + sum(classes) != self.vdim(d, len(classes) + 1):
            return Fraction(0)
        if b == 0:
            return Fraction(self.primary(d, [c, *classes]))
        if 0 in classes:
            classes.remove(0)
            return self.descendant(d, b - 1, c, classes)
        if 1 in classes:
            classes.remove(1)
            return d * self.descendant(d, b, c, classes) + self.descendant(d, b - 1, c + 1, classes)
        return self._desc_canonical(d, b, c, _canon(classes))

    def _desc_canonical(self, d: int, b: int, c: int, codims: tuple[int, ...]) -> Fraction:
        key = (d, b, c, codims)
        hit = self._desc.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.misses += 1
        if len(codims) >= 2:
            value = self._trr(d, b, c, codims[0], codims[1], codims[2:])
        elif len(codims) == 1:
            # <tau_b(c) s h> = d <tau_b(c) s> + <tau_{b-1}(c+1) s>
            with_h = self._trr(d, b, c, codims[0], 1, ())
            value = (with_h - self.descendant(d, b - 1, c + 1, codims)) / d
        else:
            # <tau_b(c) h h> = d^2 <tau_b(c)> + d <tau_{b-1}(c+1)> + <tau_{b-1}(c+1) h>
            with_hh = self._trr(d, b, c, 1, 1, ())
            value = (
                with_hh
                - d * self.descendant(d, b - 1, c + 1, ())
                - self.descendant(d, b - 1, c + 1, (1,))
            ) / (d * d)
        with self._lock:
            self._desc.setdefault(key, value)
        return value

    def _trr(self, d: int, b: int, c: int, p2: int, p3: int, rest: tuple[int, ...]) -> Fraction:
        """psi at the first point = boundary divisor separating it from p2, p3."""
        n = self.n
        total = Fraction(0)
        grouped = _grouped(rest)
        for d1 in range(d + 1):
            d2 = d - d1
            for left, right, ways in sub_multisets(grouped):
                for e in range(n + 1):
                    x = self.descendant(d1, b - 1, c, (*left, e))
                    if not x:
                        continue
                    y = self.primary(d2, (n - e, p2, p3, *right))
                    if y:
                        total += ways * x * y
        return total


_ENGINES: dict[int, Genus0Engine] = {}
_ENGINES_LOCK = threading.Lock()


def engine(n: int) -> Genus0Engine:
    """Shared engine for P^n."""
    eng = _ENGINES.get(n)
    if eng is None:
        with _ENGINES_LOCK:
            eng = _ENGINES.setdefault(n, Genus0Engine(n))
    return eng


@dataclass(frozen=True)
class DescendantSpec:
    """<psi^b ev^* h^c at the special point ; constraints>_d on P^n."""

    n: int
    d: int
    b: int
    c: int
    constraints: ConstraintTuple = field(default_factory=ConstraintTuple)

    def __post_init__(self) -> None:
        if not isinstance(self.constraints, ConstraintTuple):
            object.__setattr__(self, "constraints", ConstraintTuple(self.constraints))


def count_rational(spec: ProblemSpec) -> Fraction:
    """Number of rational degree-d curves through the constraints."""
    require_genus0(spec)
    return Fraction(engine(spec.n).primary(spec.d, spec.mu.codims))


def descendant(spec: DescendantSpec) -> Fraction:
    """One-point descendant invariant; zero on dimension mismatch."""
    return engine(spec.n).descendant(spec.d, spec.b, spec.c, spec.constraints.codims)


# -- independent oracles -----------------------------------------------------


def _pieri(partition: tuple[int, int], p: int, width: int) -> list[tuple[int, int]]:
    """Two-row Pieri rule inside a 2 x width box."""
    l1, l2 = partition
    out = []
    for m2 in range(l2, l1 + 1):
        m1 = l1 + p - (m2 - l2)
        if l1 <= m1 <= width:
            out.append((m1, m2))
    return out


def schubert_lines_oracle(n: int, codims: Iterable[int]) -> int:
    """Lines in P^n meeting general linear subspaces, by Pieri on G(2, n+1).

    A line meets a codim-c subspace along the special class sigma_{c-1}.
    """
    codims = list(codims)
    width = n - 1
    if sum(c - 1 for c in codims) != 2 * width:
        raise DimensionMismatchError(
            f"Schubert classes of total degree {sum(c - 1 for c in codims)} "
            f"do not reach dim G(2,{n + 1}) = {2 * width}"
        )
    state: Counter = Counter({(0, 0): 1})
    for c in codims:
        nxt: Counter = Counter()
        for lam, mult in state.items():
            for mu in _pieri(lam, c - 1, width):
                nxt[mu] += mult
        state = nxt
    return state[(width, width)]


@lru_cache(maxsize=None)
def plane_recursion_oracle(d: int) -> int:
    """Rational plane curves of degree d through 3d-1 points (Kontsevich's recursion)."""
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += (
            plane_recursion_oracle(d1)
            * plane_recursion_oracle(d2)
            * d1**2
            * d2
            * (d2 * comb(3 * d - 4, 3 * d1 - 2) - d1 * comb(3 * d - 4, 3 * d1 - 1))
        )
    return total


def psi_moduli_oracle(exponents: Iterable[int]) -> int:
    """Top psi-intersection on the genus-zero moduli space with one exponent per point.

    Reduced by the string equation down to three points.
    """
    exps = tuple(exponents)
    if len(exps) < 3 or any(a < 0 for a in exps) or sum(exps) != len(exps) - 3:
        raise DimensionMismatchError(
            f"psi exponents {exps} do not sum to dim M_0,{len(exps)} = {len(exps) - 3}"
        )
    return _string_reduce(tuple(sorted(exps, reverse=True)))


@lru_cache(maxsize=None)
def _string_reduce(exps: tuple[int, ...]) -> int:
    if len(exps) == 3:
        return 1
    # pigeonhole: some exponent is zero once there are more than three points
    rest = list(exps)
    rest.remove(0)
    total = 0
    for i, a in enumerate(rest):
        if a:
            lowered = rest[:i] + [a - 1] + rest[i + 1 :]
            total += _string_reduce(tuple(sorted(lowered, reverse=True)))
    return total


def psi_moduli_closed(exponents: Iterable[int]) -> int:
    """Multinomial closed form ``(m-3)! / prod a_i!``."""
    exps = tuple(exponents)
    denom = 1
    for a in exps:
        denom *= factorial(a)
    return factorial(len(exps) - 3) // denom


def j_function_oracle(n: int, d: int, b: int, c: int) -> Fraction:
    """<tau_b(h^c)>_{0,1,d} on P^n read off the small J-function.

    ``J_d = prod_{k=1}^{d} (h + k z)^{-(n+1)}`` and the coefficient of
    ``h^{n-c} z^{-2-b}`` is the one-point descendant.
    """
    if c < 0 or c > n or b < 0:
        return Fraction(0)
    if b + c != (n + 1) * d + n - 2:
        return Fraction(0)
    power = n - c
    total = Fraction(0)
    for js in bounded_compositions(power, d, 0, power):
        term = Fraction(1)
        for k, j in enumerate(js, start=1):
            # (h + kz)^{-(n+1)} = sum_j binom(-(n+1), j) h^j (kz)^{-(n+1)-j}
            coeff = (-1) ** j * comb(n + j, j)
            term *= Fraction(coeff, k ** (n + 1 + j))
        total += term
    return total

"""Counting problems, their dimension conditions and canonical cache keys."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

__all__ = [
    "KEY_VERSION",
    "DimensionMismatchError",
    "ConstraintError",
    "ConstraintTuple",
    "ProblemSpec",
    "InvariantKey",
    "total_codim",
    "validate_genus0",
    "validate_nodal",
    "vbar_dimension",
    "canonical_key",
    "constraint_tuples",
]

KEY_VERSION = 1
KINDS = ("rational", "descendant", "eta_tilde", "eta", "cr1", "nodal")


class DimensionMismatchError(ValueError):
    """The constraints do not cut the moduli space down to dimension zero."""


class ConstraintError(ValueError):
    """A constraint codimension is outside ``2..n``."""


@dataclass(frozen=True)
class ConstraintTuple:
    """Multiset of constraint codimensions, stored sorted descending."""

    codims: tuple[int, ...] = ()

    def __init__(self, codims: Iterable[int] = ()) -> None:
        object.__setattr__(self, "codims", tuple(sorted((int(c) for c in codims), reverse=True)))

    def __len__(self) -> int:
        return len(self.codims)

    def __iter__(self):
        return iter(self.codims)

    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.codims).items(), reverse=True))

    def check(self, n: int) -> None:
        for c in self.codims:
            if c < 2:
                raise ConstraintError(f"constraint codimension {c} < 2")
            if c > n:
                raise ConstraintError(f"constraint codimension {c} > n = {n}")

    def __str__(self) -> str:
        return ",".join(map(str, self.codims))


def _as_constraints(mu) -> ConstraintTuple:
    return mu if isinstance(mu, ConstraintTuple) else ConstraintTuple(mu)


@dataclass(frozen=True)
class ProblemSpec:
    """Degree-``d`` curves in P^n through general linear subspaces of codims ``mu``."""

    n: int
    d: int
    mu: ConstraintTuple = field(default_factory=ConstraintTuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _as_constraints(self.mu))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        self.mu.check(self.n)

    @property
    def N(self) -> int:
        return len(self.mu)


def total_codim(mu) -> int:
    """Sum of codimensions minus the number of constraints."""
    mu = _as_constraints(mu)
    return sum(mu.codims) - len(mu)


def validate_genus0(spec: ProblemSpec) -> bool:
    return total_codim(spec.mu) == spec.d * (spec.n + 1) + spec.n - 3


def validate_nodal(spec: ProblemSpec) -> bool:
    return total_codim(spec.mu) == spec.d * (spec.n + 1) - 1


def require_genus0(spec: ProblemSpec) -> None:
    if not validate_genus0(spec):
        raise DimensionMismatchError(
            f"rational count needs codim(mu) = d(n+1)+n-3 = "
            f"{spec.d * (spec.n + 1) + spec.n - 3}, got {total_codim(spec.mu)}"
        )


def require_nodal(spec: ProblemSpec) -> None:
    if not validate_nodal(spec):
        raise DimensionMismatchError(
            f"nodal count needs codim(mu) = d(n+1)-1 = {spec.d * (spec.n + 1) - 1}, "
            f"got {total_codim(spec.mu)}"
        )


def vbar_dimension(n: int, k: int, m: int) -> int:
    """Complex dimension of the k-tuple space with m constraints at the common point.

    Negative values mean the space is empty.
    """
    return n + 1 - 2 * k - m


@dataclass(frozen=True)
class InvariantKey:
    kind: str
    n: int
    d: int
    mu: ConstraintTuple
    extra: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown invariant kind {self.kind!r}")
        object.__setattr__(self, "mu", _as_constraints(self.mu))

    def serialize(self) -> str:
        extra = ";".join(f"{name}={value}" for name, value in self.extra)
        return f"v{KEY_VERSION}|{self.kind}|{self.n}|{self.d}|{self.mu}|{extra}"


def canonical_key(request, kind: str | None = None, **params: int) -> bytes:
    """Byte-stable key for an invariant request.

    ``request`` is an :class:`InvariantKey` or a :class:`ProblemSpec` (then
    ``kind`` is required and ``params`` become the extra fields, in the
    order given).
    """
    if isinstance(request, ProblemSpec):
        if kind is None:
            raise ValueError("kind is required when keying a ProblemSpec")
        request = InvariantKey(kind, request.n, request.d, request.mu, tuple(params.items()))
    return request.serialize().encode("utf-8")


def constraint_tuples(n: int, codim: int) -> list[ConstraintTuple]:
    """All linear-constraint multisets in P^n with ``total_codim == codim``."""
    out: list[ConstraintTuple] = []

    def walk(top: int, left: int, acc: list[int]) -> None:
        if left == 0:
            out.append(ConstraintTuple(acc))
            return
        for c in range(min(top, left + 1), 1, -1):
            walk(c, left - (c - 1), acc + [c])

    if codim >= 0:
        walk(n, codim, [])
    return out

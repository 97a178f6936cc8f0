"""One-nodal rational curve counts from the genus-one invariant and CR_1."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Mapping

from .combinatorics import binomial, theta_recursive
from .genus0 import count_rational
from .problem import ProblemSpec, canonical_key, require_nodal, vbar_dimension
from .vbar import eta_number, eta_tilde_number

__all__ = [
    "FIXTURE_VERSION",
    "MissingFixtureError",
    "InconsistencyError",
    "RTFixtureTable",
    "ComputationReport",
    "cr1_eta",
    "cr1_theta",
    "cr1_terms",
    "rt_lookup",
    "count_nodal",
    "nodal_report",
    "plane_identity_check",
]

log = logging.getLogger(__name__)

FIXTURE_VERSION = 1


class MissingFixtureError(KeyError):
    """No genus-one invariant is on file for the requested problem."""

    def __init__(self, key: str) -> None:
        super().__init__(key)
        self.key = key

    def __str__(self) -> str:
        return f"no RT_1,d fixture for key {self.key!r}"


class InconsistencyError(RuntimeError):
    """Internal cross-checks disagree; carries the offending report."""

    def __init__(self, message: str, report: "ComputationReport | None" = None) -> None:
        super().__init__(message)
        self.report = report


def fixture_key(spec: ProblemSpec) -> str:
    return canonical_key(spec, "nodal").decode("utf-8")


class RTFixtureTable:
    """Genus-one fixed-complex-structure invariants keyed by canonical problem key."""

    def __init__(self, values: Mapping[str, int] | None = None) -> None:
        self._values: dict[str, int] = {}
        for key, value in (values or {}).items():
            self._values[key] = _as_int(key, value)

    def __contains__(self, spec: ProblemSpec) -> bool:
        return fixture_key(spec) in self._values

    def __len__(self) -> int:
        return len(self._values)

    def lookup(self, spec: ProblemSpec) -> int:
        key = fixture_key(spec)
        try:
            return self._values[key]
        except KeyError:
            raise MissingFixtureError(key) from None

    def set(self, spec: ProblemSpec, value: int) -> None:
        self._values[fixture_key(spec)] = _as_int(fixture_key(spec), value)

    def to_json(self) -> str:
        payload = {"version": FIXTURE_VERSION, **dict(sorted(self._values.items()))}
        return json.dumps(payload, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RTFixtureTable":
        payload = json.loads(text)
        if not isinstance(payload, dict):
            raise ValueError("RT fixture file must hold a JSON object")
        version = payload.pop("version", None)
        if version != FIXTURE_VERSION:
            raise ValueError(f"unsupported RT fixture version {version!r}")
        return cls(payload)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "RTFixtureTable":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def _as_int(key: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"fixture {key!r} must be an integer, got {value!r}")
    return int(value)


def cr1_terms(spec: ProblemSpec, cache=None) -> list[dict]:
    """Per-k contributions of both CR_1 routes."""
    require_nodal(spec)
    n = spec.n
    terms = []
    k = 1
    while 2 * k <= n + 1:
        eta_side = Fraction(0)
        for l in range(n + 2 - 2 * k):
            eta_side += binomial(n + 1, l) * eta_number(spec, k, 0, l, n + 1 - 2 * k - l, cache=cache)
        sign = -1 if (k - 1) % 2 else 1
        eta_side *= sign * factorial(k - 1)

        theta_side = Fraction(0)
        m = 0
        while vbar_dimension(n, k, m) >= 0:
            dim = vbar_dimension(n, k, m)
            inner = Fraction(0)
            for l in range(dim + 1):
                inner += binomial(n + 1, l) * eta_tilde_number(spec, k, m, l, dim - l, cache=cache)
            theta_side += theta_recursive(k, m) * inner
            m += 1
        terms.append({"k": k, "eta": eta_side, "theta": theta_side})
        k += 1
    return terms


def cr1_eta(spec: ProblemSpec, cache=None) -> Fraction:
    """CR_1 from the corrected classes eta on the spaces with no pinned constraints."""
    return sum((t["eta"] for t in cr1_terms(spec, cache)), Fraction(0))


def cr1_theta(spec: ProblemSpec, cache=None) -> Fraction:
    """CR_1 as the Theta-weighted sum over uncorrected classes on all V_{k,m}."""
    return sum((t["theta"] for t in cr1_terms(spec, cache)), Fraction(0))


def rt_lookup(spec: ProblemSpec, fixtures: RTFixtureTable) -> int:
    require_nodal(spec)
    return fixtures.lookup(spec)


@dataclass
class ComputationReport:
    inputs: ProblemSpec
    cr1_eta_value: Fraction
    cr1_theta_value: Fraction
    rt_value: int | None = None
    nodal_count: Fraction | None = None
    terms: list[dict] = field(default_factory=list)
    cache: dict[str, int] = field(default_factory=lambda: {"hits": 0, "misses": 0})

    def to_dict(self) -> dict:
        from .cache import format_rational

        return {
            "inputs": {"n": self.inputs.n, "d": self.inputs.d, "constraints": list(self.inputs.mu.codims)},
            "result": None if self.nodal_count is None else format_rational(self.nodal_count),
            "cr1_eta": format_rational(self.cr1_eta_value),
            "cr1_theta": format_rational(self.cr1_theta_value),
            "rt": self.rt_value,
            "terms": [
                {"k": t["k"], "eta": format_rational(t["eta"]), "theta": format_rational(t["theta"])}
                for t in self.terms
            ],
            "cache": dict(self.cache),
        }


def nodal_report(spec: ProblemSpec, fixtures: RTFixtureTable | None = None, cache=None) -> ComputationReport:
    """Compute both CR_1 routes and, if a fixture is on file, the nodal count."""
    terms = cr1_terms(spec, cache)
    report = ComputationReport(
        inputs=spec,
        cr1_eta_value=sum((t["eta"] for t in terms), Fraction(0)),
        cr1_theta_value=sum((t["theta"] for t in terms), Fraction(0)),
        terms=terms,
    )
    if report.cr1_eta_value != report.cr1_theta_value:
        raise InconsistencyError(
            f"CR_1 routes disagree: eta {report.cr1_eta_value} != theta {report.cr1_theta_value}",
            report,
        )
    if fixtures is not None:
        report.rt_value = rt_lookup(spec, fixtures)
        twice = report.rt_value - report.cr1_eta_value
        count = twice / 2
        report.nodal_count = count
        if count.denominator != 1:
            raise InconsistencyError(f"non-integral nodal count {count} for {fixture_key(spec)}", report)
        if spec.n >= 3 and count < 0:
            log.warning("negative nodal count %s for %s", count, fixture_key(spec))
    return report


def count_nodal(spec: ProblemSpec, fixtures: RTFixtureTable, cache=None) -> Fraction:
    """Number of one-nodal degree-d rational curves through the constraints.

    For n = 2 each curve is weighted by its choice of node.
    """
    require_nodal(spec)
    fixtures.lookup(spec)
    return nodal_report(spec, fixtures, cache).nodal_count


def plane_identity_check(d: int, fixtures: RTFixtureTable) -> bool:
    """In P^2 the nodal count equals the arithmetic genus times the rational count."""
    spec = ProblemSpec(2, d, [2] * (3 * d - 1))
    return count_nodal(spec, fixtures) == binomial(d - 1, 2) * count_rational(spec)

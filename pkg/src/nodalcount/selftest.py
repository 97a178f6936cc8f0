"""Quick invariant suite behind ``nodalcount selftest``.

Every check is deterministic and its detail string carries exact values, so
two runs produce identical reports.
"""

from __future__ import annotations

import random
from collections import Counter
from fractions import Fraction

from .cache import format_rational
from .combinatorics import set_partitions, stirling_split, theta_closed, theta_recursive
from .genus0 import (
    engine,
    j_function_oracle,
    plane_recursion_oracle,
    psi_moduli_closed,
    psi_moduli_oracle,
    schubert_lines_oracle,
)
from .pipeline import RTFixtureTable, count_nodal, cr1_terms
from .problem import ProblemSpec, constraint_tuples


def _theta_identity() -> tuple[bool, str]:
    pairs = [(k, m) for k in range(1, 8) for m in range(0, 13) if 2 * k + m <= 14]
    bad = [p for p in pairs if theta_recursive(*p) != theta_closed(*p)]
    return not bad, f"{len(pairs)} pairs, mismatches {bad}"


def _stirling() -> tuple[bool, str]:
    bad = []
    for k_star in range(1, 8):
        counts = Counter(len(p) for p in set_partitions(list(range(k_star))))
        bad += [(k_star, k) for k in range(1, k_star + 1) if counts[k] != stirling_split(k_star, k)]
    return not bad, f"k* <= 7, mismatches {bad}"


def _schubert() -> tuple[bool, str]:
    checked, bad = 0, []
    for n in range(2, 6):
        for mu in constraint_tuples(n, 2 * n - 2):
            checked += 1
            if engine(n).primary(1, mu.codims) != schubert_lines_oracle(n, mu.codims):
                bad.append((n, mu.codims))
    return not bad, f"{checked} line problems, mismatches {bad}"


def _plane() -> tuple[bool, str]:
    values = [engine(2).primary(d, [2] * (3 * d - 1)) for d in range(1, 6)]
    oracle = [plane_recursion_oracle(d) for d in range(1, 6)]
    return values == oracle, f"engine {values} oracle {oracle}"


def _psi() -> tuple[bool, str]:
    tops = [psi_moduli_oracle([j - 2] + [0] * j) for j in range(3, 9)]
    mixed = psi_moduli_oracle([1, 1, 0, 0, 0]) == psi_moduli_closed([1, 1, 0, 0, 0]) == 2
    return all(t == 1 for t in tops) and mixed, f"top pairings {tops}"


def _j_function() -> tuple[bool, str]:
    bad = []
    for n in (2, 3, 4):
        for d in (1, 2, 3):
            for c in range(n + 1):
                b = (n + 1) * d + n - 2 - c
                if engine(n).descendant(d, b, c, ()) != j_function_oracle(n, d, b, c):
                    bad.append((n, d, b, c))
    return not bad, f"mismatches {bad}"


def _two_route() -> tuple[bool, str]:
    rows = []
    ok = True
    for n in (2, 3):
        for d in (1, 2):
            for mu in constraint_tuples(n, d * (n + 1) - 1):
                spec = ProblemSpec(n, d, mu)
                terms = cr1_terms(spec)
                eta = sum((t["eta"] for t in terms), Fraction(0))
                theta = sum((t["theta"] for t in terms), Fraction(0))
                ok &= eta == theta
                rows.append(f"{n}|{d}|{mu}={format_rational(eta)}")
    return ok, "; ".join(rows)


def _round_trip() -> tuple[bool, str]:
    spec = ProblemSpec(3, 1, [3, 2])
    cr1 = sum((t["eta"] for t in cr1_terms(spec)), Fraction(0))
    rng = random.Random(20240601)
    xs = [rng.randint(0, 10**6) for _ in range(20)]
    table = RTFixtureTable()
    ok = True
    for x in xs:
        table.set(spec, int(2 * x + cr1))
        ok &= count_nodal(spec, table) == x
    return ok, f"cr1 {format_rational(cr1)}, {len(xs)} synthetic fixtures"


CHECKS = [
    ("theta_identity", _theta_identity),
    ("stirling_vs_enumeration", _stirling),
    ("schubert_lines", _schubert),
    ("plane_recursion", _plane),
    ("psi_moduli", _psi),
    ("j_function", _j_function),
    ("cr1_two_routes", _two_route),
    ("nodal_round_trip", _round_trip),
]


def run_selftest() -> dict:
    results = []
    for name, check in CHECKS:
        passed, detail = check()
        results.append({"name": name, "passed": bool(passed), "detail": detail})
    return {"passed": all(r["passed"] for r in results), "checks": results}

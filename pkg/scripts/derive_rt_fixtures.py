"""Write genus-one fixed-j invariants RT_{1,d} to a fixture file.

The fixed-j point of the moduli of elliptic curves is cohomologous to the
boundary point of nodal curves, so the invariant with marked point 0 fixed
(which counts every curve twice, once per sign of the elliptic involution)
is the genus-zero invariant with the two branches of the node glued along
the diagonal of P^n:

    RT_{1,d}(mu) = sum_{a=0}^{n} <mu, h^a, h^{n-a}>_{0,d}

Usage: python scripts/derive_rt_fixtures.py [output.json]
"""

from __future__ import annotations

import sys
from pathlib import Path

from nodalcount.genus0 import engine
from nodalcount.pipeline import RTFixtureTable
from nodalcount.problem import ProblemSpec, constraint_tuples

# (n, d, number of constraints of codimension 2, 3, ..., n)
TABLE_ROWS = [
    (3, 4, (5, 5)),
    (4, 4, (5, 1, 4)),
    (5, 4, (5, 1, 0, 4)),
    (5, 6, (2, 1, 1, 7)),
    (6, 6, (2, 1, 1, 1, 6)),
]


def rt_value(spec: ProblemSpec) -> int:
    eng = engine(spec.n)
    return sum(
        eng.primary(spec.d, [*spec.mu.codims, a, spec.n - a]) for a in range(spec.n + 1)
    )


def table_spec(n: int, d: int, counts: tuple[int, ...]) -> ProblemSpec:
    mu = [c for c, m in zip(range(2, n + 1), counts) for _ in range(m)]
    return ProblemSpec(n, d, mu)


def fixture_specs() -> list[ProblemSpec]:
    specs = [table_spec(*row) for row in TABLE_ROWS]
    specs += [ProblemSpec(2, d, [2] * (3 * d - 1)) for d in range(1, 6)]
    for n in (3, 4):
        for d in (1, 2, 3):
            specs += [ProblemSpec(n, d, mu) for mu in constraint_tuples(n, d * (n + 1) - 1)]
    return specs


def main(argv: list[str]) -> None:
    out = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "fixtures" / "rt_fixtures.json"
    table = RTFixtureTable()
    for spec in fixture_specs():
        table.set(spec, rt_value(spec))
    table.save(out)
    print(f"wrote {len(table)} fixtures to {out}")


if __name__ == "__main__":
    main(sys.argv)

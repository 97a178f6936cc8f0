"""Record CR_1 regression snapshots (versioned, exact strings).

Covers the degree-4 and degree-6 table problems and every nodal-valid
problem with n <= 4, d <= 3.

Usage: python scripts/snapshot_cr1.py [output.json]
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from nodalcount.cache import format_rational
from nodalcount.pipeline import cr1_eta
from nodalcount.problem import ProblemSpec, canonical_key, constraint_tuples

sys.path.insert(0, str(Path(__file__).resolve().parent))
from derive_rt_fixtures import TABLE_ROWS, table_spec  # noqa: E402

SNAPSHOT_VERSION = 1


def snapshot_specs() -> list[ProblemSpec]:
    specs = [table_spec(*row) for row in TABLE_ROWS]
    for n in range(2, 5):
        for d in range(1, 4):
            specs += [ProblemSpec(n, d, mu) for mu in constraint_tuples(n, d * (n + 1) - 1)]
    return specs


def main(argv: list[str]) -> None:
    default = Path(__file__).resolve().parents[1] / "tests" / "snapshots" / f"cr1_v{SNAPSHOT_VERSION}.json"
    out = Path(argv[1]) if len(argv) > 1 else default
    values = {canonical_key(s, "cr1").decode(): format_rational(cr1_eta(s)) for s in snapshot_specs()}
    out.write_text(json.dumps({"version": SNAPSHOT_VERSION, "cr1": values}, indent=1, sort_keys=True) + "\n")
    print(f"wrote {len(values)} snapshots to {out}")


if __name__ == "__main__":
    main(sys.argv)

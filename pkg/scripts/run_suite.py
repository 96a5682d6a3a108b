"""Run the acceptance battery and write a JSON record.

    python3 scripts/run_suite.py --out results/suite.json
"""

from __future__ import annotations

import argparse
import json
import platform
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from oqroot.suite import CRITERIA, criterion_11


@dataclass
class SuiteConfig:
    seed: int = 7
    criteria: tuple = tuple(range(1, 12))
    out: str = "results/suite.json"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--criteria", default="", help="comma-separated subset")
    ap.add_argument("--out", default=SuiteConfig.out)
    args = ap.parse_args()
    wanted = tuple(int(x) for x in args.criteria.split(",")) if args.criteria else SuiteConfig.criteria
    cfg = SuiteConfig(seed=args.seed, criteria=wanted, out=args.out)

    t0 = time.perf_counter()
    checks = []
    for k in cfg.criteria:
        fn = CRITERIA[k - 1]
        c = fn(cfg.seed) if fn is criterion_11 else fn()
        print(c.line(), flush=True)
        checks.append(c.to_json())
    record = {
        "config": asdict(cfg),
        "python": platform.python_version(),
        "seconds": round(time.perf_counter() - t0, 2),
        "criteria": checks,
    }
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(record, indent=2))
    print(f"wrote {out}")
    return 0 if all(c["status"] == "pass" for c in checks) else 1


if __name__ == "__main__":
    raise SystemExit(main())

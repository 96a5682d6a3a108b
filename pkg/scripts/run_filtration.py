"""Filtration P^i of every block for the given ell values, as a table.

For each block label n and depth d: dims of P^1..P^d, whether every
P^i/P^(i-1) is certified isomorphic to V*_(n_i) [x] V*_(n_i), the Loewy
layers (top down) of the truncated block, and the Q^i quotients.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from oqroot import bimodule as bm


@dataclass
class FiltrationConfig:
    ells: list = field(default_factory=lambda: [3, 5])
    depth: int = 3
    json_out: str = ""


def run_block(n: int, depth: int, ell: int) -> dict:
    t = time.perf_counter()
    P = bm.build_P(n, depth, ell)
    quots = bm.filtration_quotients(n, depth, ell, P)
    _, lam = bm.lambda_block(n, depth, ell, P)
    qs = bm.decreasing_Q(n, depth, ell)
    return {
        "ell": ell,
        "block": n,
        "sequence": lam.sequence,
        "P_dims": [p.dim for p in P],
        "quotients_certified": all(c.certified for c in quots),
        "layer_dims": lam.loewy.radical_dims,
        "layers": [sorted(layer) for layer in lam.loewy.layers_top_down()],
        "block_checks": lam.checks,
        "Q": [c.status for c in qs],
        "seconds": round(time.perf_counter() - t, 2),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description="filtration table")
    ap.add_argument("--ell", type=int, action="append", help="repeatable; default 3 and 5")
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--json", dest="json_out", default="")
    args = ap.parse_args()
    cfg = FiltrationConfig(ells=args.ell or [3, 5], depth=args.depth, json_out=args.json_out)

    rows = []
    print(f"{'ell':>3} {'n':>2}  {'sequence':<14} {'P dims':<16} {'iso':<4} {'layer dims':<16} Q")
    for ell in cfg.ells:
        for n in range(ell - 1):
            r = run_block(n, cfg.depth, ell)
            rows.append(r)
            ok = "yes" if r["quotients_certified"] else "NO"
            print(f"{ell:>3} {n:>2}  {str(r['sequence']):<14} {str(r['P_dims']):<16} {ok:<4} "
                  f"{str(r['layer_dims']):<16} {','.join(r['Q']) or '-'}  ({r['seconds']}s)")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(rows, fh, indent=2, default=str)


if __name__ == "__main__":
    main()

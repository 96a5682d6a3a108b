"""Tilting modules T_n for small n: dimension, character split and Loewy layers."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from oqroot import uq
from oqroot.weights import sl2_prime


@dataclass
class TableConfig:
    ell: int = 3
    top: int = 12


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", type=int, default=3)
    ap.add_argument("--top", type=int, default=12)
    args = ap.parse_args()
    cfg = TableConfig(args.ell, args.top)

    print(f"ell = {cfg.ell}")
    print(f"{'n':>3} {'dim':>4} {'n_prime':>7}  {'End':>3}  layers (top down)")
    for n in range(cfg.top + 1):
        T = uq.tilting_module(n, cfg.ell)
        p = sl2_prime(n, cfg.ell)
        layers = uq.loewy_series(T).radical_layers
        shown = " | ".join("+".join(f"L{a}" + (f"^{m}" if m > 1 else "") for a, m in sorted(l.items())) for l in layers)
        end = uq.hom_space(T, T).dim
        print(f"{n:>3} {T.dim:>4} {str(p) if p is not None else '-':>7}  {end:>3}  {shown}")


if __name__ == "__main__":
    main()

"""Command line: build objects, run checks, print text or JSON reports.

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from . import bimodule as bm
from . import oq, qmatrix, uq
from .coeff import gauss_binom, gauss_factorial, gauss_int, specialize
from .suite import CRITERIA, criterion_11
from .weights import sl2_prime, sl2_sequence


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    ell: int = 3
    degree_window: int = 4
    depth: int = 2
    seed: int = 7
    output: str = "text"

    def __post_init__(self):
        if self.ell < 3 or self.ell % 2 == 0:
            raise UsageError(f"--ell must be an odd integer >= 3, got {self.ell}")
        if self.degree_window < 0 or self.depth < 0 or self.seed < 0:
            raise UsageError("--degree, --depth and --seed must be non-negative")
        if self.output not in ("text", "json"):
            raise UsageError(f"unknown output format {self.output}")


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)  # {"name", "status", "detail"}
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    def add(self, name: str, status, detail: str = "") -> None:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        self.checks.append({"name": name, "status": status, "detail": detail})

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)

    def to_json(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        lines = [f"$ {self.command}"]
        for k, v in self.data.items():
            if isinstance(v, (dict, list)):
                v = json.dumps(v)
            lines.append(f"{k}: {v}")
        for c in self.checks:
            tail = f"  {c['detail']}" if c["detail"] else ""
            lines.append(f"[{c['status']}] {c['name']}{tail}")
        lines.append(f"({self.seconds:.2f}s)")
        return "\n".join(lines)


def _config(args) -> RunConfig:
    return RunConfig(
        ell=args.ell,
        degree_window=getattr(args, "degree", 4),
        depth=getattr(args, "depth", 2),
        seed=args.seed,
        output="json" if args.json else "text",
    )


# ---------------------------------------------------------------------------


def cmd_gauss(args, cfg: RunConfig, rep: Report) -> None:
    what = args.what
    nums = args.numbers
    need = {"int": 1, "factorial": 1, "binom": 2}[what]
    if len(nums) != need:
        raise UsageError(f"gauss {what} takes {need} integer argument(s)")
    if what == "int":
        val = gauss_int(nums[0])
    elif what == "factorial":
        if nums[0] < 0:
            raise UsageError("factorial of a negative integer")
        val = gauss_factorial(nums[0])
    else:
        val = gauss_binom(nums[0], nums[1])
    if args.at_one:
        out = str(val.at(1))
    elif args.ell_given:
        out = str(specialize(val, cfg.ell))
    else:
        out = str(val)
    rep.data["value"] = out


def _module(kind: str, n: int, ell: int):
    if kind == "weyl":
        return uq.weyl_module(n, ell)
    if kind == "dual":
        return uq.dual_weyl_module(n, ell)
    if kind == "simple":
        return uq.simple_module(n, ell)
    return uq.tilting_module(n, ell)


def cmd_module(args, cfg: RunConfig, rep: Report) -> None:
    if args.n < 0:
        raise UsageError("highest weight must be non-negative")
    m = _module(args.kind, args.n, cfg.ell)
    ch = uq.character(m)
    rep.data.update(name=m.name, ell=cfg.ell, dim=m.dim, weights=m.weights, character=uq.character_str(ch))
    if args.n == 0:
        rep.data["trivial"] = m.dim == 1
    rep.add("relations", not uq.check_relations(m), "; ".join(uq.check_relations(m)[:3]))
    if args.kind == "tilting":
        p = sl2_prime(args.n, cfg.ell)
        want = uq.weyl_character(args.n) + (uq.weyl_character(p) if p is not None else 0)
        label = f"ch V_{args.n}" + (f" + ch V_{p}" if p is not None else "")
        rep.add(f"character = {label}", ch == want)
    if args.matrices:
        rep.data["matrices"] = m.to_json()["matrices"]


def cmd_filtration(args, cfg: RunConfig, rep: Report) -> None:
    n, depth, ell = args.block, cfg.depth, cfg.ell
    if not 0 <= n <= ell - 2:
        raise UsageError(f"--block must lie in 0..{ell - 2}")
    if depth < 1:
        raise UsageError("--depth must be at least 1")
    seq = sl2_sequence(n, ell, depth)
    P = bm.build_P(n, depth, ell)
    isos = bm.filtration_quotients(n, depth, ell, P)
    _, lam = bm.lambda_block(n, depth, ell, P)
    rep.data.update(
        ell=ell,
        block=n,
        sequence=seq,
        P_dims=[p.dim for p in P],
        quotient_isos=[{"i": c.i, "target": c.target, "certified": c.certified} for c in isos],
        loewy={
            "layers": lam.loewy.to_json()["layers"],
            "layer_dims": lam.loewy.radical_dims,
            "rigid": lam.loewy.rigid,
            "indecomposable": lam.loewy.indecomposable,
        },
    )
    for c in isos:
        rep.add(f"P^{c.i}/P^{c.i - 1} ~ {c.target}", c.certified, f"dim {c.dim}")
    for name, verdict in lam.checks.items():
        rep.add(f"block pattern: {name}", verdict == "match")
    for name, labels in lam.boundary.items():
        for lab in sorted(labels):
            rep.add(f"block pattern: {name} {lab}", "boundary-unverified")
    for i, ok in enumerate(bm.trace_compatibility(n, depth, ell, P), start=1):
        rep.add(f"trace of L_{seq[i - 1]} spans the equivariant line of P^{i}/P^{i - 1}", ok)
    for c in bm.decreasing_Q(n, depth, ell):
        status = c.status if c.status == "boundary-unverified" else c.certified
        rep.add(f"Q^{c.i - 1}/Q^{c.i} ~ {c.target}", status, "" if c.dim < 0 else f"dim {c.dim}")


def cmd_cocommutative(args, cfg: RunConfig, rep: Report) -> None:
    D, ell = cfg.degree_window, cfg.ell
    basis = oq.cocommutative_basis(D, ell)
    ad = oq.OqElement.gen("a", ell) + oq.OqElement.gen("d", ell)
    powers = [ad ** k for k in range(D + 1)]
    rep.data.update(ell=ell, degree=D, dim=len(basis), basis=[str(b) for b in basis])
    rep.add(f"dim = {D + 1}", len(basis) == D + 1, f"got {len(basis)}")
    rep.add("span equals span{(a+d)^k}", oq.same_span(basis, powers, ell))


def cmd_qmatrix(args, cfg: RunConfig, rep: Report) -> None:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    if args.confluence:
        bad = qmatrix.confluence_sample(n, args.samples, cfg.seed)
        rep.data.update(n=n, samples=args.samples, seed=cfg.seed)
        rep.add("confluence", not bad, f"counterexample: {bad[0]}" if bad else "")
        return
    if args.expr is None or not args.expr.strip():
        raise UsageError("--expr is required (or use --confluence)")
    try:
        x = qmatrix.parse(args.expr, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    y = qmatrix.reduce(x)
    rep.data.update(n=n, input=str(x), reduced=str(y), terms=y.to_json())
    rep.add("support in Xi", y.is_normal())


def cmd_verify(args, cfg: RunConfig, rep: Report) -> None:
    if not args.paper_suite:
        raise UsageError("verify needs --paper-suite")
    wanted = set(range(1, 12))
    if args.criteria:
        try:
            wanted = {int(x) for x in args.criteria.split(",")}
        except ValueError as exc:
            raise UsageError("--criteria takes a comma-separated list of numbers") from exc
    for k, fn in enumerate(CRITERIA, start=1):
        if k not in wanted:
            continue
        c = fn(cfg.seed) if fn is criterion_11 else fn()
        rep.add(f"criterion {k}: {c.name}", c.passed, c.detail if c.passed else "; ".join(c.failures[:3]))
        print(c.line(), file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ell", type=int, default=None, help="odd root-of-unity order (default 3)")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="oqroot", description="Quantum coordinate algebra at a root of unity.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gauss", parents=[common], help="Gaussian integers, factorials and binomials")
    g.add_argument("what", choices=["int", "factorial", "binom"])
    g.add_argument("numbers", type=int, nargs="+")
    g.add_argument("--at-one", action="store_true", help="evaluate at v = 1")
    g.set_defaults(func=cmd_gauss)

    m = sub.add_parser("module", parents=[common], help="build V_n, V_n^*, L_n or T_n")
    m.add_argument("kind", choices=["weyl", "dual", "simple", "tilting"])
    m.add_argument("n", type=int)
    m.add_argument("--matrices", action="store_true", help="include generator matrices")
    m.set_defaults(func=cmd_module)

    for name in ("filtration", "filtration-report"):
        f = sub.add_parser(name, parents=[common], help="filtration P^i of a block and its Loewy structure")
        f.add_argument("--block", type=int, default=0)
        f.add_argument("--depth", type=int, default=2)
        f.set_defaults(func=cmd_filtration, force_json=name == "filtration-report")

    c = sub.add_parser("cocommutative", parents=[common], help="cocommutative elements of degree <= D")
    c.add_argument("--degree", type=int, default=4)
    c.set_defaults(func=cmd_cocommutative)

    q = sub.add_parser("qmatrix-reduce", parents=[common], help="normal form in quantum matrices")
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--expr", default=None)
    q.add_argument("--confluence", action="store_true")
    q.add_argument("--samples", type=int, default=300)
    q.set_defaults(func=cmd_qmatrix)

    v = sub.add_parser("verify", parents=[common], help="acceptance battery")
    v.add_argument("--paper-suite", action="store_true")
    v.add_argument("--criteria", default=None, help="subset, e.g. 1,4,7")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.ell_given = args.ell is not None
    if args.ell is None:
        args.ell = 3
    if getattr(args, "force_json", False):
        args.json = True
    report = Report(command="oqroot " + " ".join(sys.argv[1:] if argv is None else argv))
    t = time.perf_counter()
    try:
        cfg = _config(args)
        args.func(args, cfg, report)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"oqroot: error: {exc}", file=sys.stderr)
        return 2
    report.seconds = time.perf_counter() - t
    if getattr(args, "force_json", False):
        flat = dict(report.data, checks=report.checks, seconds=report.seconds)
        print(json.dumps(flat, indent=2, default=str))
    elif args.json:
        print(json.dumps(report.to_json(), indent=2, default=str))
    else:
        print(report.render())
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())

"""``rde`` command line: simulate, verify, classify, figures.

Exit codes: 0 success, 1 verification mismatch, 2 configuration error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import closed_form, dynamics
from .config import ConfigError, RunConfig, build, dump_config, parse_text
from .core import RDEError, TheoremInapplicable
from .figures import SUITES, write_suite
from .simulator import SimMode, simulate, trajectory_csv

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

NA = "n/a (p≠1)"


def _add_common(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("run configuration")
    for name in ("a", "b", "alpha", "beta"):
        g.add_argument(f"--{name}", metavar="Q", help=f"coefficient {name} (rational, e.g. 1/2)")
    g.add_argument("--p", metavar="INT", help="exponent p >= 0")
    g.add_argument("--k", metavar="INT", help="delay k >= 1")
    g.add_argument("--x", metavar="LIST", help="x_{-k},...,x_0 as a comma list")
    g.add_argument("--y", metavar="LIST", help="y_{-k},...,y_0 as a comma list")
    g.add_argument("--steps", metavar="N", help="number of steps / largest index")
    g.add_argument("--mode", choices=["exact", "float64"], help="arithmetic for simulation")
    g.add_argument("--seed", metavar="INT", help="draw missing initial values from (0,1)")
    g.add_argument("--out", metavar="PATH", help="output file")
    g.add_argument("--config", metavar="FILE", help="key = value configuration file")
    g.add_argument("--dump-config", action="store_true", help="print the resolved configuration and exit")


def _load_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, str] = {}
    if args.config:
        try:
            raw.update(parse_text(Path(args.config).read_text()))
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
    for key in ("a", "b", "alpha", "beta", "p", "k", "x", "y", "steps", "mode", "seed", "out"):
        value = getattr(args, key, None)
        if value is not None:
            if key in ("x", "y"):
                raw = {kk: vv for kk, vv in raw.items() if not kk.startswith(f"{key}[")}
            raw[key] = str(value)
    return build(raw)


def cmd_simulate(cfg: RunConfig) -> int:
    traj = simulate(cfg.params, cfg.init, cfg.steps, cfg.mode)
    text = trajectory_csv(traj)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    if traj.breakdown is not None:
        print(f"breakdown: {traj.breakdown.side} denominator vanishes at n={traj.breakdown.n}",
              file=sys.stderr)
    return EXIT_OK


def verify_report(cfg: RunConfig, n_max: int, corrupt: bool = False) -> tuple[bool, list[str]]:
    """Compare the two closed forms with exact iteration for ``n <= n_max``."""
    params, init = cfg.params, cfg.init
    sim = simulate(params, init, n_max, SimMode.EXACT)
    gen = closed_form.closed_form_series(params, init, n_max, "general")
    thm = closed_form.closed_form_series(params, init, n_max, "theorem2")
    if corrupt and len(thm) > params.k + 1:
        i = params.k + 1 + (len(thm) - params.k - 1) // 2
        n, xv, yv = thm[i]
        thm[i] = (n, xv + 1, yv)
    lines = []
    sim_rows = [(pt.n, pt.x, pt.y) for pt in sim.points]
    last = max(len(sim_rows), len(gen), len(thm))
    for i in range(last):
        rows = [r[i] if i < len(r) else None for r in (sim_rows, gen, thm)]
        if rows[0] is not None and rows[0] == rows[1] == rows[2]:
            continue
        n = next(r[0] for r in rows if r is not None)
        lines.append(f"MISMATCH at n={n}")
        for label, row in zip(("simulate", "general", "theorem2"), rows):
            lines.append(f"  {label:9s} " + ("(absent)" if row is None else f"x={row[1]} y={row[2]}"))
        return False, lines
    tail = f"; breakdown at n={sim.breakdown.n} side={sim.breakdown.side}" if sim.breakdown else ""
    lines.append(f"OK: simulate, general and theorem2 agree exactly for n={-params.k}..{sim_rows[-1][0]}{tail}")
    return True, lines


def cmd_verify(cfg: RunConfig, corrupt: bool = False) -> int:
    ok, lines = verify_report(cfg, cfg.steps, corrupt)
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def classify_fields(cfg: RunConfig) -> dict[str, str]:
    params, init = cfg.params, cfg.init
    fields: dict[str, str] = {}
    if params.p != 1:
        for key in ("discriminant", "A", "B", "verdict_x", "verdict_y", "certificate",
                    "bound_x", "bound_y", "periodic", "periodic_reason", "boundary"):
            fields[key] = NA
        return fields
    cls = dynamics.classify_asymptotics(params)
    fields["discriminant"] = str(cls.discriminant)
    fields["A"] = "-" if cls.A is None else str(cls.A)
    fields["B"] = "-" if cls.B is None else str(cls.B)
    fields["verdict_x"] = cls.verdict_x.value
    fields["verdict_y"] = cls.verdict_y.value
    try:
        cert = dynamics.boundedness_certificate(params, init)
        fields["certificate"] = cert.hypothesis.value
        fields["bound_x"] = "-" if cert.bound_x is None else str(cert.bound_x)
        fields["bound_y"] = "-" if cert.bound_y is None else str(cert.bound_y)
    except TheoremInapplicable as exc:
        fields["certificate"] = fields["bound_x"] = fields["bound_y"] = f"n/a ({exc})"
    try:
        per = dynamics.periodicity_condition(params, init)
        fields["periodic"] = "true" if per.holds else "false"
        fields["periodic_reason"] = per.reason
    except TheoremInapplicable as exc:
        fields["periodic"] = fields["periodic_reason"] = f"n/a ({exc})"
    try:
        reports = dynamics.boundary_analysis(params, init)
        fields["boundary"] = ",".join(
            f"{r.side}:{r.case.value}" + ("" if r.values is None else "=" + "|".join(map(str, r.values)))
            for r in reports
        )
    except TheoremInapplicable as exc:
        fields["boundary"] = f"n/a ({exc})"
    return fields


def cmd_classify(cfg: RunConfig, porcelain: bool = False) -> int:
    fields = classify_fields(cfg)
    if porcelain:
        for key, value in fields.items():
            print(f"{key}={value}")
        return EXIT_OK
    print(f"a*alpha          {fields['discriminant']}")
    print(f"A, B             {fields['A']}, {fields['B']}")
    print(f"limit of x_n     {fields['verdict_x']}")
    print(f"limit of y_n     {fields['verdict_y']}")
    print(f"boundedness      {fields['certificate']} (x <= {fields['bound_x']}, y <= {fields['bound_y']})")
    print(f"period k         {fields['periodic']} ({fields['periodic_reason']})")
    print(f"boundary cases   {fields['boundary']}")
    return EXIT_OK


def cmd_figures(suite: str, seed: int, outdir: Path) -> int:
    names = sorted(SUITES) if suite == "all" else [suite]
    for name in names:
        csv_path, svg_path = write_suite(name, seed, outdir)
        print(f"{name}: {csv_path} {svg_path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rde", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="iterate the system and write a trajectory CSV")
    _add_common(sp)

    sp = sub.add_parser("verify", help="check closed forms against exact iteration up to --steps")
    _add_common(sp)
    sp.add_argument("--corrupt-evaluator", action="store_true", help=argparse.SUPPRESS)

    sp = sub.add_parser("classify", help="boundedness, period-k and limit verdicts (p = 1)")
    _add_common(sp)
    sp.add_argument("--porcelain", action="store_true", help="key=value output")

    sp = sub.add_parser("figures", help="write CSV/SVG for a representative suite")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--out", default="figures", help="output directory")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "figures":
            return cmd_figures(args.suite, args.seed, Path(args.out))
        cfg = _load_config(args)
        if args.dump_config:
            sys.stdout.write(dump_config(cfg))
            return EXIT_OK
        if args.command == "simulate":
            return cmd_simulate(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.corrupt_evaluator)
        return cmd_classify(cfg, args.porcelain)
    except ConfigError as exc:
        print(f"rde: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"rde: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RDEError as exc:
        print(f"rde: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

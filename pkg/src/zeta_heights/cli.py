"""Command-line surface: heights, grids, statistics, constants, and amoeba queries.

Exit codes: 0 on success, 2 on usage or domain errors, 3 on I/O errors.
All file formats are deterministic byte-for-byte for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from . import amoeba, constants, curves, grid
from .quad import BudgetExceeded
from .torsion import LOG2, TorsionPoint, classify_extremal, order, total_height

FORMATS = ("csv", "pgm", "json")


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: one subcommand plus its parameters."""

    subcommand: str
    d: int | None = None
    d_range: list[int] | None = None
    c: tuple[int, int] | None = None
    a: tuple[int, int] | None = None
    e: int | None = None
    epsilon: float = 0.1
    tolerance: float | None = None
    threads: int | None = None
    out: str | None = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.fmt == "pgm" and self.subcommand != "grid":
            raise ValueError("pgm output is only available for the grid subcommand")


def _parse_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated integers, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_float_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated numbers, got {text!r}")
    return float(parts[0]), float(parts[1])


def _parse_range(text: str) -> list[int]:
    parts = [int(p) for p in text.split(":")]
    if len(parts) == 2:
        lo, hi, step = parts[0], parts[1], 1
    elif len(parts) == 3:
        lo, hi, step = parts
    else:
        raise ValueError(f"expected LO:HI or LO:HI:STEP, got {text!r}")
    if step < 1:
        raise ValueError("step must be >= 1")
    out = list(range(lo, hi + 1, step))
    if not out:
        raise ValueError(f"range {text!r} is empty")
    return out


def _primes_in(lo: int, hi: int) -> list[int]:
    sieve = bytearray([1]) * (hi + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, math.isqrt(hi) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [n for n in range(max(2, lo), hi + 1) if sieve[n]]


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text)


def _json_line(payload: dict) -> str:
    return json.dumps(payload) + "\n"


def cmd_height(cfg: RunConfig) -> str:
    pt = TorsionPoint(cfg.d, *cfg.c)
    parts = total_height(pt)
    return _json_line({
        "d": pt.d,
        "c1": pt.c1,
        "c2": pt.c2,
        "order": order(pt),
        "archimedean": parts.archimedean,
        "nonarchimedean": parts.nonarchimedean,
        "total": parts.total,
        "classification": classify_extremal(pt).value,
    })


def grid_csv(g: grid.HeightGrid) -> str:
    lines = ["c1,c2,height"]
    for c1 in range(g.d):
        for c2 in range(g.d):
            if (c1, c2) == (0, 0):
                continue
            lines.append(f"{c1},{c2},{format(float(g.values[c1, c2]), '.17g')}")
    return "\n".join(lines) + "\n"


def grid_pgm(g: grid.HeightGrid) -> str:
    # rows top to bottom are c2 = 0 .. d-1; pixel scale maps log 2 to 255
    lines = ["P2", f"{g.d} {g.d}", "255"]
    for c2 in range(g.d):
        row = []
        for c1 in range(g.d):
            if (c1, c2) == (0, 0):
                row.append(0)
            else:
                level = math.floor(255.0 * float(g.values[c1, c2]) / LOG2 + 0.5)
                row.append(min(255, max(0, level)))
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def _stats_payload(st: grid.DistStats) -> dict:
    return {
        "d": st.d,
        "eps": st.eps,
        "mean": st.mean,
        "min": st.min,
        "max": st.max,
        "count_near_eta": st.count_near_eta,
        "count_near_theta": st.count_near_theta,
        "count_zero": st.count_zero,
        "histogram": list(st.histogram),
    }


def cmd_grid(cfg: RunConfig) -> str:
    g = grid.compute_grid(cfg.d, cfg.threads)
    if cfg.fmt == "csv":
        return grid_csv(g)
    if cfg.fmt == "pgm":
        return grid_pgm(g)
    return _json_line({"d": g.d, "stats": _stats_payload(grid.stats(g, cfg.epsilon))})


def cmd_stats(cfg: RunConfig) -> str:
    rows = []
    for d in cfg.d_range:
        st = grid.stats(grid.compute_grid(d, cfg.threads), cfg.epsilon)
        rows.append(st)
    if cfg.fmt == "json":
        return _json_line({"epsilon": cfg.epsilon, "rows": [_stats_payload(st) for st in rows]})
    lines = ["d,mean,ratio_near_eta,min,max,count_zero"]
    for st in rows:
        ratio = st.count_near_eta / (st.d * st.d - 1)
        lines.append(
            f"{st.d},{format(st.mean, '.17g')},{format(ratio, '.17g')},"
            f"{format(st.min, '.17g')},{format(st.max, '.17g')},{st.count_zero}"
        )
    return "\n".join(lines) + "\n"


def cmd_constants(cfg: RunConfig) -> str:
    sv = constants.special_values()
    return _json_line({
        "zeta2": sv.zeta2,
        "zeta3": sv.zeta3,
        "zeta4": sv.zeta4,
        "L_chi3_2": sv.L_chi3_2,
        "eta": sv.eta,
        "theta": sv.theta,
    })


def _limits_experiment(cfg: RunConfig, random_witness: bool, seed: int) -> curves.LimitExperiment:
    curve = None
    if cfg.a is not None:
        curve = curves.TorsionCurve(cfg.a[0], cfg.a[1], cfg.e if cfg.e is not None else 1)
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-9
    return curves.limit_experiment(curve, cfg.d_range, tol, random_witness=random_witness, seed=seed)


def cmd_limits(cfg: RunConfig, random_witness: bool = False, seed: int = 0) -> str:
    exp = _limits_experiment(cfg, random_witness, seed)
    if cfg.fmt == "json":
        return _json_line({
            "limit": exp.limit,
            "rows": [
                {"d": r.d, "c1": r.c1, "c2": r.c2, "order": r.order, "height": r.height, "gap": r.gap}
                for r in exp.rows
            ],
        })
    lines = ["d,c1,c2,order,height,gap,limit"]
    for r in exp.rows:
        lines.append(
            f"{r.d},{r.c1},{r.c2},{r.order},{format(r.height, '.17g')},"
            f"{format(r.gap, '.17g')},{format(exp.limit, '.17g')}"
        )
    return "\n".join(lines) + "\n"


def cmd_curve(cfg: RunConfig) -> str:
    curve = curves.TorsionCurve(cfg.a[0], cfg.a[1], cfg.e if cfg.e is not None else 1)
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-10
    value = curves.limit_height(curve, tol)
    return _json_line({"a1": curve.a1, "a2": curve.a2, "e": curve.e, "value": value})


def cmd_amoeba(cfg: RunConfig, args: argparse.Namespace) -> str:
    tol = cfg.tolerance if cfg.tolerance is not None else 1e-9
    if args.contains is not None:
        u = amoeba.AmoebaPoint(*_parse_float_pair(args.contains))
        return _json_line({
            "u1": u.u1,
            "u2": u.u2,
            "contains": amoeba.contains(u),
            "region": amoeba.region(u).value,
        })
    if args.moment is not None:
        res = amoeba.south_moment(args.moment, min(tol, 1e-10))
        return _json_line({
            "m": args.moment,
            "value": res.value,
            "err_estimate": res.err_estimate,
            "evaluations": res.evaluations,
        })
    if args.volume:
        return _json_line({"volume": amoeba.volume()})
    if args.psi_average:
        return _json_line({"psi_average": amoeba.psi_average()})
    if args.ronkin is not None:
        u = amoeba.AmoebaPoint(*_parse_float_pair(args.ronkin))
        return _json_line({"u1": u.u1, "u2": u.u2, "ronkin": amoeba.ronkin(u, tol)})
    if args.dual is not None:
        x = _parse_float_pair(args.dual)
        return _json_line({"x1": x[0], "x2": x[1], "value": amoeba.legendre_dual(x, tol)})
    if args.ronkin_samples is not None:
        spec1, spec2 = args.ronkin_samples.split(",")
        lo1, hi1, n1 = spec1.split(":")
        lo2, hi2, n2 = spec2.split(":")
        lines = ["u1,u2,ronkin"]
        for i in range(int(n1)):
            u1 = float(lo1) + (float(hi1) - float(lo1)) * i / max(1, int(n1) - 1)
            for j in range(int(n2)):
                u2 = float(lo2) + (float(hi2) - float(lo2)) * j / max(1, int(n2) - 1)
                rho = amoeba.ronkin(amoeba.AmoebaPoint(u1, u2), tol)
                lines.append(f"{format(u1, '.17g')},{format(u2, '.17g')},{format(rho, '.17g')}")
        return "\n".join(lines) + "\n"
    raise ValueError("amoeba: choose one of --contains/--moment/--volume/--psi-average/--ronkin/--dual/--ronkin-samples")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zeta-heights",
        description="Heights of torsion translates of x0+x1+x2=0 and their limit constants",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("height", help="height of one torsion point")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", required=True, help="c1,c2")

    p = sub.add_parser("grid", help="full d x d height grid")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--format", default="csv", choices=FORMATS)
    p.add_argument("--out")
    p.add_argument("--threads", type=int)
    p.add_argument("--epsilon", type=float, default=0.1)

    p = sub.add_parser("stats", help="distribution statistics over a range of d")
    p.add_argument("--d-range", required=True, help="LO:HI or LO:HI:STEP")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--threads", type=int)

    sub.add_parser("constants", help="special values as JSON")

    p = sub.add_parser("limits", help="convergence of witness heights to the limit")
    p.add_argument("--d-list", help="comma-separated moduli, strictly increasing")
    p.add_argument("--primes", help="LO:HI, take all primes in the range")
    p.add_argument("--a", help="a1,a2 (restrict to a torsion curve)")
    p.add_argument("--e", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--random-witness", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.add_argument("--out")

    p = sub.add_parser("curve", help="segment-average limit height of a torsion curve")
    p.add_argument("--a", required=True, help="a1,a2 (primitive)")
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("amoeba", help="amoeba membership, moments, Ronkin values")
    p.add_argument("--contains", help="u1,u2")
    p.add_argument("--moment", type=int)
    p.add_argument("--volume", action="store_true")
    p.add_argument("--psi-average", action="store_true")
    p.add_argument("--ronkin", help="u1,u2")
    p.add_argument("--dual", help="x1,x2 in the standard simplex")
    p.add_argument("--ronkin-samples", help="LO:HI:N,LO:HI:N lattice, CSV output")
    p.add_argument("--tol", type=float)
    p.add_argument("--out")

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    sub = args.subcommand
    if sub == "height":
        return RunConfig(sub, d=args.d, c=_parse_pair(args.c))
    if sub == "grid":
        return RunConfig(sub, d=args.d, fmt=args.format, out=args.out,
                         threads=args.threads, epsilon=args.epsilon)
    if sub == "stats":
        return RunConfig(sub, d_range=_parse_range(args.d_range), epsilon=args.epsilon,
                         fmt=args.format, out=args.out, threads=args.threads)
    if sub == "constants":
        return RunConfig(sub)
    if sub == "limits":
        if (args.d_list is None) == (args.primes is None):
            raise ValueError("limits: give exactly one of --d-list or --primes")
        if args.d_list is not None:
            d_range = [int(v) for v in args.d_list.split(",")]
        else:
            lo, hi = (int(v) for v in args.primes.split(":"))
            d_range = _primes_in(lo, hi)
            if not d_range:
                raise ValueError(f"no primes in [{lo}, {hi}]")
        a = _parse_pair(args.a) if args.a is not None else None
        return RunConfig(sub, d_range=d_range, a=a, e=args.e, tolerance=args.tol, fmt=args.format, out=args.out)
    if sub == "curve":
        return RunConfig(sub, a=_parse_pair(args.a), e=args.e, tolerance=args.tol)
    if sub == "amoeba":
        return RunConfig(sub, tolerance=args.tol, out=args.out)
    raise ValueError(f"unknown subcommand {sub!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if cfg.subcommand == "height":
            text = cmd_height(cfg)
        elif cfg.subcommand == "grid":
            text = cmd_grid(cfg)
        elif cfg.subcommand == "stats":
            text = cmd_stats(cfg)
        elif cfg.subcommand == "constants":
            text = cmd_constants(cfg)
        elif cfg.subcommand == "limits":
            text = cmd_limits(cfg, random_witness=args.random_witness, seed=args.seed)
        elif cfg.subcommand == "curve":
            text = cmd_curve(cfg)
        else:
            text = cmd_amoeba(cfg, args)
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        _emit(text, cfg.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())

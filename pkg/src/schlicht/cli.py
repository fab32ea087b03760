"""Command-line front end.

Every construction and audit is a subcommand emitting JSON or CSV with a
reproducibility header (seed, truncation order, grid, tool version).
Identical flags and seed give byte-identical output once the timestamp is
suppressed with --no-timestamp.

Exit codes: 0 success / audit clean, 1 audit violation or failed check,
2 usage error.  The ``report`` subcommand additionally renders matplotlib
figures next to its CSV tables; everything else is plot-free.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .briot_bouquet import (
    default_lambda_grid,
    extremal_alpha,
    extremal_mocanu,
    sharpness_sweep,
)
from .explore import (
    filtration_audit,
    filtration_audit_alpha,
    fs_bound_audit,
    sample_members_m0beta,
    sample_members_malpha,
    schwarz_lemma_audit,
)
from .functions import load_function
from .membership import (
    DiskGrid,
    class_test,
    delta_audit,
    delta_region_contains,
    min_margin,
    minimize_real_part,
)
from .operators import ClassParams, ParameterError
from .semigroup import (
    DiskEscapeError,
    NotAGeneratorError,
    StiffnessError,
    bound_audit_alpha,
    evolve,
    semigroup_property_audit,
)
from .series import default_order, evaluate_many

__all__ = ["RunConfig", "dispatch", "main"]

_CLASS_FLAGS = {
    "m": "m",
    "generator": "generator",
    "starlike-half": "starlike_half",
    "convex": "convex",
    "a-half": "a_half",
}


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = 0
    trunc: int = 96
    output: str = "-"
    format: str = "json"
    no_timestamp: bool = False


class UsageError(ValueError):
    pass


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected 're' or 're,im', got {text!r}")


def _parse_float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated decimals, got {text!r}") from None


def _parse_lambda_grid(text: str) -> np.ndarray:
    if text == "default":
        return default_lambda_grid()
    return np.array([complex(x, 0.0) for x in _parse_float_list(text)])


def _grid_from_args(args) -> DiskGrid | None:
    if args.grid_rings is None and args.grid_angles is None:
        return None
    rings = _parse_float_list(args.grid_rings) if args.grid_rings else None
    kwargs = {}
    if rings:
        kwargs["radii"] = rings
    else:
        kwargs["radii"] = DiskGrid.default().radii
    if args.grid_angles:
        kwargs["angles_per_ring"] = args.grid_angles
    try:
        return DiskGrid(**kwargs)
    except ValueError as exc:
        raise UsageError(f"bad grid: {exc}") from None


def _header(cfg: RunConfig, grid: DiskGrid | None = None) -> dict:
    hdr = {
        "tool": "schlicht",
        "version": __version__,
        "command": cfg.command,
        "seed": cfg.seed,
        "trunc": cfg.trunc,
        "grid": grid.to_dict() if grid is not None else None,
    }
    if not cfg.no_timestamp:
        hdr["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return hdr


def _render(cfg: RunConfig, header: dict, result: dict,
            rows: list[dict] | None, fieldnames: list[str] | None) -> str:
    if cfg.format == "json":
        return json.dumps({"header": header, "result": result}, indent=2) + "\n"
    buf = io.StringIO()
    for key, val in header.items():
        buf.write(f"# {key}: {json.dumps(val)}\n")
    if rows is None:
        rows = [{"key": k, "value": json.dumps(v)}
                for k, v in result.items() if not isinstance(v, (list, dict))]
        fieldnames = ["key", "value"]
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(float(v)) if isinstance(v, float) else v)
                         for k, v in row.items()})
    return buf.getvalue()


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.output == "-":
        sys.stdout.write(text)
        return
    tmp = cfg.output + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, cfg.output)


def _line_value(args) -> float:
    if args.line == "beta":
        if args.beta is None:
            raise UsageError("--line beta requires --beta")
        return args.beta
    if args.alpha is None:
        raise UsageError("--line alpha requires --alpha")
    return args.alpha


# -- command handlers: return (exit_code, result, rows, fieldnames, grid) -------

def _cmd_extremal(cfg: RunConfig, args):
    value = _line_value(args)
    if args.line == "beta":
        res = extremal_mocanu(value, args.k, cfg.trunc)
    else:
        res = extremal_alpha(value, args.k, cfg.trunc)
    rows = [{"lambda_re": lam.real, "lambda_im": lam.imag,
             "phi_re": val.real, "phi_im": val.imag, "abs_phi": abs(val)}
            for lam, val in res.phi]
    return 0, res.to_dict(), rows, \
        ["lambda_re", "lambda_im", "phi_re", "phi_im", "abs_phi"], None


def _cmd_membership(cfg: RunConfig, args):
    class_id = _CLASS_FLAGS[args.klass]
    f = load_function(args.function, cfg.trunc)
    params = None
    if class_id == "m":
        if args.alpha is None or args.beta is None:
            raise UsageError("--class m requires --alpha and --beta")
        params = ClassParams(args.alpha, args.beta)
    grid = _grid_from_args(args)
    report = min_margin(f, class_id, params=params, grid=grid)
    # per-ring margins are the plot-ready view
    test, threshold = class_test(f, class_id, params)
    rows = []
    for r in report.grid.radii:
        ring = DiskGrid((r,), report.grid.angles_per_ring, report.grid.refinement_depth)
        min_re, _ = minimize_real_part(lambda z: evaluate_many(test, z), ring)
        rows.append({"ring": r, "margin": min_re - threshold})
    code = 1 if report.verdict == "fail" else 0
    return code, report.to_dict(), rows, ["ring", "margin"], report.grid


def _cmd_region(cfg: RunConfig, args):
    if args.alpha is None or args.beta is None:
        raise UsageError("region requires --alpha and --beta")
    params = ClassParams(args.alpha, args.beta)
    if args.w is not None:
        w = _parse_complex(args.w)
        inside = delta_region_contains(params, w)
        result = {"alpha": params.alpha, "beta": params.beta,
                  "w": [w.real, w.imag], "in_delta": inside}
        return 0, result, [{"w_re": w.real, "w_im": w.imag, "in_delta": inside}], \
            ["w_re", "w_im", "in_delta"], None
    if args.function is None:
        raise UsageError("region requires --w or --function")
    f = load_function(args.function, cfg.trunc)
    rep = delta_audit(f, params, grid=_grid_from_args(args))
    rows = [{"all_in_delta": rep.all_in_delta, "n_excluded": rep.n_excluded,
             "generator_margin": rep.generator_margin, "consistent": rep.consistent}]
    return (0 if rep.consistent else 1), rep.to_dict(), rows, list(rows[0]), None


def _cmd_sweep(cfg: RunConfig, args):
    value = _line_value(args)
    rows = sharpness_sweep(args.line, value, _parse_lambda_grid(args.lambda_grid),
                           cfg.trunc)
    result = {"line": args.line, "value": value, "rows": rows}
    return 0, result, rows, \
        ["lambda_re", "lambda_im", "bound", "attained", "ratio"], None


def _cmd_semigroup(cfg: RunConfig, args):
    f = load_function(args.function, cfg.trunc)
    if args.audit == "none":
        times = _parse_float_list(args.times) if args.times else None
        traj = evolve(f, _parse_complex(args.z0), args.t_end, times=times,
                      force=args.force)
        rows = traj.rows()
        return 0, traj.to_dict(), rows, ["t", "re_u", "im_u", "abs_u"], None
    if args.audit == "growth":
        if args.alpha is None:
            raise UsageError("--audit growth requires --alpha in [0.5, 1]")
        rng = np.random.default_rng(cfg.seed)
        radii = 0.1 + 0.75 * rng.uniform(size=args.trials)
        angles = rng.uniform(0.0, 2.0 * np.pi, size=args.trials)
        ts = _parse_float_list(args.times) if args.times else (0.5, 1.0, 2.0)
        samples = [(complex(r * np.exp(1j * a)), t)
                   for r, a in zip(radii, angles) for t in ts]
        rep = bound_audit_alpha(f, args.alpha, samples)
        rows = list(rep.rows)
        return (1 if rep.violations else 0), rep.to_dict(), rows, \
            ["z0_re", "z0_im", "t", "abs_u", "bound", "excess"], None
    # semigroup property audit
    s = args.s
    if s is None or not 0.0 <= s <= args.t_end:
        raise UsageError("--audit property requires --s in [0, t_end]")
    rng = np.random.default_rng(cfg.seed)
    z0s = [complex(r * np.exp(1j * a))
           for r, a in zip(0.1 + 0.7 * rng.uniform(size=args.trials),
                           rng.uniform(0.0, 2.0 * np.pi, size=args.trials))]
    dev = semigroup_property_audit(f, s, args.t_end - s, z0s)
    result = {"s": s, "t": args.t_end - s, "n_points": len(z0s),
              "max_deviation": dev, "tol": args.tol}
    rows = [{"s": s, "t": args.t_end - s, "max_deviation": dev}]
    return (1 if dev > args.tol else 0), result, rows, \
        ["s", "t", "max_deviation"], None


def _cmd_audit_filtration(cfg: RunConfig, args):
    value = _line_value(args)
    if args.to:
        targets = _parse_float_list(args.to)
    else:
        targets = tuple(round(value + 0.1 * k, 10)
                        for k in range(1, int((1.0 - value) / 0.1) + 1))
        if not targets or targets[-1] < 1.0:
            targets = targets + (1.0,)
    if args.line == "beta":
        rep = filtration_audit(value, targets, args.trials, cfg.seed)
    else:
        rep = filtration_audit_alpha(value, targets, args.trials, cfg.seed)
    rows = list(rep.per_target)
    return (1 if rep.violations else 0), rep.to_dict(), rows, \
        ["to", "worst_margin", "violations"], DiskGrid.audit()


def _cmd_audit_schwarz(cfg: RunConfig, args):
    rep = schwarz_lemma_audit(cfg.seed, args.trials)
    rows = [{"trials": rep.trials,
             "max_slack_quadratic": rep.max_slack_quadratic,
             "max_slack_weighted": rep.max_slack_weighted,
             "violations": rep.violations}]
    return (1 if rep.violations else 0), rep.to_dict(), rows, list(rows[0]), None


def _cmd_audit_bound(cfg: RunConfig, args):
    value = _line_value(args)
    if args.line == "beta":
        params = ClassParams(0.0, value)
        members = sample_members_m0beta(value, args.trials, cfg.seed, cfg.trunc)
    else:
        params = ClassParams(value, 1.0 - value)
        members = sample_members_malpha(value, args.trials, cfg.seed, cfg.trunc)
    rep = fs_bound_audit(members, params, _parse_lambda_grid(args.lambda_grid))
    rows = list(rep.rows)
    return (1 if rep.violations else 0), rep.to_dict(), rows, \
        ["lambda_re", "lambda_im", "bound", "attained", "ratio"], None


def _cmd_report(cfg: RunConfig, args):
    from .report import generate_report
    out_dir = cfg.output if cfg.output != "-" else "schlicht-report"
    paths = generate_report(out_dir, seed=cfg.seed, trials=args.trials,
                            order=cfg.trunc)
    result = {"out_dir": out_dir, "files": [str(p) for p in paths]}
    sys.stdout.write(json.dumps({"header": _header(cfg), "result": result},
                                indent=2) + "\n")
    return 0, None, None, None, None


_HANDLERS = {
    "extremal": _cmd_extremal,
    "membership": _cmd_membership,
    "region": _cmd_region,
    "sweep": _cmd_sweep,
    "semigroup": _cmd_semigroup,
    "audit-filtration": _cmd_audit_filtration,
    "audit-schwarz": _cmd_audit_schwarz,
    "audit-bound": _cmd_audit_bound,
    "report": _cmd_report,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc", type=int, default=None,
                        help="truncation order (default: SCHLICHT_TRUNC or 96)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default="-", help="file path or - for stdout")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp for byte-reproducible output")
    common.add_argument("--grid-rings", default=None,
                        help="comma-separated ring radii in (0, 0.995]")
    common.add_argument("--grid-angles", type=int, default=None)

    p = argparse.ArgumentParser(prog="schlicht",
                                description="generator-class numerics on the unit disk")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("extremal", parents=[common],
                        help="extremal function of a class line")
    sp.add_argument("--line", choices=("beta", "alpha"), required=True)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--k", type=int, choices=(1, 2), default=2)

    sp = sub.add_parser("membership", parents=[common],
                        help="half-plane margin check on a disk grid")
    sp.add_argument("--class", dest="klass", choices=sorted(_CLASS_FLAGS),
                    required=True)
    sp.add_argument("--function", required=True,
                    help="built-in name (id, halfplane, koebe, neglog) or JSON path")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)

    sp = sub.add_parser("region", parents=[common],
                        help="region classifier / generator-criterion audit")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--w", default=None, help="point to classify, 're,im'")
    sp.add_argument("--function", default=None)

    sp = sub.add_parser("sweep", parents=[common],
                        help="sharp bound vs attained value over the lambda grid")
    sp.add_argument("--line", choices=("beta", "alpha"), required=True)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--lambda-grid", default="default")

    sp = sub.add_parser("semigroup", parents=[common],
                        help="flow trajectories and semigroup audits")
    sp.add_argument("--function", required=True)
    sp.add_argument("--z0", default="0.3,0.2")
    sp.add_argument("--t-end", type=float, default=2.0)
    sp.add_argument("--times", default=None, help="comma-separated sample times")
    sp.add_argument("--audit", choices=("none", "growth", "property"),
                    default="none")
    sp.add_argument("--alpha", type=float, help="line parameter for --audit growth")
    sp.add_argument("--s", type=float, help="split time for --audit property")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--tol", type=float, default=1e-7)
    sp.add_argument("--force", action="store_true",
                    help="skip the generator precheck")

    sp = sub.add_parser("audit-filtration", parents=[common],
                        help="nested-class audit along a parameter line")
    sp.add_argument("--line", choices=("beta", "alpha"), default="beta")
    sp.add_argument("--beta", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--to", default=None,
                    help="comma-separated larger parameters (default: +0.1 steps to 1)")
    sp.add_argument("--trials", type=int, default=200)

    sp = sub.add_parser("audit-schwarz", parents=[common],
                        help="coefficient inequalities of random Schwarz functions")
    sp.add_argument("--trials", type=int, default=10000)

    sp = sub.add_parser("audit-bound", parents=[common],
                        help="Fekete-Szego bound audit over sampled members")
    sp.add_argument("--line", choices=("beta", "alpha"), required=True)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--lambda-grid", default="default")

    sp = sub.add_parser("report", parents=[common],
                        help="render the standard CSV tables and figures")
    sp.add_argument("--trials", type=int, default=60)

    return p


def dispatch(config: RunConfig, args) -> int:
    handler = _HANDLERS[config.command]
    code, result, rows, fieldnames, grid = handler(config, args)
    if result is not None:
        text = _render(config, _header(config, grid), result, rows, fieldnames)
        _write(config, text)
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        command=args.command,
        params={},
        seed=args.seed,
        trunc=args.trunc if args.trunc is not None else default_order(),
        output=args.output,
        format=args.format,
        no_timestamp=args.no_timestamp,
    )
    try:
        return dispatch(cfg, args)
    except (DiskEscapeError, StiffnessError, NotAGeneratorError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (UsageError, ParameterError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

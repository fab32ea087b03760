"""Standard report battery: CSV tables plus rendered figures.

This is the only module that touches matplotlib, and it imports it lazily
so the core library and the data-emitting CLI commands carry no plotting
dependency at runtime.  Each table is written as CSV and rendered as a
PNG next to it:

* ``sweep_beta`` / ``sweep_alpha``: sharp bound vs attained |Phi| along
  real lambda,
* ``filtration_beta``: worst membership margin of sampled members across
  the larger classes of the line,
* ``trajectories``: semigroup orbits of the built-in generators inside
  the unit circle,
* ``ring_margins``: per-ring generator margins of the built-ins.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .briot_bouquet import sharpness_sweep
from .explore import filtration_audit
from .functions import halfplane, identity, koebe, neglog
from .membership import DiskGrid, class_test, minimize_real_part
from .semigroup import evolve
from .series import evaluate_many

__all__ = ["generate_report"]


def _write_csv(path: Path, rows: list[dict], fieldnames: list[str]) -> None:
    with open(path, "w") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _sweep_figure(plt, rows: list[dict], title: str, png: Path) -> None:
    lam = [r["lambda_re"] for r in rows if r["lambda_im"] == 0.0]
    bound = [r["bound"] for r in rows if r["lambda_im"] == 0.0]
    attained = [r["attained"] for r in rows if r["lambda_im"] == 0.0]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(lam, bound, label="bound max(mu, |1-lambda|)", lw=2)
    ax.plot(lam, attained, "--", label="attained by extremals", lw=1.2)
    ax.set_xlabel("Re lambda (Im lambda = 0)")
    ax.set_ylabel("|Phi|")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(png, dpi=120)
    plt.close(fig)


def generate_report(out_dir, seed: int = 0, trials: int = 60,
                    order: int | None = None) -> list[Path]:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def emit(stem: str, rows: list[dict], fieldnames: list[str]) -> Path:
        path = out / f"{stem}.csv"
        _write_csv(path, rows, fieldnames)
        written.append(path)
        return path

    # sharp-bound sweeps on both lines
    sweep_fields = ["lambda_re", "lambda_im", "bound", "attained", "ratio"]
    rows_b = sharpness_sweep("beta", 0.5, order=order)
    emit("sweep_beta", rows_b, sweep_fields)
    _sweep_figure(plt, rows_b, "beta line at 0.5 (mu = 3/8)", out / "sweep_beta.png")
    written.append(out / "sweep_beta.png")

    rows_a = sharpness_sweep("alpha", 0.75, order=order)
    emit("sweep_alpha", rows_a, sweep_fields)
    _sweep_figure(plt, rows_a, "alpha line at 0.75 (mu = 4/5)", out / "sweep_alpha.png")
    written.append(out / "sweep_alpha.png")

    # filtration margins
    rep = filtration_audit(0.0, (0.2, 0.4, 0.6, 0.8, 1.0),
                           samples=max(10, trials // 3), seed=seed)
    filt_rows = list(rep.per_target)
    emit("filtration_beta", filt_rows, ["to", "worst_margin", "violations"])
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r["to"] for r in filt_rows], [r["worst_margin"] for r in filt_rows],
            "o-")
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("target class parameter")
    ax.set_ylabel("worst margin over samples")
    ax.set_title("members of the convex-type class inside larger classes")
    fig.tight_layout()
    fig.savefig(out / "filtration_beta.png", dpi=120)
    plt.close(fig)
    written.append(out / "filtration_beta.png")

    # semigroup trajectories
    traj_rows: list[dict] = []
    fig, ax = plt.subplots(figsize=(5, 5))
    circle = np.exp(1j * np.linspace(0.0, 2.0 * np.pi, 361))
    ax.plot(circle.real, circle.imag, "k-", lw=0.8)
    rng = np.random.default_rng(seed)
    starts = 0.75 * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, 6))
    for name, f in (("neglog", neglog(order)), ("halfplane", halfplane(order))):
        for z0 in starts:
            traj = evolve(f, complex(z0), 3.0)
            for row in traj.rows():
                traj_rows.append({"function": name,
                                  "z0_re": z0.real, "z0_im": z0.imag, **row})
            pts = np.array(traj.points)
            ax.plot(pts.real, pts.imag, lw=1.0,
                    color="tab:blue" if name == "neglog" else "tab:orange")
    ax.set_aspect("equal")
    ax.set_title("flows toward the origin (blue: neglog, orange: halfplane)")
    fig.tight_layout()
    fig.savefig(out / "trajectories.png", dpi=120)
    plt.close(fig)
    written.append(out / "trajectories.png")
    emit("trajectories", traj_rows,
         ["function", "z0_re", "z0_im", "t", "re_u", "im_u", "abs_u"])

    # per-ring generator margins of the built-ins
    ring_rows: list[dict] = []
    fig, ax = plt.subplots(figsize=(6, 4))
    for name, f in (("id", identity(order)), ("halfplane", halfplane(order)),
                    ("koebe", koebe(order)), ("neglog", neglog(order))):
        test, threshold = class_test(f, "generator")
        radii = DiskGrid.default(test).radii
        margins = []
        for r in radii:
            ring = DiskGrid((r,), 720, 1)
            min_re, _ = minimize_real_part(lambda z: evaluate_many(test, z), ring)
            margins.append(min_re - threshold)
            ring_rows.append({"function": name, "ring": r,
                              "margin": min_re - threshold})
        ax.plot(radii, margins, "o-", label=name)
    ax.set_xlabel("ring radius")
    ax.set_ylabel("generator margin")
    ax.set_yscale("symlog", linthresh=1e-3)
    ax.legend()
    ax.set_title("Re f(z)/z margin per ring")
    fig.tight_layout()
    fig.savefig(out / "ring_margins.png", dpi=120)
    plt.close(fig)
    written.append(out / "ring_margins.png")
    emit("ring_margins", ring_rows, ["function", "ring", "margin"])

    return written

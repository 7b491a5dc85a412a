"""CSV tables and PNG figures for a batch of check reports."""

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .lattices import construction_b_lattice, named_lattice, theta_series  # noqa: E402
from .qseries import DEFAULT_PRECISION, GRID, ch_VLplus  # noqa: E402

STATUS_COLORS = {"pass": "#4c9a2a", "fail": "#c0392b", "defect": "#d68910"}


def _theta_lattices():
    from .bincodes import named_code

    return [
        ("E8", named_lattice("E8")),
        ("sqrt2E8", named_lattice("sqrt2E8")),
        ("L+(e8)", construction_b_lattice(named_code("e8"))),
        ("E8^2", named_lattice("E8^2")),
        ("D16+", named_lattice("D16+")),
        ("L+(e8^2)", construction_b_lattice(named_code("e8^2"))),
    ]


def write_checks_csv(reports, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "status", "wall_ms"])
        for r in reports:
            w.writerow([r.check, r.status, r.wall_ms])


def write_theta_csv(rows, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lattice", "norm", "count"])
        for name, series in rows:
            for e, c in series.terms():
                w.writerow([name, 2 * e, c])


def plot_check_times(reports, path):
    fig, ax = plt.subplots(figsize=(7, 0.45 * len(reports) + 1.2))
    names = [r.check for r in reports]
    secs = [max(r.wall_ms, 1) / 1000 for r in reports]
    ax.barh(names, secs, color=[STATUS_COLORS.get(r.status, "grey") for r in reports])
    ax.set_xscale("log")
    ax.set_xlabel("wall time (s)")
    ax.invert_yaxis()
    ax.spines["right"].set_visible(False)
    ax.spines["top"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_theta(rows, path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for name, series in rows:
        pts = [(2 * e, c) for e, c in series.terms() if c > 0]
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=name)
    ax.set_yscale("log")
    ax.set_xlabel("norm m")
    ax.set_ylabel("|L(m)|")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_characters(prec, path):
    fig, ax = plt.subplots(figsize=(7, 4))
    for name in ("E8^2", "D16+"):
        s = ch_VLplus(named_lattice(name), prec)
        pts = [(g / GRID + 16 / 24, c) for g, c in s.items_grid() if c > 0]
        style = "-o" if name == "E8^2" else "--x"
        ax.plot([p[0] for p in pts], [p[1] for p in pts], style, ms=4, label="V_L^+ for L = " + name)
    ax.set_yscale("log")
    ax.set_xlabel("conformal weight")
    ax.set_ylabel("dimension")
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(reports, outdir, precision=DEFAULT_PRECISION):
    """Write checks.csv, theta.csv and three figures; returns the file paths."""
    os.makedirs(outdir, exist_ok=True)
    rows = [(name, theta_series(L, precision)) for name, L in _theta_lattices()]
    paths = {
        "checks_csv": os.path.join(outdir, "checks.csv"),
        "theta_csv": os.path.join(outdir, "theta.csv"),
        "check_times_png": os.path.join(outdir, "check_times.png"),
        "theta_png": os.path.join(outdir, "theta.png"),
        "characters_png": os.path.join(outdir, "characters.png"),
    }
    write_checks_csv(reports, paths["checks_csv"])
    write_theta_csv(rows, paths["theta_csv"])
    plot_check_times(reports, paths["check_times_png"])
    plot_theta(rows, paths["theta_png"])
    plot_characters(precision, paths["characters_png"])
    return paths

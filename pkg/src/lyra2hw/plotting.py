"""Figures for simulation and throughput reports.

Every figure is written next to a tab-separated file holding the plotted data,
so the numbers survive without the image.
"""

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .hwsim.fsm import Phase  # noqa: E402
from .hwsim.throughput import ARCHS, REPORTED, throughput_model  # noqa: E402

PHASE_COLORS = {
    Phase.Bootstrap.value: "#4c72b0",
    Phase.Setup0.value: "#55a868",
    Phase.Setup1.value: "#8fd19e",
    Phase.Setup2.value: "#2e7d32",
    Phase.Wandering.value: "#c44e52",
    Phase.WrapAbsorb.value: "#8172b2",
}


def _write_tsv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def port_usage_rows(trace):
    return [(r.cycle, r.fsm or "-", len(r.reads), len(r.writes)) for r in trace]


def plot_port_usage(result, outdir, max_cycles=None):
    """Reads and writes per cycle, shaded by the issuing context's phase."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = port_usage_rows(result.trace)
    if max_cycles:
        rows = rows[:max_cycles]
    _write_tsv(outdir / "port_usage.tsv", ("cycle", "fsm", "reads", "writes"), rows)

    cycles = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(8, 3.2))
    for c, fsm, _, _ in rows:
        if fsm in PHASE_COLORS:
            ax.axvspan(c - 0.5, c + 0.5, color=PHASE_COLORS[fsm], alpha=0.18, lw=0)
    ax.step(cycles, [r[2] for r in rows], where="mid", label="reads", color="k")
    ax.step(cycles, [r[3] for r in rows], where="mid", label="writes", color="tab:orange")
    ax.axhline(4, ls=":", color="k", lw=0.8)
    ax.axhline(2, ls=":", color="tab:orange", lw=0.8)
    handles = [plt.Rectangle((0, 0), 1, 1, color=c, alpha=0.4) for c in PHASE_COLORS.values()]
    leg = ax.legend(loc="upper left", fontsize=7, ncol=2)
    ax.add_artist(leg)
    ax.legend(handles, PHASE_COLORS.keys(), loc="upper right", fontsize=6, ncol=3)
    ax.set_ylim(0, 5.5)
    ax.set_xlabel("core clock cycle")
    ax.set_ylabel("RAM port requests")
    ax.set_title(f"Port usage, {'iterative' if result.depth == 1 else f'{result.depth}-stage pipelined'} core")
    fig.tight_layout()
    path = outdir / "port_usage.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_pipeline_occupancy(result, outdir, max_cycles=96):
    """Which context sits in which round stage, cycle by cycle."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    recs = result.trace.records[:max_cycles]
    _write_tsv(
        outdir / "pipeline_occupancy.tsv",
        ["cycle"] + [f"stage{i}" for i in range(result.depth)],
        [[r.cycle] + ["-" if s is None else s for s in r.stages] for r in recs],
    )
    grid = [[-1 if s is None else s for s in r.stages] for r in recs]
    fig, ax = plt.subplots(figsize=(8, 2.6))
    masked = [[float("nan") if x < 0 else x for x in row] for row in grid]
    cmap = plt.get_cmap("tab10", result.depth)
    im = ax.imshow(list(map(list, zip(*masked))), aspect="auto", cmap=cmap, vmin=-0.5,
                   vmax=result.depth - 0.5, interpolation="nearest", origin="lower")
    ax.set_xlabel("core clock cycle")
    ax.set_ylabel("pipeline stage")
    fig.colorbar(im, ax=ax, label="context", ticks=range(result.depth))
    fig.tight_layout()
    path = outdir / "pipeline_occupancy.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def throughput_rows(freqs):
    return [(f, arch, throughput_model(f, arch)) for f in freqs for arch in ARCHS]


def plot_throughput(outdir, freqs=None, highlight=None):
    """Hash rate against clock frequency, with the reported FPGA operating points."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    freqs = list(freqs or range(25, 401, 25))
    rows = throughput_rows(freqs)
    _write_tsv(outdir / "throughput.tsv", ("freq_mhz", "arch", "mhash_s"), rows)

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for arch, style in zip(ARCHS, ("-", "--")):
        ax.plot(freqs, [throughput_model(f, arch) for f in freqs], style, label=arch)
    for name, (f, tp) in REPORTED.items():
        ax.plot([f], [tp], "o", label=f"{name} (reported)")
    if highlight:
        ax.axvline(highlight, color="grey", lw=0.8, ls=":")
    ax.set_xlabel("clock frequency (MHz)")
    ax.set_ylabel("throughput (MHash/s)")
    ax.legend(fontsize=7)
    fig.tight_layout()
    path = outdir / "throughput.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path

"""Report rendering: delimited check tables plus matplotlib figures.

The ``report`` CLI path runs every applicable suite over a carrier, writes
the results as a tab-separated table, and renders the natural figures:
the truncated norm profile of the canonical generator sum and, for
k-graph carriers with a tail truncation, the sandwich of compression
norms around the reduced-class representation.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .checks import CheckReport, check_hrlemma, generator_sum_poly, run_suite
from .graphs import DirectedGraph
from .norms import truncated_norm_profile

TSV_COLUMNS = ("suite", "carrier", "N", "M", "tol", "seed", "value", "bound",
               "anchor", "outcome")


def reports_to_tsv(reports: list[CheckReport]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for r in reports:
        lines.append("\t".join([
            r.suite, r.carrier, str(r.N), "-" if r.M is None else str(r.M),
            f"{r.tol:g}", str(r.seed), f"{r.value:.12e}", f"{r.bound:.12e}",
            r.anchor, "PASS" if r.passed else "FAIL",
        ]))
    return "\n".join(lines) + "\n"


def render_norm_profile(carrier, n_max: int, out_path: Path, tol: float = 1e-8,
                        seed: int = 0) -> Path:
    """Plot the compression norms of the generator sum against the cutoff."""
    poly = generator_sum_poly(carrier)
    levels = list(range(1, n_max + 1))
    profile = truncated_norm_profile(poly, carrier, levels, tol=tol, seed=seed)
    values = [est.value for est in profile]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(levels, values, marker="o", ms=3.5, lw=1.2, color="#1f5fa8")
    ax.axhline(values[-1], color="#999999", lw=0.8, ls="--",
               label=f"largest computed: {values[-1]:.6f}")
    ax.set_xlabel("truncation level N")
    ax.set_ylabel("compression norm of the generator sum")
    name = carrier.name if isinstance(carrier, DirectedGraph) else carrier.name
    ax.set_title(f"norm profile on {name}")
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_sandwich(kg, n_max: int, m: int, out_path: Path, tol: float = 1e-8,
                    seed: int = 0) -> Path:
    """Plot the reduced-class norm between its two morphism-space bounds."""
    poly = generator_sum_poly(kg)
    levels = list(range(1, n_max + 1))
    lows, mids, highs = [], [], []
    for n in levels:
        rep = check_hrlemma(kg, poly, n, m, tol=tol, seed=seed)
        extras = dict(rep.extras)
        lows.append(float(extras["norm_low"]))
        mids.append(float(extras["norm_mid"]))
        highs.append(float(extras["norm_high"]))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(levels, lows, marker="v", ms=3.5, lw=1.0, label="morphism space at N")
    ax.plot(levels, mids, marker="o", ms=3.5, lw=1.2,
            label=f"reduced classes at (N, M={m})")
    ax.plot(levels, highs, marker="^", ms=3.5, lw=1.0,
            label=f"morphism space at N+{m}")
    ax.set_xlabel("truncation level N")
    ax.set_ylabel("compression norm of the generator sum")
    ax.set_title(f"compression sandwich on {kg.name}")
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def render_report(carrier, out_dir: str | Path, N: int, M: int | None = None,
                  T: int | None = None, d: int = 1, tol: float = 1e-8,
                  seed: int = 42, count: int = 20) -> tuple[list[CheckReport], list[Path]]:
    """Run all suites, write checks.tsv, and render the figures.

    Returns the reports and the list of files written.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    reports = run_suite("all", carrier, N, M=M, T=T, d=d, tol=tol, seed=seed,
                        count=count)
    files = []
    tsv = out / "checks.tsv"
    tsv.write_text(reports_to_tsv(reports))
    files.append(tsv)
    name = carrier.name
    files.append(render_norm_profile(carrier, max(N, 2),
                                     out / f"{name}_norm_profile.png",
                                     tol=tol, seed=seed))
    if not isinstance(carrier, DirectedGraph) and M is not None and M > 0:
        files.append(render_sandwich(carrier, max(N, 2), M,
                                     out / f"{name}_sandwich.png",
                                     tol=tol, seed=seed))
    return reports, files

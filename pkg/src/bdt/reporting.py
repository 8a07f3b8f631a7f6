"""Text and figure output: CSV tables, problem-spec files, SVG plots.

CSV conventions: 6 decimal places, ``.`` as decimal separator, LF line
endings, no thousands separators. Lines starting with ``#`` carry metadata
and are skipped by the parsers here.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .errors import InvalidParameterError
from .grid import ObservationModel, PosteriorTable, PriorGrid, problem_from_dict
from .network import ConvergenceCurve, convergence_rows

POSTERIOR_COLUMNS = ("theta", "prior", "likelihood", "posterior")
CONVERGENCE_COLUMNS = ("group", "n", "result", "probability")


def fmt(x: float) -> str:
    return f"{x:.6f}"


def load_problem(path: str | Path) -> tuple[PriorGrid, ObservationModel]:
    """Read a JSON problem spec (see :func:`bdt.grid.problem_from_dict`)."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"{path}: not valid JSON ({exc})") from None
    return problem_from_dict(doc)


def posterior_csv(table: PosteriorTable) -> str:
    lines = [f"# marginal_likelihood={table.marginal_likelihood!r}", ",".join(POSTERIOR_COLUMNS)]
    lines += [",".join(fmt(v) for v in row) for row in table.rows()]
    return "\n".join(lines) + "\n"


def parse_posterior_csv(text: str) -> tuple[list[tuple[float, float, float, float]], float | None]:
    """Inverse of :func:`posterior_csv`: rows plus the marginal likelihood, if present."""
    marginal = None
    rows = []
    header_seen = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            if key == "marginal_likelihood":
                marginal = float(value)
            continue
        if not header_seen:
            if tuple(line.split(",")) != POSTERIOR_COLUMNS:
                raise InvalidParameterError(f"unexpected header {line!r}")
            header_seen = True
            continue
        rows.append(tuple(float(c) for c in line.split(",")))
    return rows, marginal


def convergence_csv(curves: Sequence[ConvergenceCurve]) -> str:
    lines = [",".join(CONVERGENCE_COLUMNS)]
    lines += [f"{g},{n},{r},{fmt(p)}" for g, n, r, p in convergence_rows(curves)]
    return "\n".join(lines) + "\n"


def parse_convergence_csv(text: str) -> list[tuple[str, int, str, float]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or tuple(lines[0].split(",")) != CONVERGENCE_COLUMNS:
        raise InvalidParameterError("missing convergence CSV header")
    out = []
    for ln in lines[1:]:
        g, n, r, p = ln.split(",")
        out.append((g, int(n), r, float(p)))
    return out


def write_text(path: str | Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# --------------------------------------------------------------------------
# Figures
# --------------------------------------------------------------------------

def _figure(**kwargs):
    from matplotlib.figure import Figure

    return Figure(**kwargs)


def prior_posterior_bars(path: str | Path, prior_pos: float, posterior_pos: float,
                         labels: tuple[str, str] = ("HIV_Positive", "HIV_Negative")) -> None:
    """Grouped bars of prior vs posterior probability for both hypotheses."""
    fig = _figure(figsize=(6, 4))
    ax = fig.add_subplot()
    series = {
        "Prior": (prior_pos, 1.0 - prior_pos),
        "Posterior": (posterior_pos, 1.0 - posterior_pos),
    }
    width = 0.38
    for k, (name, values) in enumerate(series.items()):
        xs = [i + (k - 0.5) * width for i in range(len(labels))]
        bars = ax.bar(xs, values, width, label=name)
        for patch, cat in zip(bars.patches, labels):
            patch.set_gid(f"bar-{name}-{cat}")
        ax.bar_label(bars, labels=[f"{v:.3f}" for v in values], fontsize=8)
    ax.set_xticks(range(len(labels)), labels)
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("Hypothesis")
    ax.set_ylabel("Probability")
    ax.set_title("Prior vs posterior probability")
    ax.legend(title="Probability type")
    fig.savefig(path, format="svg")


def convergence_panels(path: str | Path, curves: Sequence[ConvergenceCurve]) -> None:
    """One stacked panel per group; positive (dotted) and negative (dash-dot) on a log-x axis."""
    fig = _figure(figsize=(7, 3.2 * len(curves)))
    axes = fig.subplots(len(curves), 1, squeeze=False)[:, 0]
    for ax, curve in zip(axes, curves):
        line, = ax.plot(curve.samples, curve.values, ":", color="tab:blue", label="Positive")
        line.set_gid(f"line-{curve.label}-positive")
        line, = ax.plot(curve.samples, curve.negatives, "-.", color="tab:red", label="Negative")
        line.set_gid(f"line-{curve.label}-negative")
        ax.set_xscale("log")
        ax.set_ylim(0, 1)
        ax.set_xlabel("Total number of patients (log scale)")
        ax.set_ylabel(f"P(result | {curve.label})")
        ax.set_title(f"Estimated test result probabilities ({curve.label})")
        ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, format="svg")

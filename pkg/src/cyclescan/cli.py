"""Command-line front end.

Subcommands: count, compare, scan, simulate, test. Exit codes: 0 on
success, 2 on data/parameter validation failure, 3 on degenerate
statistics. All numeric output uses dot decimal separators and fixed
precision regardless of locale.
"""

from __future__ import annotations

import functools
import json
import re
import sys
from pathlib import Path

import click

from .counting import summarize_treatment, count_block
from .data import DataSet, load_csv, write_csv
from .errors import DataValidationError, DegenerateSample
from .geometry import SimplexPoint, Tripwire
from .scanner import find_significant, scan
from .stats import wilcoxon_signed_rank
from .synth import GeneratorSpec, KINDS, generate

STAR_LEVEL = 0.05


# ---------------------------------------------------------------- formatting

def _fmt_p(p: float | None) -> str:
    return "nan" if p is None else f"{p:.3f}"

def _fmt_mean(v: float) -> str:
    return f"{v:.1f}"

def _fmt_cri(v: float) -> str:
    return f"{v:.2f}"

def _fmt_block_c(v: float) -> str:
    return str(int(v)) if v == int(v) else f"{v:.1f}"

def _fmt_compare_mean(v: float) -> str:
    # two decimals, with a single trailing zero trimmed (4.20 -> 4.2)
    s = f"{v:.2f}"
    if s.endswith("0") and s[-2] != ".":
        s = s[:-1]
    return s

def _star(text: str, p: float | None) -> str:
    return text + "*" if p is not None and p < STAR_LEVEL else text

def _render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
    ]
    for row in rows:
        lines.append(
            "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        )
    return "\n".join(lines)

def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)

def _safe_name(label: str) -> str:
    return re.sub(r"[^\w.-]+", "_", label.strip()) or "unnamed"


def _guard(fn):
    """Map package errors to the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DegenerateSample as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)
        except DataValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _treatment_rows(dataset: DataSet, tripwire: Tripwire, rule: str, method: str):
    """Per-treatment summaries plus both index tests, in file order."""
    rows = []
    for label in dataset.treatment_labels():
        blocks = dataset.blocks(label)
        stats = [count_block(b, tripwire, rule) for b in blocks]
        summary = summarize_treatment(stats)
        p_cri = _try_p([s.cri for s in stats], method)
        p_c = _try_p([s.c for s in stats], method)
        rows.append((label, summary, p_cri, p_c))
    return rows


def _try_p(values, method) -> float | None:
    try:
        return wilcoxon_signed_rank(values, method).p_two_tailed
    except DegenerateSample:
        return None


# ------------------------------------------------------------------ commands

@click.group()
@click.version_option(package_name="cyclescan")
def main():
    """Detect and quantify cycles in strategy-simplex time series."""


method_option = click.option(
    "--method",
    type=click.Choice(["pratt", "drop", "exact"]),
    default="pratt",
    show_default=True,
    help="Zero handling / mode for the Wilcoxon test.",
)
rule_option = click.option(
    "--rule",
    type=click.Choice(["corrected", "legacy"]),
    default="corrected",
    show_default=True,
    help="Transit classification rules.",
)


@main.command()
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", type=float, default=0.25, show_default=True)
@click.option("--beta", type=float, default=0.25, show_default=True)
@rule_option
@method_option
@click.option("--format", "fmt", type=click.Choice(["table", "tsv", "json"]),
              default="table", show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write output to this file instead of stdout.")
@_guard
def count(data, alpha, beta, rule, method, fmt, out):
    """Count cycles per treatment at one tripwire anchor.

    Emits the treatment-level index table (mean counter-clockwise and
    clockwise transits, mean rotation index, p-value) and the per-block
    net-count table (block values, their mean, p-value). A star marks
    indices significant at p < 0.05.
    """
    dataset = load_csv(data)
    tripwire = Tripwire(alpha, beta)
    rows = _treatment_rows(dataset, tripwire, rule, method)

    if fmt == "json":
        payload = [
            {
                "treatment": label,
                "alpha": alpha,
                "beta": beta,
                "rule": rule,
                "n_blocks": s.n_blocks,
                "mean_ccw": s.mean_cct,
                "mean_cw": s.mean_ct,
                "mean_cri": s.mean_cri,
                "p_cri": p_cri,
                "c_values": list(s.c_values),
                "c_bar": s.c_bar,
                "p_c": p_c,
            }
            for label, s, p_cri, p_c in rows
        ]
        _emit(json.dumps(payload, indent=2), out)
        return
    if fmt == "tsv":
        lines = ["treatment\talpha\tbeta\trule\tn_blocks\tmean_ccw\tmean_cw"
                 "\tmean_cri\tp_cri\tc_values\tc_bar\tp_c"]
        for label, s, p_cri, p_c in rows:
            lines.append("\t".join([
                label, repr(alpha), repr(beta), rule, str(s.n_blocks),
                repr(s.mean_cct), repr(s.mean_ct), repr(s.mean_cri),
                "nan" if p_cri is None else repr(p_cri),
                ";".join(repr(c) for c in s.c_values),
                repr(s.c_bar),
                "nan" if p_c is None else repr(p_c),
            ]))
        _emit("\n".join(lines), out)
        return

    index_rows = [
        [label, f"({alpha:g}, {beta:g})", _fmt_mean(s.mean_cct),
         _fmt_mean(s.mean_ct), _star(_fmt_cri(s.mean_cri), p_cri), _fmt_p(p_cri)]
        for label, s, p_cri, _ in rows
    ]
    block_rows = [
        [label, f"({alpha:g}, {beta:g})",
         " ".join(_fmt_block_c(c) for c in s.c_values),
         _star(_fmt_mean(s.c_bar), p_c), _fmt_p(p_c)]
        for label, s, _, p_c in rows
    ]
    text = (
        _render_table(
            ["treatment", "anchor", "ccw", "cw", "cri", "p"], index_rows
        )
        + "\n\n"
        + _render_table(
            ["treatment", "anchor", "blocks", "c_bar", "p"], block_rows
        )
    )
    _emit(text, out)


@main.command()
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", type=float, default=0.25, show_default=True)
@click.option("--beta", type=float, default=0.25, show_default=True)
@method_option
@click.option("--format", "fmt", type=click.Choice(["table", "tsv", "json"]),
              default="table", show_default=True)
@click.option("--out", type=click.Path(), default=None)
@_guard
def compare(data, alpha, beta, method, fmt, out):
    """Legacy vs corrected rules side by side at one anchor.

    Four rows per treatment: rotation index then net count, each under the
    legacy and the corrected classifier.
    """
    dataset = load_csv(data)
    tripwire = Tripwire(alpha, beta)

    records = []
    for label in dataset.treatment_labels():
        blocks = dataset.blocks(label)
        for rule in ("legacy", "corrected"):
            stats = [count_block(b, tripwire, rule) for b in blocks]
            summary = summarize_treatment(stats)
            for index, mean, values in (
                ("cri", summary.mean_cri, [s.cri for s in stats]),
                ("c", summary.c_bar, [s.c for s in stats]),
            ):
                records.append(
                    (label, rule, index, mean, _try_p(values, method))
                )
    # group by index first so each treatment reads legacy-then-corrected per index
    order = {label: i for i, label in enumerate(dataset.treatment_labels())}
    records.sort(key=lambda r: (order[r[0]], r[2] != "cri", r[1] != "legacy"))

    if fmt == "json":
        payload = [
            {"treatment": label, "alpha": alpha, "beta": beta, "rule": rule,
             "index": index, "mean": mean, "p": p}
            for label, rule, index, mean, p in records
        ]
        _emit(json.dumps(payload, indent=2), out)
        return
    if fmt == "tsv":
        lines = ["treatment\talpha\tbeta\trule\tindex\tmean\tp"]
        for label, rule, index, mean, p in records:
            lines.append("\t".join([
                label, repr(alpha), repr(beta), rule, index, repr(mean),
                "nan" if p is None else repr(p),
            ]))
        _emit("\n".join(lines), out)
        return

    table_rows = [
        [label, f"({alpha:g}, {beta:g})", rule, index,
         _star(_fmt_compare_mean(mean) if index == "c" else _fmt_cri(mean), p),
         _fmt_p(p)]
        for label, rule, index, mean, p in records
    ]
    _emit(_render_table(
        ["treatment", "anchor", "rule", "index", "mean", "p"], table_rows
    ), out)


@main.command(name="scan")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--step", type=float, default=0.01, show_default=True,
              help="Grid spacing for tripwire anchors.")
@click.option("--level", type=float, default=0.05, show_default=True,
              help="Significance level for the anchor summary.")
@rule_option
@method_option
@click.option("--format", "fmt", type=click.Choice(["tsv", "json", "both"]),
              default="both", show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=".",
              show_default=True, help="Directory for grid and summary files.")
@_guard
def scan_cmd(data, step, level, rule, method, fmt, out):
    """Scan tripwire anchors over the whole strategy space.

    Writes grid_<treatment>.tsv/.json and significant_<treatment>.tsv into
    the output directory and prints a per-treatment summary.
    """
    dataset = load_csv(data)
    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)

    for label in dataset.treatment_labels():
        grid = scan(dataset.blocks(label), step, rule, method)
        name = _safe_name(label)
        if fmt in ("tsv", "both"):
            (out_dir / f"grid_{name}.tsv").write_text(grid.to_tsv(), encoding="utf-8")
        if fmt in ("json", "both"):
            (out_dir / f"grid_{name}.json").write_text(grid.to_json(), encoding="utf-8")

        lines = ["index\talpha\tbeta\tp\tmean\tn_blocks"]
        hit_counts = {}
        for index in ("cri", "c"):
            hits = find_significant(grid, level, index)
            hit_counts[index] = len(hits)
            for cell in hits:
                mean = cell.mean_cri if index == "cri" else cell.c_bar
                p = cell.p_cri if index == "cri" else cell.p_c
                lines.append("\t".join([
                    index, repr(cell.alpha), repr(cell.beta), repr(p),
                    repr(mean), str(cell.n_blocks),
                ]))
        (out_dir / f"significant_{name}.tsv").write_text(
            "\n".join(lines) + "\n", encoding="utf-8"
        )

        click.echo(
            f"{label}: {len(grid.cells)} anchors scanned, "
            f"{hit_counts['cri']} significant by cri, "
            f"{hit_counts['c']} by c (level {level:g})"
        )
        top = find_significant(grid, level, "cri")[:3]
        for cell in top:
            click.echo(
                f"  cri anchor ({cell.alpha:g}, {cell.beta:g})"
                f"  mean_cri={_fmt_cri(cell.mean_cri)}  p={_fmt_p(cell.p_cri)}"
            )


@main.command()
@click.argument("kind", type=click.Choice(list(KINDS)))
@click.option("--center", default="0.3,0.3", show_default=True,
              help="Orbit center as 'x,y'.")
@click.option("--radius", type=float, default=0.1, show_default=True)
@click.option("--turns", type=float, default=1.0, show_default=True,
              help="Signed turn count; positive is counter-clockwise.")
@click.option("--points-per-turn", type=int, default=36, show_default=True)
@click.option("--noise", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--population-n", type=int, default=8, show_default=True)
@click.option("--blocks", type=int, default=1, show_default=True,
              help="Number of blocks (block i uses seed + i).")
@click.option("--treatment", default="synthetic", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Output CSV path (stdout if omitted).")
@_guard
def simulate(kind, center, radius, turns, points_per_turn, noise, seed,
             population_n, blocks, treatment, out):
    """Generate synthetic trajectories and write canonical CSV."""
    try:
        cx, cy = (float(v) for v in center.split(","))
    except ValueError:
        raise click.BadParameter("--center must be 'x,y'") from None
    if blocks < 1:
        raise click.BadParameter("--blocks must be >= 1")

    trajectories = []
    for i in range(blocks):
        spec = GeneratorSpec(
            kind=kind,
            center=SimplexPoint(cx, cy),
            radius=radius,
            turns=turns,
            points_per_turn=points_per_turn,
            noise=noise,
            seed=seed + i,
            population_n=population_n,
        )
        trajectories.append(
            generate(spec, block_id=f"B{i + 1}", treatment_id=treatment)
        )

    if out:
        write_csv(out, trajectories)
        click.echo(f"wrote {sum(len(t) for t in trajectories)} rows to {out}")
    else:
        from .data import FRACTION_HEADER

        click.echo(",".join(FRACTION_HEADER))
        for traj in trajectories:
            for period in range(len(traj)):
                x = float(traj.points[period, 0])
                y = float(traj.points[period, 1])
                click.echo(f"{traj.treatment_id},{traj.block_id},{period},{x!r},{y!r}")


@main.command(name="test")
@click.argument("values", nargs=-1, required=True, type=float)
@method_option
@_guard
def test_cmd(values, method):
    """Wilcoxon signed-rank test of a raw value list against zero.

    Prepend -- before negative values: cyclescan test -- -5 -3 -2
    """
    result = wilcoxon_signed_rank(list(values), method)
    click.echo(f"w_plus       {result.w_plus:g}")
    click.echo(f"z            {result.z:.6f}")
    click.echo(f"p_two_tailed {result.p_two_tailed:.3f}")
    click.echo(f"n_effective  {result.n_effective}")
    click.echo(f"method       {result.method}")


if __name__ == "__main__":
    main()

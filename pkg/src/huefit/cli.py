"""Command-line driver: optimize, score, graph, render, serve."""

from __future__ import annotations

import functools
import sys

import click

from . import __version__
from .annealing import AnnealConfig
from .colors import ColorFilter, ExcludedBand
from .datasets import (
    dump_json,
    load_dataset,
    read_palette,
    write_palette,
    write_trace,
)
from .errors import FilterUnsatisfiable, HuefitError, RefinementFailed
from .pipeline import (
    GraphConfig,
    RunConfig,
    build_graph,
    run_pipeline,
    score_palette,
)
from .render import render_svg

EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (RefinementFailed, FilterUnsatisfiable) as exc:
            _fail(str(exc), EXIT_INFEASIBLE)
        except (HuefitError, OSError) as exc:
            _fail(str(exc), EXIT_INPUT_ERROR)
    return wrapper


def _floats(value: str, count: int, name: str) -> tuple[float, ...]:
    parts = value.split(",")
    if len(parts) != count:
        raise click.BadParameter(f"{name} needs {count} comma-separated values")
    try:
        return tuple(float(v) for v in parts)
    except ValueError as exc:
        raise click.BadParameter(f"{name}: {exc}") from exc


def _graph_options(fn):
    fn = click.option("--graph", "method", type=click.Choice(["alpha", "knn"]),
                      default="alpha", show_default=True,
                      help="Neighbor graph for scatter and line data.")(fn)
    fn = click.option("--alpha", type=float, default=None,
                      help="Alpha radius; defaults to one derived from the data.")(fn)
    fn = click.option("-k", type=int, default=2, show_default=True,
                      help="Neighbor count for the knn graph.")(fn)
    fn = click.option("--spacing", type=float, default=10.0, show_default=True,
                      help="Arc-length sample spacing for line charts.")(fn)
    return fn


def _graph_config(method, alpha, k, spacing) -> GraphConfig:
    return GraphConfig(method=method, alpha=alpha, k=k, spacing=spacing)


@click.group()
@click.version_option(version=__version__, prog_name="huefit")
def cli():
    """Data-aware categorical color palettes."""


@cli.command()
@click.argument("dataset", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default="palette.json",
              show_default=True, help="Palette JSON destination.")
@click.option("--svg", type=click.Path(), default=None,
              help="Also render the colored chart here.")
@click.option("--trace", type=click.Path(), default=None,
              help="Also write the energy trace CSV here.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--weights", default="1,1,1", show_default=True,
              help="Weights for distinctness, naming, discrimination.")
@click.option("--background", default="#FFFFFF", show_default=True)
@click.option("--terms", default=None,
              help="Restrict colors to these hue terms (comma-separated).")
@click.option("--lightness", default="0,100", show_default=True,
              help="Allowed lightness range.")
@click.option("--keep-disliked", is_flag=True,
              help="Do not exclude the commonly disliked hue band.")
@click.option("--initial", type=click.Path(), default=None,
              help="Start from this palette; its locked colors stay fixed.")
@click.option("--restarts", type=int, default=1, show_default=True)
@click.option("--time-budget", type=float, default=None,
              help="Stop after this many seconds, keeping the best so far.")
@_graph_options
@_mapped_errors
def optimize(dataset, output, svg, trace, seed, weights, background, terms,
             lightness, keep_disliked, initial, restarts, time_budget,
             method, alpha, k, spacing):
    """Optimize a palette for DATASET and write it as JSON."""
    ds = load_dataset(dataset)
    initial_palette = None
    if initial is not None:
        initial_palette, _, _ = read_palette(initial)
    lo, hi = _floats(lightness, 2, "--lightness")
    color_filter = ColorFilter(
        lightness_range=(lo, hi),
        excluded_band=None if keep_disliked else ExcludedBand(),
        allowed_hue_terms=(frozenset(t.strip() for t in terms.split(","))
                           if terms else None),
    )
    rc = RunConfig(
        weights=_floats(weights, 3, "--weights"),
        background=background,
        color_filter=color_filter,
        graph=_graph_config(method, alpha, k, spacing),
        anneal=AnnealConfig(seed=seed),
        initial=initial_palette,
        restarts=restarts,
    )
    out = run_pipeline(ds, rc, time_budget=time_budget)
    write_palette(output, out.result.best_palette, ds.class_names,
                  energy=out.result.breakdown)
    if svg is not None:
        with open(svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(ds, out.result.best_palette))
    if trace is not None:
        write_trace(trace, out.result.energy_trace)
    hexes = " ".join(out.result.best_palette.hexes())
    click.echo(f"{output}: {hexes}")
    click.echo(f"energy {out.result.breakdown['total']:.4f} after "
               f"{out.result.iterations} steps "
               f"({out.result.wall_time:.2f}s)")


@cli.command()
@click.argument("dataset", type=click.Path())
@click.argument("palette", type=click.Path())
@click.option("--weights", default="1,1,1", show_default=True)
@_graph_options
@_mapped_errors
def score(dataset, palette, weights, method, alpha, k, spacing):
    """Evaluate PALETTE against DATASET and print the energy breakdown."""
    ds = load_dataset(dataset)
    p, _, _ = read_palette(palette)
    breakdown = score_palette(ds, p, weights=_floats(weights, 3, "--weights"),
                              gc=_graph_config(method, alpha, k, spacing))
    click.echo(dump_json(breakdown), nl=False)


@cli.command()
@click.argument("dataset", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default=None,
              help="Write the graph JSON here instead of stdout.")
@_graph_options
@_mapped_errors
def graph(dataset, output, method, alpha, k, spacing):
    """Dump the neighbor graph built from DATASET."""
    ds = load_dataset(dataset)
    ps, g = build_graph(ds, _graph_config(method, alpha, k, spacing))
    doc = {
        "kind": g.kind,
        "parameter": g.parameter,
        "n": g.n,
        "points": ps.points.tolist(),
        "labels": ps.labels.tolist(),
        "edges": [[int(i), int(j), float(d)]
                  for (i, j), d in zip(g.edges, g.distances)],
    }
    text = dump_json(doc)
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@cli.command()
@click.argument("dataset", type=click.Path())
@click.argument("palette", type=click.Path())
@click.option("-o", "--output", type=click.Path(), default="chart.svg",
              show_default=True)
@_mapped_errors
def render(dataset, palette, output):
    """Render DATASET colored by PALETTE as an SVG file."""
    ds = load_dataset(dataset)
    p, _, _ = read_palette(palette)
    with open(output, "w", encoding="utf-8") as fh:
        fh.write(render_svg(ds, p))
    click.echo(output)


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--matrix", type=click.Path(), default=None,
              help="Name count matrix CSV; defaults to the built-in model.")
@click.option("--time-budget", type=float, default=None,
              help="Per-request optimization budget in seconds.")
@_mapped_errors
def serve(host, port, matrix, time_budget):
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(matrix_path=matrix, time_budget=time_budget),
                host=host, port=port)


def main():
    cli()


if __name__ == "__main__":
    main()

"""Command-line driver: serve the HTTP API, batch recommendations, the
synthetic-population simulator, and satisfaction reports."""

from __future__ import annotations

import json
import sys

import click

from . import engine
from .analytics import random_baseline_hit_rate, satisfaction_report, SimulatedPopulation, simulate_study
from .datastore import load_catalog, load_ratings, load_state, seed_catalog
from .errors import ReqGridError
from .session import SessionConfig


def _positive(ctx, param, value):
    if value is not None and value < 1:
        raise click.UsageError(f"{param.name} must be >= 1")
    return value


@click.group()
def main():
    """Repertory-grid elicitation with collaborative-filtering recommendations."""


@main.command()
@click.option("--store", required=True, type=click.Path(), help="state store file")
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--n", default=3, callback=_positive, show_default=True, help="seed requirements")
@click.option("--m", default=5, callback=_positive, show_default=True, help="neighborhood size")
@click.option("--k", default=5, callback=_positive, show_default=True, help="recommendations")
@click.option("--form", default=engine.STANDARD, type=click.Choice(engine.PREDICTION_FORMS))
def serve(store, port, host, n, m, k, form):
    """Run the HTTP API against a state store."""
    import uvicorn

    from .api import create_app

    config = SessionConfig(n_seeds=n, m_neighbors=m, k_recommendations=k, prediction_form=form)
    try:
        app = create_app(store, config)
    except ReqGridError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.argument("stakeholder_id")
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), help="catalog CSV (default: bundled)")
@click.option("--ratings", "ratings_path", required=True, type=click.Path(exists=True))
@click.option("--n", default=3, callback=_positive, show_default=True)
@click.option("--m", default=5, callback=_positive, show_default=True)
@click.option("--k", default=5, callback=_positive, show_default=True)
@click.option("--form", default=engine.STANDARD, type=click.Choice(engine.PREDICTION_FORMS))
def recommend(stakeholder_id, catalog_path, ratings_path, n, m, k, form):
    """Print the top-K recommendations for a stakeholder in a ratings file."""
    try:
        catalog = load_catalog(catalog_path) if catalog_path else seed_catalog()
        loaded = load_ratings(ratings_path, catalog)
        rec = engine.recommend(
            loaded.matrix, stakeholder_id, n_seeds=n, m_neighbors=m, k_recommendations=k, form=form
        )
    except ReqGridError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    labels = {r.id: r.label for r in catalog}
    for rank, p in enumerate(rec.items, start=1):
        click.echo(
            f"{rank}. {p.requirement}  {labels.get(p.requirement, '?')}  "
            f"predicted={p.clamped_value:.4f} raw={p.raw_value:.4f} support={p.neighbor_support}"
        )


@main.command()
@click.option("--catalog", "catalog_path", type=click.Path(exists=True), help="catalog CSV (default: bundled)")
@click.option("--seed", default=42, show_default=True)
@click.option("--core", default=50, callback=_positive, show_default=True, help="core population size")
@click.option("--probes", default=20, callback=_positive, show_default=True, help="probe sessions")
@click.option("--clusters", default=2, callback=_positive, show_default=True)
@click.option("--noise", default=0.0, show_default=True)
@click.option("--n", default=3, callback=_positive, show_default=True)
@click.option("--m", default=5, callback=_positive, show_default=True)
@click.option("--k", default=5, callback=_positive, show_default=True)
@click.option("--trials", default=10000, callback=_positive, show_default=True, help="baseline Monte Carlo trials")
@click.option("--baseline", type=click.Choice(["random", "none"]), default="random", show_default=True)
def simulate(catalog_path, seed, core, probes, clusters, noise, n, m, k, trials, baseline):
    """Run the synthetic study and report satisfaction plus hit rate."""
    try:
        catalog = load_catalog(catalog_path) if catalog_path else seed_catalog()
        config = SessionConfig(n_seeds=n, m_neighbors=m, k_recommendations=k)
        population = SimulatedPopulation.generate(
            seed=seed, n_core=core, n_probes=probes, n_items=len(catalog),
            clusters=clusters, noise_level=noise, scale=config.scale,
        )
        result = simulate_study(catalog, config, population)
    except ReqGridError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    out = {
        "seed": seed,
        "cf_hit_rate": result.hit_rate,
        "satisfaction": result.report.as_dict(),
    }
    if baseline == "random":
        out["random_baseline_hit_rate"] = random_baseline_hit_rate(
            n_items=len(catalog), k=k, trials=trials, seed=seed
        )
    click.echo(json.dumps(out, indent=2))


@main.command()
@click.option("--store", required=True, type=click.Path(exists=True))
def report(store):
    """Print the satisfaction report for a state store."""
    try:
        dataset = load_state(store)
    except ReqGridError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        sys.exit(1)
    click.echo(json.dumps(satisfaction_report(dataset.all_feedback()).as_dict(), indent=2))


if __name__ == "__main__":
    main()

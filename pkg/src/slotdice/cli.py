"""Command-line interface: table exports, move advice, simulations, the advisor service.

Exit codes: 0 success, 2 validation/spec errors, 3 capacity errors, 1 anything else.
All numeric output is rendered from exact rationals at an explicit precision.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import exact, omniscient, poly
from .errors import CapacityError, ValidationError
from .gamespec import GameSpec
from .rendering import decimal_str, rational_str
from .simulate import (
    ExactStrategy,
    OmniscientStrategy,
    PolyStrategy,
    RandomStrategy,
    Strategy,
    compare_strategies,
    histogram_export,
)

EXIT_VALIDATION = 2
EXIT_CAPACITY = 3


def _guarded(fn):
    """Map domain errors to exit codes; let click handle usage errors."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(EXIT_VALIDATION)
        except CapacityError as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(EXIT_CAPACITY)

    return wrapper


def _load_spec(spec_path: str | None) -> GameSpec:
    if spec_path is None:
        return GameSpec.standard()
    return GameSpec.load(spec_path)


@click.group()
@click.option(
    "--spec",
    "spec_path",
    envvar="SLOTDICE_SPEC",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Game spec file (JSON). Defaults to three fair d6, multipliers 1..10.",
)
@click.pass_context
def main(ctx: click.Context, spec_path: str | None) -> None:
    """Optimal-strategy engine and advisor for the dice-placement game."""
    ctx.obj = spec_path


@main.command()
@click.option("--which", type=click.Choice(["exact", "poly", "omniscient"]), required=True)
@click.option("--precision", type=int, default=None, help="Decimals (default 5; 3 for poly).")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None)
@click.option("--cache", "cache_path", type=click.Path(dir_okay=False), default=None,
              help="Binary cache for the exact table (reused when valid).")
@click.pass_obj
@_guarded
def tables(spec_path, which, precision, out_path, cache_path):
    """Write a strategy table as structured text."""
    spec = _load_spec(spec_path)
    if precision is None:
        precision = 3 if which == "poly" else 5
    if which == "exact":
        table = _exact_table(spec, cache_path)
        text = exact.export_text(table, precision)
    elif which == "poly":
        text = poly.export_text(
            poly.build_expectation_table(spec.pmf, spec.config.slot_count), precision
        )
    else:
        text = omniscient.export_text(
            omniscient.build_omniscient(spec.pmf, spec.config), precision
        )
    out = Path(out_path) if out_path else Path(f"{which}-table.txt")
    out.write_text(text)
    click.echo(f"wrote {out}")


def _exact_table(spec: GameSpec, cache_path: str | None) -> exact.ExactTable:
    if cache_path and Path(cache_path).exists():
        try:
            return exact.load_cache(cache_path, spec.pmf, spec.config)
        except ValidationError:
            pass  # stale or foreign cache: rebuild below
    table = exact.build_exact_table(spec.pmf, spec.config)
    if cache_path:
        exact.save_cache(table, cache_path)
    return table


def _parse_state(spec: GameSpec, text: str) -> int:
    """Parse "slot=value,..." into a free mask, validating slots and values."""
    free = spec.config.full_mask
    if not text:
        return free
    for part in text.split(","):
        try:
            slot_str, value_str = part.split("=", 1)
            slot, value = int(slot_str), int(value_str)
        except ValueError:
            raise ValidationError(f"bad placement {part!r}; expected slot=value")
        if not 1 <= slot <= spec.config.slot_count:
            raise ValidationError(f"slot {slot} outside 1..{spec.config.slot_count}")
        if not spec.pmf.xmin <= value <= spec.pmf.xmax:
            raise ValidationError(
                f"value {value} outside [{spec.pmf.xmin}, {spec.pmf.xmax}]"
            )
        bit = 1 << (slot - 1)
        if not free & bit:
            raise ValidationError(f"slot {slot} assigned twice")
        free ^= bit
    return free


@main.command()
@click.option("--state", default="", help='Filled slots as "slot=value,..." (empty board default).')
@click.option("--roll", type=int, required=True)
@click.option("--precision", type=int, default=5)
@click.pass_obj
@_guarded
def advise(spec_path, state, roll, precision):
    """Recommend the best slot for a roll, with every what-if evaluation."""
    spec = _load_spec(spec_path)
    free = _parse_state(spec, state)
    if free == 0:
        raise ValidationError("board is already complete")
    table = exact.build_exact_table(spec.pmf, spec.config)
    evaluations = exact.move_evaluations(table, free, roll)
    best_slot, best_value = evaluations[0]
    click.echo(f"roll {roll}: place in slot {best_slot} "
               f"(expected score {decimal_str(best_value, precision)})")
    for slot, value in evaluations:
        click.echo(f"  slot {slot}: {decimal_str(value, precision)}")


_STRATEGY_BUILDERS = {
    "random": lambda spec: RandomStrategy(),
    "exact": lambda spec: ExactStrategy(exact.build_exact_table(spec.pmf, spec.config)),
    "poly": lambda spec: PolyStrategy(
        poly.build_expectation_table(spec.pmf, spec.config.slot_count)
    ),
    "omniscient": lambda spec: OmniscientStrategy(),
}


@main.command(name="simulate")
@click.option("--strategies", default="random,exact,poly,omniscient", show_default=True)
@click.option("--games", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--shared-rolls", is_flag=True, default=False)
@click.option("--precision", type=int, default=5)
@click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for JSON reports and histogram CSVs.")
@click.pass_obj
@_guarded
def simulate_cmd(spec_path, strategies, games, seed, shared_rolls, precision, out_dir):
    """Run seeded Monte Carlo games and report per-strategy statistics."""
    spec = _load_spec(spec_path)
    names = [name.strip() for name in strategies.split(",") if name.strip()]
    built: list[Strategy] = []
    for name in names:
        if name not in _STRATEGY_BUILDERS:
            raise ValidationError(
                f"unknown strategy {name!r}; pick from {sorted(_STRATEGY_BUILDERS)}"
            )
        built.append(_STRATEGY_BUILDERS[name](spec))

    reports = compare_strategies(
        built, spec.pmf, spec.config, games, seed, shared_rolls=shared_rolls
    )
    score_span = (
        int(spec.config.total() * spec.pmf.xmin) // 10 * 10,
        int(spec.config.total() * spec.pmf.xmax) // 10 * 10,
    )
    for report in reports:
        click.echo(report.summary(precision))
        if out_dir:
            directory = Path(out_dir)
            directory.mkdir(parents=True, exist_ok=True)
            payload = {
                "strategy": report.strategy,
                "games": report.games,
                "seed": report.seed,
                "mean": rational_str(report.mean),
                "mean_decimal": decimal_str(report.mean, precision),
                "median": report.median,
                "min": report.min,
                "max": report.max,
                "histogram": {str(b): c for b, c in report.histogram.items()},
            }
            (directory / f"{report.strategy}-report.json").write_text(
                json.dumps(payload, indent=2)
            )
            rows = histogram_export(report, bins=score_span)
            csv_lines = ["bin_start,count,frequency"]
            csv_lines += [f"{b},{c},{decimal_str(f, 8)}" for b, c, f in rows]
            (directory / f"{report.strategy}-histogram.csv").write_text(
                "\n".join(csv_lines) + "\n"
            )


@main.command()
@click.option("--bind", default="127.0.0.1:8000", show_default=True, help="ADDR:PORT")
@click.option("--store", "store_path", type=click.Path(dir_okay=False), default=None,
              help="Session database path (default slotdice-sessions.db).")
@click.pass_obj
@_guarded
def serve(spec_path, bind, store_path):
    """Run the advisor HTTP service until terminated."""
    import uvicorn

    from .service import create_app

    try:
        host, port_str = bind.rsplit(":", 1)
        port = int(port_str)
    except ValueError:
        raise ValidationError(f"bad bind address {bind!r}; expected ADDR:PORT")
    app = create_app(default_spec=_load_spec(spec_path), store_path=store_path)
    try:
        uvicorn.run(app, host=host, port=port, log_level="warning")
    except OSError as err:
        click.echo(f"error: cannot bind {bind}: {err}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()

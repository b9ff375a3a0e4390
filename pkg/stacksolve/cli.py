"""Command-line interface."""

from __future__ import annotations

import asyncio
import logging
import sys
from pathlib import Path

import click

from . import __version__
from .benchgen import GenConfig, generate_dataset, read_dataset, write_dataset
from .const import (
    DEFAULT_COUNT,
    DEFAULT_ITEM_TIME_BUDGET,
    DEFAULT_MANY,
    DEFAULT_MAX_EXPANSIONS,
    DEFAULT_MAX_IN_FLIGHT,
    DEFAULT_OBJECTS,
    DEFAULT_SEED,
    ENV_LLM_API_KEY,
    ENV_LLM_ENDPOINT,
    ENV_LLM_MODEL,
    EXIT_RESOURCE_EXHAUSTED,
    EXIT_SOLVED,
    EXIT_UNSOLVABLE,
    STRATEGIES,
    STRATEGY_BFS,
    TRANSPORT_RECORD,
    TRANSPORT_REPLAY,
    TRANSPORTS,
)
from .exceptions import StackSolveError
from .grammar import Vocabulary
from .harness import (
    METHODS,
    Evaluator,
    Method,
    aggregate,
    emit_report,
    pairwise_tests,
    read_outcomes,
    write_outcomes,
)
from .llm import (
    CompletionClient,
    LiveTransport,
    RecordTransport,
    ReplayTransport,
    Transcript,
    Transport,
)
from .pddl import emit_domain, emit_plan, emit_problem, parse_pddl_problem
from .planner import PlannerConfig, ResourceExhausted, Solved, solve

_LOGGER = logging.getLogger(__name__)

FORMAT_NL = "nl"
FORMAT_PDDL = "pddl"


def _load_vocabulary(path: Path | None) -> Vocabulary:
    return Vocabulary.load(path) if path is not None else Vocabulary.default()


@click.group()
@click.version_option(__version__, prog_name="stacksolve")
@click.option("-v", "--verbose", is_flag=True, help="Log debug detail.")
@click.option("-q", "--quiet", is_flag=True, help="Log warnings and errors only.")
def cli(verbose: bool, quiet: bool) -> None:
    """Generate, parse, solve and evaluate natural-language stacking problems."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


@cli.command()
@click.option("--seed", type=click.IntRange(min=0), default=DEFAULT_SEED, show_default=True)
@click.option("--count", type=click.IntRange(min=1), default=DEFAULT_COUNT, show_default=True)
@click.option("--objects", type=click.IntRange(min=2), default=DEFAULT_OBJECTS, show_default=True)
@click.option("--many", type=click.IntRange(min=2), default=DEFAULT_MANY, show_default=True)
@click.option("--vocab", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
def gen(seed: int, count: int, objects: int, many: int, vocab: Path | None, out: Path) -> None:
    """Generate a benchmark dataset."""
    try:
        config = GenConfig(seed, count, objects, many, _load_vocabulary(vocab))
        written = write_dataset(generate_dataset(config), out)
    except (StackSolveError, ValueError, OSError) as err:
        raise click.ClickException(str(err)) from err
    click.echo(f"Wrote {written} items to {out}")


@cli.command()
@click.option(
    "--in", "source", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True
)
@click.option(
    "--format", "fmt", type=click.Choice([FORMAT_NL, FORMAT_PDDL]), default=FORMAT_NL
)
@click.option("--outdir", type=click.Path(file_okay=False, path_type=Path), required=True)
def render(source: Path, fmt: str, outdir: Path) -> None:
    """Write one problem file per dataset item."""
    try:
        items = read_dataset(source)
        outdir.mkdir(parents=True, exist_ok=True)
        if fmt == FORMAT_PDDL:
            (outdir / "domain.pddl").write_text(emit_domain().text, encoding="utf-8")
        for item in items:
            if fmt == FORMAT_PDDL:
                (outdir / f"{item.id}.pddl").write_text(
                    emit_problem(item.problem).text, encoding="utf-8"
                )
            else:
                (outdir / f"{item.id}.txt").write_text(item.nl_text + "\n", encoding="utf-8")
    except (StackSolveError, OSError) as err:
        raise click.ClickException(str(err)) from err
    click.echo(f"Rendered {len(items)} items to {outdir}")


@cli.command()
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
def domain(out: Path) -> None:
    """Write the stacking domain file."""
    try:
        out.write_text(emit_domain().text, encoding="utf-8")
    except OSError as err:
        raise click.ClickException(str(err)) from err


@cli.command(name="solve")
@click.option(
    "--problem",
    "problem_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
)
@click.option("--strategy", type=click.Choice(STRATEGIES), default=STRATEGY_BFS, show_default=True)
@click.option(
    "--max-expansions",
    type=click.IntRange(min=1),
    default=DEFAULT_MAX_EXPANSIONS,
    show_default=True,
)
@click.option("--time-budget", type=click.FloatRange(min=0, min_open=True), default=None)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path))
def solve_command(
    problem_path: Path,
    strategy: str,
    max_expansions: int,
    time_budget: float | None,
    out: Path | None,
) -> None:
    """Solve a PDDL problem file.

    Exits 0 when solved, 10 when unsolvable and 11 when the search budget
    runs out.
    """
    try:
        problem = parse_pddl_problem(problem_path.read_text(encoding="utf-8"))
    except (StackSolveError, OSError) as err:
        raise click.ClickException(str(err)) from err
    result = solve(problem, PlannerConfig(strategy, max_expansions, None, time_budget))
    if isinstance(result, Solved):
        text = emit_plan(result.plan).text
        if out is not None:
            out.write_text(text, encoding="utf-8")
        else:
            click.echo(text, nl=False)
        click.echo(
            f"Solved {problem.id}: {len(result.plan)} steps, {result.expansions} expansions",
            err=True,
        )
        sys.exit(EXIT_SOLVED)
    if isinstance(result, ResourceExhausted):
        click.echo(f"Search budget exhausted after {result.expansions} expansions", err=True)
        sys.exit(EXIT_RESOURCE_EXHAUSTED)
    click.echo(f"No plan exists for {problem.id}", err=True)
    sys.exit(EXIT_UNSOLVABLE)


def _build_transport(
    kind: str,
    transcript_path: Path | None,
    endpoint: str | None,
    api_key: str | None,
    model: str | None,
) -> tuple[Transport, CompletionClient | None]:
    if kind == TRANSPORT_REPLAY:
        if transcript_path is None:
            raise click.UsageError("--transcript is required for replay")
        return ReplayTransport(Transcript.load(transcript_path)), None
    if not endpoint:
        raise click.UsageError(f"{ENV_LLM_ENDPOINT} or --endpoint is required for {kind}")
    client = CompletionClient(endpoint, api_key, model)
    if kind == TRANSPORT_RECORD:
        if transcript_path is None:
            raise click.UsageError("--transcript is required for record")
        return RecordTransport(client, Transcript.load(transcript_path)), client
    return LiveTransport(client), client


@cli.command(name="eval")
@click.option(
    "--in", "source", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True
)
@click.option(
    "--method",
    "methods",
    type=click.Choice([method.value for method in METHODS]),
    multiple=True,
    help="Repeatable; defaults to every method.",
)
@click.option("--transport", type=click.Choice(TRANSPORTS), default=TRANSPORT_REPLAY)
@click.option("--transcript", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--endpoint", envvar=ENV_LLM_ENDPOINT)
@click.option("--api-key", envvar=ENV_LLM_API_KEY)
@click.option("--model", envvar=ENV_LLM_MODEL)
@click.option("--max-in-flight", type=click.IntRange(min=1), default=DEFAULT_MAX_IN_FLIGHT)
@click.option("--fail-open", is_flag=True, help="Score transport failures as unparseable.")
@click.option("--llm-parses-init", is_flag=True, help="Have the LLM parser emit whole problems.")
@click.option("--vocab", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True)
def eval_command(
    source: Path,
    methods: tuple[str, ...],
    transport: str,
    transcript: Path | None,
    endpoint: str | None,
    api_key: str | None,
    model: str | None,
    max_in_flight: int,
    fail_open: bool,
    llm_parses_init: bool,
    vocab: Path | None,
    out: Path,
) -> None:
    """Evaluate methods over a dataset and write per-item outcomes."""
    selected = [Method(value) for value in methods] if methods else list(METHODS)

    async def run() -> int:
        items = read_dataset(source)
        needs_llm = any(method in (Method.PS_LLM, Method.LLM_PLANNER) for method in selected)
        link, client = (
            _build_transport(transport, transcript, endpoint, api_key, model)
            if needs_llm
            else (None, None)
        )
        evaluator = Evaluator(
            planner_config=PlannerConfig(time_budget_s=DEFAULT_ITEM_TIME_BUDGET),
            vocabulary=_load_vocabulary(vocab),
            transport=link,
            max_in_flight=max_in_flight,
            fail_open=fail_open,
            llm_parses_init=llm_parses_init,
        )
        try:
            outcomes = await evaluator.evaluate(items, selected)
        finally:
            if client is not None:
                await client.close_session()
        return write_outcomes(outcomes, out)

    try:
        written = asyncio.run(run())
    except (StackSolveError, ValueError, OSError) as err:
        raise click.ClickException(str(err)) from err
    click.echo(f"Wrote {written} outcomes to {out}")


@cli.command()
@click.option(
    "--in", "source", type=click.Path(exists=True, dir_okay=False, path_type=Path), required=True
)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True)
def report(source: Path, out: Path) -> None:
    """Aggregate outcomes into CSV and Markdown reports."""
    try:
        table = aggregate(read_outcomes(source))
        csv_path, markdown_path = emit_report(table, pairwise_tests(table), out)
    except (StackSolveError, OSError) as err:
        raise click.ClickException(str(err)) from err
    click.echo(f"Wrote {csv_path} and {markdown_path}")


if __name__ == "__main__":
    cli()

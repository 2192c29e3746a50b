"""
CLI interface for the homothety orbit-closure engine.
"""
import copy
import functools
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import click
import yaml
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.affine.group import GroupSpec
from src.analyzer.classifier import OrbitClassifier
from src.analyzer.fixtures import FIXTURES, load_fixture
from src.analyzer.oracle import enumerate_words
from src.cli.exit_codes import ExitCodes
from src.errors import SpecFileError, UnresolvedClosureError
from src.exporter.csv_exporter import CSVExporter
from src.parser.scalar_parser import ScalarParser
from src.parser.spec_parser import load_spec, render_spec
from src.simulator.diagnostics import density_report
from src.simulator.hlambda import hlambda_oracle
from src.simulator.sampler import SampleConfig, sample_orbit

# stdout carries JSON / CSV / true-false answers
console = Console(stderr=True)
logger = logging.getLogger(__name__)

DEFAULT_CONFIG: Dict[str, Any] = {
    "field": {"max_ratio_bits": 64},
    "oracle": {"max_word_length": 12, "max_elements": 200_000, "default_word_length": 6},
    "simulator": {
        "num_words": 200_000,
        "max_word_length": 40,
        "window": 3.0,
        "grid_step": 0.25,
        "epsilon": 0.1,
        "tolerance": 1e-8,
        "coverage_threshold": 0.95,
        "seed": 0,
        "streams": 4,
    },
    "logging": {"level": "INFO", "file": None, "console": True},
}


def setup_logging(level: str = "INFO", log_file: Optional[str] = None, to_console: bool = True):
    """Setup logging configuration."""
    handlers = []
    if to_console:
        handlers.append(RichHandler(console=console, rich_tracebacks=True))

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(
            logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        )
        handlers.append(file_handler)

    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=handlers or [logging.NullHandler()],
        force=True,
    )


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_file: str) -> dict:
    """Load configuration from YAML file over the built-in defaults."""
    config_path = Path(config_file)
    if not config_path.exists():
        console.print(f"[yellow]Config file not found: {config_file}, using defaults[/yellow]")
        return copy.deepcopy(DEFAULT_CONFIG)

    with open(config_path, 'r') as f:
        return _merge(DEFAULT_CONFIG, yaml.safe_load(f) or {})


def handle_errors(command):
    """Turn engine exceptions into a message on stderr and an exit code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except Exception as e:
            if not ExitCodes.is_engine_error(type(e)):
                raise
            console.print(f"[red]{type(e).__name__}: {e}[/red]")
            if isinstance(e, UnresolvedClosureError) and e.evidence:
                console.print(f"[dim]evidence: {json.dumps(e.evidence, default=str)}[/dim]")
            sys.exit(ExitCodes.for_error(e))
    return wrapper


def make_classifier(ctx, strict: bool = False) -> OrbitClassifier:
    bits = ctx.obj["config"]["field"]["max_ratio_bits"]
    return OrbitClassifier(strict=strict, max_ratio_bits=bits)


def emit(data: Any):
    click.echo(json.dumps(data, indent=2, default=str))


def resolve_spec(spec_file: Optional[str], example: Optional[str]) -> GroupSpec:
    if spec_file and example:
        raise SpecFileError("Give either a SPEC file or --example, not both")
    if example:
        return load_fixture(example)
    if not spec_file:
        raise SpecFileError("A SPEC file or --example NAME is required")
    return load_spec(spec_file)


def spec_source(command):
    command = click.option('--example', '-e', help='Use a built-in example instead of a file')(command)
    return click.argument('spec_file', required=False, type=click.Path())(command)


@click.group()
@click.option('--config', default='config/config.yaml', help='Path to config file')
@click.option('--log-level', default=None, help='Override the configured log level')
@click.pass_context
def cli(ctx, config, log_level):
    """Orbit closures of groups of affine homotheties."""
    # Load environment variables
    load_dotenv()

    # Load config
    ctx.ensure_object(dict)
    ctx.obj['config'] = load_config(config)

    # Setup logging
    log_config = ctx.obj['config'].get('logging', {})
    setup_logging(
        level=log_level or os.getenv('HOMOTHETY_LOG_LEVEL') or log_config.get('level', 'INFO'),
        log_file=log_config.get('file'),
        to_console=log_config.get('console', True),
    )


@cli.command()
@spec_source
@click.option('--strict', is_flag=True, help='Fail instead of warning on undecided closures')
@click.pass_context
@handle_errors
def classify(ctx, spec_file, example, strict):
    """Decide the case of the dichotomy and print the report."""
    spec = resolve_spec(spec_file, example)
    report = make_classifier(ctx, strict).classify_group(spec)
    emit(report.to_dict())
    if not report.resolved:
        sys.exit(ExitCodes.UNRESOLVED)


@cli.command()
@spec_source
@click.option('--point', '-p', required=True, help='Comma-separated scalar literals')
@click.option('--compare', '-c', help='Second point whose closure is compared')
@click.pass_context
@handle_errors
def closure(ctx, spec_file, example, point, compare):
    """Describe the closure of the orbit of a point."""
    spec = resolve_spec(spec_file, example)
    literals = ScalarParser(spec.ctx)
    classifier = make_classifier(ctx)
    report = classifier.classify_group(spec)

    desc = classifier.orbit_closure_from_report(report, literals.parse_point(point, spec.dimension))
    output = desc.to_dict()
    output['components'] = classifier.connected_components(desc).value
    if compare:
        other = classifier.orbit_closure_from_report(
            report, literals.parse_point(compare, spec.dimension)
        )
        output['compare'] = {
            'closure': other.to_dict(),
            **classifier.compare_orbits(desc, other),
        }
    emit(output)


@cli.command()
@spec_source
@click.option('--point', '-p', required=True, help='Orbit base point')
@click.option('--query', '-q', required=True, help='Point tested for membership')
@click.pass_context
@handle_errors
def member(ctx, spec_file, example, point, query):
    """Print true when QUERY lies in the closure of the orbit of POINT."""
    spec = resolve_spec(spec_file, example)
    literals = ScalarParser(spec.ctx)
    classifier = make_classifier(ctx)
    desc = classifier.orbit_closure(spec, literals.parse_point(point, spec.dimension))
    answer = classifier.member(desc, literals.parse_point(query, spec.dimension))
    click.echo("true" if answer else "false")
    sys.exit(ExitCodes.OK if answer else ExitCodes.FALSE)


def _sample_config(spec: GroupSpec, sim: Dict[str, Any], point: Optional[str], steps,
                   max_word_len, seed, window, streams) -> SampleConfig:
    x = ScalarParser(spec.ctx).parse_point(point, spec.dimension) if point else spec.origin()
    return SampleConfig(
        point=[float(c) for c in x],
        num_words=steps or sim['num_words'],
        max_word_length=max_word_len or sim['max_word_length'],
        window=window or sim['window'],
        seed=sim['seed'] if seed is None else seed,
        streams=streams or sim['streams'],
    )


@cli.command()
@spec_source
@click.option('--point', '-p', help='Start point (default: origin)')
@click.option('--steps', '-n', type=int, help='Number of random words')
@click.option('--max-word-len', '-L', type=int, help='Maximal word length')
@click.option('--seed', type=int, help='Random seed')
@click.option('--window', '-W', type=float, help='Half-width of the sup-norm window')
@click.option('--streams', type=int, help='Independent random streams')
@click.option('--out', '-o', help='Output CSV file (default: stdout)')
@click.pass_context
@handle_errors
def simulate(ctx, spec_file, example, point, steps, max_word_len, seed, window, streams, out):
    """Sample orbit points by random words and write them as CSV."""
    spec = resolve_spec(spec_file, example)
    cfg = _sample_config(spec, ctx.obj['config']['simulator'], point, steps, max_word_len,
                         seed, window, streams)
    sample = sample_orbit(spec, cfg, progress=console.is_terminal)

    if out:
        stats = CSVExporter.export_to_csv(sample.points, spec.dimension, out)
        console.print(f"[green]Wrote {stats['total_rows']} points to {stats['output_file']}[/green]")
        if sample.discarded:
            console.print(f"[dim]{sample.discarded} points left the window[/dim]")
    else:
        CSVExporter.write_csv(sample.points, spec.dimension, sys.stdout)


@cli.command()
@spec_source
@click.option('--point', '-p', help='Start point (default: origin)')
@click.option('--window', '-W', type=float, help='Half-width of the sup-norm window')
@click.option('--grid', 'grid_step', type=float, help='Probe grid step')
@click.option('--eps', type=float, help='Coverage radius')
@click.option('--tol', type=float, help='Deviation tolerance')
@click.option('--threshold', type=float, help='Required coverage')
@click.option('--steps', '-n', type=int, help='Number of random words')
@click.option('--max-word-len', '-L', type=int, help='Maximal word length')
@click.option('--seed', type=int, help='Random seed')
@click.option('--streams', type=int, help='Independent random streams')
@click.pass_context
@handle_errors
def verify(ctx, spec_file, example, point, window, grid_step, eps, tol, threshold, steps,
           max_word_len, seed, streams):
    """Compare a sampled orbit with its predicted closure."""
    sim = ctx.obj['config']['simulator']
    spec = resolve_spec(spec_file, example)
    cfg = _sample_config(spec, sim, point, steps, max_word_len, seed, window, streams)

    classifier = make_classifier(ctx)
    report = classifier.classify_group(spec)
    x = ScalarParser(spec.ctx).parse_point(point, spec.dimension) if point else spec.origin()
    desc = classifier.orbit_closure_from_report(report, x)

    sample = sample_orbit(spec, cfg, progress=console.is_terminal)
    density = density_report(
        sample.points, sample.discarded, desc,
        window=cfg.window,
        step=grid_step or sim['grid_step'],
        eps=eps or sim['epsilon'],
        tol=sim['tolerance'] if tol is None else tol,
        threshold=sim['coverage_threshold'] if threshold is None else threshold,
    )
    emit(density.to_dict())
    sys.exit(ExitCodes.OK if density.passed else ExitCodes.FALSE)


@cli.command()
@spec_source
@click.option('--max-word-len', '-L', type=int, help='Maximal word length')
@click.option('--max-elements', type=int, help='Cap on enumerated group elements')
@click.pass_context
@handle_errors
def oracle(ctx, spec_file, example, max_word_len, max_elements):
    """Enumerate short words and list centers, symmetry images and ratios."""
    settings = ctx.obj['config']['oracle']
    spec = resolve_spec(spec_file, example)
    length = settings['default_word_length'] if max_word_len is None else max_word_len
    sample = enumerate_words(
        spec, length,
        max_elements=max_elements or settings['max_elements'],
        length_cap=settings['max_word_length'],
        progress=console.is_terminal,
    )
    emit(sample.to_dict(spec.names))


@cli.command()
@click.option('--ratio', 'lam', type=float, required=True, help='lambda > 1')
@click.option('--p-min', type=int, required=True)
@click.option('--p-max', type=int, required=True)
@click.option('--q-bound', type=int, default=None, help='Largest |q| (default: adaptive)')
@click.option('--low', type=float, required=True)
@click.option('--high', type=float, required=True)
@click.option('--eps', type=float, required=True)
@handle_errors
def hlambda(lam, p_min, p_max, q_bound, low, high, eps):
    """Check that q*lam^p*(1 - lam^p) is eps-dense in [LOW, HIGH]."""
    answer = hlambda_oracle(lam, p_min, p_max, q_bound, low, high, eps)
    click.echo("true" if answer else "false")
    sys.exit(ExitCodes.OK if answer else ExitCodes.FALSE)


@cli.command()
def examples():
    """List the built-in example specs."""
    for name in sorted(FIXTURES):
        click.echo(f"{name}\t{FIXTURES[name][0]}")


@cli.command()
@click.argument('name')
@click.option('--output', '-o', help='Output JSON file path (default: stdout)')
@handle_errors
def export_spec(name, output):
    """Write a built-in example as a spec file."""
    text = render_spec(load_fixture(name))
    if not output:
        click.echo(text)
        return
    output_path = Path(output)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(text + "\n", encoding="utf-8")
    console.print(f"[green]Successfully saved to: {output_path}[/green]")


if __name__ == '__main__':
    cli()

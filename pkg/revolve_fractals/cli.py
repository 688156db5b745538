"""Command-line interface for revolving-sequence fractals."""

from __future__ import annotations

import io
import time
from contextlib import contextmanager
from importlib import metadata as importlib_metadata
from logging import Logger
from pathlib import Path
from typing import Callable, Iterator, List, Optional, Tuple

import typer
from rich import progress as rich_progress
from rich.console import Console

from .config import Config
from .derham import KikoParams, kiko_image_cloud
from .dk_radix import ANCHORS, GaussianInt, UnitDigit
from .dk_radix import represent as dk_represent
from .errors import InvalidArgumentError, RevolveError
from .ifs import (
    IfsPair,
    chaos_game,
    ifs_for_case,
    preset,
    word_points,
)
from .logger_config import CustomLogger
from .numerics import RationalAngle, check_contraction, parse_complex
from .pointset import (
    CaseId,
    PointCloud,
    Subset,
    build_cloud,
    read_cloud,
    write_cloud,
)
from .raster import (
    FIGURES,
    Bounds,
    FigurePreset,
    RasterConfig,
    figure,
    rasterize,
    write_pgm,
    write_png,
)
from .system_info import flatten_config, print_system_info
from .verify import (
    Classical,
    VerifyReport,
    check_classical,
    check_davis_knuth,
    check_set_equation,
    check_union_theorem,
    default_suite,
)

# diagnostics only; stdout carries data
console = Console(stderr=True)
out_console = Console()
_CONFIG: Optional[Config] = None
_LOGGER: Optional[Logger] = None

try:
    _APP_VERSION = importlib_metadata.version("revolve-fractals")
except importlib_metadata.PackageNotFoundError:
    _APP_VERSION = "0.0.0"

app = typer.Typer(
    help=(
        f"revolve-fractals v{_APP_VERSION} - Point sets of "
        "revolving digit sequences, their IFS attractors, and "
        "base (1+i) representations."
    ),
    invoke_without_command=True,
)


def _config_error(exc: Exception) -> None:
    console.print(
        "[bold red]Configuration error:[/] Unable to load the "
        "bundled default.yaml or your local overrides"
    )
    console.print(
        "Run [cyan]revolve-fractals config validate[/] for details."
    )
    if exc:
        console.print(f"[yellow]Details:[/] {exc}")


def ensure_config() -> Config:
    global _CONFIG
    if _CONFIG is None:
        try:
            _CONFIG = Config()
        except Exception as exc:  # pragma: no cover
            _config_error(exc)
            raise typer.Exit(1) from exc
    return _CONFIG


def ensure_logger() -> Logger:
    global _LOGGER
    if _LOGGER is None:
        cfg = ensure_config()
        _LOGGER = CustomLogger(
            log_file=cfg.LOG_FILE or None,
            level=cfg.LOG_LEVEL,
            console=console,
        ).logger
    return _LOGGER


@contextmanager
def _handled() -> Iterator[None]:
    """Bad input exits 2 with usage; other library errors exit 1."""
    try:
        yield
    except InvalidArgumentError as exc:
        raise typer.BadParameter(str(exc)) from exc
    except RevolveError as exc:
        console.print(f"[bold red]Error:[/] {exc}")
        raise typer.Exit(code=1) from exc


def _parse_alpha(text: str, name: str = "alpha") -> complex:
    try:
        return check_contraction(parse_complex(text), name)
    except InvalidArgumentError as exc:
        raise typer.BadParameter(
            str(exc), param_hint=f"--{name}"
        ) from exc


def _parse_theta(text: str) -> RationalAngle:
    try:
        return RationalAngle.parse(text)
    except InvalidArgumentError as exc:
        raise typer.BadParameter(
            str(exc), param_hint="--theta"
        ) from exc


def _parse_case(value: Optional[int]) -> CaseId:
    try:
        return CaseId(value if value is not None else 1)
    except ValueError as exc:
        raise typer.BadParameter(
            "case must be 1, 2 or 3", param_hint="--case"
        ) from exc


def _parse_subset(value: Optional[str]) -> Subset:
    try:
        return Subset(value or Subset.FULL.value)
    except ValueError as exc:
        raise typer.BadParameter(
            "subset must be 'full' or 'one'", param_hint="--subset"
        ) from exc


def _manual(
    case: Optional[int],
    alpha: Optional[str],
    theta: Optional[str],
) -> Tuple[CaseId, complex, RationalAngle]:
    if alpha is None or theta is None:
        raise typer.BadParameter(
            "--alpha and --theta are required unless a preset "
            "or input file is given"
        )
    return _parse_case(case), _parse_alpha(alpha), _parse_theta(theta)


def _reject_with_preset(**flags) -> None:
    given = [name for name, value in flags.items() if value is not None]
    if given:
        raise typer.BadParameter(
            "a preset or input file excludes "
            + ", ".join(f"--{name}" for name in given)
        )


def _emit_cloud(cloud: PointCloud, output: str) -> None:
    if output == "-":
        buffer = io.StringIO()
        write_cloud(cloud, buffer)
        typer.echo(buffer.getvalue(), nl=False)
    else:
        write_cloud(cloud, output)
        console.print(
            f"[green]Wrote {len(cloud)} points to[/] {output}"
        )


def _ifs_of(fig: FigurePreset) -> IfsPair:
    if fig.ifs is None or fig.ifs == "case":
        return ifs_for_case(fig.case, fig.alpha, fig.angle)
    return preset(fig.ifs)


@app.callback(invoke_without_command=True)
def main(ctx: typer.Context):
    """Display top-level help when no subcommand is provided."""
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        raise typer.Exit()


@app.command(help="Show the current version.")
def version():
    """Display the application version."""
    cfg = ensure_config()
    typer.echo(f"revolve-fractals v{cfg.VERSION}")


@app.command(help="Show platform, library and configuration details.")
def info():
    """Print diagnostic tables."""
    cfg = ensure_config()
    logger = ensure_logger()
    print_system_info(
        out_console, logger, list(flatten_config(cfg.snapshot()))
    )


DEPTH_HELP = "Digit-string length (default from config)."
THREADS_HELP = "Worker threads, 0 = one per CPU."


@app.command(help="Write the point cloud of a digit-series set.")
def generate(
    case: Optional[int] = typer.Option(
        None, "--case", "-c", help="Weight rule: 1, 2 or 3."
    ),
    alpha: Optional[str] = typer.Option(
        None, help="Contraction parameter as RE,IM."
    ),
    theta: Optional[str] = typer.Option(
        None, help="Angle as a fraction Q/P of a full turn."
    ),
    depth: Optional[int] = typer.Option(None, help=DEPTH_HELP),
    subset: Optional[str] = typer.Option(
        None, help="'full' or 'one' (first non-zero digit is 1)."
    ),
    figure_name: Optional[str] = typer.Option(
        None, "--figure", help="Use a bundled figure preset."
    ),
    words: bool = typer.Option(
        False,
        "--words",
        help="Word images of 0 under the case IFS instead.",
    ),
    chaos: Optional[int] = typer.Option(
        None,
        help=(
            "Random-iteration preview with N points. With --figure or "
            "--case it draws the case IFS attractor, which is the "
            "first-digit-one subset, not the full set."
        ),
    ),
    seed: int = typer.Option(0, help="Seed for --chaos."),
    output: str = typer.Option(
        "-", "--output", "-o", help="Cloud file, '-' for stdout."
    ),
    threads: Optional[int] = typer.Option(None, help=THREADS_HELP),
):
    """Generate a cloud from a preset or explicit parameters."""
    cfg = ensure_config()
    logger = ensure_logger()
    if words and chaos is not None:
        raise typer.BadParameter("--words and --chaos conflict")
    n = cfg.DEFAULT_DEPTH if depth is None else depth
    workers = cfg.resolve_threads(threads)
    started = time.perf_counter()
    with _handled():
        if figure_name is not None:
            _reject_with_preset(
                case=case, alpha=alpha, theta=theta, subset=subset
            )
            fig = figure(figure_name)
            if chaos is not None:
                cloud = chaos_game(_ifs_of(fig), chaos, seed)
            elif words:
                cloud = word_points(_ifs_of(fig), n)
            else:
                cloud = fig.build(n, workers)
        else:
            case_id, a, angle = _manual(case, alpha, theta)
            pair = ifs_for_case(case_id, a, angle)
            if chaos is not None:
                cloud = chaos_game(pair, chaos, seed)
            elif words:
                cloud = word_points(pair, n)
            else:
                cloud = build_cloud(
                    case_id,
                    a,
                    angle,
                    n,
                    _parse_subset(subset),
                    workers,
                    cfg.DEDUP_GRID,
                )
        logger.info(
            "generated %d points in %.3fs",
            len(cloud),
            time.perf_counter() - started,
        )
        _emit_cloud(cloud, output)


@app.command(help="Rasterize a cloud to a PGM (or PNG) image.")
def render(
    case: Optional[int] = typer.Option(
        None, "--case", "-c", help="Weight rule: 1, 2 or 3."
    ),
    alpha: Optional[str] = typer.Option(
        None, help="Contraction parameter as RE,IM."
    ),
    theta: Optional[str] = typer.Option(
        None, help="Angle as a fraction Q/P of a full turn."
    ),
    depth: Optional[int] = typer.Option(None, help=DEPTH_HELP),
    subset: Optional[str] = typer.Option(
        None, help="'full' or 'one'."
    ),
    figure_name: Optional[str] = typer.Option(
        None, "--figure", help="Bundled figure preset."
    ),
    input_path: Optional[Path] = typer.Option(
        None, "--input", "-i", help="Render an existing cloud file."
    ),
    size: Optional[int] = typer.Option(
        None, help="Image width and height in pixels."
    ),
    bounds: Optional[str] = typer.Option(
        None, help="Explicit view X0,X1,Y0,Y1 (default: auto)."
    ),
    invert: Optional[bool] = typer.Option(
        None, "--invert/--no-invert", help="Light points on dark."
    ),
    png: bool = typer.Option(
        False, "--png", help="Write PNG instead of PGM."
    ),
    list_figures: bool = typer.Option(
        False, "--list-figures", help="List presets and exit."
    ),
    output: Optional[str] = typer.Option(
        None, "--output", "-o", help="Image file, '-' for stdout."
    ),
    threads: Optional[int] = typer.Option(None, help=THREADS_HELP),
):
    """Render a preset, a parameter set, or a cloud file."""
    if list_figures:
        for name, fig in FIGURES.items():
            typer.echo(f"{name}\t{fig.caption}")
        raise typer.Exit()
    cfg = ensure_config()
    logger = ensure_logger()
    if output is None:
        raise typer.BadParameter("--output is required")
    if figure_name is not None and input_path is not None:
        raise typer.BadParameter("--figure and --input conflict")
    n = cfg.DEFAULT_DEPTH if depth is None else depth
    workers = cfg.resolve_threads(threads)
    with _handled():
        side = cfg.RENDER_SIZE if size is None else size
        raster_cfg = RasterConfig(
            side,
            side,
            Bounds.parse(bounds) if bounds else None,
            cfg.RENDER_PADDING,
            cfg.RENDER_INVERT if invert is None else invert,
        )
        if figure_name is not None or input_path is not None:
            _reject_with_preset(
                case=case, alpha=alpha, theta=theta, subset=subset
            )
        if input_path is not None:
            cloud = read_cloud(input_path)
        elif figure_name is not None:
            cloud = figure(figure_name).build(n, workers)
        else:
            case_id, a, angle = _manual(case, alpha, theta)
            cloud = build_cloud(
                case_id,
                a,
                angle,
                n,
                _parse_subset(subset),
                workers,
                cfg.DEDUP_GRID,
            )
        img = rasterize(cloud, raster_cfg, workers)
        if png:
            if output == "-":
                raise InvalidArgumentError(
                    "PNG output needs a file path"
                )
            write_png(img, output)
        elif output == "-":
            write_pgm(img, typer.get_binary_stream("stdout"))
        else:
            write_pgm(img, output)
        logger.info(
            "rendered %d points to %s (%dx%d)",
            len(cloud),
            output,
            side,
            side,
        )
    if output != "-":
        console.print(f"[green]Wrote[/] {output}")


Job = Tuple[str, Callable[[], VerifyReport]]


def _run_jobs(jobs: List[Job]) -> List[VerifyReport]:
    reports: List[VerifyReport] = []
    with rich_progress.Progress(
        rich_progress.SpinnerColumn(),
        rich_progress.BarColumn(),
        rich_progress.TextColumn("{task.description}"),
        rich_progress.TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        task_id = progress.add_task("verifying", total=len(jobs))
        for label, job in jobs:
            progress.update(task_id, description=label)
            report = job()
            for line in report.lines():
                typer.echo(line)
            reports.append(report)
            progress.advance(task_id)
    return reports


@app.command(help="Check the set identities; exit 1 on any failure.")
def verify(
    run_all: bool = typer.Option(
        False, "--all", help="Run the full check suite."
    ),
    case: Optional[int] = typer.Option(
        None, "--case", "-c", help="Weight rule: 1, 2 or 3."
    ),
    alpha: Optional[str] = typer.Option(
        None, help="Contraction parameter as RE,IM."
    ),
    theta: Optional[str] = typer.Option(
        None, help="Angle as a fraction Q/P of a full turn."
    ),
    figure_name: Optional[str] = typer.Option(
        None, "--figure", help="Check one figure preset."
    ),
    classical: Optional[List[str]] = typer.Option(
        None,
        help="mizutani_ito, kawamura_levy or levy_conjugate.",
    ),
    davis_knuth: bool = typer.Option(
        False, "--davis-knuth", help="Check the -5+33i example."
    ),
    depth: Optional[int] = typer.Option(None, help=DEPTH_HELP),
    threads: Optional[int] = typer.Option(None, help=THREADS_HELP),
):
    """Print one CHECK line per measurement."""
    cfg = ensure_config()
    logger = ensure_logger()
    n = cfg.VERIFY_DEPTH if depth is None else depth
    workers = cfg.resolve_threads(threads)
    tol = cfg.EXACT_TOLERANCE
    jobs: List[Job] = []
    with _handled():
        if run_all:
            jobs.extend(
                default_suite(
                    n,
                    workers,
                    cfg.KIKO_SAMPLES,
                    cfg.KIKO_DEPTH,
                    tol,
                )
            )
        if figure_name is not None:
            fig = figure(figure_name)
            if fig.ifs is not None:
                raise InvalidArgumentError(
                    f"{figure_name} is not a digit-series figure"
                )
            args = (fig.case, fig.alpha, fig.angle, n, workers, tol)
            jobs.append(
                ("set_equation", lambda: check_set_equation(*args))
            )
            jobs.append(
                ("union_theorem", lambda: check_union_theorem(*args))
            )
        if alpha is not None or theta is not None:
            manual = (*_manual(case, alpha, theta), n, workers, tol)
            jobs.append(
                ("set_equation", lambda: check_set_equation(*manual))
            )
            jobs.append(
                (
                    "union_theorem",
                    lambda: check_union_theorem(*manual),
                )
            )
        for name in classical or []:
            try:
                which = Classical(name)
            except ValueError as exc:
                raise InvalidArgumentError(
                    f"unknown classical check {name!r}"
                ) from exc
            jobs.append(
                (
                    which.value,
                    lambda w=which: check_classical(w, n, workers),
                )
            )
        if davis_knuth:
            jobs.append(
                (
                    "davis_knuth",
                    lambda: check_davis_knuth(cfg.RADIX_MAX_STEPS),
                )
            )
        if not jobs:
            raise InvalidArgumentError(
                "nothing to verify; pass --all or pick checks"
            )
        reports = _run_jobs(jobs)
    failed = [r for r in reports if not r.passed]
    logger.info(
        "verify: %d checks, %d failed", len(reports), len(failed)
    )
    if failed:
        console.print(
            f"[bold red]{len(failed)} of {len(reports)} checks "
            "failed[/]"
        )
        raise typer.Exit(code=1)
    console.print(f"[green]All {len(reports)} checks passed[/]")


@app.command(help="Revolving base (1+i) digits of a Gaussian integer.")
def represent(
    z: str = typer.Option(..., "--z", help="Gaussian integer X+Yi."),
    anchor: Optional[str] = typer.Option(
        None, help="Only the form ending in 1, -1, i or -i."
    ),
):
    """Print the four representations in anchor order 1, -1, i, -i."""
    cfg = ensure_config()
    logger = ensure_logger()
    with _handled():
        value = GaussianInt.parse(z)
        anchors = ANCHORS
        if anchor is not None:
            try:
                anchors = (UnitDigit(anchor.strip()),)
            except ValueError as exc:
                raise InvalidArgumentError(
                    f"anchor must be 1, -1, i or -i, got {anchor!r}"
                ) from exc
        for a in anchors:
            rep = dk_represent(value, a, cfg.RADIX_MAX_STEPS)
            logger.debug("%s anchor %s: %s", value, a, rep)
            typer.echo(str(rep))


@app.command(help="Cloud of the functional-equation solution image.")
def kiko(
    alpha: str = typer.Option(..., help="alpha as RE,IM."),
    gamma: str = typer.Option(..., help="gamma as RE,IM."),
    depth: Optional[int] = typer.Option(
        None, help="Sample at k/2**depth (default from config)."
    ),
    output: str = typer.Option(
        "-", "--output", "-o", help="Cloud file, '-' for stdout."
    ),
):
    """Write f at every dyadic point of the given depth."""
    cfg = ensure_config()
    logger = ensure_logger()
    n = cfg.DEFAULT_DEPTH if depth is None else depth
    params = KikoParams(
        _parse_alpha(alpha), _parse_alpha(gamma, "gamma")
    )
    with _handled():
        cloud = kiko_image_cloud(params, n)
        logger.info("kiko cloud: %d points", len(cloud))
        _emit_cloud(cloud, output)


# Config command group
config_app = typer.Typer(help="Manage YAML configuration files")
app.add_typer(config_app, name="config")


@config_app.command(
    help="Initialize a new local configuration file"
)
def init(
    path: Optional[str] = typer.Option(
        None,
        help="Output path for config file",
    ),
    force: bool = typer.Option(
        False,
        "--force",
        "-f",
        help="Overwrite existing file",
    ),
):
    """Initialize a new local configuration file."""
    from .config_manager import ConfigManager

    manager = ConfigManager(console)

    output_path = (
        Path(path) if path else manager.LOCAL_CONFIG_PATH
    )

    if output_path.exists() and not force:
        console.print(
            f"[yellow]Config file already exists:[/] "
            f"{output_path}"
        )
        console.print("Use --force to overwrite")
        raise typer.Exit(code=1)

    created_path = manager.create_local_config_template(
        output_path
    )
    console.print(
        f"[green]Created configuration file:[/] "
        f"{created_path}"
    )


@config_app.command(help="Show current configuration")
def show():
    """Display current merged configuration."""
    import yaml
    from rich.syntax import Syntax

    cfg = ensure_config()
    yaml_str = yaml.dump(
        cfg.snapshot(),
        default_flow_style=False,
        sort_keys=False,
    )
    syntax = Syntax(
        yaml_str, "yaml", theme="monokai", line_numbers=True
    )
    out_console.print(syntax)


@config_app.command(help="Set a configuration value")
def set_value(
    key: str = typer.Argument(
        ..., help="Configuration key (dot notation)"
    ),
    value: str = typer.Argument(..., help="Value to set"),
):
    """Set a configuration value in local config."""
    from .config_manager import ConfigManager

    manager = ConfigManager(console)

    try:
        manager.set_config_value(key, value)
        console.print(f"[green]Updated:[/] {key} = {value}")
    except FileNotFoundError as e:
        console.print(f"[red]Error:[/] {e}")
        raise typer.Exit(code=1)


@config_app.command(help="Show config file paths")
def path():
    """Show the active configuration file paths."""
    from .config_manager import ConfigManager

    manager = ConfigManager(console)

    typer.echo("Default config:")
    typer.echo(f"  {manager.get_default_config_path()}")

    local = manager.find_local_config()
    typer.echo("Local config:")
    typer.echo(f"  {local}" if local else "  (none found)")


@config_app.command(help="Validate configuration")
def validate():
    """Validate the current configuration."""
    from .config_manager import ConfigManager

    manager = ConfigManager(console)
    config_dict = manager.get_config()
    errors = manager.validate_config(config_dict)

    if not errors:
        console.print("[green]✓ Configuration is valid[/]")
    else:
        console.print(
            "[red]✗ Configuration validation failed:[/]"
        )
        for error in errors:
            console.print(f"  - {error}")
        raise typer.Exit(code=1)


if __name__ == "__main__":
    app()

"""Gruss command line. Main module."""

# Standard Library
import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Optional

# Third Party Library
import click
from colorama import Fore, Style, init

# Project Library
from gruss import __version__
from gruss.cli.documents import InputDocument, ReportDocument, ReportRow, RowVerdict
from gruss.core.bounds import (
    BoundId,
    BoundReport,
    bound_complex_segment,
    bound_real_interval,
    bound_scalar_disk,
    bound_vector_ball_cbs,
    classical_bounds,
    classical_bounds_uniform,
    gruss_chain,
    pseudo_variance_bound,
    summarize_inputs,
    variance_bound,
)
from gruss.core.polynomials import VectorPolynomial, poly_bound, roots_bound
from gruss.core.seqcore import (
    AnyEnclosure,
    Interval,
    NormedSpace,
    NormFamily,
    ScalarField,
    ScalarSeq,
    Segment,
    VectorSeq,
    WeightVector,
    enclose_scalars,
    enclose_vectors,
    gruss_gap_direct,
)
from gruss.core.sharpness import CLAIMED_CONSTANTS, SharpnessConfig, sharpness_report
from gruss.core.transforms import BatchEntry, dft_bound_batch, mellin_bound_batch, mu_bound
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import (
    BoundViolationError,
    ErrorCode,
    GrussBaseException,
    GrussParseError,
    GrussValidationError,
    OrderOverflowError,
    SharpnessError,
    SingularParameterError,
)
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")

# Constants
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VIOLATION = 4
EXIT_INTERNAL = 5
VERDICT_COLORS = {
    RowVerdict.OK: Fore.GREEN,
    RowVerdict.ATTAINED: Fore.GREEN,
    RowVerdict.CONSISTENT: Fore.CYAN,
    RowVerdict.SKIPPED: Fore.YELLOW,
    RowVerdict.VIOLATION: Fore.RED,
}
SUMMARY_STYLE = Style.BRIGHT
# unmet hypotheses turn into SKIPPED rows instead of failing the command
HYPOTHESIS_CODES = (ErrorCode.ENCLOSURE_VIOLATION, ErrorCode.NOT_REAL, ErrorCode.TOO_SHORT)


class GrussCliError(click.ClickException):
    """Command failure carrying its exit code."""

    def __init__(self, message: str, exit_code: int) -> None:
        super().__init__(message)
        self.exit_code = exit_code

    def show(self, file=None) -> None:
        click.echo(color_verdict(f"Error: {self.format_message()}", RowVerdict.VIOLATION), err=True)


class ComplexParamType(click.ParamType):
    """Complex number such as 0.5, -1j or 0.3+0.4j."""

    name = "complex"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> complex:
        if isinstance(value, complex):
            return value
        text = str(value).replace(" ", "")
        if text.endswith("i"):
            text = text[:-1] + "j"
        try:
            return complex(text)
        except ValueError:
            self.fail(f"{value!r} is not a complex number", param, ctx)


COMPLEX = ComplexParamType()


@dataclass(frozen=True)
class CliSettings:
    """Global flags shared by every subcommand."""

    input_path: Optional[Path]
    output_format: str
    out: Optional[Path]
    seed: int
    tol_rel: float
    tol_abs: float

    def load_input(self) -> InputDocument:
        if self.input_path is None:
            raise click.UsageError("--input is required for this command")
        return InputDocument.load(self.input_path)

    def row(self, bound_id: str, gap: float, bound: float, **params: Any) -> ReportRow:
        return ReportRow.evaluated(bound_id, gap, bound, self.tol_rel, self.tol_abs, **params)

    def report(self, command: str, args: dict[str, Any], rows: list[ReportRow], **kwargs: Any) -> ReportDocument:
        return ReportDocument(
            command=command,
            args=args,
            input_digest=kwargs.pop("input_digest", None),
            gap=kwargs.pop("gap", None),
            rows=rows,
            seed=self.seed,
            tol_rel=self.tol_rel,
            tol_abs=self.tol_abs,
            inputs=kwargs.pop("inputs", {}),
        )


def color_verdict(message: str, verdict: RowVerdict) -> str:
    """
    Color a message for the console summary.

    Args:
        message (str): Message to format.
        verdict (RowVerdict): Verdict selecting the color.

    Returns:
        str: Formatted message.
    """
    return f"{VERDICT_COLORS[verdict]}{SUMMARY_STYLE}{message}{Style.RESET_ALL}"


def exit_code_for(err: Exception) -> int:
    """Exit code of an exception: 2 parse, 3 validation, 4 bound violation, 5 anything else."""
    if isinstance(err, GrussParseError):
        return EXIT_PARSE
    if isinstance(err, BoundViolationError):
        return EXIT_VIOLATION
    if isinstance(err, (GrussValidationError, OrderOverflowError)):
        return EXIT_VALIDATION
    if isinstance(err, SharpnessError) and err.code in (ErrorCode.UNKNOWN_BOUND_ID, ErrorCode.INFEASIBLE_PROBLEM):
        return EXIT_VALIDATION
    return EXIT_INTERNAL


def handle_errors(command: Callable) -> Callable:
    """Translate gruss exceptions into click errors with the documented exit codes."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except GrussBaseException as err:
            raise GrussCliError(str(err), exit_code_for(err)) from err
        except Exception as err:
            logger.exception("Unexpected failure in %s", command.__name__)
            raise GrussCliError(f"{ErrorCode.INTERNAL.value}: {err}", EXIT_INTERNAL) from err

    return wrapper


def emit(settings: CliSettings, report: ReportDocument) -> None:
    """Write the report, print a colored summary to stderr and fail on violations."""
    text = report.to_csv() if settings.output_format == "csv" else report.to_json()
    if settings.out is not None:
        settings.out.write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
    for row in report.rows:
        ratio = "" if row.ratio is None else f" ratio={row.ratio:.6g}"
        click.echo(color_verdict(f"{row.bound_id:<22} {row.verdict.value:<10}{ratio}", row.verdict), err=True)
    logger.info("%s finished with %d rows", report.command, len(report.rows))
    if report.has_violation:
        raise GrussCliError(f"{ErrorCode.BOUND_VIOLATION.value}: a bound failed its check...", EXIT_VIOLATION)


def rows_from(settings: CliSettings, report: BoundReport, **params: Any) -> list[ReportRow]:
    return [settings.row(bound_id, report.gap, bound, **params) for bound_id, bound in report.bounds.items()]


def guarded(
    settings: CliSettings, bound_id: BoundId, evaluate: Callable[[], BoundReport], **params: Any
) -> list[ReportRow]:
    """Rows of a bound, or one SKIPPED row naming the hypothesis it needs."""
    try:
        return rows_from(settings, evaluate(), **params)
    except GrussValidationError as err:
        if err.code not in HYPOTHESIS_CODES:
            raise
        return [ReportRow.skipped(bound_id.value, str(err), **params)]


def scalar_enclosure_rows(
    settings: CliSettings, alpha: ScalarSeq, x: VectorSeq, p: WeightVector, enclosure: AnyEnclosure, derived: bool
) -> list[ReportRow]:
    """Disk, segment or interval bound depending on how the scalars are enclosed."""
    if isinstance(enclosure, Interval):
        return guarded(settings, BoundId.INTERVAL, lambda: bound_real_interval(alpha, x, p, enclosure))
    if isinstance(enclosure, Segment):
        return guarded(settings, BoundId.SEGMENT, lambda: bound_complex_segment(alpha, x, p, enclosure))
    rows = guarded(settings, BoundId.SCALAR_DISK, lambda: bound_scalar_disk(alpha, x, p, enclosure))
    if derived and alpha.is_real:
        interval = Interval(float(alpha.values.real.min()), float(alpha.values.real.max()))
        rows += guarded(settings, BoundId.INTERVAL, lambda: bound_real_interval(alpha, x, p, interval))
    return rows


def transform_data(doc: InputDocument) -> tuple[VectorSeq, AnyEnclosure]:
    """Vectors of the input with their enclosure; a scalar-only input is taken as one-dimensional data."""
    if doc.vectors is not None:
        return doc.vectors, doc.enclosures.get("vectors") or enclose_vectors(doc.vectors)
    alpha = doc.alpha
    field = ScalarField.REAL if alpha.is_real else ScalarField.COMPLEX
    x = VectorSeq(alpha.values.reshape(-1, 1), NormedSpace.modulus(field))
    return x, doc.enclosures.get("alpha") or enclose_scalars(alpha)


def batch_rows(settings: CliSettings, bound_id: BoundId, entries: list[BatchEntry]) -> list[ReportRow]:
    rows = []
    for entry in entries:
        if entry.skipped is not None:
            rows.append(ReportRow.skipped(bound_id.value, entry.skipped, m=entry.order))
        else:
            rows += rows_from(settings, entry.report, m=entry.order)
    return rows


def requested_orders(orders: tuple[int, ...], all_m: bool, n: int) -> list[int]:
    if all_m:
        return list(range(1, n + 1))
    if not orders:
        raise click.UsageError("give at least one --m or --all-m")
    return list(orders)


@click.group()
@click.option(
    "--input",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Input document (.json, or .csv with weight, alpha, x columns).",
)
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here, not stdout.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol-rel", type=float, default=GrussConstants.BOUND_REL_TOL, show_default=True)
@click.option("--tol-abs", type=float, default=GrussConstants.BOUND_ABS_TOL, show_default=True)
@click.version_option(version=__version__)
@click.pass_context
def cli(
    ctx: click.Context,
    input_path: Optional[Path],
    output_format: str,
    out: Optional[Path],
    seed: int,
    tol_rel: float,
    tol_abs: float,
) -> None:
    """Grüss-type bounds for weighted scalar and vector sequences."""
    ctx.obj = CliSettings(input_path, output_format, out, seed, tol_rel, tol_abs)


@cli.command()
@click.pass_obj
@handle_errors
def check(settings: CliSettings) -> None:
    """Gap of the input and every bound whose hypotheses hold."""
    logger.info("check started")
    doc = settings.load_input()
    p = doc.weights_or_uniform
    alpha, x = doc.alpha, doc.vectors
    rows: list[ReportRow] = []
    gap = None
    if alpha is not None:
        alpha_enclosure = doc.enclosures.get("alpha") or enclose_scalars(alpha)
    if alpha is not None and x is not None:
        gap = gruss_gap_direct(alpha, x, p).gap
        rows += scalar_enclosure_rows(settings, alpha, x, p, alpha_enclosure, derived="alpha" not in doc.enclosures)
        ball = doc.enclosures.get("vectors") or enclose_vectors(x)
        rows += guarded(settings, BoundId.VECTOR_BALL, lambda: bound_vector_ball_cbs(alpha, x, p, ball))
        rows += guarded(settings, BoundId.CLASSICAL_MAXMAX, lambda: classical_bounds(alpha, x, p, doc.holder))
        rows += guarded(
            settings,
            BoundId.UNIFORM_MAXMAX,
            lambda: classical_bounds_uniform(alpha, x, doc.holder),
            weights="uniform",
        )
    else:
        rows.append(ReportRow.skipped(BoundId.SCALAR_DISK.value, "the input needs both alpha and vectors"))
    if alpha is not None:
        rows += guarded(settings, BoundId.VARIANCE, lambda: variance_bound(alpha, p, alpha_enclosure))
        rows += guarded(settings, BoundId.PSEUDO_VARIANCE, lambda: pseudo_variance_bound(alpha, p, alpha_enclosure))
        if doc.beta is not None:
            beta_enclosure = doc.enclosures.get("beta") or enclose_scalars(doc.beta)
            rows += guarded(
                settings,
                BoundId.CHAIN_MEAN_DEVIATION,
                lambda: gruss_chain(alpha, doc.beta, p, alpha_enclosure, beta_enclosure).as_report(),
            )
    report = settings.report(
        "check",
        {"input": settings.input_path.name},
        rows,
        input_digest=doc.digest,
        gap=gap,
        inputs=summarize_inputs(alpha, x, p),
    )
    emit(settings, report)


@cli.command()
@click.option("--omega", type=float, required=True, help="Frequency w of the kernel exp(2 w i m k).")
@click.option("--m", "orders", type=int, multiple=True, help="Order m; repeat for several.")
@click.option("--all-m", is_flag=True, help="Every order m = 1..n.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@handle_errors
def dft(settings: CliSettings, omega: float, orders: tuple[int, ...], all_m: bool, workers: int) -> None:
    """Fourier transform against the Dirichlet sum times the mean."""
    logger.info("dft started")
    doc = settings.load_input()
    x, enclosure = transform_data(doc)
    orders = requested_orders(orders, all_m, len(x))
    rows = batch_rows(settings, BoundId.DFT, dft_bound_batch(x, omega, orders, enclosure, workers))
    args = {"input": settings.input_path.name, "omega": omega, "m": orders}
    emit(settings, settings.report("dft", args, rows, input_digest=doc.digest, inputs=summarize_inputs(x=x)))


@cli.command()
@click.option("--m", "orders", type=int, multiple=True, help="Order m; repeat for several.")
@click.option("--all-m", is_flag=True, help="Every order m = 1..n.")
@click.option("--mu/--no-mu", default=True, show_default=True, help="Add the first-moment row.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@handle_errors
def mellin(settings: CliSettings, orders: tuple[int, ...], all_m: bool, mu: bool, workers: int) -> None:
    """Mellin transform against the power sum times the mean."""
    logger.info("mellin started")
    doc = settings.load_input()
    x, enclosure = transform_data(doc)
    orders = requested_orders(orders, all_m, len(x))
    rows = batch_rows(settings, BoundId.MELLIN, mellin_bound_batch(x, orders, enclosure, workers))
    if mu:
        rows += rows_from(settings, mu_bound(x, enclosure))
    args = {"input": settings.input_path.name, "m": orders, "mu": mu}
    emit(settings, settings.report("mellin", args, rows, input_digest=doc.digest, inputs=summarize_inputs(x=x)))


@cli.command()
@click.option("--z", "points", type=COMPLEX, multiple=True, help="Point z != 1; repeat for several.")
@click.option("--roots", is_flag=True, help="Check every nontrivial (n+1)-th root of unity.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@handle_errors
def poly(settings: CliSettings, points: tuple[complex, ...], roots: bool, workers: int) -> None:
    """Polynomial with the input vectors as coefficients c_0..c_n."""
    logger.info("poly started")
    if not points and not roots:
        raise click.UsageError("give at least one --z or --roots")
    doc = settings.load_input()
    coefficients, enclosure = transform_data(doc)
    polynomial = VectorPolynomial(coefficients)
    rows: list[ReportRow] = []
    for z in points:
        try:
            rows += rows_from(settings, poly_bound(polynomial, z, enclosure), z=z)
        except SingularParameterError as err:
            rows.append(ReportRow.skipped(BoundId.POLY.value, err.code.value, z=z))
    if roots:
        for report in roots_bound(polynomial, enclosure, workers):
            rows += rows_from(settings, report, k=report.witness_inputs["k"], z=report.witness_inputs["z"])
    args = {"input": settings.input_path.name, "z": list(points), "roots": roots}
    inputs = summarize_inputs(x=coefficients)
    emit(settings, settings.report("poly", args, rows, input_digest=doc.digest, inputs=inputs))


@cli.command()
@click.option("--bound", "bounds", multiple=True, help="Bound id, or 'all'. Defaults to the witness-backed ones.")
@click.option("--n", type=click.IntRange(min=1), default=GrussConstants.SEARCH_N, show_default=True)
@click.option("--d", type=click.IntRange(min=1), default=GrussConstants.SEARCH_D, show_default=True)
@click.option(
    "--norm", type=click.Choice([family.value for family in NormFamily]), default=GrussConstants.SEARCH_NORM
)
@click.option("--p", "norm_p", type=float, help="Exponent of the lp norm.")
@click.option("--field", "scalar_field", type=click.Choice(["real", "complex"]), default="complex")
@click.option("--budget", type=click.IntRange(min=0), default=GrussConstants.SEARCH_BUDGET, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=GrussConstants.SEARCH_RESTARTS, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.pass_obj
@handle_errors
def sharpness(
    settings: CliSettings,
    bounds: tuple[str, ...],
    n: int,
    d: int,
    norm: str,
    norm_p: Optional[float],
    scalar_field: str,
    budget: int,
    restarts: int,
    workers: int,
) -> None:
    """Witness and searched ratios of the sharp constants."""
    logger.info("sharpness started")
    bound_ids = None
    if bounds:
        bound_ids = list(CLAIMED_CONSTANTS) if "all" in bounds else list(bounds)
    config = SharpnessConfig(
        n=n,
        d=d,
        norm_family=NormFamily(norm),
        p=norm_p,
        scalar_field=ScalarField(scalar_field),
        budget=budget,
        restarts=restarts,
        seed=settings.seed,
        workers=workers,
    )
    result = sharpness_report(bound_ids, config)
    rows = []
    for row in result.rows:
        ratios = [ratio for ratio in (row.witness_ratio, row.searched_ratio) if ratio is not None]
        rows.append(
            ReportRow(
                bound_id=row.bound_id.value,
                verdict=RowVerdict(row.verdict.value),
                ratio=max(ratios) if ratios else None,
                reason=row.note,
                params={
                    "claimed_constant": row.claimed_constant,
                    "witness_ratio": row.witness_ratio,
                    "searched_ratio": row.searched_ratio,
                    "search": row.search.to_dict() if row.search else None,
                },
            )
        )
    args = {
        "bound": list(bounds),
        "n": n,
        "d": d,
        "norm": norm,
        "p": norm_p,
        "field": scalar_field,
        "budget": budget,
        "restarts": restarts,
    }
    emit(settings, settings.report("sharpness", args, rows))


def main() -> None:
    """Main function for the gruss command line."""
    init()
    cli(prog_name="gruss_cli")


if __name__ == "__main__":
    main()

"""Input and report documents of the gruss command line."""

# Standard Library
import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Optional

# Third Party Library
import numpy as np

# Project Library
from gruss import __version__
from gruss.core.bounds import HolderPair, bound_ratio, within_bound
from gruss.core.seqcore import (
    AnyEnclosure,
    Ball,
    Disk,
    Interval,
    NormedSpace,
    NormFamily,
    ScalarField,
    ScalarSeq,
    Segment,
    VectorSeq,
    WeightVector,
    validate_weights,
)
from gruss.utilities.exceptions import ErrorCode, GrussParseError, GrussValidationError
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")

ENCLOSURE_TARGETS = ("alpha", "beta", "vectors")
CSV_COLUMNS = ("command", "bound_id", "params", "gap", "bound", "ratio", "verdict", "reason")


class RowVerdict(str, Enum):
    """Verdict of one report row."""

    OK = "OK"
    VIOLATION = "VIOLATION"
    SKIPPED = "SKIPPED"
    ATTAINED = "ATTAINED"
    CONSISTENT = "CONSISTENT"


def to_jsonable(value: Any) -> Any:
    """Convert complex numbers, numpy scalars/arrays and enums to plain JSON values."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    return value


def format_number(value: float) -> str:
    """A float with 17 significant digits, keeping a decimal point; non-finite values as json writes them."""
    if not math.isfinite(value):
        return json.dumps(value)
    text = format(value, ".17g")
    return text if "." in text or "e" in text else f"{text}.0"


def dump_json(value: Any, indent: Optional[int] = None, level: int = 0) -> str:
    """
    JSON text with sorted keys and every float written by format_number.

    Args:
        value (Any): Plain JSON value, as returned by to_jsonable.
        indent (Optional[int]): Spaces per nesting level; None writes everything on one line.
        level (int): Current nesting level.

    Returns:
        str: The JSON text, laid out like json.dumps with the same indent.
    """
    if isinstance(value, float):
        return format_number(value)
    if not value or not isinstance(value, (dict, list)):
        return json.dumps(value)
    if isinstance(value, dict):
        items = [f"{json.dumps(str(key))}: {dump_json(value[key], indent, level + 1)}" for key in sorted(value)]
        opening, closing = "{", "}"
    else:
        items = [dump_json(item, indent, level + 1) for item in value]
        opening, closing = "[", "]"
    if indent is None:
        return opening + ", ".join(items) + closing
    inner = "\n" + " " * (indent * (level + 1))
    return opening + inner + ("," + inner).join(items) + "\n" + " " * (indent * level) + closing


def _scalar(raw: Any, where: str) -> complex:
    """A number, or a [re, im] pair."""
    if isinstance(raw, bool):
        raise GrussParseError(message=f"{where}: expected a number, got a boolean...", logger=logger)
    if isinstance(raw, (int, float)):
        return complex(raw)
    if isinstance(raw, list) and len(raw) == 2 and all(isinstance(v, (int, float)) for v in raw):
        return complex(raw[0], raw[1])
    raise GrussParseError(message=f"{where}: expected a number or an [re, im] pair, got {raw!r}...", logger=logger)


def _real(raw: Any, where: str) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise GrussParseError(message=f"{where}: expected a real number, got {raw!r}...", logger=logger)
    return float(raw)


def _scalars(raw: Any, where: str) -> np.ndarray:
    """Scalar array given as a list of numbers / [re, im] pairs, or as {"re": [...], "im": [...]}."""
    if isinstance(raw, dict):
        re = raw.get("re")
        im = raw.get("im", [0.0] * len(re) if isinstance(re, list) else None)
        if not isinstance(re, list) or not isinstance(im, list) or len(re) != len(im):
            raise GrussParseError(message=f"{where}: re and im must be lists of equal length...", logger=logger)
        return np.array(
            [complex(_real(r, f"{where}.re"), _real(i, f"{where}.im")) for r, i in zip(re, im)], dtype=complex
        )
    if not isinstance(raw, list):
        raise GrussParseError(message=f"{where}: expected a list...", logger=logger)
    return np.array([_scalar(item, f"{where}[{index}]") for index, item in enumerate(raw)], dtype=complex)


def _vectors(raw: Any) -> np.ndarray:
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise GrussParseError(message="vectors: expected a nonempty list of coordinate lists...", logger=logger)
    rows = [_scalars(row, f"vectors[{index}]") for index, row in enumerate(raw)]
    if len({row.size for row in rows}) != 1:
        raise GrussValidationError(
            message="vectors: rows have different dimensions...", code=ErrorCode.LENGTH_MISMATCH, logger=logger
        )
    return np.vstack(rows)


def _space(raw: Any, dimension: int) -> NormedSpace:
    raw = raw or {}
    if not isinstance(raw, dict):
        raise GrussParseError(message="norm: expected an object...", logger=logger)
    try:
        family = NormFamily(str(raw.get("family", NormFamily.L2.value)).lower())
        scalar_field = ScalarField(str(raw.get("field", ScalarField.COMPLEX.value)).lower())
    except ValueError as err:
        raise GrussValidationError(
            message=f"norm: unknown family or field in {raw!r}...", code=ErrorCode.INVALID_NORM, logger=logger
        ) from err
    p = raw.get("p")
    return NormedSpace(
        dimension=dimension,
        norm_family=family,
        p=_real(p, "norm.p") if p is not None else None,
        scalar_field=scalar_field,
    )


def _enclosure(raw: Any, target: str, space: NormedSpace) -> AnyEnclosure:
    where = f"enclosure.{target}"
    if not isinstance(raw, dict) or "type" not in raw:
        raise GrussParseError(message=f"{where}: expected an object with a type...", logger=logger)
    kind = str(raw["type"]).lower()
    try:
        if kind == "disk":
            return Disk(_scalar(raw["center"], f"{where}.center"), _real(raw["radius"], f"{where}.radius"))
        if kind == "segment":
            return Segment(_scalar(raw["start"], f"{where}.start"), _scalar(raw["end"], f"{where}.end"))
        if kind == "interval":
            return Interval(_real(raw["low"], f"{where}.low"), _real(raw["high"], f"{where}.high"))
        if kind == "ball":
            return Ball(_scalars(raw["center"], f"{where}.center"), _real(raw["radius"], f"{where}.radius"), space)
    except KeyError as err:
        raise GrussParseError(message=f"{where}: missing field {err}...", logger=logger) from err
    raise GrussParseError(message=f"{where}: unknown enclosure type {kind!r}...", logger=logger)


def _holder(raw: Any) -> HolderPair:
    if raw is None:
        return HolderPair(2.0, 2.0)
    if not isinstance(raw, dict) or "p" not in raw:
        raise GrussParseError(message="holder: expected an object with p (and optionally q)...", logger=logger)
    if "q" in raw:
        return HolderPair(_real(raw["p"], "holder.p"), _real(raw["q"], "holder.q"))
    return HolderPair.conjugate(_real(raw["p"], "holder.p"))


def input_digest(text: str) -> str:
    """sha256 of the UTF-8 input text."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True, eq=False)
class InputDocument:
    """
    One dataset given to the command line.

    Attributes:
        weights (Optional[WeightVector]): Weights, uniform when absent.
        alpha (Optional[ScalarSeq]): Scalars.
        beta (Optional[ScalarSeq]): Second scalar sequence for the chain of complex Grüss inequalities.
        vectors (Optional[VectorSeq]): Vectors (or polynomial coefficients).
        space (NormedSpace): Norm and field of the vectors.
        enclosures (dict[str, AnyEnclosure]): Explicit enclosures keyed alpha, beta or vectors.
        holder (HolderPair): Hölder exponents of the classical bounds.
        metadata (dict[str, Any]): Free-form, echoed nowhere.
        digest (str): sha256 of the input text.
    """

    weights: Optional[WeightVector]
    alpha: Optional[ScalarSeq]
    beta: Optional[ScalarSeq]
    vectors: Optional[VectorSeq]
    space: NormedSpace
    enclosures: dict[str, AnyEnclosure] = field(default_factory=dict)
    holder: HolderPair = field(default_factory=lambda: HolderPair(2.0, 2.0))
    metadata: dict[str, Any] = field(default_factory=dict)
    digest: str = ""

    def __post_init__(self) -> None:
        if self.alpha is None and self.vectors is None:
            raise GrussValidationError(
                message="Input needs alpha or vectors...", code=ErrorCode.TOO_SHORT, logger=logger
            )
        lengths = {len(seq) for seq in (self.weights, self.alpha, self.beta, self.vectors) if seq is not None}
        if len(lengths) != 1:
            raise GrussValidationError(
                message=f"Input sequences have different lengths {sorted(lengths)}...",
                code=ErrorCode.LENGTH_MISMATCH,
                logger=logger,
            )

    @property
    def n(self) -> int:
        return len(self.alpha if self.alpha is not None else self.vectors)

    @property
    def weights_or_uniform(self) -> WeightVector:
        return self.weights if self.weights is not None else WeightVector.uniform(self.n)

    @classmethod
    def from_dict(cls, data: Any, digest: str = "") -> "InputDocument":
        """
        Build a document from parsed JSON.

        Raises:
            GrussParseError: The structure or a value has the wrong type.
            GrussValidationError: Values are well-formed but inconsistent.
        """
        if not isinstance(data, dict):
            raise GrussParseError(message="Input document must be a JSON object...", logger=logger)
        weights = None
        if data.get("weights") is not None:
            raw_weights = data["weights"]
            if not isinstance(raw_weights, list):
                raise GrussParseError(message="weights: expected a list...", logger=logger)
            weights = validate_weights(
                [_real(w, f"weights[{i}]") for i, w in enumerate(raw_weights)],
                normalize=bool(data.get("normalize_weights", False)),
            )
        alpha = ScalarSeq(_scalars(data["alpha"], "alpha")) if data.get("alpha") is not None else None
        beta = ScalarSeq(_scalars(data["beta"], "beta")) if data.get("beta") is not None else None
        points = _vectors(data["vectors"]) if data.get("vectors") is not None else None
        space = _space(data.get("norm"), points.shape[1] if points is not None else 1)
        vectors = VectorSeq(points, space) if points is not None else None
        raw_enclosures = data.get("enclosure") or {}
        if not isinstance(raw_enclosures, dict) or not set(raw_enclosures) <= set(ENCLOSURE_TARGETS):
            raise GrussParseError(
                message=f"enclosure: expected an object keyed by {list(ENCLOSURE_TARGETS)}...", logger=logger
            )
        enclosures = {target: _enclosure(raw, target, space) for target, raw in raw_enclosures.items()}
        for target in ("alpha", "beta"):
            if isinstance(enclosures.get(target), Ball):
                raise GrussValidationError(
                    message=f"enclosure.{target}: scalars take a disk, segment or interval...",
                    code=ErrorCode.INVALID_ENCLOSURE,
                    logger=logger,
                )
        metadata = data.get("metadata") or {}
        if not isinstance(metadata, dict):
            raise GrussParseError(message="metadata: expected an object...", logger=logger)
        return cls(
            weights=weights,
            alpha=alpha,
            beta=beta,
            vectors=vectors,
            space=space,
            enclosures=enclosures,
            holder=_holder(data.get("holder")),
            metadata=metadata,
            digest=digest,
        )

    @classmethod
    def from_json(cls, text: str) -> "InputDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            raise GrussParseError(message=f"Input is not valid JSON: {err}...", logger=logger) from err
        return cls.from_dict(data, digest=input_digest(text))

    @classmethod
    def from_csv(cls, text: str) -> "InputDocument":
        """
        Real one-dimensional data with columns weight (optional), alpha and x.

        Raises:
            GrussParseError: Missing columns or non-numeric cells.
        """
        reader = csv.DictReader(io.StringIO(text))
        columns = set(reader.fieldnames or [])
        if not {"alpha", "x"} <= columns:
            raise GrussParseError(message=f"CSV needs alpha and x columns, got {sorted(columns)}...", logger=logger)
        weights, alpha, x = [], [], []
        try:
            for row in reader:
                if "weight" in columns:
                    weights.append(float(row["weight"]))
                alpha.append(float(row["alpha"]))
                x.append(float(row["x"]))
        except (TypeError, ValueError) as err:
            raise GrussParseError(message=f"CSV line {reader.line_num}: {err}...", logger=logger) from err
        if not alpha:
            raise GrussParseError(message="CSV holds no data rows...", logger=logger)
        space = NormedSpace(dimension=1, scalar_field=ScalarField.REAL)
        return cls(
            weights=validate_weights(weights) if weights else None,
            alpha=ScalarSeq(np.array(alpha)),
            beta=None,
            vectors=VectorSeq(np.array(x).reshape(-1, 1), space),
            space=space,
            digest=input_digest(text),
        )

    @classmethod
    def load(cls, path: Path) -> "InputDocument":
        """Read a .csv file through the CSV fast path, anything else as JSON."""
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as err:
            raise GrussParseError(message=f"Cannot read {path}: {err}...", logger=logger) from err
        logger.info("Loaded input %s", path.name)
        return cls.from_csv(text) if path.suffix.lower() == ".csv" else cls.from_json(text)


@dataclass
class ReportRow:
    """
    One bound (or one order m, point z, sharpness check) of a report.

    Attributes:
        bound_id (str): Bound identifier.
        verdict (RowVerdict): OK, VIOLATION, SKIPPED, ATTAINED or CONSISTENT.
        gap (Optional[float]): Left-hand side.
        bound (Optional[float]): Right-hand side.
        ratio (Optional[float]): gap / bound.
        reason (Optional[str]): Why the row was skipped, or a note.
        params (dict[str, Any]): Order m, point z, weights mode or sharpness details.
    """

    bound_id: str
    verdict: RowVerdict
    gap: Optional[float] = None
    bound: Optional[float] = None
    ratio: Optional[float] = None
    reason: Optional[str] = None
    params: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def evaluated(
        cls, bound_id: str, gap: float, bound: float, tol_rel: float, tol_abs: float, **params: Any
    ) -> "ReportRow":
        verdict = RowVerdict.OK if within_bound(gap, bound, tol_rel, tol_abs) else RowVerdict.VIOLATION
        return cls(
            bound_id=bound_id,
            verdict=verdict,
            gap=float(gap),
            bound=float(bound),
            ratio=bound_ratio(gap, bound, tol_abs),
            params=to_jsonable(params),
        )

    @classmethod
    def skipped(cls, bound_id: str, reason: str, **params: Any) -> "ReportRow":
        logger.warning("%s skipped: %s", bound_id, reason)
        return cls(bound_id=bound_id, verdict=RowVerdict.SKIPPED, reason=reason, params=to_jsonable(params))

    def to_dict(self) -> dict[str, Any]:
        return {
            "bound_id": self.bound_id,
            "verdict": self.verdict.value,
            "gap": self.gap,
            "bound": self.bound,
            "ratio": self.ratio,
            "reason": self.reason,
            "params": self.params,
        }


def _optional_float(data: dict[str, Any], key: str) -> Optional[float]:
    value = data.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise GrussParseError(message=f"Report row field {key} must be a number or null...", logger=logger)
    return float(value)


@dataclass
class ReportDocument:
    """
    Machine-readable output of one command.

    Floats are serialized with the shortest repr that round-trips, so equal runs give byte-identical reports.

    Attributes:
        command (str): Subcommand name.
        args (dict[str, Any]): Echo of the command flags.
        input_digest (Optional[str]): sha256 of the input text.
        gap (Optional[float]): Gap of the input, when the command computes one.
        rows (list[ReportRow]): One row per bound / order / point.
        seed (int): Seed of the run.
        tol_rel (float): Relative slack of the bound checks.
        tol_abs (float): Absolute slack of the bound checks.
        inputs (dict[str, Any]): Summary of the inputs.
        tool_version (str): Version of gruss that produced the report.
    """

    command: str
    args: dict[str, Any]
    input_digest: Optional[str]
    gap: Optional[float]
    rows: list[ReportRow]
    seed: int
    tol_rel: float
    tol_abs: float
    inputs: dict[str, Any] = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def ratios(self) -> dict[str, float]:
        """Ratio per evaluated row, keyed by bound id (and params when a bound repeats)."""
        ratios: dict[str, float] = {}
        for row in self.rows:
            if row.ratio is None:
                continue
            key = row.bound_id if not row.params else f"{row.bound_id}{json.dumps(row.params, sort_keys=True)}"
            ratios[key] = row.ratio
        return ratios

    @property
    def verdicts(self) -> list[str]:
        return [row.verdict.value for row in self.rows]

    @property
    def has_violation(self) -> bool:
        return any(row.verdict is RowVerdict.VIOLATION for row in self.rows)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "args": to_jsonable(self.args),
            "input_digest": self.input_digest,
            "gap": self.gap,
            "rows": [row.to_dict() for row in self.rows],
            "seed": self.seed,
            "tol_rel": self.tol_rel,
            "tol_abs": self.tol_abs,
            "inputs": to_jsonable(self.inputs),
            "tool_version": self.tool_version,
        }

    def to_json(self) -> str:
        return dump_json(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        """One row per bound, for plotting."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(
                [
                    self.command,
                    row.bound_id,
                    dump_json(row.params),
                    "" if row.gap is None else format_number(row.gap),
                    "" if row.bound is None else format_number(row.bound),
                    "" if row.ratio is None else format_number(row.ratio),
                    row.verdict.value,
                    row.reason or "",
                ]
            )
        return buffer.getvalue()

    @classmethod
    def from_dict(cls, data: Any) -> "ReportDocument":
        """
        Re-read a report and re-validate it.

        Raises:
            GrussParseError: A field is missing or has the wrong type.
            GrussValidationError: A stored ratio or verdict disagrees with the stored gap and bound.
        """
        required = ("command", "args", "input_digest", "gap", "rows", "seed", "tol_rel", "tol_abs", "tool_version")
        if not isinstance(data, dict) or any(key not in data for key in required):
            raise GrussParseError(message=f"Report must be an object with {list(required)}...", logger=logger)
        if not isinstance(data["rows"], list) or not isinstance(data["args"], dict):
            raise GrussParseError(message="Report rows must be a list and args an object...", logger=logger)
        rows = []
        for index, raw in enumerate(data["rows"]):
            if not isinstance(raw, dict) or "bound_id" not in raw or "verdict" not in raw:
                raise GrussParseError(message=f"Report row {index} lacks bound_id or verdict...", logger=logger)
            try:
                verdict = RowVerdict(raw["verdict"])
            except ValueError as err:
                raise GrussParseError(message=f"Report row {index}: unknown verdict...", logger=logger) from err
            rows.append(
                ReportRow(
                    bound_id=str(raw["bound_id"]),
                    verdict=verdict,
                    gap=_optional_float(raw, "gap"),
                    bound=_optional_float(raw, "bound"),
                    ratio=_optional_float(raw, "ratio"),
                    reason=raw.get("reason"),
                    params=raw.get("params") or {},
                )
            )
        report = cls(
            command=str(data["command"]),
            args=data["args"],
            input_digest=data["input_digest"],
            gap=_optional_float(data, "gap"),
            rows=rows,
            seed=int(data["seed"]),
            tol_rel=float(data["tol_rel"]),
            tol_abs=float(data["tol_abs"]),
            inputs=data.get("inputs") or {},
            tool_version=str(data["tool_version"]),
        )
        report.validate()
        return report

    def validate(self) -> None:
        """Check every evaluated row: ratio matches gap / bound and the verdict matches the slack."""
        for row in self.rows:
            if row.gap is None or row.bound is None:
                continue
            expected = bound_ratio(row.gap, row.bound, self.tol_abs)
            if row.ratio is None or not (
                expected == row.ratio or math.isclose(expected, row.ratio, rel_tol=1e-12, abs_tol=0.0)
            ):
                raise GrussValidationError(
                    message=f"Row {row.bound_id}: ratio {row.ratio!r} does not match gap / bound {expected!r}...",
                    logger=logger,
                )
            holds = within_bound(row.gap, row.bound, self.tol_rel, self.tol_abs)
            if holds != (row.verdict is RowVerdict.OK):
                raise GrussValidationError(
                    message=f"Row {row.bound_id}: verdict {row.verdict.value} disagrees with gap and bound...",
                    logger=logger,
                )

"""
Empirical sharpness checks for the claimed best-possible constants.

Two kinds of evidence are gathered per bound: the two-point extremal configurations from the proofs (ratio 1), and a
multi-restart projected coordinate ascent that maximizes gap / bound over admissible instances. The ascent is a
heuristic, not a certified optimizer; a ratio above one beyond the slack would disprove the bound and is reported as a
violation.
"""

# Standard Library
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional, Union

# Third Party Library
import numpy as np

# Project Library
from gruss.core.bounds import (
    BoundId,
    BoundReport,
    HolderPair,
    bound_complex_segment,
    bound_real_interval,
    bound_scalar_disk,
    bound_vector_ball,
    classical_bounds,
    classical_bounds_uniform,
    pseudo_variance_bound,
    variance_bound,
)
from gruss.core.seqcore import (
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
)
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import BoundViolationError, ErrorCode, GrussValidationError, SharpnessError
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")

CLAIMED_CONSTANTS: dict[BoundId, float] = {
    BoundId.SCALAR_DISK: 1.0,
    BoundId.SEGMENT: 0.5,
    BoundId.INTERVAL: 0.5,
    BoundId.VECTOR_BALL: 1.0,
    BoundId.VARIANCE: 0.25,
    BoundId.PSEUDO_VARIANCE: 0.25,
    BoundId.CLASSICAL_MAXMAX: 1.0,
    BoundId.CLASSICAL_SUMSUM: 0.5,
    BoundId.CLASSICAL_HOLDER: 1.0,
    BoundId.UNIFORM_MAXMAX: 1 / 12,
    BoundId.UNIFORM_SUMSUM: 0.5,
    BoundId.UNIFORM_HOLDER: 1 / 6,
}

WITNESS_BOUNDS: tuple[BoundId, ...] = (
    BoundId.SCALAR_DISK,
    BoundId.SEGMENT,
    BoundId.INTERVAL,
    BoundId.VECTOR_BALL,
    BoundId.VARIANCE,
    BoundId.PSEUDO_VARIANCE,
)

_UNIFORM_BOUNDS = (BoundId.UNIFORM_MAXMAX, BoundId.UNIFORM_SUMSUM, BoundId.UNIFORM_HOLDER)
_SCALAR_ONLY_BOUNDS = (BoundId.VARIANCE, BoundId.PSEUDO_VARIANCE)


class Verdict(str, Enum):
    """Outcome of a sharpness check."""

    ATTAINED = "ATTAINED"
    CONSISTENT = "CONSISTENT"
    VIOLATION = "VIOLATION"


def parse_bound_id(raw: Union[str, BoundId]) -> BoundId:
    """
    Sharpness-checkable bound identifier from its name.

    Raises:
        SharpnessError: UNKNOWN_BOUND_ID.
    """
    try:
        bound_id = BoundId(str(raw.value if isinstance(raw, BoundId) else raw).lower())
    except ValueError:
        bound_id = None
    if bound_id not in CLAIMED_CONSTANTS:
        raise SharpnessError(
            message=f"Unknown bound identifier {raw!r}, expected one of {[b.value for b in CLAIMED_CONSTANTS]}...",
            code=ErrorCode.UNKNOWN_BOUND_ID,
            logger=logger,
        )
    return bound_id


@dataclass(frozen=True)
class SharpnessProblem:
    """
    One inequality to search at fixed n and d.

    The constraint set is the weight simplex plus the enclosure the bound assumes: scalars in the disk (segment,
    interval) of radius R about 0, or vectors in the ball of radius R about 0.

    Attributes:
        bound_id (BoundId): Inequality under test.
        n (int): Sequence length.
        d (int): Dimension of the vectors.
        norm_family (NormFamily): Norm of the vector space.
        p (Optional[float]): LP exponent.
        scalar_field (ScalarField): Field of the scalars and coordinates.
        holder (HolderPair): Exponents of the Hölder-type bounds.
        radius (float): Enclosure radius R.
    """

    bound_id: BoundId
    n: int = GrussConstants.SEARCH_N
    d: int = GrussConstants.SEARCH_D
    norm_family: NormFamily = NormFamily(GrussConstants.SEARCH_NORM)
    p: Optional[float] = None
    scalar_field: ScalarField = ScalarField.COMPLEX
    holder: HolderPair = field(default_factory=lambda: HolderPair(2.0, 2.0))
    radius: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "bound_id", parse_bound_id(self.bound_id))
        object.__setattr__(self, "norm_family", NormFamily(self.norm_family))
        object.__setattr__(self, "scalar_field", ScalarField(self.scalar_field))

    @property
    def claimed_constant(self) -> float:
        return CLAIMED_CONSTANTS[self.bound_id]

    @property
    def space(self) -> NormedSpace:
        return NormedSpace(self.d, self.norm_family, self.p, self.scalar_field)

    @property
    def real_scalars(self) -> bool:
        return self.bound_id is BoundId.INTERVAL or self.scalar_field is ScalarField.REAL

    @property
    def uniform_weights(self) -> bool:
        return self.bound_id in _UNIFORM_BOUNDS

    @property
    def uses_vectors(self) -> bool:
        return self.bound_id not in _SCALAR_ONLY_BOUNDS

    @property
    def scalar_enclosure(self) -> Optional[Union[Disk, Segment, Interval]]:
        """Enclosure of the scalars, None when they are unconstrained."""
        radius = self.radius
        return {
            BoundId.SCALAR_DISK: Disk(0, radius),
            BoundId.SEGMENT: Segment(-radius, radius),
            BoundId.INTERVAL: Interval(-radius, radius),
            BoundId.VARIANCE: Segment(-radius, radius),
            BoundId.PSEUDO_VARIANCE: Segment(-radius, radius),
        }.get(self.bound_id)

    @property
    def vector_enclosure(self) -> Optional[Ball]:
        """Enclosure of the vectors, None when they are unconstrained."""
        if self.bound_id is BoundId.VECTOR_BALL:
            return Ball(np.zeros(self.d), self.radius, self.space)
        return None


def _complex_pair(value: complex) -> list[float]:
    return [float(value.real), float(value.imag)]


@dataclass(frozen=True, eq=False)
class Instance:
    """
    Admissible input of a sharpness problem.

    Attributes:
        weights (np.ndarray): Weights on the simplex.
        alpha (np.ndarray): Complex scalars.
        x (Optional[np.ndarray]): Complex (n, d) vectors, None for scalar-only bounds.
    """

    weights: np.ndarray
    alpha: np.ndarray
    x: Optional[np.ndarray] = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "weights": [float(w) for w in self.weights],
            "alpha": [_complex_pair(a) for a in self.alpha],
        }
        if self.x is not None:
            data["x"] = [[_complex_pair(c) for c in row] for row in self.x]
        return data


@dataclass(frozen=True, eq=False)
class Witness:
    """Extremal configuration from a proof and the ratio it attains."""

    instance: Instance
    expected_ratio: float


@dataclass(frozen=True)
class SearchResult:
    """
    Best ratio found by the ascent.

    Attributes:
        best_ratio (float): Largest gap / bound seen.
        best_inputs (dict[str, Any]): Serialized instance attaining it.
        iterations (int): Perturbation steps over all restarts.
        seed (int): Seed of the run.
        restart (int): Index of the restart that found best_ratio.
    """

    best_ratio: float
    best_inputs: dict[str, Any]
    iterations: int
    seed: int
    restart: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "best_ratio": self.best_ratio,
            "best_inputs": self.best_inputs,
            "iterations": self.iterations,
            "seed": self.seed,
            "restart": self.restart,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def evaluate(problem: SharpnessProblem, instance: Instance) -> BoundReport:
    """Run the bound under test on an instance."""
    weights = WeightVector(instance.weights)
    alpha = ScalarSeq(instance.alpha)
    x = VectorSeq(instance.x, problem.space) if instance.x is not None else None
    bound_id = problem.bound_id
    if bound_id is BoundId.SCALAR_DISK:
        return bound_scalar_disk(alpha, x, weights, problem.scalar_enclosure)
    if bound_id is BoundId.SEGMENT:
        return bound_complex_segment(alpha, x, weights, problem.scalar_enclosure)
    if bound_id is BoundId.INTERVAL:
        return bound_real_interval(alpha, x, weights, problem.scalar_enclosure)
    if bound_id is BoundId.VECTOR_BALL:
        return bound_vector_ball(alpha, x, weights, problem.vector_enclosure)
    if bound_id is BoundId.VARIANCE:
        return variance_bound(alpha, weights, problem.scalar_enclosure)
    if bound_id is BoundId.PSEUDO_VARIANCE:
        return pseudo_variance_bound(alpha, weights, problem.scalar_enclosure)
    if problem.uniform_weights:
        return classical_bounds_uniform(alpha, x, problem.holder)
    return classical_bounds(alpha, x, weights, problem.holder)


def evaluate_ratio(problem: SharpnessProblem, instance: Instance) -> float:
    """
    gap / bound of an instance, the constant included in the bound.

    Raises:
        BoundViolationError: The instance breaks the bound beyond the slack.
    """
    report = evaluate(problem, instance)
    if not report.holds():
        raise BoundViolationError(
            message=f"{problem.bound_id.value} violated: gap={report.gap!r} bound={report.bound(problem.bound_id)!r} "
            f"at {json.dumps(instance.to_dict())}",
            logger=logger,
        )
    return report.ratio(problem.bound_id)


def _unit_vector(problem: SharpnessProblem) -> np.ndarray:
    vector = np.zeros(problem.d, dtype=complex)
    vector[0] = 1.0
    return vector


def analytic_witness(bound_id: Union[BoundId, str], problem: Optional[SharpnessProblem] = None) -> Witness:
    """
    Two-point extremal configuration p = (1/2, 1/2) from the proofs, padded with zero weights up to problem.n.

    Scalar bounds take alpha = (c - R, c + R) and two distinct vectors; the ball bound takes x = (c - R v, c + R v)
    with ||v|| = 1 and alpha = (0, 1).

    Args:
        bound_id (Union[BoundId, str]): Bound with a known witness.
        problem (Optional[SharpnessProblem]): Problem fixing n, d, space and R. Defaults to n=2, d=1, R=1.

    Returns:
        Witness: The configuration and expected ratio 1.

    Raises:
        SharpnessError: NO_KNOWN_WITNESS for the classical forward-difference bounds.
    """
    bound_id = parse_bound_id(bound_id)
    if bound_id not in WITNESS_BOUNDS:
        raise SharpnessError(
            message=f"No extremal configuration is known for {bound_id.value}; search only...",
            code=ErrorCode.NO_KNOWN_WITNESS,
            logger=logger,
        )
    problem = problem or SharpnessProblem(bound_id=bound_id, n=2, d=1)
    n, radius, unit = problem.n, problem.radius, _unit_vector(problem)
    weights = np.zeros(n)
    weights[:2] = 0.5
    alpha = np.zeros(n, dtype=complex)
    x = np.zeros((n, problem.d), dtype=complex)
    if bound_id is BoundId.VECTOR_BALL:
        alpha[1] = 1.0
        x[0], x[1] = -radius * unit, radius * unit
    else:
        alpha[0], alpha[1] = -radius, radius
        x[1] = unit
    return Witness(
        instance=Instance(weights=weights, alpha=alpha, x=x if problem.uses_vectors else None), expected_ratio=1.0
    )


def witness_family(p1: float, radius: float = 1.0, center: complex = 0.0) -> tuple[Instance, Disk]:
    """
    Scalar-disk witness with weights (p1, 1 - p1), alpha = (center - R, center + R), x = (0, 1).

    Its ratio equals one for every p1 in (0, 1).
    """
    if not 0 < p1 < 1:
        raise GrussValidationError(message=f"p1 must lie in (0, 1), got {p1}...", code=ErrorCode.INVALID_PARAMETER)
    instance = Instance(
        weights=np.array([p1, 1 - p1]),
        alpha=np.array([center - radius, center + radius], dtype=complex),
        x=np.array([[0.0], [1.0]], dtype=complex),
    )
    return instance, Disk(center, radius)


def project_weights(weights: np.ndarray) -> np.ndarray:
    """Clamp negatives to zero and renormalize onto the simplex."""
    weights = np.clip(weights, 0.0, None)
    total = weights.sum()
    if not total > 0:
        return np.full(weights.size, 1.0 / weights.size)
    return weights / total


def project_scalars(alpha: np.ndarray, enclosure: Optional[Union[Disk, Segment, Interval]], real: bool) -> np.ndarray:
    """Radial shrink toward the disk center (clip for intervals); drop imaginary parts for real problems."""
    alpha = np.asarray(alpha, dtype=complex)
    if real:
        alpha = alpha.real.astype(complex)
    if enclosure is None:
        return alpha
    if isinstance(enclosure, Interval):
        return np.clip(alpha.real, enclosure.low, enclosure.high).astype(complex)
    disk = enclosure.as_disk()
    offset = alpha - disk.center
    distance = np.abs(offset)
    scale = np.where(distance > disk.radius, disk.radius / np.where(distance > 0, distance, 1.0), 1.0)
    return disk.center + offset * scale


def project_vectors(x: np.ndarray, ball: Optional[Ball], real: bool) -> np.ndarray:
    """Radial shrink toward the ball center."""
    x = np.asarray(x, dtype=complex)
    if real:
        x = x.real.astype(complex)
    if ball is None:
        return x
    offset = x - ball.center
    distance = ball.space.norms(offset)
    scale = np.where(distance > ball.radius, ball.radius / np.where(distance > 0, distance, 1.0), 1.0)
    return ball.center + offset * scale[:, None]


def _random_complex(rng: np.random.Generator, shape: tuple[int, ...], real: bool) -> np.ndarray:
    values = rng.uniform(-1.0, 1.0, size=shape).astype(complex)
    if not real:
        values = values + 1j * rng.uniform(-1.0, 1.0, size=shape)
    return values


def _project(problem: SharpnessProblem, instance: Instance) -> Instance:
    weights = instance.weights if problem.uniform_weights else project_weights(instance.weights)
    alpha = project_scalars(instance.alpha, problem.scalar_enclosure, problem.real_scalars)
    x = None
    if instance.x is not None:
        x = project_vectors(instance.x, problem.vector_enclosure, problem.scalar_field is ScalarField.REAL)
    return Instance(weights=weights, alpha=alpha, x=x)


def sample_instance(problem: SharpnessProblem, rng: np.random.Generator) -> Instance:
    """Random admissible instance: normalized positive weights, projected scalars and vectors."""
    n = problem.n
    weights = np.full(n, 1.0 / n) if problem.uniform_weights else rng.random(n) + 1e-3
    alpha = _random_complex(rng, (n,), problem.real_scalars) * max(problem.radius, 1.0)
    x = None
    if problem.uses_vectors:
        x = _random_complex(rng, (n, problem.d), problem.scalar_field is ScalarField.REAL) * max(problem.radius, 1.0)
    return _project(problem, Instance(weights=weights, alpha=alpha, x=x))


def _perturb(problem: SharpnessProblem, instance: Instance, rng: np.random.Generator, step: float) -> Instance:
    groups = ["alpha"]
    if not problem.uniform_weights:
        groups.append("weights")
    if instance.x is not None:
        groups.append("x")
    group = groups[rng.integers(len(groups))]
    weights, alpha = instance.weights.copy(), instance.alpha.copy()
    x = instance.x.copy() if instance.x is not None else None
    delta = step * rng.standard_normal()
    if group == "weights":
        weights[rng.integers(weights.size)] += delta
    elif group == "alpha":
        index = rng.integers(alpha.size)
        alpha[index] += delta if problem.real_scalars or rng.random() < 0.5 else 1j * delta
    else:
        row, column = rng.integers(x.shape[0]), rng.integers(x.shape[1])
        real_part = problem.scalar_field is ScalarField.REAL or rng.random() < 0.5
        x[row, column] += delta if real_part else 1j * delta
    return _project(problem, Instance(weights=weights, alpha=alpha, x=x))


@dataclass(frozen=True, eq=False)
class _RestartOutcome:
    ratio: float
    instance: Instance
    restart: int


def _ascend(
    problem: SharpnessProblem, start: Instance, rng: np.random.Generator, budget: int, restart: int
) -> _RestartOutcome:
    best, best_ratio = start, evaluate_ratio(problem, start)
    step = GrussConstants.SEARCH_INITIAL_STEP
    for _ in range(budget):
        candidate = _perturb(problem, best, rng, step)
        ratio = evaluate_ratio(problem, candidate)
        if ratio > best_ratio:
            best, best_ratio = candidate, ratio
        step *= GrussConstants.SEARCH_STEP_DECAY
    logger.debug("%s restart %d: best ratio %r", problem.bound_id.value, restart, best_ratio)
    return _RestartOutcome(ratio=best_ratio, instance=best, restart=restart)


def search_max_ratio(
    problem: SharpnessProblem,
    budget: int = GrussConstants.SEARCH_BUDGET,
    restarts: int = GrussConstants.SEARCH_RESTARTS,
    seed: int = 0,
    workers: int = 1,
) -> SearchResult:
    """
    Maximize gap / bound by multi-restart projected coordinate ascent.

    Each restart starts from a random admissible instance (restart 0 from the analytic witness when one exists),
    perturbs one coordinate at a time with a decaying step, projects back onto the constraints and keeps only
    improvements. Restarts draw from independent generators seeded by (seed, restart), so the result does not
    depend on scheduling; ties go to the lower restart index.

    Args:
        problem (SharpnessProblem): Inequality and constraint set.
        budget (int): Perturbation steps per restart, >= 1.
        restarts (int): Number of restarts, >= 1.
        seed (int): Seed of the run.
        workers (int): Threads running restarts concurrently.

    Returns:
        SearchResult: Best ratio and instance.

    Raises:
        SharpnessError: INFEASIBLE_PROBLEM when no instance can have a positive bound.
        BoundViolationError: Some visited instance breaks the bound.
    """
    if budget < 1 or restarts < 1:
        raise GrussValidationError(
            message=f"Search needs budget >= 1 and restarts >= 1, got {budget} and {restarts}...",
            code=ErrorCode.INVALID_PARAMETER,
            logger=logger,
        )
    if problem.n < 2 or not problem.radius > 0:
        raise SharpnessError(
            message=f"{problem.bound_id.value} with n={problem.n}, R={problem.radius} admits no nonzero bound...",
            code=ErrorCode.INFEASIBLE_PROBLEM,
            logger=logger,
        )
    witness = analytic_witness(problem.bound_id, problem).instance if problem.bound_id in WITNESS_BOUNDS else None

    def run(restart: int) -> _RestartOutcome:
        rng = np.random.default_rng([seed, restart])
        start = witness if restart == 0 and witness is not None else sample_instance(problem, rng)
        return _ascend(problem, start, rng, budget, restart)

    if workers <= 1:
        outcomes = [run(restart) for restart in range(restarts)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(restarts)))
    best = max(outcomes, key=lambda outcome: (outcome.ratio, -outcome.restart))
    logger.info("%s: best ratio %r after %d restarts", problem.bound_id.value, best.ratio, restarts)
    return SearchResult(
        best_ratio=best.ratio,
        best_inputs=best.instance.to_dict(),
        iterations=budget * restarts,
        seed=seed,
        restart=best.restart,
    )


@dataclass(frozen=True)
class SharpnessConfig:
    """Shared settings of a sharpness report."""

    n: int = GrussConstants.SEARCH_N
    d: int = GrussConstants.SEARCH_D
    norm_family: NormFamily = NormFamily(GrussConstants.SEARCH_NORM)
    p: Optional[float] = None
    scalar_field: ScalarField = ScalarField.COMPLEX
    budget: int = GrussConstants.SEARCH_BUDGET
    restarts: int = GrussConstants.SEARCH_RESTARTS
    seed: int = 0
    workers: int = 1

    def problem(self, bound_id: BoundId) -> SharpnessProblem:
        return SharpnessProblem(
            bound_id=bound_id,
            n=self.n,
            d=self.d,
            norm_family=self.norm_family,
            p=self.p,
            scalar_field=self.scalar_field,
        )


@dataclass(frozen=True)
class SharpnessRow:
    """Verdict for one bound."""

    bound_id: BoundId
    claimed_constant: float
    witness_ratio: Optional[float]
    searched_ratio: Optional[float]
    verdict: Verdict
    search: Optional[SearchResult] = None
    note: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "bound_id": self.bound_id.value,
            "claimed_constant": self.claimed_constant,
            "witness_ratio": self.witness_ratio,
            "searched_ratio": self.searched_ratio,
            "verdict": self.verdict.value,
            "search": self.search.to_dict() if self.search else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class SharpnessReport:
    """Summary table over several bounds."""

    rows: list[SharpnessRow]
    config: SharpnessConfig

    @property
    def has_violation(self) -> bool:
        return any(row.verdict is Verdict.VIOLATION for row in self.rows)


def _verdict(ratios: list[float]) -> Verdict:
    best = max(ratios, default=0.0)
    if best > 1 + GrussConstants.BOUND_REL_TOL:
        return Verdict.VIOLATION
    if best >= 1 - GrussConstants.ATTAINED_TOL:
        return Verdict.ATTAINED
    return Verdict.CONSISTENT


def sharpness_report(
    bound_ids: Optional[Iterable[Union[BoundId, str]]] = None, config: Optional[SharpnessConfig] = None
) -> SharpnessReport:
    """
    Witness ratio, searched ratio and verdict per bound.

    ATTAINED when the best ratio reaches 1 - ATTAINED_TOL, VIOLATION above 1 + BOUND_REL_TOL, CONSISTENT otherwise.
    With a zero budget only bounds with an analytic witness get a row.

    Args:
        bound_ids (Optional[Iterable[Union[BoundId, str]]]): Bounds to check. Defaults to the witness-backed ones.
        config (Optional[SharpnessConfig]): Search settings.

    Returns:
        SharpnessReport: One row per bound.
    """
    config = config or SharpnessConfig()
    bound_ids = [parse_bound_id(b) for b in (bound_ids if bound_ids is not None else WITNESS_BOUNDS)]
    rows: list[SharpnessRow] = []
    for bound_id in bound_ids:
        problem = config.problem(bound_id)
        witness_ratio = None
        if bound_id in WITNESS_BOUNDS and problem.n >= 2:
            witness_ratio = evaluate_ratio(problem, analytic_witness(bound_id, problem).instance)
        if config.budget == 0 and witness_ratio is None:
            continue
        search, note = None, None
        if config.budget > 0:
            try:
                search = search_max_ratio(problem, config.budget, config.restarts, config.seed, config.workers)
            except BoundViolationError as err:
                rows.append(
                    SharpnessRow(
                        bound_id, problem.claimed_constant, witness_ratio, math.inf, Verdict.VIOLATION, note=str(err)
                    )
                )
                continue
        searched_ratio = search.best_ratio if search else None
        ratios = [ratio for ratio in (witness_ratio, searched_ratio) if ratio is not None]
        verdict = _verdict(ratios)
        if bound_id not in WITNESS_BOUNDS:
            note = "no analytic witness; search only"
        logger.info("%s: %s", bound_id.value, verdict.value)
        rows.append(
            SharpnessRow(bound_id, problem.claimed_constant, witness_ratio, searched_ratio, verdict, search, note)
        )
    return SharpnessReport(rows=rows, config=config)

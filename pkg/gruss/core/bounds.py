"""
Grüss-type upper bounds for the Chebyshev functional.

Every bound returns a BoundReport holding the gap next to the bound value(s), so callers can form ratios. Bounds
whose hypothesis is an enclosure raise EnclosureViolationError instead of certifying data outside it.
"""

# Standard Library
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

# Third Party Library
import numpy as np

# Project Library
from gruss.core.seqcore import (
    AnyEnclosure,
    Ball,
    Disk,
    Interval,
    NormedSpace,
    ScalarEnclosure,
    ScalarSeq,
    VectorSeq,
    WeightVector,
    as_ball,
    compensated_sum,
    forward_differences,
    gruss_gap_direct,
    weighted_mean_scalar,
    weighted_mean_vector,
)
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import EnclosureViolationError, ErrorCode, GrussValidationError
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")


class BoundId(str, Enum):
    """Identifier of one inequality."""

    SCALAR_DISK = "scalar_disk"
    SEGMENT = "segment"
    INTERVAL = "interval"
    VECTOR_BALL = "vector_ball"
    VECTOR_BALL_CBS = "vector_ball_cbs"
    VARIANCE = "variance"
    PSEUDO_VARIANCE = "pseudo_variance"
    CHAIN_MEAN_DEVIATION = "chain_mean_deviation"
    CHAIN_VARIANCE = "chain_variance"
    CHAIN_PRODUCT = "chain_product"
    CLASSICAL_MAXMAX = "classical_maxmax"
    CLASSICAL_SUMSUM = "classical_sumsum"
    CLASSICAL_HOLDER = "classical_holder"
    UNIFORM_MAXMAX = "uniform_maxmax"
    UNIFORM_SUMSUM = "uniform_sumsum"
    UNIFORM_HOLDER = "uniform_holder"
    DFT = "dft"
    MELLIN = "mellin"
    MU = "mu"
    POLY = "poly"
    ROOTS = "roots"


def bound_ratio(gap: float, bound: float, tol_abs: float = GrussConstants.BOUND_ABS_TOL) -> float:
    """
    Ratio gap / bound, defined as 0 when both vanish.

    A zero bound with a gap above the absolute tolerance gives +inf.
    """
    if bound > 0:
        return gap / bound
    return 0.0 if gap <= tol_abs else math.inf


def within_bound(
    gap: float,
    bound: float,
    tol_rel: float = GrussConstants.BOUND_REL_TOL,
    tol_abs: float = GrussConstants.BOUND_ABS_TOL,
) -> bool:
    """True when gap <= bound (1 + tol_rel) + tol_abs."""
    return gap <= bound * (1 + tol_rel) + tol_abs


@dataclass(frozen=True)
class BoundReport:
    """
    Gap together with every applicable bound value.

    Attributes:
        gap (float): Left-hand side of the inequality.
        bounds (dict[str, float]): Bound identifier to bound value.
        witness_inputs (dict[str, Any]): Summary of the inputs the report was computed from.
    """

    gap: float
    bounds: dict[str, float]
    witness_inputs: dict[str, Any] = field(default_factory=dict)

    @property
    def ratios(self) -> dict[str, float]:
        return {bound_id: bound_ratio(self.gap, bound) for bound_id, bound in self.bounds.items()}

    def bound(self, bound_id: Union[BoundId, str]) -> float:
        return self.bounds[BoundId(bound_id).value]

    def ratio(self, bound_id: Union[BoundId, str]) -> float:
        return self.ratios[BoundId(bound_id).value]

    def violations(
        self, tol_rel: float = GrussConstants.BOUND_REL_TOL, tol_abs: float = GrussConstants.BOUND_ABS_TOL
    ) -> list[str]:
        """Bound identifiers the gap exceeds beyond the slack."""
        return [
            bound_id for bound_id, bound in self.bounds.items() if not within_bound(self.gap, bound, tol_rel, tol_abs)
        ]

    def holds(
        self, tol_rel: float = GrussConstants.BOUND_REL_TOL, tol_abs: float = GrussConstants.BOUND_ABS_TOL
    ) -> bool:
        return not self.violations(tol_rel, tol_abs)


@dataclass(frozen=True)
class HolderPair:
    """
    Conjugate Hölder exponents, 1/p + 1/q = 1 with p, q > 1.

    Attributes:
        p (float): Exponent applied to the scalar differences.
        q (float): Exponent applied to the vector differences.
    """

    p: float
    q: float

    def __post_init__(self) -> None:
        if not (self.p > 1 and self.q > 1) or abs(1 / self.p + 1 / self.q - 1) > 1e-12:
            raise GrussValidationError(
                message=f"({self.p}, {self.q}) is not a conjugate Hölder pair...", code=ErrorCode.INVALID_HOLDER
            )

    @classmethod
    def conjugate(cls, p: float) -> "HolderPair":
        """Pair (p, p / (p - 1))."""
        if not p > 1:
            raise GrussValidationError(
                message=f"Hölder exponent must exceed 1, got {p}...", code=ErrorCode.INVALID_HOLDER
            )
        return cls(p=p, q=p / (p - 1))


@dataclass(frozen=True)
class GrussChain:
    """The four terms t0 <= t1 <= t2 <= t3 of the complex-number Grüss chain."""

    t0: float
    t1: float
    t2: float
    t3: float

    @property
    def terms(self) -> tuple[float, float, float, float]:
        return (self.t0, self.t1, self.t2, self.t3)

    def is_monotone(
        self, tol_rel: float = GrussConstants.BOUND_REL_TOL, tol_abs: float = GrussConstants.BOUND_ABS_TOL
    ) -> bool:
        terms = self.terms
        return all(within_bound(terms[k], terms[k + 1], tol_rel, tol_abs) for k in range(3))

    def as_report(self, witness_inputs: Optional[dict[str, Any]] = None) -> BoundReport:
        """Report with t0 as the gap and t1..t3 as bounds."""
        return BoundReport(
            gap=self.t0,
            bounds={
                BoundId.CHAIN_MEAN_DEVIATION.value: self.t1,
                BoundId.CHAIN_VARIANCE.value: self.t2,
                BoundId.CHAIN_PRODUCT.value: self.t3,
            },
            witness_inputs=witness_inputs or {},
        )


def _describe_enclosure(enclosure: Optional[AnyEnclosure]) -> Optional[dict[str, Any]]:
    if enclosure is None:
        return None
    if isinstance(enclosure, Ball):
        return {"type": "ball", "center": [complex(c) for c in enclosure.center], "radius": enclosure.radius}
    if isinstance(enclosure, Interval):
        return {"type": "interval", "m": enclosure.low, "M": enclosure.high}
    if isinstance(enclosure, Disk):
        return {"type": "disk", "center": enclosure.center, "radius": enclosure.radius}
    return {"type": "segment", "a": enclosure.start, "A": enclosure.end}


def summarize_inputs(
    alpha: Optional[ScalarSeq] = None,
    x: Optional[VectorSeq] = None,
    p: Optional[WeightVector] = None,
    enclosure: Optional[AnyEnclosure] = None,
) -> dict[str, Any]:
    """Small echo of the inputs carried by reports."""
    summary: dict[str, Any] = {}
    for sequence in (alpha, x, p):
        if sequence is not None:
            summary["n"] = len(sequence)
    if x is not None:
        summary["d"] = x.dimension
        summary["norm"] = x.space.norm_family.value
        if x.space.p is not None:
            summary["p"] = x.space.p
    if p is not None:
        summary["uniform_weights"] = p.is_uniform
    if enclosure is not None:
        summary["enclosure"] = _describe_enclosure(enclosure)
    return summary


def _require_members(enclosure: AnyEnclosure, values: np.ndarray, what: str) -> None:
    mask = enclosure.members(values)
    if not np.all(mask):
        index = int(np.argmin(mask))
        raise EnclosureViolationError(
            message=f"{what}[{index + 1}] lies outside the {type(enclosure).__name__.lower()} enclosure...",
            logger=logger,
        )


def mean_deviation_vectors(x: VectorSeq, p: WeightVector) -> float:
    """sum p_i ||x_i - sum p_j x_j||."""
    return float(compensated_sum(p.weights * x.space.norms(x.points - weighted_mean_vector(x, p))))


def mean_deviation_scalars(alpha: ScalarSeq, p: WeightVector) -> float:
    """sum p_i |alpha_i - sum p_j alpha_j|."""
    return float(compensated_sum(p.weights * np.abs(alpha.values - weighted_mean_scalar(alpha, p))))


def variance(alpha: ScalarSeq, p: WeightVector) -> float:
    """
    Weighted variance sum p_i |alpha_i|^2 - |sum p_i alpha_i|^2.

    Evaluated in the centered form sum p_i |alpha_i - mean|^2, equal to it and nonnegative in floating point.

    Args:
        alpha (ScalarSeq): Scalars.
        p (WeightVector): Weights of the same length.

    Returns:
        float: Nonnegative variance.
    """
    centered = alpha.values - weighted_mean_scalar(alpha, p)
    value = float(compensated_sum(p.weights * (centered.real**2 + centered.imag**2)))
    return max(value, 0.0)


def _scalar_disk_report(
    alpha: ScalarSeq, x: VectorSeq, p: WeightVector, disk: Disk, bound_id: BoundId, enclosure: AnyEnclosure
) -> BoundReport:
    gap = gruss_gap_direct(alpha, x, p).gap
    bound = disk.radius * mean_deviation_vectors(x, p)
    logger.debug("%s: gap=%r bound=%r", bound_id.value, gap, bound)
    return BoundReport(gap=gap, bounds={bound_id.value: bound}, witness_inputs=summarize_inputs(alpha, x, p, enclosure))


def bound_scalar_disk(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, disk: Disk) -> BoundReport:
    """
    Scalars in a disk: gap <= R sum p_i ||x_i - sum p_j x_j||. The constant 1 is sharp.

    Args:
        alpha (ScalarSeq): Scalars, each in the disk.
        x (VectorSeq): Vectors.
        p (WeightVector): Weights.
        disk (Disk): Enclosure D(center, R) of the scalars.

    Returns:
        BoundReport: Gap and the SCALAR_DISK bound.

    Raises:
        EnclosureViolationError: Some alpha_i lies outside the disk.
    """
    _require_members(disk, alpha.values, "alpha")
    return _scalar_disk_report(alpha, x, p, disk, BoundId.SCALAR_DISK, disk)


def bound_complex_segment(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, seg: ScalarEnclosure) -> BoundReport:
    """
    Scalars in the disk spanned by a and A: gap <= |A - a|/2 sum p_i ||x_i - sum p_j x_j||. The constant 1/2 is
    best possible.
    """
    _require_members(seg, alpha.values, "alpha")
    return _scalar_disk_report(alpha, x, p, seg.as_disk(), BoundId.SEGMENT, seg)


def bound_real_interval(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, iv: Interval) -> BoundReport:
    """Real scalars in [m, M]: gap <= (M - m)/2 sum p_i ||x_i - sum p_j x_j||. The constant 1/2 is best possible."""
    if not alpha.is_real:
        raise GrussValidationError(
            message="Interval bound needs real scalars...", code=ErrorCode.NOT_REAL, logger=logger
        )
    _require_members(iv, alpha.values, "alpha")
    return _scalar_disk_report(alpha, x, p, iv.as_disk(), BoundId.INTERVAL, iv)


def bound_vector_ball(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, ball: AnyEnclosure) -> BoundReport:
    """
    Vectors in a ball: gap <= R sum p_i |alpha_i - sum p_j alpha_j|. The constant 1 is sharp.

    Args:
        alpha (ScalarSeq): Scalars.
        x (VectorSeq): Vectors, each in the ball.
        p (WeightVector): Weights.
        ball (AnyEnclosure): Ball B(center, R) of x's space (scalar enclosures allowed when d = 1).

    Returns:
        BoundReport: Gap and the VECTOR_BALL bound.
    """
    ball = as_ball(ball, x.space)
    _require_members(ball, x.points, "x")
    gap = gruss_gap_direct(alpha, x, p).gap
    bound = ball.radius * mean_deviation_scalars(alpha, p)
    logger.debug("vector_ball: gap=%r bound=%r", gap, bound)
    return BoundReport(
        gap=gap, bounds={BoundId.VECTOR_BALL.value: bound}, witness_inputs=summarize_inputs(alpha, x, p, ball)
    )


def bound_vector_ball_cbs(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, ball: AnyEnclosure) -> BoundReport:
    """
    Coarser ball bound gap <= R (sum p_i |alpha_i|^2 - |sum p_i alpha_i|^2)^(1/2), reported with the finer one.

    Returns:
        BoundReport: Gap, VECTOR_BALL and VECTOR_BALL_CBS bounds.
    """
    fine = bound_vector_ball(alpha, x, p, ball)
    radius = as_ball(ball, x.space).radius
    bounds = dict(fine.bounds)
    bounds[BoundId.VECTOR_BALL_CBS.value] = radius * math.sqrt(variance(alpha, p))
    return BoundReport(gap=fine.gap, bounds=bounds, witness_inputs=fine.witness_inputs)


def variance_bound(alpha: ScalarSeq, p: WeightVector, seg: ScalarEnclosure) -> BoundReport:
    """
    Variance of scalars in the disk spanned by a and A is at most |A - a|^2 / 4. The constant 1/4 is best possible.

    Returns:
        BoundReport: Variance in the gap slot and the VARIANCE bound.
    """
    _require_members(seg, alpha.values, "alpha")
    return BoundReport(
        gap=variance(alpha, p),
        bounds={BoundId.VARIANCE.value: seg.as_disk().radius ** 2},
        witness_inputs=summarize_inputs(alpha=alpha, p=p, enclosure=seg),
    )


def pseudo_variance(alpha: ScalarSeq, p: WeightVector) -> float:
    """|sum p_i alpha_i^2 - (sum p_i alpha_i)^2|, without conjugation."""
    centered = alpha.values - weighted_mean_scalar(alpha, p)
    return abs(complex(compensated_sum(p.weights * centered**2)))


def pseudo_variance_bound(alpha: ScalarSeq, p: WeightVector, seg: ScalarEnclosure) -> BoundReport:
    """
    |sum p_i alpha_i^2 - (sum p_i alpha_i)^2| <= |A - a|^2 / 4 for scalars in the disk spanned by a and A.

    Returns:
        BoundReport: Pseudo-variance in the gap slot and the PSEUDO_VARIANCE bound.
    """
    _require_members(seg, alpha.values, "alpha")
    return BoundReport(
        gap=pseudo_variance(alpha, p),
        bounds={BoundId.PSEUDO_VARIANCE.value: seg.as_disk().radius ** 2},
        witness_inputs=summarize_inputs(alpha=alpha, p=p, enclosure=seg),
    )


def gruss_chain(
    alpha: ScalarSeq, beta: ScalarSeq, p: WeightVector, seg_a: ScalarEnclosure, seg_b: ScalarEnclosure
) -> GrussChain:
    """
    Chain of Grüss inequalities for two complex sequences.

    t0 = |sum p alpha beta - sum p alpha sum p beta|, t1 = |A-a|/2 sum p_i |beta_i - mean beta|,
    t2 = |A-a|/2 sqrt(variance beta), t3 = |A-a||B-b|/4.

    Args:
        alpha (ScalarSeq): First sequence, in seg_a's disk.
        beta (ScalarSeq): Second sequence, in seg_b's disk.
        p (WeightVector): Weights.
        seg_a (ScalarEnclosure): Enclosure of alpha.
        seg_b (ScalarEnclosure): Enclosure of beta.

    Returns:
        GrussChain: The four terms.
    """
    _require_members(seg_a, alpha.values, "alpha")
    _require_members(seg_b, beta.values, "beta")
    beta_as_vectors = VectorSeq(beta.values.reshape(-1, 1), NormedSpace.modulus())
    half_a = seg_a.as_disk().radius
    half_b = seg_b.as_disk().radius
    chain = GrussChain(
        t0=gruss_gap_direct(alpha, beta_as_vectors, p).gap,
        t1=half_a * mean_deviation_scalars(beta, p),
        t2=half_a * math.sqrt(variance(beta, p)),
        t3=half_a * half_b,
    )
    logger.debug("chain: %r", chain.terms)
    return chain


def _difference_norms(alpha: ScalarSeq, x: VectorSeq) -> tuple[np.ndarray, np.ndarray]:
    if len(alpha) < 2:
        raise GrussValidationError(
            message="Classical bounds need n >= 2...", code=ErrorCode.TOO_SHORT, logger=logger
        )
    delta_alpha = np.abs(forward_differences(alpha).values)
    delta_x = x.space.norms(forward_differences(x).points)
    return delta_alpha, delta_x


def _classical_entries(
    delta_alpha: np.ndarray, delta_x: np.ndarray, holder: HolderPair, constants: tuple[float, float, float]
) -> dict[str, float]:
    maxmax, sumsum, holder_constant = constants
    return {
        "maxmax": maxmax * float(delta_alpha.max()) * float(delta_x.max()),
        "sumsum": sumsum * math.fsum(delta_alpha) * math.fsum(delta_x),
        "holder": holder_constant
        * float(np.linalg.norm(delta_alpha, ord=holder.p))
        * float(np.linalg.norm(delta_x, ord=holder.q)),
    }


def weighted_index_spread(weights: np.ndarray) -> float:
    """
    sum_{j<i} p_i p_j (i - j), in linear time from the prefix sums of p_j and j p_j.

    Args:
        weights (np.ndarray): Weights p_1..p_n.

    Returns:
        float: The pair spread of the index under the weights.
    """
    weights = np.asarray(weights, dtype=float)
    index = np.arange(1, weights.size + 1, dtype=float)
    mass_before = np.concatenate(([0.0], np.cumsum(weights)[:-1]))
    moment_before = np.concatenate(([0.0], np.cumsum(index * weights)[:-1]))
    return math.fsum(weights * (index * mass_before - moment_before))


def classical_bounds(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, holder: HolderPair) -> BoundReport:
    """
    Forward-difference bounds for weighted means.

    MAXMAX = [sum i^2 p_i - (sum i p_i)^2] max|d alpha| max||d x||,
    SUMSUM = 1/2 sum p_i (1 - p_i) sum|d alpha| sum||d x||,
    HOLDER = sum_{j<i} p_i p_j (i - j) (sum |d alpha_k|^p)^(1/p) (sum ||d x_k||^q)^(1/q).

    Args:
        alpha (ScalarSeq): Scalars (real or complex), n >= 2.
        x (VectorSeq): Vectors.
        p (WeightVector): Weights.
        holder (HolderPair): Exponents of the third bound.

    Returns:
        BoundReport: Gap and the three CLASSICAL_* bounds.
    """
    delta_alpha, delta_x = _difference_norms(alpha, x)
    weights = p.weights
    index = np.arange(1, len(weights) + 1, dtype=float)
    index_variance = math.fsum(index**2 * weights) - math.fsum(index * weights) ** 2
    constants = (
        max(index_variance, 0.0),
        0.5 * math.fsum(weights * (1 - weights)),
        weighted_index_spread(weights),
    )
    entries = _classical_entries(delta_alpha, delta_x, holder, constants)
    gap = gruss_gap_direct(alpha, x, p).gap
    return BoundReport(
        gap=gap,
        bounds={
            BoundId.CLASSICAL_MAXMAX.value: entries["maxmax"],
            BoundId.CLASSICAL_SUMSUM.value: entries["sumsum"],
            BoundId.CLASSICAL_HOLDER.value: entries["holder"],
        },
        witness_inputs=summarize_inputs(alpha, x, p),
    )


def classical_bounds_uniform(alpha: ScalarSeq, x: VectorSeq, holder: HolderPair) -> BoundReport:
    """
    Unweighted forward-difference bounds with constants (n^2-1)/12, (1-1/n)/2 and (n^2-1)/(6n).

    The gap is taken with uniform weights 1/n.
    """
    delta_alpha, delta_x = _difference_norms(alpha, x)
    n = len(alpha)
    constants = ((n * n - 1) / 12, 0.5 * (1 - 1 / n), (n * n - 1) / (6 * n))
    entries = _classical_entries(delta_alpha, delta_x, holder, constants)
    uniform = WeightVector.uniform(n)
    gap = gruss_gap_direct(alpha, x, uniform).gap
    return BoundReport(
        gap=gap,
        bounds={
            BoundId.UNIFORM_MAXMAX.value: entries["maxmax"],
            BoundId.UNIFORM_SUMSUM.value: entries["sumsum"],
            BoundId.UNIFORM_HOLDER.value: entries["holder"],
        },
        witness_inputs=summarize_inputs(alpha, x, uniform),
    )


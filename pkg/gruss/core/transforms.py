"""
Discrete Fourier and Mellin transforms of vector sequences, and their mean-surrogate bounds.

Each transform is a kernel sum sum_k alpha_k x_k. Replacing it by (sum_k alpha_k) times the mean of the x_k costs at
most R sum_k |alpha_k - (1/n) sum_j alpha_j| when every x_k lies in a ball of radius R. Transforms are evaluated by
direct summation for one order at a time.
"""

# Standard Library
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Union

# Third Party Library
import numpy as np

# Project Library
from gruss.core.bounds import BoundId, BoundReport, summarize_inputs
from gruss.core.seqcore import AnyEnclosure, VectorSeq, as_ball, compensated_sum
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import (
    EnclosureViolationError,
    ErrorCode,
    GrussBaseException,
    GrussValidationError,
    OrderOverflowError,
    SingularParameterError,
)
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")


# 2 pi as an exact rational
TWO_PI = Fraction("6.283185307179586476925286766559005768394338798750211641949889184615632812572418")
# k^p must stay below the square root of the float range, norms square their entries
LOG_HALF_RANGE = 0.5 * math.log(sys.float_info.max)
SPLITTER = 134217729.0


def _leading_bits(value: Fraction, bits: int) -> float:
    """value rounded to a float with at most `bits` significant bits."""
    exponent = math.frexp(float(value))[1]
    scale = Fraction(2) ** (bits - exponent)
    return float(Fraction(round(value * scale)) / scale)


# 2 pi = TWO_PI_HIGH + TWO_PI_MIDDLE + TWO_PI_LOW; q * TWO_PI_HIGH and q * TWO_PI_MIDDLE are exact for |q| < 2^30
TWO_PI_HIGH = _leading_bits(TWO_PI, 23)
TWO_PI_MIDDLE = _leading_bits(TWO_PI - Fraction(TWO_PI_HIGH), 23)
TWO_PI_LOW = float(TWO_PI - Fraction(TWO_PI_HIGH) - Fraction(TWO_PI_MIDDLE))


def _split(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    scaled = SPLITTER * values
    high = scaled - (scaled - values)
    return high, values - high


def _two_product(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """a * b as an unevaluated sum product + error, exact barring overflow."""
    product = a * b
    a_high, a_low = _split(a)
    b_high, b_low = _split(b)
    error = ((a_high * b_high - product) + a_high * b_low + a_low * b_high) + a_low * b_low
    return product, error


def reduced_angle(scale: float, multiples: Union[int, np.ndarray]) -> np.ndarray:
    """
    scale * N reduced modulo 2 pi into about [-pi, pi], for integers N below 2^53.

    The product is carried as an exact pair and 2 pi is removed in three pieces, so the reduced angle keeps a small
    relative error while |scale * N| < 2^30 pi. Larger angles are still reduced, with an absolute error growing like
    their magnitude times the machine epsilon.

    Args:
        scale (float): Real factor, e.g. w or 2 w.
        multiples (Union[int, np.ndarray]): Integer multiples N.

    Returns:
        np.ndarray: Reduced angles, same shape as multiples.
    """
    multiples = np.asarray(multiples, dtype=float)
    product, error = _two_product(np.full_like(multiples, scale), multiples)
    turns = np.rint(product / float(TWO_PI))
    return (((product - turns * TWO_PI_HIGH) - turns * TWO_PI_MIDDLE) + error) - turns * TWO_PI_LOW


def check_power_range(exponent: float, n: int, log_limit: float = LOG_HALF_RANGE) -> None:
    """
    Fail when n^exponent, the largest k^exponent for k <= n, is beyond exp(log_limit).

    Raises:
        OrderOverflowError: The power does not fit.
    """
    if exponent > 0 and n > 1 and exponent * math.log(n) > log_limit:
        raise OrderOverflowError(message=f"{n}^{exponent!r} exceeds the floating point range...", logger=logger)


@dataclass(frozen=True)
class FourierParams:
    """
    Parameters of F_w(x)(m) = sum_{k=1}^n exp(2 w i m k) x_k.

    Attributes:
        omega (float): Real frequency parameter w.
        m (int): Order, 1 <= m <= n.
        n (int): Sequence length.
    """

    omega: float
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 1 <= self.m <= self.n or not math.isfinite(self.omega):
            raise GrussValidationError(
                message=f"Fourier parameters need finite w and 1 <= m <= n, got w={self.omega}, m={self.m}, "
                f"n={self.n}...",
                code=ErrorCode.INVALID_PARAMETER,
            )

    @property
    def singular(self) -> bool:
        """True when w m is within the singularity tolerance of a multiple of pi."""
        return abs(math.sin(float(reduced_angle(self.omega, self.m)))) < GrussConstants.SINGULARITY_TOL


@dataclass(frozen=True)
class MellinParams:
    """
    Parameters of M(x)(m) = sum_{k=1}^n k^(m-1) x_k.

    Attributes:
        m (int): Transform order, m >= 1.
        n (int): Sequence length, n >= 1.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise GrussValidationError(
                message=f"Mellin parameters need m, n >= 1, got m={self.m}, n={self.n}...",
                code=ErrorCode.INVALID_PARAMETER,
            )


class SumMethod(str, Enum):
    """How a kernel sum was evaluated."""

    CLOSED_FORM = "closed_form"
    DIRECT_FALLBACK = "direct_fallback"


@dataclass(frozen=True)
class DirichletSum:
    """sum_{k=1}^n exp(2 w i m k) and how it was obtained."""

    value: complex
    method: SumMethod


@dataclass(frozen=True)
class BatchEntry:
    """One order of a batch evaluation: a report, or the reason it was skipped."""

    order: int
    report: Optional[BoundReport] = None
    skipped: Optional[str] = None


def _check_length(x: VectorSeq, n: int) -> None:
    if len(x) != n:
        raise GrussValidationError(
            message=f"Sequence has {len(x)} terms, parameters expect {n}...",
            code=ErrorCode.LENGTH_MISMATCH,
            logger=logger,
        )


def fourier_kernel(params: FourierParams) -> np.ndarray:
    """exp(2 w i m k) for k = 1..n."""
    return np.exp(1j * reduced_angle(2 * params.omega, params.m * np.arange(1, params.n + 1, dtype=np.int64)))


def mellin_kernel(params: MellinParams) -> np.ndarray:
    """
    k^(m-1) for k = 1..n.

    Raises:
        OrderOverflowError: n^m, which bounds the kernel sum, is too large for the norms taken downstream.
    """
    check_power_range(params.m, params.n)
    return np.arange(1, params.n + 1, dtype=float) ** (params.m - 1)


def kernel_transform(kernel: np.ndarray, x: VectorSeq) -> np.ndarray:
    """sum_k kernel_k x_k by direct (compensated for long inputs) summation."""
    kernel = np.asarray(kernel, dtype=complex).reshape(-1)
    _check_length(x, kernel.size)
    return np.asarray(compensated_sum(kernel[:, None] * x.points, axis=0), dtype=complex)


def kernel_surrogate_bound(
    kernel: np.ndarray,
    x: VectorSeq,
    enclosure: AnyEnclosure,
    kernel_sum: Optional[complex] = None,
    bound_id: BoundId = BoundId.VECTOR_BALL,
) -> BoundReport:
    """
    Mean-surrogate bound for a kernel sum.

    ||sum_k a_k x_k - s (1/n) sum_k x_k|| <= R sum_k |a_k - s/n| with s = sum_k a_k, for every x_k in a ball of
    radius R.

    Args:
        kernel (np.ndarray): Complex kernel a_1..a_n.
        x (VectorSeq): Vectors x_1..x_n.
        enclosure (AnyEnclosure): Ball of x's space; disk, segment or interval when d = 1.
        kernel_sum (Optional[complex]): Closed form of s. Defaults to the direct sum.
        bound_id (BoundId): Identifier of the bound in the report.

    Returns:
        BoundReport: Surrogate error in the gap slot and the bound.
    """
    kernel = np.asarray(kernel, dtype=complex).reshape(-1)
    _check_length(x, kernel.size)
    ball = as_ball(enclosure, x.space)
    outside = ~ball.members(x.points)
    if np.any(outside):
        raise EnclosureViolationError(
            message=f"x[{int(np.argmax(outside)) + 1}] lies outside the enclosure...", logger=logger
        )
    n = kernel.size
    total = complex(compensated_sum(kernel)) if kernel_sum is None else complex(kernel_sum)
    mean = np.asarray(compensated_sum(x.points, axis=0), dtype=complex) / n
    gap = x.space.norm(kernel_transform(kernel, x) - total * mean)
    bound = ball.radius * float(compensated_sum(np.abs(kernel - total / n)))
    logger.debug("%s: gap=%r bound=%r", bound_id.value, gap, bound)
    return BoundReport(gap=gap, bounds={bound_id.value: bound}, witness_inputs=summarize_inputs(x=x, enclosure=ball))


def dft(x: VectorSeq, params: FourierParams) -> np.ndarray:
    """
    Discrete Fourier transform sum_{k=1}^n exp(2 w i m k) x_k of the literal kernel (not exp(2 pi i m k / n)).

    Args:
        x (VectorSeq): Vectors x_1..x_n; real vectors are promoted to complex.
        params (FourierParams): w, m and n = len(x).

    Returns:
        np.ndarray: Complex d-vector.
    """
    _check_length(x, params.n)
    return kernel_transform(fourier_kernel(params), x)


def dirichlet_sum(params: FourierParams) -> DirichletSum:
    """
    sum_{k=1}^n exp(2 w i m k) = sin(w m n) / sin(w m) exp(w (n+1) i m).

    Every angle is reduced modulo 2 pi from its exact integer multiple before the sines are taken. Falls back to
    direct summation when w m is (numerically) a multiple of pi.
    """
    if params.singular:
        logger.warning("w m = %r is numerically a multiple of pi, summing directly...", params.omega * params.m)
        return DirichletSum(value=complex(compensated_sum(fourier_kernel(params))), method=SumMethod.DIRECT_FALLBACK)
    m, n = params.m, params.n
    numerator, denominator, phase = reduced_angle(params.omega, np.array([m * n, m, m * (n + 1)], dtype=np.int64))
    value = math.sin(numerator) / math.sin(denominator) * complex(np.exp(1j * phase))
    return DirichletSum(value=value, method=SumMethod.CLOSED_FORM)


def dft_bound(x: VectorSeq, params: FourierParams, ball: AnyEnclosure) -> BoundReport:
    """
    Error of replacing the Fourier transform by the Dirichlet sum times the mean of the sequence.

    Args:
        x (VectorSeq): Vectors in the ball.
        params (FourierParams): Nonsingular parameters, w != l pi / m.
        ball (AnyEnclosure): Ball of x's space; disk, segment or interval for complex or real scalars.

    Returns:
        BoundReport: Gap and the DFT bound.

    Raises:
        SingularParameterError: w m is within the singularity tolerance of a multiple of pi.
    """
    _check_length(x, params.n)
    if params.singular:
        raise SingularParameterError(
            message=f"w = {params.omega!r} is a multiple of pi / {params.m}...",
            code=ErrorCode.SINGULAR_OMEGA,
            logger=logger,
        )
    report = kernel_surrogate_bound(
        fourier_kernel(params), x, ball, kernel_sum=dirichlet_sum(params).value, bound_id=BoundId.DFT
    )
    report.witness_inputs.update({"omega": params.omega, "m": params.m})
    return report


def mellin(x: VectorSeq, params: MellinParams) -> np.ndarray:
    """Discrete Mellin transform sum_{k=1}^n k^(m-1) x_k."""
    _check_length(x, params.n)
    return kernel_transform(mellin_kernel(params), x)


def power_sum(p: float, n: int) -> float:
    """
    S_p(n) = sum_{k=1}^n k^p.

    Integer exponents p >= 0 are summed in exact integer arithmetic before the final rounding.

    Raises:
        GrussValidationError: n < 1.
        OrderOverflowError: S_p(n) is beyond the floating point range.
    """
    if n < 1:
        raise GrussValidationError(message=f"Power sums need n >= 1, got {n}...", code=ErrorCode.INVALID_PARAMETER)
    check_power_range(p, n, log_limit=math.log(sys.float_info.max))
    try:
        if float(p).is_integer() and p >= 0:
            exponent = int(p)
            if exponent == 1:
                return float(n * (n + 1) // 2)
            return float(sum(k**exponent for k in range(1, n + 1)))
        return math.fsum(np.arange(1, n + 1, dtype=float) ** p)
    except OverflowError as err:
        raise OrderOverflowError(message=f"S_{p!r}({n}) exceeds the floating point range...", logger=logger) from err


def mellin_bound(x: VectorSeq, params: MellinParams, ball: AnyEnclosure) -> BoundReport:
    """
    Error of replacing the Mellin transform by S_{m-1}(n) times the mean of the sequence.

    Returns:
        BoundReport: Gap and the MELLIN bound R sum_k |k^(m-1) - S_{m-1}(n)/n|.

    Raises:
        OrderOverflowError: The kernel, its sum or the resulting gap is beyond the floating point range.
    """
    _check_length(x, params.n)
    with np.errstate(over="ignore", invalid="ignore"):
        report = kernel_surrogate_bound(
            mellin_kernel(params), x, ball, kernel_sum=power_sum(params.m - 1, params.n), bound_id=BoundId.MELLIN
        )
    if not (math.isfinite(report.gap) and all(math.isfinite(value) for value in report.bounds.values())):
        raise OrderOverflowError(message=f"Mellin order m={params.m} overflows on this sequence...", logger=logger)
    report.witness_inputs["m"] = params.m
    return report


def mu_deviation_sum(n: int) -> float:
    """sum_{k=1}^n |k - (n+1)/2|, summed directly in exact integer arithmetic."""
    twice = np.abs(2 * np.arange(1, n + 1, dtype=np.int64) - (n + 1))
    return int(twice.sum()) / 2


def mu_deviation_sums(n_max: int) -> np.ndarray:
    """
    sum_{k=1}^n |k - (n+1)/2| for every n = 1..n_max at once.

    Splits each sum at k = [(n+1)/2] and evaluates both halves from the prefix sums P(j) = sum_{k<=j} k, in exact
    int64 arithmetic (n_max up to about 10^6).

    Args:
        n_max (int): Largest length.

    Returns:
        np.ndarray: Float array, entry n-1 holding the sum for n.
    """
    n = np.arange(1, n_max + 1, dtype=np.int64)
    prefix = np.concatenate(([0], np.cumsum(n)))
    split = (n + 1) // 2
    lower = (n + 1) * split - 2 * prefix[split]
    upper = 2 * (prefix[n] - prefix[split]) - (n + 1) * (n - split)
    return (lower + upper) / 2


def mu_closed_form(n: int) -> int:
    """[(n+1)/2] (n - [(n+1)/2])."""
    half = (n + 1) // 2
    return half * (n - half)


def mu_bound(x: VectorSeq, ball: AnyEnclosure) -> BoundReport:
    """
    ||sum_k k x_k - (n+1)/2 sum_k x_k|| <= R [(n+1)/2] (n - [(n+1)/2]).

    Returns:
        BoundReport: Gap and the MU bound, computed from the integer-part closed form.
    """
    n = len(x)
    closed_form = mu_closed_form(n)
    if mu_deviation_sum(n) != closed_form:
        raise GrussBaseException(
            message=f"Absolute deviation sum disagrees with its closed form at n={n}...", logger=logger
        )
    report = kernel_surrogate_bound(
        np.arange(1, n + 1, dtype=float), x, ball, kernel_sum=n * (n + 1) / 2, bound_id=BoundId.MU
    )
    radius = as_ball(ball, x.space).radius
    report.bounds[BoundId.MU.value] = radius * closed_form
    return report


def evaluate_orders(
    evaluate: Callable[[int], BoundReport], orders: Iterable[int], workers: int = 1
) -> list[BatchEntry]:
    """
    Evaluate a bound for several orders m, keeping the input order.

    Singular parameters and orders that overflow are returned as skipped entries instead of failing the batch.
    """

    def run(order: int) -> BatchEntry:
        try:
            return BatchEntry(order=order, report=evaluate(order))
        except (SingularParameterError, OrderOverflowError) as err:
            logger.warning("Order m=%d skipped: %s", order, err.code.value)
            return BatchEntry(order=order, skipped=err.code.value)

    orders = list(orders)
    if workers <= 1:
        return [run(order) for order in orders]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, orders))


def dft_bound_batch(
    x: VectorSeq, omega: float, orders: Iterable[int], ball: AnyEnclosure, workers: int = 1
) -> list[BatchEntry]:
    """dft_bound for each order m, in order."""
    return evaluate_orders(lambda m: dft_bound(x, FourierParams(omega=omega, m=m, n=len(x)), ball), orders, workers)


def mellin_bound_batch(
    x: VectorSeq, orders: Iterable[int], ball: AnyEnclosure, workers: int = 1
) -> list[BatchEntry]:
    """mellin_bound for each order m, in order."""
    return evaluate_orders(lambda m: mellin_bound(x, MellinParams(m=m, n=len(x)), ball), orders, workers)


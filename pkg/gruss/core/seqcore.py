"""
Core sequence types for Gruss.

Weights, scalar and vector sequences, normed spaces, enclosures, weighted means, the three equivalent evaluations of
the Chebyshev functional (the "gap") and forward differences. Sequences are documented 1-indexed and stored
0-indexed. Real data is embedded in the complex scalar path, so every operation is implemented once over complex
numbers.
"""

# Standard Library
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

# Third Party Library
import numpy as np

# Project Library
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import ErrorCode, GrussValidationError
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")


def _frozen(array: np.ndarray) -> np.ndarray:
    """Return a read-only view of the array."""
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


class NormFamily(str, Enum):
    """Closed family of coordinate norms."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"
    LP = "lp"


class ScalarField(str, Enum):
    """Scalar field of a normed space."""

    REAL = "real"
    COMPLEX = "complex"


class EnclosureMethod(str, Enum):
    """How an enclosure is derived when the caller supplies none."""

    MINDISK = "mindisk"
    MEANMAX = "meanmax"


@dataclass(frozen=True)
class NormedSpace:
    """
    Finite-dimensional coordinate space with a norm from the closed family.

    Complex coordinates are normed through their moduli, which is the usual extension of the family norms.

    Attributes:
        dimension (int): Dimension d of the space.
        norm_family (NormFamily): L1, L2, LINF or LP.
        p (Optional[float]): Exponent for LP, in [1, inf].
        scalar_field (ScalarField): REAL or COMPLEX.
    """

    dimension: int
    norm_family: NormFamily = NormFamily.L2
    p: Optional[float] = None
    scalar_field: ScalarField = ScalarField.COMPLEX

    def __post_init__(self) -> None:
        object.__setattr__(self, "norm_family", NormFamily(self.norm_family))
        object.__setattr__(self, "scalar_field", ScalarField(self.scalar_field))
        if int(self.dimension) != self.dimension or self.dimension < 1:
            raise GrussValidationError(
                message=f"Dimension must be a positive integer, got {self.dimension}...",
                code=ErrorCode.INVALID_PARAMETER,
            )
        if self.norm_family is NormFamily.LP:
            if self.p is None or math.isnan(self.p) or self.p < 1:
                raise GrussValidationError(
                    message=f"LP norm needs an exponent p in [1, inf], got {self.p}...", code=ErrorCode.INVALID_NORM
                )
        elif self.p is not None:
            raise GrussValidationError(
                message=f"Exponent p only applies to the LP family, not {self.norm_family.value}...",
                code=ErrorCode.INVALID_NORM,
            )

    @classmethod
    def modulus(cls, scalar_field: ScalarField = ScalarField.COMPLEX) -> "NormedSpace":
        """Return the one-dimensional space normed by the modulus |.|."""
        return cls(dimension=1, norm_family=NormFamily.L2, scalar_field=scalar_field)

    @property
    def order(self) -> float:
        """Vector norm order understood by numpy.linalg.norm."""
        return {
            NormFamily.L1: 1.0,
            NormFamily.L2: 2.0,
            NormFamily.LINF: np.inf,
            NormFamily.LP: float(self.p) if self.p is not None else 2.0,
        }[self.norm_family]

    def norm(self, vector: Union[np.ndarray, Sequence[complex]]) -> float:
        """Norm of a single d-vector."""
        return float(np.linalg.norm(np.asarray(vector, dtype=complex).reshape(-1), ord=self.order))

    def norms(self, rows: np.ndarray) -> np.ndarray:
        """Norms of each row of an (n, d) array."""
        rows = np.asarray(rows, dtype=complex)
        if rows.shape[0] == 0:
            return np.zeros(0)
        return np.linalg.norm(rows, ord=self.order, axis=-1)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """
    Nonnegative weights summing to one (the p_i).

    Attributes:
        weights (np.ndarray): Read-only array of n >= 1 weights.
    """

    weights: np.ndarray

    def __post_init__(self) -> None:
        weights = np.asarray(self.weights, dtype=float)
        if weights.ndim != 1 or weights.size == 0:
            raise GrussValidationError(message="Weights must be a nonempty 1-D sequence...", code=ErrorCode.TOO_SHORT)
        if not np.all(np.isfinite(weights)):
            raise GrussValidationError(message="Weights must be finite...")
        if np.any(weights < 0):
            raise GrussValidationError(
                message=f"Negative weight at index {int(np.argmin(weights))}...", code=ErrorCode.NEGATIVE_WEIGHT
            )
        total = math.fsum(weights)
        if abs(total - 1.0) > GrussConstants.WEIGHT_SUM_TOL:
            raise GrussValidationError(message=f"Weights sum to {total!r}, not 1...", code=ErrorCode.SUM_NOT_ONE)
        object.__setattr__(self, "weights", _frozen(weights))

    @classmethod
    def uniform(cls, n: int) -> "WeightVector":
        """Uniform weights 1/n."""
        if n < 1:
            raise GrussValidationError(message="Uniform weights need n >= 1...", code=ErrorCode.TOO_SHORT)
        return cls(np.full(n, 1.0 / n))

    @property
    def is_uniform(self) -> bool:
        return bool(np.all(self.weights == self.weights[0]))

    def __len__(self) -> int:
        return self.weights.size


@dataclass(frozen=True, eq=False)
class ScalarSeq:
    """
    Finite sequence of scalars (the alpha_i, beta_i). Real sequences are complex with zero imaginary parts.

    Attributes:
        values (np.ndarray): Read-only complex array of n >= 1 values.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex).reshape(-1)
        if values.size == 0:
            raise GrussValidationError(message="Scalar sequence is empty...", code=ErrorCode.TOO_SHORT)
        if not np.all(np.isfinite(values)):
            raise GrussValidationError(message="Scalar sequence holds non-finite values...")
        object.__setattr__(self, "values", _frozen(values))

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0))

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True, eq=False)
class VectorSeq:
    """
    Finite sequence of points of a normed space (the x_i, or polynomial coefficients c_i).

    Attributes:
        points (np.ndarray): Read-only complex array of shape (n, d).
        space (NormedSpace): Space the points live in.
    """

    points: np.ndarray
    space: NormedSpace

    def __post_init__(self) -> None:
        points = np.asarray(self.points, dtype=complex)
        if points.ndim == 1 and self.space.dimension == 1:
            points = points.reshape(-1, 1)
        if points.ndim != 2 or points.shape[0] == 0:
            raise GrussValidationError(
                message="Vector sequence must be a nonempty (n, d) array...", code=ErrorCode.TOO_SHORT
            )
        if points.shape[1] != self.space.dimension:
            raise GrussValidationError(
                message=f"Points have dimension {points.shape[1]}, space has {self.space.dimension}...",
                code=ErrorCode.LENGTH_MISMATCH,
            )
        if not np.all(np.isfinite(points)):
            raise GrussValidationError(message="Vector sequence holds non-finite coordinates...")
        if self.space.scalar_field is ScalarField.REAL and np.any(points.imag != 0):
            raise GrussValidationError(
                message="Complex coordinates in a real normed space...", code=ErrorCode.FIELD_MISMATCH
            )
        object.__setattr__(self, "points", _frozen(points))

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def __len__(self) -> int:
        return self.points.shape[0]


class Enclosure:
    """Region certified to contain every element of a sequence."""

    def members(self, values: np.ndarray, tol: float = GrussConstants.MEMBERSHIP_TOL) -> np.ndarray:
        """Boolean membership mask within the given slack."""
        raise NotImplementedError


class ScalarEnclosure(Enclosure):
    """Enclosure of complex scalars, equivalent to a closed disk."""

    def as_disk(self) -> "Disk":
        raise NotImplementedError

    @property
    def radius_value(self) -> float:
        """Radius of the equivalent disk."""
        return self.as_disk().radius


@dataclass(frozen=True)
class Disk(ScalarEnclosure):
    """Closed disk D(center, radius) of the complex plane."""

    center: complex
    radius: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (math.isfinite(self.radius) and self.radius >= 0) or not np.isfinite(self.center):
            raise GrussValidationError(
                message=f"Disk radius must be finite and >= 0, got {self.radius}...", code=ErrorCode.INVALID_ENCLOSURE
            )

    def as_disk(self) -> "Disk":
        return self

    def members(self, values: np.ndarray, tol: float = GrussConstants.MEMBERSHIP_TOL) -> np.ndarray:
        return np.abs(np.asarray(values, dtype=complex) - self.center) <= self.radius + tol


@dataclass(frozen=True)
class Segment(ScalarEnclosure):
    """
    Complex endpoints a (start) and A (end). Semantically the disk with center (a+A)/2 and radius |A-a|/2.

    Membership is decided with the real-part form Re[(A-z)(conj(z)-conj(a))] >= 0 of the disk condition.
    """

    start: complex
    end: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))
        if not (np.isfinite(self.start) and np.isfinite(self.end)):
            raise GrussValidationError(message="Segment endpoints must be finite...", code=ErrorCode.INVALID_ENCLOSURE)

    @property
    def half_width(self) -> float:
        return abs(self.end - self.start) / 2

    def as_disk(self) -> Disk:
        return Disk(center=(self.start + self.end) / 2, radius=self.half_width)

    def members(self, values: np.ndarray, tol: float = GrussConstants.MEMBERSHIP_TOL) -> np.ndarray:
        values = np.asarray(values, dtype=complex)
        re_form = np.real((self.end - values) * (np.conj(values) - np.conj(self.start)))
        # distance <= R + tol  <=>  R^2 - distance^2 >= -tol (2R + tol)
        return re_form >= -tol * (2 * self.half_width + tol)


@dataclass(frozen=True)
class Interval(ScalarEnclosure):
    """Real interval [m, M] (low, high) with m <= M."""

    low: float
    high: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "high", float(self.high))
        if not (math.isfinite(self.low) and math.isfinite(self.high)) or self.low > self.high:
            raise GrussValidationError(
                message=f"Interval needs finite m <= M, got [{self.low}, {self.high}]...",
                code=ErrorCode.INVALID_ENCLOSURE,
            )

    @property
    def half_width(self) -> float:
        return (self.high - self.low) / 2

    def as_disk(self) -> Disk:
        return Disk(center=(self.low + self.high) / 2, radius=self.half_width)

    def members(self, values: np.ndarray, tol: float = GrussConstants.MEMBERSHIP_TOL) -> np.ndarray:
        values = np.asarray(values, dtype=complex)
        return (values.imag == 0) & (values.real >= self.low - tol) & (values.real <= self.high + tol)


@dataclass(frozen=True, eq=False)
class Ball(Enclosure):
    """Closed ball B(center, radius) of a normed space."""

    center: np.ndarray
    radius: float
    space: NormedSpace

    def __post_init__(self) -> None:
        center = np.asarray(self.center, dtype=complex).reshape(-1)
        if center.size != self.space.dimension:
            raise GrussValidationError(
                message=f"Ball center has dimension {center.size}, space has {self.space.dimension}...",
                code=ErrorCode.LENGTH_MISMATCH,
            )
        radius = float(self.radius)
        if not (math.isfinite(radius) and radius >= 0) or not np.all(np.isfinite(center)):
            raise GrussValidationError(
                message=f"Ball radius must be finite and >= 0, got {radius}...", code=ErrorCode.INVALID_ENCLOSURE
            )
        object.__setattr__(self, "center", _frozen(center))
        object.__setattr__(self, "radius", radius)

    def members(self, values: np.ndarray, tol: float = GrussConstants.MEMBERSHIP_TOL) -> np.ndarray:
        values = np.asarray(values, dtype=complex).reshape(-1, self.space.dimension)
        return self.space.norms(values - self.center) <= self.radius + tol


AnyEnclosure = Union[Disk, Segment, Interval, Ball]


def as_ball(enclosure: AnyEnclosure, space: NormedSpace) -> Ball:
    """
    Express an enclosure of vectors as a ball of the given space.

    Scalar enclosures (disk, segment, interval) apply to one-dimensional data only, where every family norm is the
    modulus.

    Args:
        enclosure (AnyEnclosure): Ball, or a scalar enclosure for d = 1 data.
        space (NormedSpace): Space of the enclosed vectors.

    Returns:
        Ball: The equivalent ball.
    """
    if isinstance(enclosure, Ball):
        if enclosure.space.dimension != space.dimension:
            raise GrussValidationError(
                message="Ball and sequence live in spaces of different dimension...", code=ErrorCode.LENGTH_MISMATCH
            )
        return enclosure
    if space.dimension != 1:
        raise GrussValidationError(
            message="Scalar enclosures only apply to one-dimensional vectors...", code=ErrorCode.INVALID_ENCLOSURE
        )
    disk = enclosure.as_disk()
    return Ball(center=np.array([disk.center]), radius=disk.radius, space=space)


@dataclass(frozen=True, eq=False)
class GapValue:
    """
    Chebyshev functional of (alpha, x; p).

    Attributes:
        gap (float): Norm of gap_vector.
        gap_vector (np.ndarray): The unnormed d-vector sum p_i alpha_i x_i - sum p_i alpha_i * sum p_i x_i.
    """

    gap: float
    gap_vector: np.ndarray


@dataclass(frozen=True)
class DiskCheck:
    """Both sides of the real-part/disk identity and the resulting membership."""

    re_form: float
    disk_form: float
    member: bool


def _fsum_column(column: np.ndarray) -> Union[float, complex]:
    if np.iscomplexobj(column):
        return complex(math.fsum(column.real), math.fsum(column.imag))
    return math.fsum(column)


def compensated_sum(values: np.ndarray, axis: int = 0) -> Union[np.ndarray, complex, float]:
    """
    Sum along an axis, switching to exactly rounded (compensated) accumulation for long sequences.

    Args:
        values (np.ndarray): Real or complex array.
        axis (int): Axis to reduce.

    Returns:
        Union[np.ndarray, complex, float]: Scalar for 1-D input, otherwise the reduced array.
    """
    values = np.asarray(values)
    if values.shape[axis] <= GrussConstants.COMPENSATED_THRESHOLD:
        total = values.sum(axis=axis)
        return total if isinstance(total, np.ndarray) else total.item()
    moved = np.moveaxis(values, axis, 0)
    if moved.ndim == 1:
        return _fsum_column(moved)
    flat = moved.reshape(moved.shape[0], -1)
    sums = [_fsum_column(flat[:, column]) for column in range(flat.shape[1])]
    return np.array(sums, dtype=values.dtype).reshape(moved.shape[1:])


def validate_weights(raw: Sequence[float], normalize: bool = False) -> WeightVector:
    """
    Validate raw weights, optionally rescaling them to sum to one.

    Args:
        raw (Sequence[float]): Nonempty raw weights.
        normalize (bool): Divide by the sum before validating.

    Returns:
        WeightVector: Validated weights.

    Raises:
        GrussValidationError: NEGATIVE_WEIGHT, SUM_NOT_ONE or ZERO_SUM.
    """
    weights = np.asarray(raw, dtype=float).reshape(-1)
    if weights.size == 0:
        raise GrussValidationError(message="No weights given...", code=ErrorCode.TOO_SHORT, logger=logger)
    if np.any(weights < 0):
        raise GrussValidationError(
            message=f"Negative weight at index {int(np.argmin(weights))}...",
            code=ErrorCode.NEGATIVE_WEIGHT,
            logger=logger,
        )
    if normalize:
        total = math.fsum(weights)
        if not total > 0:
            raise GrussValidationError(
                message=f"Cannot normalize weights with sum {total!r}...", code=ErrorCode.ZERO_SUM, logger=logger
            )
        weights = weights / total
    try:
        return WeightVector(weights)
    except GrussValidationError as err:
        logger.error(str(err))
        raise


def _check_lengths(*sequences) -> int:
    lengths = {len(sequence) for sequence in sequences}
    if len(lengths) != 1:
        raise GrussValidationError(
            message=f"Sequence lengths differ: {sorted(lengths)}...", code=ErrorCode.LENGTH_MISMATCH, logger=logger
        )
    return lengths.pop()


def _check_field(alpha: ScalarSeq, x: VectorSeq) -> None:
    if x.space.scalar_field is ScalarField.REAL and not alpha.is_real:
        raise GrussValidationError(
            message="Complex scalars cannot multiply vectors of a real space...",
            code=ErrorCode.FIELD_MISMATCH,
            logger=logger,
        )


def weighted_mean_scalar(alpha: ScalarSeq, p: WeightVector) -> complex:
    """Weighted mean sum p_i alpha_i."""
    _check_lengths(alpha, p)
    return complex(compensated_sum(p.weights * alpha.values))


def weighted_mean_vector(x: VectorSeq, p: WeightVector) -> np.ndarray:
    """
    Weighted mean sum p_i x_i, componentwise.

    Args:
        x (VectorSeq): Vector sequence.
        p (WeightVector): Weights of the same length.

    Returns:
        np.ndarray: Complex d-vector.
    """
    _check_lengths(x, p)
    return np.asarray(compensated_sum(p.weights[:, None] * x.points, axis=0), dtype=complex)


def _gap(vector: np.ndarray, space: NormedSpace) -> GapValue:
    return GapValue(gap=space.norm(vector), gap_vector=vector)


def gruss_gap_direct(alpha: ScalarSeq, x: VectorSeq, p: WeightVector) -> GapValue:
    """
    Chebyshev functional computed from its definition.

    Args:
        alpha (ScalarSeq): Scalars alpha_i.
        x (VectorSeq): Vectors x_i.
        p (WeightVector): Weights p_i.

    Returns:
        GapValue: sum p_i alpha_i x_i - (sum p_i alpha_i)(sum p_i x_i) and its norm.
    """
    _check_lengths(alpha, x, p)
    _check_field(alpha, x)
    weighted_products = np.asarray(
        compensated_sum((p.weights * alpha.values)[:, None] * x.points, axis=0), dtype=complex
    )
    vector = weighted_products - weighted_mean_scalar(alpha, p) * weighted_mean_vector(x, p)
    return _gap(vector, x.space)


def gruss_gap_via_alpha_centering(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, alpha_center: complex) -> GapValue:
    """
    Chebyshev functional as sum p_i (alpha_i - alpha)(x_i - sum p_j x_j), for any scalar center alpha.

    Returns:
        GapValue: Same vector as gruss_gap_direct up to rounding.
    """
    _check_lengths(alpha, x, p)
    _check_field(alpha, x)
    centered_x = x.points - weighted_mean_vector(x, p)
    factors = p.weights * (alpha.values - complex(alpha_center))
    vector = np.asarray(compensated_sum(factors[:, None] * centered_x, axis=0), dtype=complex)
    return _gap(vector, x.space)


def gruss_gap_via_x_centering(alpha: ScalarSeq, x: VectorSeq, p: WeightVector, x_center: np.ndarray) -> GapValue:
    """
    Chebyshev functional as sum p_i (alpha_i - sum p_j alpha_j)(x_i - x), for any vector center x.

    Returns:
        GapValue: Same vector as gruss_gap_direct up to rounding.
    """
    _check_lengths(alpha, x, p)
    _check_field(alpha, x)
    x_center = np.asarray(x_center, dtype=complex).reshape(-1)
    if x_center.size != x.dimension:
        raise GrussValidationError(
            message=f"Center has dimension {x_center.size}, expected {x.dimension}...",
            code=ErrorCode.LENGTH_MISMATCH,
            logger=logger,
        )
    factors = p.weights * (alpha.values - weighted_mean_scalar(alpha, p))
    vector = np.asarray(compensated_sum(factors[:, None] * (x.points - x_center), axis=0), dtype=complex)
    return _gap(vector, x.space)


def disk_equivalence_check(z: complex, a: complex, A: complex) -> DiskCheck:
    """
    Evaluate both sides of Re[(A-z)(conj(z)-conj(a))] = |A-a|^2/4 - |z-(a+A)/2|^2.

    Args:
        z (complex): Point to test.
        a (complex): First endpoint.
        A (complex): Second endpoint.

    Returns:
        DiskCheck: The real-part form, the disk form, and membership of z in the disk spanned by a and A.
    """
    z, a, A = complex(z), complex(a), complex(A)
    re_form = ((A - z) * (z.conjugate() - a.conjugate())).real
    disk_form = abs(A - a) ** 2 / 4 - abs(z - (a + A) / 2) ** 2
    return DiskCheck(re_form=re_form, disk_form=disk_form, member=disk_form >= -GrussConstants.MEMBERSHIP_TOL)


def _circle_two(u: complex, v: complex) -> tuple[complex, float]:
    return (u + v) / 2, abs(u - v) / 2


def _circle_three(u: complex, v: complex, w: complex) -> tuple[complex, float]:
    det = 2 * (u.real * (v.imag - w.imag) + v.real * (w.imag - u.imag) + w.real * (u.imag - v.imag))
    scale = max(abs(u - v), abs(v - w), abs(w - u)) ** 2
    if abs(det) <= 1e-14 * max(scale, 1e-300):
        # collinear: the widest pair spans the disk
        return max((_circle_two(u, v), _circle_two(v, w), _circle_two(w, u)), key=lambda circle: circle[1])
    su, sv, sw = abs(u) ** 2, abs(v) ** 2, abs(w) ** 2
    cx = (su * (v.imag - w.imag) + sv * (w.imag - u.imag) + sw * (u.imag - v.imag)) / det
    cy = (su * (w.real - v.real) + sv * (u.real - w.real) + sw * (v.real - u.real)) / det
    center = complex(cx, cy)
    return center, max(abs(center - u), abs(center - v), abs(center - w))


def _min_disk(points: np.ndarray) -> tuple[complex, float]:
    """Welzl's randomized incremental smallest enclosing disk, with a fixed shuffle for reproducibility."""
    points = [complex(point) for point in np.random.default_rng(0).permutation(points)]

    def inside(point: complex, center: complex, radius: float) -> bool:
        return abs(point - center) <= radius + 1e-12 * max(1.0, radius)

    center, radius = points[0], 0.0
    for i in range(1, len(points)):
        if inside(points[i], center, radius):
            continue
        center, radius = points[i], 0.0
        for j in range(i):
            if inside(points[j], center, radius):
                continue
            center, radius = _circle_two(points[i], points[j])
            for k in range(j):
                if not inside(points[k], center, radius):
                    center, radius = _circle_three(points[i], points[j], points[k])
    return center, radius


def enclose_scalars(alpha: ScalarSeq, method: EnclosureMethod = EnclosureMethod.MINDISK) -> Disk:
    """
    Derive a disk containing every alpha_i.

    Args:
        alpha (ScalarSeq): Scalars to enclose.
        method (EnclosureMethod): MINDISK (smallest enclosing disk) or MEANMAX (mean center, max distance).

    Returns:
        Disk: Enclosing disk.
    """
    values = alpha.values
    method = EnclosureMethod(method)
    if method is EnclosureMethod.MINDISK:
        center, _ = _min_disk(values)
    else:
        center = complex(np.mean(values))
    # the radius is the attained max distance, so membership holds by construction
    radius = float(np.max(np.abs(values - center)))
    logger.debug("Enclosed %d scalars (%s): center=%r radius=%r", len(alpha), method.value, center, radius)
    return Disk(center=center, radius=radius)


def enclose_vectors(x: VectorSeq, method: EnclosureMethod = EnclosureMethod.MEANMAX) -> Ball:
    """
    Derive a ball containing every x_i: unweighted mean center, max-distance radius.

    Args:
        x (VectorSeq): Vectors to enclose.
        method (EnclosureMethod): Only MEANMAX; smallest balls are offered for complex scalars only.

    Returns:
        Ball: Enclosing ball in x's space.
    """
    if EnclosureMethod(method) is not EnclosureMethod.MEANMAX:
        raise GrussValidationError(
            message="Vector enclosures support MEANMAX only...", code=ErrorCode.INVALID_ENCLOSURE, logger=logger
        )
    center = x.points.mean(axis=0)
    radius = float(np.max(x.space.norms(x.points - center)))
    return Ball(center=center, radius=radius, space=x.space)


def forward_differences(s: Union[ScalarSeq, VectorSeq]) -> Union[ScalarSeq, VectorSeq]:
    """
    Forward differences (s_2 - s_1, ..., s_n - s_{n-1}).

    Args:
        s (Union[ScalarSeq, VectorSeq]): Sequence with n >= 2.

    Returns:
        Union[ScalarSeq, VectorSeq]: Sequence of length n - 1 of the same kind.
    """
    if len(s) < 2:
        raise GrussValidationError(
            message="Forward differences need at least two terms...", code=ErrorCode.TOO_SHORT, logger=logger
        )
    if isinstance(s, VectorSeq):
        return VectorSeq(np.diff(s.points, axis=0), s.space)
    return ScalarSeq(np.diff(s.values))

"""Polynomials with vector coefficients: evaluation, the geometric-mean surrogate bound and roots-of-unity bounds."""

# Standard Library
import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

# Third Party Library
import numpy as np

# Project Library
from gruss.core.bounds import BoundId, BoundReport
from gruss.core.seqcore import AnyEnclosure, ScalarSeq, VectorSeq, as_ball, compensated_sum
from gruss.core.transforms import kernel_surrogate_bound
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import EnclosureViolationError, ErrorCode, GrussValidationError, SingularParameterError
from gruss.utilities.logger import CustomLogger


logger = CustomLogger(name="gruss")


@dataclass(frozen=True, eq=False)
class VectorPolynomial:
    """
    P(z) = c_0 + z c_1 + ... + z^n c_n with coefficients in a normed space and c_n != 0.

    Attributes:
        coefficients (VectorSeq): c_0..c_n.
    """

    coefficients: VectorSeq

    def __post_init__(self) -> None:
        leading = self.coefficients.points[-1]
        if not self.coefficients.space.norm(leading) > 0:
            raise GrussValidationError(
                message="Leading coefficient c_n must be nonzero...", code=ErrorCode.INVALID_POLYNOMIAL
            )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def poly_eval(poly: VectorPolynomial, z: complex) -> np.ndarray:
    """
    Horner evaluation of P(z).

    Args:
        poly (VectorPolynomial): Polynomial.
        z (complex): Point.

    Returns:
        np.ndarray: Complex d-vector P(z).
    """
    z = complex(z)
    points = poly.coefficients.points
    value = np.array(points[-1], dtype=complex)
    for coefficient in points[-2::-1]:
        value = value * z + coefficient
    return value


def poly_eval_powers(poly: VectorPolynomial, z: complex) -> np.ndarray:
    """P(z) as sum_k z^k c_k with explicit powers."""
    powers = complex(z) ** np.arange(poly.degree + 1)
    return np.asarray(compensated_sum(powers[:, None] * poly.coefficients.points, axis=0), dtype=complex)


def geometric_factor(z: complex, n_plus_1: int) -> complex:
    """
    (z^(n+1) - 1) / (z - 1) = sum_{k=0}^n z^k.

    The quotient is replaced by the direct sum near z = 1, where it cancels.

    Raises:
        SingularParameterError: |z - 1| is within the Z_EQUALS_ONE tolerance.
    """
    z = complex(z)
    distance = abs(z - 1)
    if distance <= GrussConstants.Z_EQUALS_ONE_TOL:
        raise SingularParameterError(
            message=f"z = {z!r} coincides with 1...", code=ErrorCode.Z_EQUALS_ONE, logger=logger
        )
    if distance < GrussConstants.GEOMETRIC_DIRECT_TOL:
        logger.warning("z = %r is close to 1, summing the geometric factor directly...", z)
        return complex(compensated_sum(z ** np.arange(n_plus_1)))
    return (z**n_plus_1 - 1) / (z - 1)


def poly_bound(poly: VectorPolynomial, z: complex, ball: AnyEnclosure) -> BoundReport:
    """
    ||P(z) - (z^(n+1)-1)/(z-1) (1/(n+1)) sum_k c_k|| <= R sum_{k=0}^n |z^k - (1/(n+1)) (z^(n+1)-1)/(z-1)|.

    Args:
        poly (VectorPolynomial): Polynomial whose coefficients lie in the ball.
        z (complex): Point, z != 1.
        ball (AnyEnclosure): Ball of the coefficient space; disk, segment or interval when d = 1.

    Returns:
        BoundReport: Gap and the POLY bound.
    """
    z = complex(z)
    n_plus_1 = poly.degree + 1
    factor = geometric_factor(z, n_plus_1)
    report = kernel_surrogate_bound(
        z ** np.arange(n_plus_1), poly.coefficients, ball, kernel_sum=factor, bound_id=BoundId.POLY
    )
    report.witness_inputs["z"] = z
    return report


def roots_of_unity(n_plus_1: int) -> ScalarSeq:
    """
    z_k = exp(2 pi i k / (n+1)), k = 0..n, so that z_k^(n+1) = 1.

    Args:
        n_plus_1 (int): Number of roots, >= 1.

    Returns:
        ScalarSeq: The roots, z_0 = 1 first.
    """
    if n_plus_1 < 1:
        raise GrussValidationError(
            message=f"Need at least one root of unity, got {n_plus_1}...", code=ErrorCode.INVALID_PARAMETER
        )
    roots = [cmath.exp(2j * math.pi * k / n_plus_1) for k in range(n_plus_1)]
    # exact values where the angle is a multiple of pi/2
    for k in range(n_plus_1):
        if (4 * k) % n_plus_1 == 0:
            roots[k] = (1, 1j, -1, -1j)[(4 * k) // n_plus_1]
    return ScalarSeq(np.array(roots, dtype=complex))


def roots_bound(poly: VectorPolynomial, ball: AnyEnclosure, workers: int = 1) -> list[BoundReport]:
    """
    ||P(z_k)|| <= (n+1) R for each nontrivial (n+1)-th root of unity z_k, k = 1..n.

    With a segment or interval enclosure of scalar coefficients, R is |W - w|/2 or (A - a)/2.

    Args:
        poly (VectorPolynomial): Polynomial whose coefficients lie in the enclosure.
        ball (AnyEnclosure): Enclosure of the coefficients.
        workers (int): Threads used for the per-root evaluations.

    Returns:
        list[BoundReport]: One report per root, in root order.
    """
    coefficients = poly.coefficients
    enclosing = as_ball(ball, coefficients.space)
    outside = ~enclosing.members(coefficients.points)
    if np.any(outside):
        raise EnclosureViolationError(
            message=f"c[{int(np.argmax(outside))}] lies outside the enclosure...", logger=logger
        )
    n_plus_1 = poly.degree + 1
    bound = n_plus_1 * enclosing.radius
    roots = roots_of_unity(n_plus_1).values[1:]

    def report(k: int) -> BoundReport:
        root = complex(roots[k - 1])
        value = coefficients.space.norm(poly_eval(poly, root))
        return BoundReport(gap=value, bounds={BoundId.ROOTS.value: bound}, witness_inputs={"k": k, "z": root})

    if workers <= 1:
        return [report(k) for k in range(1, n_plus_1)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(report, range(1, n_plus_1)))

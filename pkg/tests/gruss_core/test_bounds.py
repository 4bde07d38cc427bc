"""Test the Grüss-type bounds."""

# Standard Library
import math

# Third Party Library
import numpy as np
import pytest

# Project Library
from gruss.core.bounds import (
    BoundId,
    BoundReport,
    GrussChain,
    HolderPair,
    bound_complex_segment,
    bound_ratio,
    bound_real_interval,
    bound_scalar_disk,
    bound_vector_ball,
    bound_vector_ball_cbs,
    classical_bounds,
    classical_bounds_uniform,
    gruss_chain,
    pseudo_variance,
    pseudo_variance_bound,
    variance,
    variance_bound,
    weighted_index_spread,
    within_bound,
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
    weighted_mean_scalar,
    weighted_mean_vector,
)
from gruss.utilities.exceptions import EnclosureViolationError, ErrorCode, GrussValidationError


SOUNDNESS_DRAWS = 10_000
HALF = WeightVector(np.array([0.5, 0.5]))


def line(values, space=None):
    space = space or NormedSpace(1)
    return VectorSeq(np.array(values, dtype=complex).reshape(-1, 1), space)


def scalars(values):
    return ScalarSeq(np.array(values, dtype=complex))


def holds(report: BoundReport) -> bool:
    return report.holds()



class TestRatios:
    """Test ratio and slack helpers."""

    @pytest.mark.parametrize(
        "gap, bound, expected",
        [(0.5, 0.5, 1.0), (0.25, 1.0, 0.25), (0.0, 0.0, 0.0), (1e-13, 0.0, 0.0), (1e-3, 0.0, math.inf)],
    )
    def test_bound_ratio(self, gap, bound, expected):
        """Test gap / bound with the zero-bound conventions."""
        assert bound_ratio(gap, bound) == expected

    def test_within_bound_slack(self):
        """Test the relative and absolute slack."""
        assert within_bound(1.0 + 5e-10, 1.0)
        assert not within_bound(1.0 + 1e-6, 1.0)
        assert within_bound(5e-13, 0.0)
        assert not within_bound(1.0, 1.5, tol_rel=-0.5, tol_abs=0.0)

    def test_report_accessors(self):
        """Test ratios, violations and holds on a report."""
        report = BoundReport(gap=0.5, bounds={"scalar_disk": 0.5, "segment": 0.25})

        assert report.ratio(BoundId.SCALAR_DISK) == 1.0
        assert report.ratio("segment") == 2.0
        assert report.violations() == ["segment"]
        assert not report.holds()


class TestHolderPair:
    """Test conjugate exponents."""

    @pytest.mark.parametrize("p, q", [(2, 2), (3, 1.5), (1.25, 5)])
    def test_conjugate(self, p, q):
        """Test (p, p/(p-1)) pairs."""
        pair = HolderPair.conjugate(p)

        assert pair.q == pytest.approx(q)

    @pytest.mark.parametrize("p, q", [(1, math.inf), (2, 3), (0.5, -1)])
    def test_invalid(self, p, q):
        """Test non-conjugate or degenerate pairs are rejected."""
        with pytest.raises(GrussValidationError) as error:
            HolderPair(p, q)

        assert error.value.code is ErrorCode.INVALID_HOLDER

    def test_conjugate_needs_p_above_one(self):
        """Test the conjugate of 1 does not exist."""
        with pytest.raises(GrussValidationError):
            HolderPair.conjugate(1.0)


class TestScalarBounds:
    """Test the disk, segment and interval bounds."""

    def test_disk_witness(self):
        """Test the two-point witness attains the constant 1."""
        report = bound_scalar_disk(scalars([0, 2]), line([0, 1]), HALF, Disk(1, 1))

        assert report.gap == pytest.approx(0.5)
        assert report.bound(BoundId.SCALAR_DISK) == pytest.approx(0.5)
        assert report.ratio(BoundId.SCALAR_DISK) == pytest.approx(1.0)

    def test_disk_degenerate(self):
        """Test constant scalars at the center of a zero-radius disk."""
        report = bound_scalar_disk(scalars([2 + 1j] * 3), line([0, 1, 5]), WeightVector.uniform(3), Disk(2 + 1j, 0))

        assert report.gap == pytest.approx(0.0, abs=1e-15)
        assert report.bound(BoundId.SCALAR_DISK) == 0.0
        assert report.ratio(BoundId.SCALAR_DISK) == 0.0

    def test_disk_random_unit_disk(self, instances):
        """Test five complex scalars in the unit disk against vectors of R^3."""
        space = NormedSpace(3, NormFamily.L2, scalar_field=ScalarField.COMPLEX)
        radius = np.sqrt(instances.rng.random(5))
        alpha = ScalarSeq(radius * np.exp(1j * instances.rng.uniform(0, 2 * math.pi, 5)))
        x = VectorSeq(instances.rng.normal(size=(5, 3)), space)

        assert holds(bound_scalar_disk(alpha, x, WeightVector.uniform(5), Disk(0, 1)))

    def test_disk_outside(self):
        """Test a scalar outside the disk is an error, not a report."""
        with pytest.raises(EnclosureViolationError) as error:
            bound_scalar_disk(scalars([0, 3]), line([0, 1]), HALF, Disk(0, 1))

        assert error.value.code is ErrorCode.ENCLOSURE_VIOLATION

    def test_segment_witness(self):
        """Test the segment from 0 to 2 attains the constant 1/2."""
        report = bound_complex_segment(scalars([0, 2]), line([0, 1]), HALF, Segment(0, 2))

        assert report.gap == pytest.approx(0.5)
        assert report.bound(BoundId.SEGMENT) == pytest.approx(0.5)

    def test_degenerate_segment(self):
        """Test a = A forces constant scalars and a zero bound."""
        report = bound_complex_segment(scalars([1j, 1j]), line([0, 4]), HALF, Segment(1j, 1j))

        assert report.bound(BoundId.SEGMENT) == 0.0
        assert report.gap == pytest.approx(0.0, abs=1e-15)

        with pytest.raises(EnclosureViolationError):
            bound_complex_segment(scalars([1j, 0]), line([0, 4]), HALF, Segment(1j, 1j))

    def test_segment_matches_disk(self, instances):
        """Test the segment bound equals the disk bound on the spanned disk."""
        alpha, x, p = instances.instance(min_n=2)
        segment = instances.covering_segment(alpha)

        by_segment = bound_complex_segment(alpha, x, p, segment)
        by_disk = bound_scalar_disk(alpha, x, p, segment.as_disk())

        assert by_segment.gap == by_disk.gap
        assert by_segment.bound(BoundId.SEGMENT) == by_disk.bound(BoundId.SCALAR_DISK)

    def test_interval_witness(self):
        """Test [0, 1] with alpha = (0, 1) gives gap = bound = 1/4."""
        report = bound_real_interval(scalars([0, 1]), line([0, 1]), HALF, Interval(0, 1))

        assert report.gap == pytest.approx(0.25)
        assert report.bound(BoundId.INTERVAL) == pytest.approx(0.25)

    def test_interval_degenerate(self):
        """Test m = M gives gap = bound = 0."""
        report = bound_real_interval(scalars([0.5, 0.5]), line([0, 1]), HALF, Interval(0.5, 0.5))

        assert report.gap == pytest.approx(0.0, abs=1e-15)
        assert report.bound(BoundId.INTERVAL) == 0.0

    def test_interval_inside(self):
        """Test three reals inside [0, 1]."""
        x = VectorSeq(np.array([[1.0, -2.0], [0.0, 3.0], [4.0, 4.0]]), NormedSpace(2, NormFamily.L1))

        assert holds(bound_real_interval(scalars([0.2, 0.8, 0.5]), x, WeightVector.uniform(3), Interval(0, 1)))

    def test_interval_matches_segment(self):
        """Test the interval bound equals the segment bound with a = m and A = M."""
        alpha = scalars([0.2, 0.8, 0.5])
        x = line([3, -1, 2])
        p = WeightVector(np.array([0.2, 0.3, 0.5]))

        by_interval = bound_real_interval(alpha, x, p, Interval(0, 1))
        by_segment = bound_complex_segment(alpha, x, p, Segment(0, 1))

        assert by_interval.bound(BoundId.INTERVAL) == by_segment.bound(BoundId.SEGMENT)
        assert by_interval.gap == by_segment.gap

    def test_interval_needs_real(self):
        """Test complex scalars are refused."""
        with pytest.raises(GrussValidationError) as error:
            bound_real_interval(scalars([0, 0.5j]), line([0, 1]), HALF, Interval(0, 1))

        assert error.value.code is ErrorCode.NOT_REAL


class TestVectorBounds:
    """Test the ball bound and its coarsening."""

    @pytest.mark.parametrize("family", list(NormFamily))
    def test_ball_witness(self, family):
        """Test x = (c - Rv, c + Rv) with a unit v attains gap = bound = R/2."""
        space = NormedSpace(2, family, 3.0 if family is NormFamily.LP else None)
        v = np.array([1.0, 0.0])
        center = np.array([0.5, -2.0])
        radius = 1.5
        x = VectorSeq(np.stack([center - radius * v, center + radius * v]), space)

        report = bound_vector_ball(scalars([0, 1]), x, HALF, Ball(center, radius, space))

        assert report.gap == pytest.approx(radius / 2)
        assert report.bound(BoundId.VECTOR_BALL) == pytest.approx(radius / 2)

    def test_ball_constant_vectors(self):
        """Test equal vectors give a zero gap."""
        space = NormedSpace(2)
        x = VectorSeq(np.array([[1, 1]] * 3), space)

        report = bound_vector_ball(scalars([0, 1, 2]), x, WeightVector.uniform(3), Ball([1, 1], 0.0, space))

        assert report.gap == pytest.approx(0.0, abs=1e-15)

    def test_ball_random_linf(self, instances):
        """Test six vectors in the unit L-infinity ball."""
        space = NormedSpace(3, NormFamily.LINF, scalar_field=ScalarField.REAL)
        x = VectorSeq(instances.rng.uniform(-1, 1, size=(6, 3)), space)
        alpha = instances.scalars(6, real=True)

        assert holds(bound_vector_ball(alpha, x, instances.weights(6), Ball(np.zeros(3), 1.0, space)))

    def test_ball_outside(self):
        """Test a vector outside the ball is an error."""
        space = NormedSpace(2, NormFamily.L1)

        with pytest.raises(EnclosureViolationError):
            x = VectorSeq(np.array([[0, 0], [1, 0.5]]), space)
            bound_vector_ball(scalars([0, 1]), x, HALF, Ball([0, 0], 1, space))

    def test_scalar_enclosure_as_ball(self):
        """Test a disk encloses one-dimensional vectors."""
        report = bound_vector_ball(scalars([0, 1]), line([-1, 1]), HALF, Disk(0, 1))

        assert report.ratio(BoundId.VECTOR_BALL) == pytest.approx(1.0)

    def test_cbs_constant_alpha(self):
        """Test constant scalars make both bounds vanish."""
        space = NormedSpace(2)
        x = VectorSeq(np.array([[0, 0], [1, 0], [0, 1]]), space)

        report = bound_vector_ball_cbs(scalars([3, 3, 3]), x, WeightVector.uniform(3), Ball([0, 0], 1, space))

        assert report.bound(BoundId.VECTOR_BALL) == 0.0
        assert report.bound(BoundId.VECTOR_BALL_CBS) == 0.0

    def test_cbs_equal_at_uniform_pair(self):
        """Test both bounds equal R/2 for alpha = (0, 1) and p = (1/2, 1/2)."""
        space = NormedSpace(1)
        report = bound_vector_ball_cbs(scalars([0, 1]), line([0, 2]), HALF, Ball([1], 2, space))

        assert report.bound(BoundId.VECTOR_BALL) == pytest.approx(1.0)
        assert report.bound(BoundId.VECTOR_BALL_CBS) == pytest.approx(1.0)

    def test_cbs_is_coarser(self, instances):
        """Test the mean-deviation bound never exceeds the variance bound."""
        for _ in range(200):
            alpha, x, p = instances.instance(max_n=8, min_n=8)
            report = bound_vector_ball_cbs(alpha, x, p, instances.covering_ball(x))

            assert report.bound(BoundId.VECTOR_BALL) <= report.bound(BoundId.VECTOR_BALL_CBS) * (1 + 1e-12) + 1e-15

    def test_cbs_is_radius_times_deviation(self, instances):
        """Test the coarse bound is R sqrt(variance)."""
        alpha, x, p = instances.instance(min_n=2)
        ball = instances.covering_ball(x)

        report = bound_vector_ball_cbs(alpha, x, p, ball)

        expected = ball.radius * math.sqrt(variance(alpha, p))

        assert report.bound(BoundId.VECTOR_BALL_CBS) == pytest.approx(expected, rel=1e-12)


class TestVariance:
    """Test the variance and pseudo-variance bounds."""

    def test_variance_pair(self):
        """Test alpha = (0, 1) has variance 1/4."""
        assert variance(scalars([0, 1]), HALF) == pytest.approx(0.25)

    def test_variance_matches_definition(self, instances):
        """Test the centered form against sum p |alpha|^2 - |sum p alpha|^2."""
        alpha, _, p = instances.instance(min_n=2)
        expected = float(np.sum(p.weights * np.abs(alpha.values) ** 2)) - abs(weighted_mean_scalar(alpha, p)) ** 2

        assert variance(alpha, p) == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_variance_constant_is_zero(self):
        """Test a constant sequence has zero variance."""
        assert variance(scalars([0.1 + 0.7j] * 9), WeightVector.uniform(9)) == pytest.approx(0.0, abs=1e-20)

    def test_variance_bound_attained(self):
        """Test the segment endpoints with equal weights attain |A - a|^2 / 4."""
        report = variance_bound(scalars([1 + 1j, 3 - 1j]), HALF, Segment(1 + 1j, 3 - 1j))

        assert report.ratio(BoundId.VARIANCE) == pytest.approx(1.0)

    def test_pseudo_variance_real_pair(self):
        """Test the real pair attains the bound."""
        report = pseudo_variance_bound(scalars([0, 1]), HALF, Segment(0, 1))

        assert report.gap == pytest.approx(0.25)
        assert report.bound(BoundId.PSEUDO_VARIANCE) == pytest.approx(0.25)

    def test_pseudo_variance_imaginary_pair(self):
        """Test alpha = (i, -i) gives |-1 - 0| = 1 without conjugation."""
        report = pseudo_variance_bound(scalars([1j, -1j]), HALF, Segment(-1j, 1j))

        assert report.gap == pytest.approx(1.0)
        assert report.bound(BoundId.PSEUDO_VARIANCE) == pytest.approx(1.0)

    def test_pseudo_variance_constant(self):
        """Test a constant sequence has zero pseudo-variance."""
        assert pseudo_variance(scalars([2j, 2j, 2j]), WeightVector.uniform(3)) == pytest.approx(0.0, abs=1e-15)


class TestChain:
    """Test the four-term chain."""

    def test_full_equality(self):
        """Test alpha = beta = (0, 1) on [0, 1] gives four equal terms."""
        chain = gruss_chain(scalars([0, 1]), scalars([0, 1]), HALF, Segment(0, 1), Segment(0, 1))

        assert chain.terms == pytest.approx((0.25, 0.25, 0.25, 0.25))
        assert chain.is_monotone()

    def test_constant_beta(self):
        """Test a constant beta zeroes the first three terms."""
        alpha, beta = scalars([0, 1, 0.5]), scalars([2, 2, 2])
        chain = gruss_chain(alpha, beta, WeightVector.uniform(3), Segment(0, 1), Segment(1, 3))

        assert chain.terms[:3] == pytest.approx((0, 0, 0), abs=1e-15)
        assert chain.t3 == pytest.approx(0.5)

    def test_beta_outside(self):
        """Test beta outside its segment is an error."""
        with pytest.raises(EnclosureViolationError):
            gruss_chain(scalars([0, 1]), scalars([0, 5]), HALF, Segment(0, 1), Segment(0, 1))

    def test_as_report(self):
        """Test the report form puts t0 in the gap slot."""
        report = GrussChain(0.1, 0.2, 0.3, 0.4).as_report()

        assert report.gap == 0.1
        assert report.bound(BoundId.CHAIN_PRODUCT) == 0.4
        assert report.holds()

    def test_non_monotone(self):
        """Test an out-of-order chain is detected."""
        assert not GrussChain(0.3, 0.2, 0.3, 0.4).is_monotone()


class TestClassicalBounds:
    """Test the forward-difference bounds."""

    def test_weighted_pair(self):
        """Test n = 2, uniform weights: MAXMAX entry is 1/4 and equals the gap."""
        report = classical_bounds(scalars([0, 1]), line([0, 1]), HALF, HolderPair(2, 2))

        assert report.gap == pytest.approx(0.25)
        assert report.bound(BoundId.CLASSICAL_MAXMAX) == pytest.approx(0.25)

    def test_uniform_pair(self):
        """Test n = 2: MAXMAX entry is (4 - 1)/12 = 1/4 and equals the gap."""
        report = classical_bounds_uniform(scalars([0, 1]), line([0, 1]), HolderPair(2, 2))

        assert report.bound(BoundId.UNIFORM_MAXMAX) == pytest.approx(0.25)
        assert report.ratio(BoundId.UNIFORM_MAXMAX) == pytest.approx(1.0)

    def test_constant_alpha(self):
        """Test constant scalars give a zero gap under every entry."""
        report = classical_bounds(scalars([1, 1, 1]), line([0, 3, 1]), WeightVector.uniform(3), HolderPair(3, 1.5))

        assert report.gap == pytest.approx(0.0, abs=1e-15)
        assert report.holds()

    def test_linear_alpha_constant_x(self):
        """Test constant vectors give a zero gap."""
        report = classical_bounds_uniform(scalars([0, 1, 2, 3]), line([5, 5, 5, 5]), HolderPair(2, 2))

        assert report.gap == pytest.approx(0.0, abs=1e-15)

    def test_random_six(self, instances):
        """Test a random n = 6 instance with p = q = 2."""
        alpha, x, p = instances.instance(max_n=6, min_n=6)

        assert classical_bounds(alpha, x, p, HolderPair(2, 2)).holds()

    def test_uniform_specializes_weighted(self, instances):
        """Test the unweighted constants agree with the weighted ones at p_i = 1/n."""
        for n in (2, 3, 7, 20):
            alpha = instances.scalars(n)
            x = instances.vectors(n, NormedSpace(2))
            holder = HolderPair.conjugate(1.7)

            weighted = classical_bounds(alpha, x, WeightVector.uniform(n), holder)
            uniform = classical_bounds_uniform(alpha, x, holder)

            for family in ("maxmax", "sumsum", "holder"):
                assert uniform.bound(f"uniform_{family}") == pytest.approx(
                    weighted.bound(f"classical_{family}"), rel=1e-12
                )

    def test_index_spread_matches_pair_sum(self, instances):
        """Test the linear-time spread against the explicit sum over pairs j < i."""
        for n in (1, 2, 5, 40):
            weights = instances.weights(n).weights
            pairs = [weights[i] * weights[j] * (i - j) for i in range(n) for j in range(i)]

            assert weighted_index_spread(weights) == pytest.approx(math.fsum(pairs), rel=1e-12, abs=1e-15)

    def test_index_spread_uniform(self):
        """Test uniform weights give (n^2 - 1)/(6n)."""
        for n in (2, 3, 10, 1000):
            assert weighted_index_spread(np.full(n, 1 / n)) == pytest.approx((n * n - 1) / (6 * n), rel=1e-12)

    def test_long_sequence(self, instances):
        """Test n = 200000 runs with linear memory and the bounds hold."""
        n = 200_000
        alpha = ScalarSeq(np.linspace(0.0, 1.0, n).astype(complex))
        x = instances.vectors(n, NormedSpace(2))

        report = classical_bounds(alpha, x, WeightVector.uniform(n), HolderPair(2, 2))

        assert weighted_index_spread(np.full(n, 1 / n)) == pytest.approx((n * n - 1) / (6 * n), rel=1e-9)
        assert report.holds()

    def test_too_short(self):
        """Test n = 1 is refused."""
        with pytest.raises(GrussValidationError) as error:
            classical_bounds_uniform(scalars([1]), line([1]), HolderPair(2, 2))

        assert error.value.code is ErrorCode.TOO_SHORT


class TestSoundness:
    """Test every bound over randomized admissible instances."""

    def setup_class(self):
        self.draws = SOUNDNESS_DRAWS

    def test_scalar_enclosures(self, instances):
        """Test disk, segment and interval bounds."""
        for _ in range(self.draws):
            alpha, x, p = instances.instance(min_n=2)
            segment = instances.covering_segment(alpha)

            assert holds(bound_scalar_disk(alpha, x, p, instances.covering_disk(alpha)))
            assert holds(bound_complex_segment(alpha, x, p, segment))
            if alpha.is_real:
                low, high = float(np.min(alpha.values.real)), float(np.max(alpha.values.real))
                assert holds(bound_real_interval(alpha, x, p, Interval(low, high)))

    def test_vector_ball(self, instances):
        """Test the ball bound and its coarsening."""
        for _ in range(self.draws):
            alpha, x, p = instances.instance(min_n=2)

            assert holds(bound_vector_ball_cbs(alpha, x, p, instances.covering_ball(x)))

    def test_variances(self, instances):
        """Test the variance and pseudo-variance bounds."""
        for _ in range(self.draws):
            alpha, _, p = instances.instance(min_n=2)
            segment = instances.covering_segment(alpha)

            assert holds(variance_bound(alpha, p, segment))
            assert holds(pseudo_variance_bound(alpha, p, segment))

    def test_chain_monotone(self, instances):
        """Test t0 <= t1 <= t2 <= t3 on random complex pairs."""
        for _ in range(self.draws):
            n = int(instances.rng.integers(2, 65))
            alpha = instances.scalars(n)
            beta = instances.scalars(n)
            chain = gruss_chain(
                alpha,
                beta,
                instances.weights(n),
                instances.covering_segment(alpha),
                instances.covering_segment(beta),
            )

            assert chain.is_monotone()

    def test_classical(self, instances):
        """Test the weighted and unweighted forward-difference bounds."""
        for _ in range(self.draws):
            alpha, x, p = instances.instance(min_n=2)
            holder = HolderPair.conjugate(float(instances.rng.uniform(1.1, 6.0)))

            assert classical_bounds(alpha, x, p, holder).holds()
            assert classical_bounds_uniform(alpha, x, holder).holds()

    def test_gap_is_mean_product_difference(self, instances):
        """Test the reported gap is the norm of sum p alpha x - sum p alpha sum p x."""
        alpha, x, p = instances.instance(min_n=2)
        expected = x.space.norm(
            np.sum(p.weights[:, None] * alpha.values[:, None] * x.points, axis=0)
            - weighted_mean_scalar(alpha, p) * weighted_mean_vector(x, p)
        )

        report = bound_vector_ball(alpha, x, p, instances.covering_ball(x))

        assert report.gap == pytest.approx(expected, rel=1e-9, abs=1e-12)

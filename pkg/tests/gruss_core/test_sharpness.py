"""Test witnesses and the numerical search for extremal instances."""

# Third Party Library
import numpy as np
import pytest

# Project Library
from gruss.core.bounds import BoundId, BoundReport, bound_scalar_disk
from gruss.core.seqcore import (
    Ball,
    Disk,
    Interval,
    NormedSpace,
    NormFamily,
    ScalarField,
    ScalarSeq,
    VectorSeq,
    WeightVector,
)
from gruss.core.sharpness import (
    CLAIMED_CONSTANTS,
    WITNESS_BOUNDS,
    Instance,
    SharpnessConfig,
    SharpnessProblem,
    Verdict,
    analytic_witness,
    evaluate,
    evaluate_ratio,
    parse_bound_id,
    project_scalars,
    project_vectors,
    project_weights,
    sample_instance,
    search_max_ratio,
    sharpness_report,
    witness_family,
)
from gruss.utilities.exceptions import BoundViolationError, ErrorCode, GrussValidationError, SharpnessError


ARITHMETIC_PAIR = Instance(
    weights=np.array([0.5, 0.5]), alpha=np.array([0, 1], dtype=complex), x=np.array([[0], [1]], dtype=complex)
)


class TestBoundIds:
    """Test bound identifiers and claimed constants."""

    @pytest.mark.parametrize(
        "bound_id, constant",
        [
            ("scalar_disk", 1.0),
            ("segment", 0.5),
            ("variance", 0.25),
            ("uniform_maxmax", 1 / 12),
            ("uniform_holder", 1 / 6),
        ],
    )
    def test_claimed_constants(self, bound_id, constant):
        """Test the constant each inequality claims."""
        assert CLAIMED_CONSTANTS[parse_bound_id(bound_id)] == pytest.approx(constant)

    @pytest.mark.parametrize("raw", ["nonsense", "dft", "chain_product"])
    def test_unknown(self, raw):
        """Test identifiers outside the sharpness table are refused."""
        with pytest.raises(SharpnessError) as error:
            parse_bound_id(raw)

        assert error.value.code is ErrorCode.UNKNOWN_BOUND_ID


class TestWitnesses:
    """Test the analytic extremal configurations."""

    @pytest.mark.parametrize("bound_id", WITNESS_BOUNDS)
    def test_ratio_one(self, bound_id):
        """Test every witness attains ratio 1 at n = 2, d = 1."""
        witness = analytic_witness(bound_id)
        problem = SharpnessProblem(bound_id=bound_id, n=2, d=1)

        assert witness.expected_ratio == 1.0
        assert evaluate_ratio(problem, witness.instance) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("family", list(NormFamily))
    @pytest.mark.parametrize("bound_id", [BoundId.SCALAR_DISK, BoundId.VECTOR_BALL])
    def test_padded(self, bound_id, family):
        """Test witnesses padded with zero weights keep ratio 1 in higher dimensions."""
        problem = SharpnessProblem(
            bound_id=bound_id, n=5, d=3, norm_family=family, p=4.0 if family is NormFamily.LP else None, radius=2.5
        )
        witness = analytic_witness(bound_id, problem)

        assert witness.instance.weights.tolist() == [0.5, 0.5, 0, 0, 0]
        assert evaluate_ratio(problem, witness.instance) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("p1", [0.1, 0.5, 0.9])
    def test_family(self, p1):
        """Test the unequal-weight family keeps ratio 1."""
        instance, disk = witness_family(p1, radius=2.0, center=1 - 1j)
        report = bound_scalar_disk(
            ScalarSeq(instance.alpha),
            VectorSeq(instance.x, NormedSpace(1)),
            WeightVector(instance.weights),
            disk,
        )

        assert report.ratio(BoundId.SCALAR_DISK) == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("p1", [0.0, 1.0, -0.2])
    def test_family_needs_interior_weight(self, p1):
        """Test p1 outside (0, 1) is refused."""
        with pytest.raises(GrussValidationError) as error:
            witness_family(p1)

        assert error.value.code is ErrorCode.INVALID_PARAMETER

    @pytest.mark.parametrize("bound_id", ["classical_maxmax", "uniform_sumsum", "classical_holder"])
    def test_no_known_witness(self, bound_id):
        """Test the forward-difference bounds have no analytic witness."""
        with pytest.raises(SharpnessError) as error:
            analytic_witness(bound_id)

        assert error.value.code is ErrorCode.NO_KNOWN_WITNESS

    def test_uniform_maxmax_arithmetic_pair(self):
        """Test alpha = x = (0, 1) attains the unweighted 1/12 constant at n = 2."""
        problem = SharpnessProblem(bound_id=BoundId.UNIFORM_MAXMAX, n=2, d=1)
        instance = ARITHMETIC_PAIR

        assert evaluate_ratio(problem, instance) == pytest.approx(1.0)


    def test_violation_raises(self, monkeypatch):
        """Test a report breaking its bound stops the evaluation."""
        problem = SharpnessProblem(bound_id=BoundId.SCALAR_DISK, n=2, d=1)
        broken = BoundReport(gap=2.0, bounds={BoundId.SCALAR_DISK.value: 1.0})
        monkeypatch.setattr("gruss.core.sharpness.evaluate", lambda *_: broken)

        with pytest.raises(BoundViolationError) as error:
            evaluate_ratio(problem, ARITHMETIC_PAIR)

        assert error.value.code is ErrorCode.BOUND_VIOLATION


class TestProblems:
    """Test constraint sets and projections."""

    @pytest.mark.parametrize(
        "bound_id, enclosure_type",
        [
            (BoundId.SCALAR_DISK, Disk),
            (BoundId.INTERVAL, Interval),
            (BoundId.VECTOR_BALL, type(None)),
            (BoundId.CLASSICAL_SUMSUM, type(None)),
        ],
    )
    def test_scalar_enclosure(self, bound_id, enclosure_type):
        """Test which scalar enclosure each problem imposes."""
        assert isinstance(SharpnessProblem(bound_id=bound_id).scalar_enclosure, enclosure_type)

    def test_flags(self):
        """Test real, uniform and vector flags."""
        assert SharpnessProblem(bound_id=BoundId.INTERVAL).real_scalars
        assert SharpnessProblem(bound_id=BoundId.SCALAR_DISK, scalar_field=ScalarField.REAL).real_scalars
        assert SharpnessProblem(bound_id=BoundId.UNIFORM_SUMSUM).uniform_weights
        assert not SharpnessProblem(bound_id=BoundId.PSEUDO_VARIANCE).uses_vectors
        assert isinstance(SharpnessProblem(bound_id=BoundId.VECTOR_BALL, d=2).vector_enclosure, Ball)

    def test_project_weights(self):
        """Test negatives are clamped and the rest renormalized."""
        assert project_weights(np.array([-1.0, 1.0, 3.0])).tolist() == [0.0, 0.25, 0.75]
        assert project_weights(np.array([-1.0, -2.0])).tolist() == [0.5, 0.5]

    def test_project_scalars(self):
        """Test radial shrink into a disk and clipping into an interval."""
        shrunk = project_scalars(np.array([3j, 0.5]), Disk(0, 1), real=False)
        clipped = project_scalars(np.array([-4 + 2j, 0.25]), Interval(-1, 1), real=True)

        assert np.allclose(shrunk, [1j, 0.5])
        assert clipped.tolist() == [-1, 0.25]

    def test_project_vectors(self):
        """Test points outside the ball land on its boundary."""
        space = NormedSpace(2, NormFamily.L1)
        ball = Ball(np.zeros(2), 1.0, space)

        projected = project_vectors(np.array([[2.0, 2.0], [0.1, 0.2]]), ball, real=True)

        assert space.norms(projected).tolist() == pytest.approx([1.0, 0.3])

    @pytest.mark.parametrize("bound_id", list(CLAIMED_CONSTANTS))
    def test_samples_are_admissible(self, bound_id):
        """Test random starting points satisfy every hypothesis."""
        problem = SharpnessProblem(bound_id=bound_id, n=4, d=2)
        rng = np.random.default_rng(3)

        for _ in range(20):
            assert 0.0 <= evaluate_ratio(problem, sample_instance(problem, rng)) <= 1 + 1e-9


class TestSearch:
    """Test the multi-restart ascent."""

    def test_scalar_disk_reaches_one(self):
        """Test the search for the disk bound ends within the slack of 1."""
        result = search_max_ratio(SharpnessProblem(bound_id=BoundId.SCALAR_DISK), budget=1000, restarts=8, seed=0)

        assert 0.999 <= result.best_ratio <= 1 + 1e-9
        assert result.iterations == 8000

    def test_segment_in_linf_plane(self):
        """Test the segment search in a three-point L-infinity plane stays at the attained constant."""
        problem = SharpnessProblem(bound_id=BoundId.SEGMENT, n=3, d=2, norm_family=NormFamily.LINF)

        result = search_max_ratio(problem, budget=500, restarts=4, seed=5)

        assert result.best_ratio >= 1 - 1e-6
        assert result.best_ratio <= 1 + 1e-9

    def test_forward_difference_search_stays_sound(self):
        """Test the search for an unweighted bound never exceeds 1."""
        problem = SharpnessProblem(bound_id=BoundId.UNIFORM_HOLDER, n=3, d=1)

        result = search_max_ratio(problem, budget=300, restarts=2, seed=1)

        assert 0.0 < result.best_ratio <= 1 + 1e-9

    def test_deterministic(self):
        """Test equal seeds give byte-identical results, threaded or not."""
        problem = SharpnessProblem(bound_id=BoundId.VECTOR_BALL, n=3, d=2)

        first = search_max_ratio(problem, budget=200, restarts=4, seed=9)
        second = search_max_ratio(problem, budget=200, restarts=4, seed=9)
        threaded = search_max_ratio(problem, budget=200, restarts=4, seed=9, workers=4)

        assert first.to_json() == second.to_json() == threaded.to_json()

    @pytest.mark.parametrize("budget, restarts", [(0, 1), (10, 0)])
    def test_invalid_budget(self, budget, restarts):
        """Test empty searches are refused."""
        with pytest.raises(GrussValidationError) as error:
            search_max_ratio(SharpnessProblem(bound_id=BoundId.SCALAR_DISK), budget=budget, restarts=restarts)

        assert error.value.code is ErrorCode.INVALID_PARAMETER

    @pytest.mark.parametrize("n, radius", [(1, 1.0), (2, 0.0)])
    def test_infeasible(self, n, radius):
        """Test problems that cannot have a positive bound."""
        with pytest.raises(SharpnessError) as error:
            search_max_ratio(SharpnessProblem(bound_id=BoundId.SCALAR_DISK, n=n, radius=radius), budget=10, restarts=1)

        assert error.value.code is ErrorCode.INFEASIBLE_PROBLEM


class TestReport:
    """Test the sharpness table."""

    def test_witness_bounds_attained(self):
        """Test every witness-backed bound is reported ATTAINED."""
        report = sharpness_report(config=SharpnessConfig(budget=50, restarts=2))

        assert [row.bound_id for row in report.rows] == list(WITNESS_BOUNDS)
        assert all(row.verdict is Verdict.ATTAINED for row in report.rows)
        assert not report.has_violation

    def test_zero_budget_skips_search_only_bounds(self):
        """Test a zero budget reports witnesses only."""
        report = sharpness_report(list(CLAIMED_CONSTANTS), SharpnessConfig(budget=0))

        assert [row.bound_id for row in report.rows] == list(WITNESS_BOUNDS)
        assert all(row.search is None and row.searched_ratio is None for row in report.rows)
        assert all(row.witness_ratio == pytest.approx(1.0) for row in report.rows)

    def test_search_only_note(self):
        """Test a forward-difference bound carries a note and no witness ratio."""
        report = sharpness_report(["classical_sumsum"], SharpnessConfig(n=3, budget=100, restarts=2))
        row = report.rows[0]

        assert row.witness_ratio is None
        assert row.note == "no analytic witness; search only"
        assert row.verdict in (Verdict.ATTAINED, Verdict.CONSISTENT)
        assert row.to_dict()["search"]["iterations"] == 200

    def test_violation_row(self, monkeypatch):
        """Test a violation found by the search becomes a VIOLATION row."""

        def violated(*_args, **_kwargs):
            raise BoundViolationError(message="scalar_disk violated")

        monkeypatch.setattr("gruss.core.sharpness.search_max_ratio", violated)

        report = sharpness_report(["scalar_disk"], SharpnessConfig(budget=10, restarts=1))

        assert report.has_violation
        assert report.rows[0].verdict is Verdict.VIOLATION
        assert report.rows[0].searched_ratio == float("inf")
        assert "scalar_disk violated" in report.rows[0].note

    def test_unknown_bound(self):
        """Test an unknown identifier fails the whole report."""
        with pytest.raises(SharpnessError):
            sharpness_report(["not_a_bound"])

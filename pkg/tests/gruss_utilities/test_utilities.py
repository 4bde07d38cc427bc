"""Test the logger, exceptions and configuration constants."""

# Standard Library
import logging

# Third Party Library
import pytest

# Project Library
from gruss.utilities.config import GrussConstants
from gruss.utilities.exceptions import (
    BoundViolationError,
    EnclosureViolationError,
    ErrorCode,
    GrussBaseException,
    GrussParseError,
    GrussValidationError,
    OrderOverflowError,
    SharpnessError,
    SingularParameterError,
)
from gruss.utilities.logger import CustomLogger


class TestCustomLogger:
    """Test CustomLogger returns configured standard loggers."""

    def test_returns_logger(self):
        """Test construction yields a logging.Logger with one console and one file handler."""
        logger = CustomLogger(name="gruss_test_logger", log_level="DEBUG")

        assert isinstance(logger, logging.Logger)
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 2

    def test_handlers_attached_once(self):
        """Test repeated construction reuses the same handlers."""
        first = CustomLogger(name="gruss_test_repeat")
        second = CustomLogger(name="gruss_test_repeat")

        assert first is second
        assert len(second.handlers) == 2

    def test_default_level(self):
        """Test the level comes from the configuration when none is given."""
        logger = CustomLogger(name="gruss_test_default")

        assert logger.level == logging.getLevelName(GrussConstants.LOG_LEVEL)


class TestExceptions:
    """Test codes, messages and logging of the exception hierarchy."""

    @pytest.mark.parametrize(
        "exception, code",
        [
            (GrussBaseException, ErrorCode.INTERNAL),
            (GrussValidationError, ErrorCode.VALIDATION_ERROR),
            (EnclosureViolationError, ErrorCode.ENCLOSURE_VIOLATION),
            (SingularParameterError, ErrorCode.SINGULAR_OMEGA),
            (OrderOverflowError, ErrorCode.ORDER_OVERFLOW),
            (SharpnessError, ErrorCode.NO_KNOWN_WITNESS),
            (GrussParseError, ErrorCode.PARSE_ERROR),
            (BoundViolationError, ErrorCode.BOUND_VIOLATION),
        ],
    )
    def test_default_codes(self, exception, code):
        """Test each class carries its default code."""
        error = exception(message="Something failed...")

        assert error.code is code
        assert str(error) == f"{code.value}: Something failed..."

    def test_explicit_code(self):
        """Test an explicit code overrides the default."""
        error = GrussValidationError(message="Weights sum to 0.6...", code=ErrorCode.SUM_NOT_ONE)

        assert error.code is ErrorCode.SUM_NOT_ONE
        assert error.message == "Weights sum to 0.6..."

    def test_hierarchy(self):
        """Test enclosure violations are validation errors."""
        assert issubclass(EnclosureViolationError, GrussValidationError)
        assert issubclass(GrussParseError, GrussBaseException)

    def test_logs_on_construction(self, caplog):
        """Test a given logger receives the coded message at ERROR."""
        logger = logging.getLogger("gruss_test_exceptions")

        with caplog.at_level(logging.ERROR, logger="gruss_test_exceptions"):
            SingularParameterError(message="z = 1 is excluded...", logger=logger, code=ErrorCode.Z_EQUALS_ONE)

        assert "[Z_EQUALS_ONE] z = 1 is excluded..." in caplog.text


class TestGrussConstants:
    """Test the ini file is read into typed constants."""

    def test_tolerances(self):
        """Test tolerance values."""
        assert GrussConstants.WEIGHT_SUM_TOL == 1e-12
        assert GrussConstants.BOUND_REL_TOL == 1e-9
        assert GrussConstants.BOUND_ABS_TOL == 1e-12
        assert GrussConstants.SINGULARITY_TOL == 1e-9
        assert GrussConstants.Z_EQUALS_ONE_TOL == 1e-12

    def test_search_defaults(self):
        """Test the sharpness search defaults."""
        assert GrussConstants.SEARCH_BUDGET == 1000
        assert GrussConstants.SEARCH_RESTARTS == 8
        assert GrussConstants.SEARCH_N == 2
        assert GrussConstants.SEARCH_NORM == "l2"
        assert 0 < GrussConstants.SEARCH_STEP_DECAY < 1

    def test_numerics(self):
        """Test integer settings."""
        assert isinstance(GrussConstants.COMPENSATED_THRESHOLD, int)
        assert GrussConstants.LOG_FILE_MAX_BACKUP == 5

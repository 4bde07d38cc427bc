"""Exceptions for the gruss Module."""

# Standard Library
from enum import Enum
import logging
from typing import Optional


class ErrorCode(str, Enum):
    """Machine-readable error codes carried by every Gruss exception."""

    NEGATIVE_WEIGHT = "NEGATIVE_WEIGHT"
    SUM_NOT_ONE = "SUM_NOT_ONE"
    ZERO_SUM = "ZERO_SUM"
    LENGTH_MISMATCH = "LENGTH_MISMATCH"
    FIELD_MISMATCH = "FIELD_MISMATCH"
    TOO_SHORT = "TOO_SHORT"
    ENCLOSURE_VIOLATION = "ENCLOSURE_VIOLATION"
    NOT_REAL = "NOT_REAL"
    INVALID_NORM = "INVALID_NORM"
    INVALID_HOLDER = "INVALID_HOLDER"
    INVALID_ENCLOSURE = "INVALID_ENCLOSURE"
    INVALID_POLYNOMIAL = "INVALID_POLYNOMIAL"
    INVALID_PARAMETER = "INVALID_PARAMETER"
    SINGULAR_OMEGA = "SINGULAR_OMEGA"
    ORDER_OVERFLOW = "ORDER_OVERFLOW"
    Z_EQUALS_ONE = "Z_EQUALS_ONE"
    NO_KNOWN_WITNESS = "NO_KNOWN_WITNESS"
    INFEASIBLE_PROBLEM = "INFEASIBLE_PROBLEM"
    UNKNOWN_BOUND_ID = "UNKNOWN_BOUND_ID"
    PARSE_ERROR = "PARSE_ERROR"
    VALIDATION_ERROR = "VALIDATION_ERROR"
    BOUND_VIOLATION = "BOUND_VIOLATION"
    INTERNAL = "INTERNAL"


class GrussBaseException(Exception):
    """
    Gruss Base Exception.

    Attributes:
        message (str): Message for the exception.
        code (ErrorCode): Error code for the exception.
        logger (logging.Logger): Logger for the exception.
    """

    default_code = ErrorCode.INTERNAL

    def __init__(
        self,
        message: str = "Gruss Base Exception...",
        logger: Optional[logging.Logger] = None,
        code: Optional[ErrorCode] = None,
    ) -> None:
        """
        Initialize Gruss Base Exception.

        Args:
            message (str, optional): Message for the exception. Defaults to "Gruss Base Exception...".
            logger (logging.Logger, optional): Logger for the exception. Defaults to None.
            code (ErrorCode, optional): Error code. Defaults to the class' default code.
        """
        self.message = message
        self.code = code or self.default_code
        self.logger = logger
        super().__init__(self.message)
        if logger:
            logger.error(f"[{self.code.value}] {message}")

    def __str__(self) -> str:
        return f"{self.code.value}: {self.message}"


class GrussValidationError(GrussBaseException):
    """Input or invariant validation failure."""

    default_code = ErrorCode.VALIDATION_ERROR


class EnclosureViolationError(GrussValidationError):
    """Some element of a sequence lies outside the enclosure a bound assumes."""

    default_code = ErrorCode.ENCLOSURE_VIOLATION


class SingularParameterError(GrussBaseException):
    """Parameter excluded by the statement of a bound (w = lπ/m, z = 1)."""

    default_code = ErrorCode.SINGULAR_OMEGA


class OrderOverflowError(GrussBaseException):
    """Transform order whose kernel or power sum exceeds the floating point range."""

    default_code = ErrorCode.ORDER_OVERFLOW


class SharpnessError(GrussBaseException):
    """Sharpness search or witness lookup failure."""

    default_code = ErrorCode.NO_KNOWN_WITNESS


class GrussParseError(GrussBaseException):
    """Input document could not be parsed."""

    default_code = ErrorCode.PARSE_ERROR


class BoundViolationError(GrussBaseException):
    """A certified bound failed numerically. Should never happen."""

    default_code = ErrorCode.BOUND_VIOLATION

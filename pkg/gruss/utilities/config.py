"""Configuration Module for Gruss."""

# Standard Library
import os
from pathlib import Path
from configparser import ConfigParser

# Third Party Library
from dotenv import load_dotenv


# Load Environment Variables
load_dotenv()


class GrussConstants:
    """Gruss constants loaded from the configs directory, with environment overrides for logging."""

    # Gruss Configs
    __gruss_config_dir = Path(__file__).parent.parent / "configs"
    gruss_config = ConfigParser()
    gruss_config.optionxform = str
    gruss_config.read(__gruss_config_dir / "gruss_configs.ini")

    # Tolerances
    WEIGHT_SUM_TOL = gruss_config.getfloat("Tolerances", "WeightSum")
    BOUND_REL_TOL = gruss_config.getfloat("Tolerances", "BoundRelative")
    BOUND_ABS_TOL = gruss_config.getfloat("Tolerances", "BoundAbsolute")
    MEMBERSHIP_TOL = gruss_config.getfloat("Tolerances", "Membership")
    SINGULARITY_TOL = gruss_config.getfloat("Tolerances", "Singularity")
    Z_EQUALS_ONE_TOL = gruss_config.getfloat("Tolerances", "ZEqualsOne")
    GEOMETRIC_DIRECT_TOL = gruss_config.getfloat("Tolerances", "GeometricDirect")
    ATTAINED_TOL = gruss_config.getfloat("Tolerances", "Attained")

    # Numerics
    COMPENSATED_THRESHOLD = gruss_config.getint("Numerics", "CompensatedThreshold")

    # Sharpness search defaults
    SEARCH_BUDGET = gruss_config.getint("Sharpness", "Budget")
    SEARCH_RESTARTS = gruss_config.getint("Sharpness", "Restarts")
    SEARCH_N = gruss_config.getint("Sharpness", "N")
    SEARCH_D = gruss_config.getint("Sharpness", "D")
    SEARCH_NORM = gruss_config.get("Sharpness", "Norm")
    SEARCH_INITIAL_STEP = gruss_config.getfloat("Sharpness", "InitialStep")
    SEARCH_STEP_DECAY = gruss_config.getfloat("Sharpness", "StepDecay")

    # Logging
    LOG_LEVEL = os.getenv("GRUSS_LOG_LEVEL", gruss_config.get("Logging", "LogLevel")).upper()
    LOG_DIR = os.getenv("GRUSS_LOG_DIR")
    LOG_FILE_MAX_SIZE = gruss_config.getint("Logging", "LogFileMaxSize")
    LOG_FILE_MAX_BACKUP = gruss_config.getint("Logging", "LogFileMaxBackup")

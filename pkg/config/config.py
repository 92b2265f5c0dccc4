"""
Configuration settings for grograde.

Values can be overridden through environment variables (a `.env` file in the
working directory is honoured) and, for a single run, through CLI flags.
"""
import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    """Read an integer setting from the environment, falling back to default."""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        return default


# Enumeration and search caps
ENUMERATION_CAP = _env_int("GROGRADE_ENUMERATION_CAP", 10**6)  # |C^n| for the enumerate backend
IDEAL_SUBSET_CAP = _env_int("GROGRADE_IDEAL_SUBSET_CAP", 12)  # |A| for subset search of unital ideals
EQUIVALENCE_CAP = _env_int("GROGRADE_EQUIVALENCE_CAP", 10**5)  # product of unit group orders
FULL_ISO_MAX_DIM = _env_int("GROGRADE_FULL_ISO_MAX_DIM", 6)

# Sampling
CLASSIFY_SAMPLE = _env_int("GROGRADE_CLASSIFY_SAMPLE", 50)
RANDOM_SEED = _env_int("GROGRADE_SEED", 20240601)

# Worker threads for independent checks
THREADS = max(1, _env_int("GROGRADE_THREADS", 1))

# Default cohomology backend
COHOMOLOGY_BACKEND = os.environ.get("GROGRADE_BACKEND", "snf")

# Logging Configuration
LOGGING_CONFIG = {
    # level of the grograde logger itself
    "level": os.environ.get("GROGRADE_LOG_LEVEL", "INFO"),

    # console only shows warnings unless -v is given
    "console_level": "WARNING",

    # log directory (relative to the project root)
    "log_dir": os.path.join("logs"),

    # file logging is opt-in
    "enable_file_logging": os.environ.get("GROGRADE_LOG_FILE", "0") == "1",
}

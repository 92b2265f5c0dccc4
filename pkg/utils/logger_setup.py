"""
Logging setup for grograde.
"""
import os
import sys
import logging
from datetime import datetime

# Add parent directory to path to allow module imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from config import config

ROOT_LOGGER_NAME = "grograde"


class ImmediateFileHandler(logging.FileHandler):
    """File handler that flushes after every record."""

    def emit(self, record):
        super().emit(record)
        self.flush()


def setup_app_logging(console_level=None, enable_file_logging=None):
    """
    Configure the `grograde` logger.

    Args:
        console_level: level name for the console handler, defaults to
            LOGGING_CONFIG["console_level"]
        enable_file_logging: overrides LOGGING_CONFIG["enable_file_logging"]

    Returns:
        bool: True if logging was configured
    """
    log_config = config.LOGGING_CONFIG
    console_level = console_level or log_config["console_level"]
    if enable_file_logging is None:
        enable_file_logging = log_config["enable_file_logging"]

    try:
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

        root_logger = logging.getLogger(ROOT_LOGGER_NAME)

        # replace handlers so repeated initialisation never duplicates output
        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        root_logger.setLevel(getattr(logging, log_config["level"], logging.INFO))

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(getattr(logging, console_level, logging.WARNING))
        root_logger.addHandler(console_handler)

        if enable_file_logging:
            log_dir = os.path.join(
                os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                log_config["log_dir"]
            )
            os.makedirs(log_dir, exist_ok=True)
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            log_file = os.path.join(log_dir, f"grograde_{timestamp}.log")
            file_handler = ImmediateFileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)
            root_logger.info(f"File logging enabled: {log_file}")

        root_logger.propagate = False
        return True
    except Exception as e:
        print(f"Failed to configure logging: {str(e)}", file=sys.stderr)
        return False


def initialize_logging(verbosity=0, enable_file_logging=None):
    """
    Initialise logging from a CLI verbosity count (0, 1 = INFO, 2+ = DEBUG).
    """
    if verbosity >= 2:
        console_level = "DEBUG"
    elif verbosity == 1:
        console_level = "INFO"
    else:
        console_level = None
    ok = setup_app_logging(console_level=console_level, enable_file_logging=enable_file_logging)
    if verbosity >= 2:
        logging.getLogger(ROOT_LOGGER_NAME).setLevel(logging.DEBUG)
    return ok

# src/core/initialization.py
from loguru import logger
from pathlib import Path
from typing import List, Optional
import sys

from ..config.settings import settings

_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")


class SystemInitializer:
    """Initialize logging and check settings for the simulator."""

    def __init__(self, log_level: Optional[str] = None):
        self.settings = settings
        self.log_level = (log_level or self.settings.LOG_LEVEL).upper()
        self._setup_logging()

    def _setup_logging(self):
        """Configure logging system."""
        logger.remove()  # Remove default handler
        logger.add(
            sys.stderr,
            level=self.log_level if self.log_level in _LEVELS else "INFO",
            format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>"
        )

        # File logging only when a directory is configured
        if self.settings.LOG_DIR:
            log_path = Path(self.settings.LOG_DIR)
            log_path.mkdir(parents=True, exist_ok=True)
            logger.add(
                log_path / "asd.log",
                rotation="500 MB",
                retention="10 days",
                level=self.log_level if self.log_level in _LEVELS else "INFO"
            )

    def environment_problems(self) -> List[str]:
        """List settings that would make runs fail or misbehave."""
        problems = []
        if self.log_level not in _LEVELS:
            problems.append(f"LOG_LEVEL '{self.log_level}' is not one of {', '.join(_LEVELS)}")
        if not 0 <= self.settings.DEFAULT_SEED <= 2**64 - 1:
            problems.append(f"DEFAULT_SEED {self.settings.DEFAULT_SEED} is not a 64-bit unsigned integer")
        if self.settings.DEFAULT_BINS < 1:
            problems.append(f"DEFAULT_BINS must be positive, got {self.settings.DEFAULT_BINS}")
        if self.settings.WORKERS < 1:
            problems.append(f"WORKERS must be positive, got {self.settings.WORKERS}")
        if not 1 <= self.settings.FLOAT_DIGITS <= 17:
            problems.append(f"FLOAT_DIGITS must lie in [1, 17], got {self.settings.FLOAT_DIGITS}")
        if self.settings.MEMBERSHIP_TOLERANCE < 0:
            problems.append("MEMBERSHIP_TOLERANCE must be non-negative")
        return problems

    def validate_environment(self) -> bool:
        """Validate settings. No environment variable is required."""
        problems = self.environment_problems()
        for problem in problems:
            logger.error(f"Invalid setting: {problem}")
        return not problems

    def initialize_system(self) -> bool:
        """Initialize the complete system."""
        try:
            logger.debug(f"Initializing simulator ({self.settings.ENVIRONMENT})")

            if not self.validate_environment():
                return False

            logger.debug("System initialization completed successfully")
            return True

        except Exception as e:
            logger.error(f"System initialization failed: {str(e)}")
            return False

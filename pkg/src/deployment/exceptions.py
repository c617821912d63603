# src/deployment/exceptions.py
from typing import Any, Dict, List, Optional


class DeploymentError(Exception):
    """Base exception for deployment-related errors."""
    pass


class ConfigurationError(DeploymentError):
    """Raised when simulation inputs are invalid."""
    pass


class SectorValidationError(ConfigurationError):
    """Raised when a ring sector violates one of its bounds."""
    pass


class PlanValidationError(ConfigurationError):
    """Raised when a network plan fails validation.

    Attributes:
        violations (list): Every violated invariant with its layer/sector coordinates
    """
    def __init__(self, message: str, violations: List[Any]):
        super().__init__(message)
        self.violations = violations


class PlanParseError(ConfigurationError):
    """Raised when a plan file or matrix cannot be parsed.

    Attributes:
        location (str): Line/column or field path of the offending entry
    """
    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class MatrixAmbiguityError(PlanParseError):
    """Raised when zero padding in a plan matrix is not trailing."""
    pass


class EstimationError(DeploymentError):
    """Raised when a density estimate cannot be formed."""
    pass


class ArtifactError(DeploymentError):
    """Raised when an input file does not match any known schema."""
    pass


class InvariantError(DeploymentError):
    """Raised when generated output breaks an internal invariant.

    Attributes:
        details (dict): Counts or indices describing the breach
    """
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}

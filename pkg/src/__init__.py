"""Area-specific deployment simulator."""

__version__ = "0.1.0"

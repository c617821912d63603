"""Core system components package.

Logging setup and artifact I/O shared by the command-line tools.
"""

from .initialization import SystemInitializer

from .artifacts import (
    atomic_write_bytes,
    atomic_write_text,
    write_json,
    write_points_csv,
    read_points_csv,
    write_grid,
    read_grid,
    detect_schema,
    manifest_path,
    write_manifest,
    read_config_file
)

__all__ = [
    # Initialization
    'SystemInitializer',

    # Artifacts
    'atomic_write_bytes',
    'atomic_write_text',
    'write_json',
    'write_points_csv',
    'read_points_csv',
    'write_grid',
    'read_grid',
    'detect_schema',
    'manifest_path',
    'write_manifest',
    'read_config_file'
]

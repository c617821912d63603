"""Validation, decomposition and file I/O for controlled network plans."""
import hashlib
import json
import math
from pathlib import Path
from typing import Any, List, Union

import numpy as np
from loguru import logger
from pydantic import ValidationError

from ..config.settings import settings
from ..models.network_plan import LayerSpec, NetworkPlan
from .exceptions import MatrixAmbiguityError, PlanParseError, PlanValidationError
from .geometry import TWO_PI, RingSector
from .superposition import Cluster
from .types import PlanViolation


def validate(plan: NetworkPlan) -> List[PlanViolation]:
    """Collect every violated plan invariant.

    Zero-count sectors are legal and only logged as warnings.

    Returns:
        List of violations; empty for a valid plan
    """
    violations: List[PlanViolation] = []
    if not plan.layers:
        return [PlanViolation("plan has no layers")]

    previous_radius = 0.0
    for i, layer in enumerate(plan.layers):
        radius = layer.outer_radius
        if not math.isfinite(radius) or radius <= 0:
            violations.append(PlanViolation(f"outer_radius {radius} must be a positive number", i))
        elif i > 0 and radius <= previous_radius:
            violations.append(PlanViolation(
                f"radii not strictly increasing ({previous_radius} >= {radius})", i
            ))
        if math.isfinite(radius):
            previous_radius = max(previous_radius, radius)

        bounds = layer.sector_bounds
        for j, angle in enumerate(bounds):
            if not math.isfinite(angle) or not 0.0 < angle < TWO_PI:
                violations.append(PlanViolation(
                    f"sector bound {angle} must lie strictly inside (0, 2*pi)", i, j
                ))
            if j > 0 and not bounds[j - 1] < angle:
                violations.append(PlanViolation(
                    f"sector bounds not strictly increasing ({bounds[j - 1]} >= {angle})", i, j
                ))

        if len(layer.sector_counts) != len(bounds) + 1:
            violations.append(PlanViolation(
                f"{len(layer.sector_counts)} sector counts given for "
                f"{len(bounds) + 1} sectors", i
            ))
        for j, count in enumerate(layer.sector_counts):
            if count < 0:
                violations.append(PlanViolation(f"node count {count} is negative", i, j))
            elif count == 0:
                logger.warning(f"Layer {i} sector {j} is planned with zero nodes")

    if plan.total_nodes < 1:
        violations.append(PlanViolation(f"total node count {plan.total_nodes} must be >= 1"))
    return violations


def ensure_valid(plan: NetworkPlan) -> NetworkPlan:
    """Return the plan unchanged or raise with every violation.

    Raises:
        PlanValidationError: If validate reports anything
    """
    violations = validate(plan)
    if violations:
        summary = "; ".join(str(v) for v in violations)
        raise PlanValidationError(f"Invalid network plan: {summary}", violations)
    return plan


def to_sectors(plan: NetworkPlan) -> List[Cluster]:
    """Decompose the plan into ring sectors in layer-major, sector-minor order.

    Layer i spans radii (r_{i-1}, r_i) with r_0 = 0; sector j of a layer spans
    from the previous bound (or 0) to the next bound (or 2*pi).

    Raises:
        PlanValidationError: If the plan is invalid
    """
    ensure_valid(plan)
    allocations: List[Cluster] = []
    inner = 0.0
    for i, layer in enumerate(plan.layers):
        for j in range(layer.n_sectors):
            lo, hi = layer.sector_angles(j)
            sector = RingSector(inner, layer.outer_radius, lo, hi)
            allocations.append(Cluster(sector, layer.sector_counts[j], i, j))
        inner = layer.outer_radius
    return allocations


def _format_value(value: Any, digits: int) -> str:
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, f".{digits}g")
    return json.dumps(value)


def canonical_json(value: Any, digits: int = settings.FLOAT_DIGITS, indent: int = 0) -> str:
    """Serialize with sorted keys, fixed layout and ``digits`` significant digits."""
    pad = "  " * indent
    inner_pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner_pad}{json.dumps(str(key))}: {canonical_json(value[key], digits, indent + 1)}"
            for key in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in value):
            return "[" + ", ".join(_format_value(v, digits) for v in value) + "]"
        items = [f"{inner_pad}{canonical_json(v, digits, indent + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    return _format_value(value, digits)


def save_plan(plan: NetworkPlan) -> bytes:
    """Canonical UTF-8 plan file bytes."""
    return (canonical_json(plan.model_dump()) + "\n").encode("utf-8")


def load_plan(text: Union[bytes, str]) -> NetworkPlan:
    """Parse and validate a plan file.

    Angles may be radians or pi-rational strings such as ``"4pi/3"``.

    Raises:
        PlanParseError: With line/column or field path of the problem
        PlanValidationError: If the parsed plan violates an invariant
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise PlanParseError(f"plan file is not UTF-8: {e.reason}", f"byte {e.start}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise PlanParseError(e.msg, f"line {e.lineno}, column {e.colno}") from e

    if not isinstance(data, dict) or "layers" not in data:
        raise PlanParseError("expected a JSON object with a 'layers' list", "line 1")
    try:
        plan = NetworkPlan.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise PlanParseError(first["msg"], location) from e
    return ensure_valid(plan)


def load_plan_file(path: Union[str, Path]) -> NetworkPlan:
    """Read and parse a plan file from disk."""
    path = Path(path)
    logger.debug(f"Loading network plan from {path}")
    return load_plan(path.read_bytes())


def plan_digest(plan: NetworkPlan) -> str:
    """SHA-256 of the canonical plan bytes."""
    return hashlib.sha256(save_plan(plan)).hexdigest()


def to_padded_matrix(plan: NetworkPlan) -> np.ndarray:
    """Emit the zero-padded n_L x 2*gamma matrix [R Theta N]."""
    gamma = plan.gamma
    matrix = np.zeros((plan.n_layers, 2 * gamma), dtype=float)
    for i, layer in enumerate(plan.layers):
        matrix[i, 0] = layer.outer_radius
        matrix[i, 1:1 + len(layer.sector_bounds)] = layer.sector_bounds
        matrix[i, gamma:gamma + layer.n_sectors] = layer.sector_counts
    return matrix


def plan_from_padded_matrix(matrix: Any) -> NetworkPlan:
    """Rebuild a ragged plan from the zero-padded matrix [R Theta N].

    Column 0 holds radii, the next gamma - 1 columns the interior angles and
    the last gamma columns the node counts. Zeros are only accepted as
    trailing padding of a row's angles, and counts must be integers.

    Raises:
        PlanParseError: On shape problems or non-integer counts
        MatrixAmbiguityError: When a zero angle precedes a nonzero one, or a
            count is given for a sector the angles do not define
        PlanValidationError: If the resulting plan is invalid
    """
    try:
        values = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as e:
        raise PlanParseError(f"plan matrix is not numeric: {e}") from e
    if values.ndim != 2 or values.shape[0] < 1 or values.shape[1] < 2 or values.shape[1] % 2:
        raise PlanParseError(f"plan matrix must be n_L x 2*gamma, got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise PlanParseError("plan matrix contains non-finite entries")

    gamma = values.shape[1] // 2
    layers = []
    for i, row in enumerate(values):
        angles = row[1:gamma]
        counts = row[gamma:]
        zeros = np.flatnonzero(angles == 0.0)
        n_bounds = int(zeros[0]) if zeros.size else len(angles)
        if np.any(angles[n_bounds:] != 0.0):
            column = 1 + n_bounds + int(np.flatnonzero(angles[n_bounds:])[0])
            raise MatrixAmbiguityError(
                "zero angle followed by a nonzero angle; padding must be trailing",
                f"row {i}, column {column}",
            )
        n_sectors = n_bounds + 1
        if np.any(counts[n_sectors:] != 0.0):
            column = gamma + n_sectors + int(np.flatnonzero(counts[n_sectors:])[0])
            raise MatrixAmbiguityError(
                f"node count given for a sector beyond the {n_sectors} defined by the angles",
                f"row {i}, column {column}",
            )
        used = counts[:n_sectors]
        if np.any(used != np.round(used)):
            column = gamma + int(np.flatnonzero(used != np.round(used))[0])
            raise PlanParseError("node counts must be integers", f"row {i}, column {column}")
        layers.append(LayerSpec(
            outer_radius=float(row[0]),
            sector_bounds=[float(a) for a in angles[:n_bounds]],
            sector_counts=[int(c) for c in used],
        ))
    return ensure_valid(NetworkPlan(layers=layers))

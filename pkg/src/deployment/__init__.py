"""Area-specific deployment package.

Ring-sector sampling, network plans, controlled and automatic deployment,
and histogram density estimation.
"""

from .exceptions import (
    DeploymentError,
    ConfigurationError,
    SectorValidationError,
    PlanValidationError,
    PlanParseError,
    MatrixAmbiguityError,
    EstimationError,
    ArtifactError,
    InvariantError
)

from .rng import SeededRng

from .geometry import (
    RingSector,
    sector_area,
    radial_pdf,
    radial_cdf,
    sample_radius,
    sample_angle,
    sample_point,
    sample_points
)

from .models import (
    Deployment,
    AutoConfig,
    AutoRealization
)

from .plan import (
    validate,
    to_sectors,
    load_plan,
    save_plan,
    plan_from_padded_matrix,
    to_padded_matrix
)

from .controlled import (
    deploy_controlled,
    sector_densities
)

from .uncontrolled import (
    draw_layer_count,
    split_nodes,
    draw_layer_radii,
    deploy_auto
)

from .density import (
    HistogramGrid,
    PdfGrid,
    build_histogram,
    analytical_mean_density,
    empirical_mean_density,
    density_error,
    asd_pdf_estimate
)

__all__ = [
    # Errors
    'DeploymentError',
    'ConfigurationError',
    'SectorValidationError',
    'PlanValidationError',
    'PlanParseError',
    'MatrixAmbiguityError',
    'EstimationError',
    'ArtifactError',
    'InvariantError',

    # Geometry and sampling
    'SeededRng',
    'RingSector',
    'sector_area',
    'radial_pdf',
    'radial_cdf',
    'sample_radius',
    'sample_angle',
    'sample_point',
    'sample_points',

    # Plans and deployments
    'Deployment',
    'AutoConfig',
    'AutoRealization',
    'validate',
    'to_sectors',
    'load_plan',
    'save_plan',
    'plan_from_padded_matrix',
    'to_padded_matrix',
    'deploy_controlled',
    'sector_densities',
    'draw_layer_count',
    'split_nodes',
    'draw_layer_radii',
    'deploy_auto',

    # Density estimation
    'HistogramGrid',
    'PdfGrid',
    'build_histogram',
    'analytical_mean_density',
    'empirical_mean_density',
    'density_error',
    'asd_pdf_estimate'
]

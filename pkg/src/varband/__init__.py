"""Variable-bandwidth FIR filtering toolkit.

Closed-form least-squares design of transition-band DFT samples for a
fast-convolution (overlap-save) lowpass whose bandwidth retunes between
blocks at near-zero cost, plus the analysis, streaming, and cost-model
machinery around it.
"""

__version__ = "0.1.0"

from .spec import (  # noqa: F401
    FilterSpec,
    DiscretizedSpec,
    discretize,
    estimate_filter_length,
    estimate_fft_length,
    bandwidth_to_bin,
)
from .coefficients import (  # noqa: F401
    TransitionCoeffs,
    DftCoefficientSet,
    transition_edges,
    build_coefficients,
    retune,
)
from .design import (  # noqa: F401
    LsSystem,
    DesignWeights,
    assemble,
    assemble_weighted,
    solve,
    derive_weights,
    design_transition,
)
from .analysis import (  # noqa: F401
    PtvirSet,
    ResponseGrid,
    base_response,
    uniform_grid,
    ptvir_from_coefficients,
    frequency_response,
    response_grid,
    stopband_metrics,
    design_metrics,
    specification_metrics,
    sbe_profile,
    numeric_error_energy,
)
from .engine import OverlapSaveEngine, RetuneAck  # noqa: F401
from .artifact import DesignArtifact, build_artifact  # noqa: F401
from .complexity import fft_costs, rates, comparison_table  # noqa: F401
from .errors import (  # noqa: F401
    FilterDesignError,
    ConfigurationError,
    InfeasibleSpecError,
    ConditioningError,
)

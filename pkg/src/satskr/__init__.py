"""Secret-key-rate bounds for free-space wiretap channels with a
restricted eavesdropper.

Modules
-------
gaussian
    Covariance-matrix toolbox: symplectic spectra, entropies, heterodyne
    conditioning.
channels
    Far-field and Gaussian-beam channel models (eta, kappa, n_e).
rates
    Direct/reverse lower bounds, large-power asymptotes, upper bound.
sweeps
    Input-power optimization and declarative 1-D parameter sweeps.
kernels
    Scalar numeric kernels; compiled when the extension built, pure
    Python otherwise.
"""

__version__ = "0.1.0"

from .channels import (  # noqa: F401
    BeamGeometry,
    ChannelPoint,
    ExclusionZoneGeometry,
    beam_channel,
    blackbody_ne,
    farfield_channel,
)
from .rates import RateParams, RateResult, rate_point  # noqa: F401
from .sweeps import (  # noqa: F401
    FixedParams,
    GridSpec,
    OptimumReport,
    ResultTable,
    SweepSpec,
    optimize_mu,
    run_sweep,
)

"""Non-Gaussianity of photon-subtracted and photon-added thermal states under damping."""

from .damping import (
    DampingChannel,
    TimePoint,
    TrajectoryPoint,
    damped_mean,
    damped_mean_psts,
    damped_psts_distribution,
    evolve_fock_diagonal,
    trajectory,
    transition_matrix,
)
from .errors import AccuracyError, ConfigError, DomainError, NongaussError
from .fock_states import (
    ExcitationSpec,
    FockDiagonalState,
    Kind,
    ThermalParams,
    generating_function,
    make_pats,
    make_psts,
    make_state,
    make_thermal,
    mean_photon,
    purity,
    purity_psts_closed,
)
from .nongaussianity import (
    AssociateGaussian,
    NonGaussMeasures,
    associate_gaussian,
    delta_bures,
    delta_hs,
    delta_hs_psts_closed,
    delta_re,
    measures,
)
from .special_functions import hyp2f1_series, hyp2f1_terminating, legendre_p

__version__ = "0.1.0"

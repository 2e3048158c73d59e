"""Rate-loss bounds and idealized repeater rates for networks of lossy optical channels."""

from .bounds import (
    BoundReport,
    ChainSpec,
    chain_bound_per_use,
    chain_bound_total,
    chain_network,
    harmonic_chain_bound,
    network_bound,
    optimal_use_allocation,
    small_eta_chain_approx,
    time_to_first_bit,
    uneven_chain_bound_per_use,
)
from .errors import (
    DisconnectedError,
    DomainError,
    NetworkValidationError,
    SpecificationError,
    TooManyNodesError,
)
from .netgraph import (
    Cut,
    Network,
    UseProfile,
    cut_crossing_edges,
    cut_value,
    enumerate_cuts_oracle,
    min_cut,
    validate,
)
from .photonics import (
    ChannelSpec,
    EpsilonParams,
    binary_entropy,
    db_to_attenuation_length,
    epsilon_adjust,
    esq_lossy_bound,
    transmittance,
)
from .repeater_sim import (
    SimConfig,
    SimResult,
    analytic_repeater_rate,
    sample_link_attempts,
    scaling_model_rate,
    simulate,
)
from .routing import Route, best_path, edge_weight, path_bound

__version__ = "0.1.0"

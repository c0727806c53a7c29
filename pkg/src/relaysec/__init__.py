"""Rate-region bounds, secrecy capacities, and block-Markov coding
simulation for relay channels where the relay doubles as a wire-tapper."""

__version__ = "0.1.0"

from .channel import (
    ChannelClass,
    GaussianRelayParams,
    RelayChannelDMC,
    channel_from_json,
    classify,
    conditional_marginal,
    gaussian_from_json,
    validate_channel,
)
from .gaussian import (
    GaussParamPoint,
    GaussianDerived,
    cds_region,
    cfun,
    derived,
    inner_region,
    outer_region,
    param_map,
    secrecy_capacity_gauss,
)
from .info import (
    AuxInput,
    AuxInputStoch,
    JointDist,
    build_joint,
    build_joint_stoch,
    check_markov,
    cond_entropy,
    delta_gap,
    entropy,
    mutual_info,
    zeta,
)
from .regions import (
    Family,
    FrontierSample,
    OptBudget,
    RateConstraintSet,
    RatePoint,
    RateRegion,
    Region2D,
    SliceRegions,
    enumerate_vertices,
    evaluate_bounds,
    r1e_region,
    region_from_dict,
    region_to_dict,
    scalarize_max,
    secrecy_capacity,
    secrecy_capacity_region,
    trace_region,
)
from .sim import (
    Codebook,
    Rates,
    SimConfig,
    SimReport,
    draw_messages,
    equivocation_exact,
    equivocation_plugin_bound,
    generate_codebook,
    monte_carlo,
    run_blocks,
    simulate,
    typical_set_test,
)

"""Achievable rates, optimal power splits and multiplexing gains for
generalized cognitive-radio links (SISO-SISO, MISO-MISO, SISO-MIMO)."""

from .analysis import (
    SCHEMES,
    SchemeEval,
    SweepPoint,
    evaluate_scheme,
    max_asymptotic_gain,
    monte_carlo_sweep,
    multiplexing_slope,
    optimize_t,
    slope_reference,
)
from .channel import (
    MISO_MISO,
    SISO_MIMO,
    SISO_SISO,
    ChannelRealization,
    LinearTopology,
    Seed,
    SystemParams,
    deterministic_gains,
    sample_rayleigh,
)
from .config import PRESETS, RunConfig, build_config
from .mimo import WaterfillResult, dof_sum_bound, effective_channel, rate_zf_mimo, waterfill
from .miso import MisoEval, alpha_miso, rate_d_dpc_zf, rate_miso_state1, rate_zf_miso
from .siso import (
    SisoStateRates,
    alpha_siso,
    asymptotic_gain,
    power_split_u,
    primary_rate_rp,
    rate_df_dpc,
    rate_f_dpc_noncausal,
)

__version__ = "0.1.0"

__all__ = [
    "SCHEMES",
    "SISO_SISO",
    "MISO_MISO",
    "SISO_MIMO",
    "ChannelRealization",
    "LinearTopology",
    "MisoEval",
    "PRESETS",
    "RunConfig",
    "SchemeEval",
    "Seed",
    "SisoStateRates",
    "SweepPoint",
    "SystemParams",
    "WaterfillResult",
    "alpha_miso",
    "alpha_siso",
    "asymptotic_gain",
    "build_config",
    "deterministic_gains",
    "dof_sum_bound",
    "effective_channel",
    "evaluate_scheme",
    "max_asymptotic_gain",
    "monte_carlo_sweep",
    "multiplexing_slope",
    "optimize_t",
    "power_split_u",
    "primary_rate_rp",
    "rate_d_dpc_zf",
    "rate_df_dpc",
    "rate_f_dpc_noncausal",
    "rate_miso_state1",
    "rate_zf_mimo",
    "rate_zf_miso",
    "sample_rayleigh",
    "slope_reference",
    "waterfill",
    "__version__",
]

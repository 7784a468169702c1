"""Minimum-power broadcast beamforming with a passive reflecting surface.

The package solves the joint design of a base-station beamformer and the
per-unit reflection phases of an intelligent reflecting surface so that every
user meets an SNR target at minimum transmit power.  It ships:

* a dense complex-Hermitian SDP solver (`irspower.numerics`),
* geometric channel models (`irspower.channel`),
* the alternating beamformer / phase optimizer (`irspower.alternating`),
* a closed-form floor on the achievable average power (`irspower.bound`),
* a reproducible Monte-Carlo sweep harness and CLI (`irspower.harness`).
"""

from irspower.alternating import (
    IterationTrace,
    Termination,
    baseline_random_irs,
    baseline_without_irs,
    run_alternating,
)
from irspower.beamforming import Beamformer, EffectiveChannels, effective_channels, optimize_beamformer
from irspower.bound import BoundReport, lower_bound_power, q_factor, verify_bound_derivation
from irspower.channel import (
    ChannelRealization,
    Geometry,
    LinkBudget,
    draw_realization,
    los_bs_irs_channel,
    path_loss,
    place_mus_half_circle,
    rayleigh_vector,
)
from irspower.config import ScenarioConfig
from irspower.numerics import HermitianMatrix, SdpProblem, SdpSolution, SdpStatus, psd_sqrt_factor, solve_sdp
from irspower.phases import (
    PhaseOptResult,
    PhaseStatus,
    PhaseVector,
    QuadraticForms,
    build_quadratic_forms,
    min_channel_gain_f,
    optimize_phases,
)

__all__ = [
    "Beamformer",
    "BoundReport",
    "ChannelRealization",
    "EffectiveChannels",
    "Geometry",
    "HermitianMatrix",
    "IterationTrace",
    "LinkBudget",
    "PhaseOptResult",
    "PhaseStatus",
    "PhaseVector",
    "QuadraticForms",
    "ScenarioConfig",
    "SdpProblem",
    "SdpSolution",
    "SdpStatus",
    "Termination",
    "baseline_random_irs",
    "baseline_without_irs",
    "build_quadratic_forms",
    "draw_realization",
    "effective_channels",
    "los_bs_irs_channel",
    "lower_bound_power",
    "min_channel_gain_f",
    "optimize_beamformer",
    "optimize_phases",
    "path_loss",
    "place_mus_half_circle",
    "psd_sqrt_factor",
    "q_factor",
    "rayleigh_vector",
    "run_alternating",
    "solve_sdp",
    "verify_bound_derivation",
]

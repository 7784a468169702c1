"""Alternating minimization of transmit power over beamformer and phases.

Starting from uniformly random phases, each round solves the beamformer
problem for the current phases and then searches for phases that raise the
worst-user gain of the new beam direction.  The phase selection rule never
accepts a gain below the one already achieved, so the power sequence is
non-increasing; because the beamformer step is randomized rather than exact,
a guard additionally rejects any step that would raise power and stops there.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from irspower.beamforming import effective_channels, min_gain, optimize_beamformer
from irspower.phases import PhaseStatus, PhaseVector, build_quadratic_forms, optimize_phases

POWER_RISE_SLACK = 1e-9


class Termination(enum.Enum):
    CONVERGED = "converged"
    PHASE_INFEASIBLE = "phase_infeasible"
    MONOTONICITY_GUARD = "monotonicity_guard"
    MAX_ITERATIONS = "max_iterations"


@dataclass
class IterationTrace:
    powers: list = field(default_factory=list)
    f_ow_values: list = field(default_factory=list)
    f_ophi_values: list = field(default_factory=list)
    final_beamformer: object = None
    final_phases: object = None
    termination: Termination = Termination.MAX_ITERATIONS

    @property
    def final_power(self):
        return self.powers[-1]

    @property
    def iterations(self):
        return len(self.powers)


def run_alternating(config, ch, rng):
    """Full alternating run on one channel realization; returns the trace."""
    gamma_lin = config.gamma_lin
    sigma_sq = config.sigma_sq_watts
    c = config.candidates_c
    trace = IterationTrace()

    phases = PhaseVector.uniform_random(ch.n_units, rng)
    if ch.n_units == 0:
        w = optimize_beamformer(effective_channels(ch, phases), gamma_lin, sigma_sq, c, rng)
        trace.powers.append(w.power)
        trace.f_ow_values.append(min_gain(effective_channels(ch, phases), w.direction))
        trace.final_beamformer = w
        trace.final_phases = phases
        trace.termination = Termination.CONVERGED
        return trace

    w = None
    phases_of_w = phases  # the phases the accepted beamformer was solved for
    for _ in range(config.max_iterations):
        heff = effective_channels(ch, phases)
        candidate = optimize_beamformer(heff, gamma_lin, sigma_sq, c, rng)
        if trace.powers and candidate.power > trace.powers[-1] * (1.0 + POWER_RISE_SLACK):
            trace.termination = Termination.MONOTONICITY_GUARD
            break
        w = candidate
        phases_of_w = phases
        trace.powers.append(w.power)
        f_ow = min_gain(heff, w.direction)
        trace.f_ow_values.append(f_ow)

        if len(trace.powers) >= 2 and 1.0 - trace.powers[-1] / trace.powers[-2] <= config.epsilon:
            trace.termination = Termination.CONVERGED
            break

        forms = build_quadratic_forms(ch, w)
        result = optimize_phases(forms, gamma_lin, sigma_sq, f_ow, c, rng, current=phases)
        if result.status is PhaseStatus.INFEASIBLE:
            trace.termination = Termination.PHASE_INFEASIBLE
            break
        trace.f_ophi_values.append(result.f_after)
        if result.status is PhaseStatus.IMPROVED:
            phases = result.phases

    trace.final_beamformer = w
    trace.final_phases = phases_of_w
    return trace


def baseline_without_irs(config, ch, rng):
    """Power control ignoring the surface entirely (direct links only)."""
    direct = ch.h_bs_mu
    heff = effective_channels(
        type(ch)(h_bs_irs=np.zeros((0, config.m_antennas), dtype=complex),
                 h_irs_mu=np.zeros((ch.k_users, 0), dtype=complex),
                 h_bs_mu=direct),
        PhaseVector(theta=np.zeros(0)),
    )
    return optimize_beamformer(heff, config.gamma_lin, config.sigma_sq_watts, config.candidates_c, rng)


def baseline_random_irs(config, ch, rng):
    """One uniformly random phase draw, then a single beamformer solve."""
    phases = PhaseVector.uniform_random(ch.n_units, rng)
    heff = effective_channels(ch, phases)
    return optimize_beamformer(heff, config.gamma_lin, config.sigma_sq_watts, config.candidates_c, rng)

"""Fixed-phase transmit power minimization under per-user SNR constraints.

The nonconvex problem (min ||w||^2 s.t. |h_i^H w|^2 >= gamma sigma^2) is lifted
to an SDP over X = w w^H with the rank constraint dropped.  When the relaxed
optimum is rank one its principal direction is exact; otherwise candidate
directions are sampled from the optimum's square-root factor (Gaussian
randomization), each rescaled to the minimal power that restores feasibility,
and the cheapest candidate wins.
"""

from dataclasses import dataclass

import numpy as np

from irspower.exceptions import InfeasibleBeamformingError, NumericalFailureError
from irspower.numerics import Objective, SdpConstraint, SdpProblem, SdpStatus, psd_sqrt_factor, solve_sdp

RANK_ONE_RATIO = 1e-8


@dataclass(frozen=True)
class Beamformer:
    """Transmit weights and their power ||w||^2 (set at construction)."""

    w: np.ndarray
    power: float = None

    def __post_init__(self):
        w = np.asarray(self.w, dtype=complex)
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "power", float(np.vdot(w, w).real))

    @property
    def direction(self):
        nrm = np.sqrt(self.power)
        return self.w / nrm if nrm > 0 else self.w


@dataclass(frozen=True)
class EffectiveChannels:
    """Per-user downlink channel vectors h_i with the phases folded in.

    Stored unconjugated: the received amplitude for user i is h_eff[i]^H w.
    """

    h_eff: np.ndarray  # (K, M)

    @property
    def k_users(self):
        return self.h_eff.shape[0]

    @property
    def m_antennas(self):
        return self.h_eff.shape[1]


def effective_channels(ch, phases):
    """Compose the reflected and direct paths for the given reflection phases."""
    rows = ch.h_bs_mu.conj()
    if ch.n_units:
        rows = rows + (ch.h_irs_mu.conj() * phases.phi[None, :]) @ ch.h_bs_irs
    return EffectiveChannels(h_eff=rows.conj())


def min_gain(heff, w_dir):
    """Smallest per-user channel gain |h_i^H w_dir|^2 for a unit direction."""
    amps = heff.h_eff.conj() @ w_dir
    return float(np.min(np.abs(amps) ** 2))


def solve_power_relaxation(heff, tol_feas=1e-8, tol_gap=1e-7):
    """Solve the lifted power minimization with unit SNR thresholds.

    The physical problem's right-hand side gamma*sigma^2 multiplies the optimal
    X linearly, so it is normalized out here and restored by the caller; this
    makes the returned factor independent of the noise level.
    """
    cons = [SdpConstraint(np.outer(h, h.conj()), 1.0) for h in heff.h_eff]
    prob = SdpProblem(Objective.MIN_TRACE, heff.m_antennas, cons)
    return solve_sdp(prob, tol_feas=tol_feas, tol_gap=tol_gap)


def optimize_beamformer(heff, gamma_lin, sigma_sq, c, rng):
    """Minimum-power beamformer meeting |h_i^H w|^2 / sigma^2 >= gamma for all users.

    Exactly recovers the relaxation optimum when it is rank one; otherwise
    draws ``c`` Gaussian candidates from its factor and keeps the cheapest
    feasible rescaling.  The SNR constraints hold with equality for the worst
    user by construction of the power scaling.
    """
    if gamma_lin <= 0 or sigma_sq <= 0:
        raise ValueError("gamma_lin and sigma_sq must be positive")
    if c < 1:
        raise ValueError("candidate count must be >= 1")
    target = gamma_lin * sigma_sq

    sol = solve_power_relaxation(heff)
    if sol.status is SdpStatus.INFEASIBLE:
        raise InfeasibleBeamformingError(sol.message or "power relaxation reported infeasible")
    if sol.status is not SdpStatus.OPTIMAL:
        raise NumericalFailureError(sol.message or "power relaxation did not converge")

    evals, evecs = sol.psd_value.eigh()
    if evals[-1] <= 0.0:
        raise NumericalFailureError("relaxation returned a zero matrix")
    if evals.shape[0] == 1 or evals[-2] <= RANK_ONE_RATIO * evals[-1]:
        w_dir = evecs[:, -1]
        best_gain = min_gain(heff, w_dir)
    else:
        factor = psd_sqrt_factor(sol.psd_value)
        m = factor.shape[1]
        draws = (rng.standard_normal((c, m)) + 1j * rng.standard_normal((c, m))) / np.sqrt(2.0)
        probes = draws @ factor.T
        norms = np.linalg.norm(probes, axis=1)
        norms[norms == 0.0] = np.inf
        probes /= norms[:, None]
        gains = np.min(np.abs(probes @ heff.h_eff.conj().T) ** 2, axis=1)
        best = int(np.argmax(gains))
        best_gain = float(gains[best])
        if best_gain <= 0.0:
            raise NumericalFailureError("no randomized candidate achieved a positive gain")
        w_dir = probes[best]

    power = target / best_gain
    # the relaxed optimum lower-bounds any feasible power; undercutting it by
    # more than the solver's certification slack indicates a bug
    relaxation_power = target * sol.objective_value
    if power < relaxation_power * (1.0 - 1e-5):
        raise NumericalFailureError(
            f"randomized power {power} undercuts the relaxation bound {relaxation_power}"
        )
    return Beamformer(w=np.sqrt(power) * w_dir)

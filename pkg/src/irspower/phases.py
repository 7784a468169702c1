"""Reflection-phase search for a fixed beamformer.

With the beamformer held fixed, each user's received amplitude is an affine
function phi^H a_i + b_i of the conjugated phase vector phi, so the SNR
feasibility problem lifts to an SDP over V = [phi t; t][phi t; t]^H with unit
diagonal, maximizing the total SNR slack.  Candidate phase vectors are
recovered from V by Gaussian sampling and de-rotation of the auxiliary
coordinate, and a candidate is accepted only if it does not reduce the current
worst-user gain, which keeps the outer alternation monotone.
"""

import enum
from dataclasses import dataclass

import numpy as np

from irspower.beamforming import effective_channels, min_gain
from irspower.exceptions import NumericalFailureError
from irspower.numerics import Objective, SdpConstraint, SdpProblem, SdpStatus, psd_sqrt_factor, solve_sdp


class PhaseStatus(enum.Enum):
    IMPROVED = "improved"
    NO_IMPROVEMENT = "no_improvement"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class PhaseVector:
    """Unit-modulus reflection coefficients phi_n = exp(j theta_n)."""

    theta: np.ndarray

    def __post_init__(self):
        theta = np.mod(np.asarray(self.theta, dtype=float), 2.0 * np.pi)
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @classmethod
    def uniform_random(cls, n, rng):
        return cls(theta=rng.uniform(0.0, 2.0 * np.pi, size=n))

    @property
    def n_units(self):
        return self.theta.shape[0]

    @property
    def phi(self):
        return np.exp(1j * self.theta)


@dataclass(frozen=True)
class QuadraticForms:
    """Per-user lifted data: amplitude_i(phi) = phi_L^H a_i + b_i with phi_L = conj(phi).

    lift[i] is the (N+1) Hermitian block matrix [[a a^H, a b*], [b a^H, 0]],
    so [phi_L^H, 1] lift_i [phi_L; 1] + |b_i|^2 == |phi_L^H a_i + b_i|^2.
    w_norm_sq records ||w||^2 of the beamformer the forms were built from, which
    converts raw gains to the unit-direction scale used by the selection rule.
    """

    a: np.ndarray  # (K, N)
    b: np.ndarray  # (K,)
    lift: np.ndarray  # (K, N+1, N+1)
    w_norm_sq: float


@dataclass(frozen=True)
class PhaseOptResult:
    status: PhaseStatus
    phases: PhaseVector | None
    f_after: float
    residual_sum: float


def min_channel_gain_f(ch, phases, w_dir):
    """Worst-user channel gain min_i |h_i(phases)^H w_dir|^2 for a unit direction."""
    nrm = np.linalg.norm(w_dir)
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"w_dir must be unit norm, got {nrm}")
    return min_gain(effective_channels(ch, phases), np.asarray(w_dir, dtype=complex))


def build_quadratic_forms(ch, w):
    """Lifted per-user forms for the given beamformer."""
    wv = np.asarray(w.w if hasattr(w, "w") else w, dtype=complex)
    k, n = ch.k_users, ch.n_units
    reflected = ch.h_bs_irs @ wv if n else np.zeros((0,), dtype=complex)
    a = ch.h_irs_mu.conj() * reflected[None, :] if n else np.zeros((k, 0), dtype=complex)
    b = ch.h_bs_mu.conj() @ wv
    lift = np.zeros((k, n + 1, n + 1), dtype=complex)
    for i in range(k):
        lift[i, :n, :n] = np.outer(a[i], a[i].conj())
        lift[i, :n, n] = a[i] * np.conj(b[i])
        lift[i, n, :n] = b[i] * a[i].conj()
    return QuadraticForms(a=a, b=b, lift=lift, w_norm_sq=float(np.vdot(wv, wv).real))


def lifted_gain(forms, phi_l):
    """|phi_L^H a_i + b_i|^2 for every user."""
    return np.abs(forms.a @ phi_l.conj() + forms.b) ** 2


def phase_search_problem(forms, gamma_lin, sigma_sq):
    """The unit-diagonal SDP maximizing the total SNR slack."""
    k, n1 = forms.lift.shape[0], forms.lift.shape[1]
    target = gamma_lin * sigma_sq
    cons = [
        SdpConstraint(forms.lift[i], target - float(np.abs(forms.b[i]) ** 2)) for i in range(k)
    ]
    for j in range(n1):
        e = np.zeros((n1, n1), dtype=complex)
        e[j, j] = 1.0
        cons.append(SdpConstraint(e, 1.0, "=="))
    return SdpProblem(Objective.MAX_RESIDUAL_SUM, n1, cons, residual_count=k)


def optimize_phases(forms, gamma_lin, sigma_sq, f_ow, c, rng, current=None):
    """One phase-update step given the forms of the current beamformer.

    Solves the lifted SDP, draws ``c`` Gaussian candidates from its optimum,
    keeps those whose worst-user gain is at least ``f_ow`` (the gain already
    achieved by the beamformer step, on the unit-direction scale), and returns
    the best of them.  With no qualifying candidate the phases are unchanged;
    solver-certified infeasibility is surfaced for the caller to stop on.
    """
    if f_ow < 0:
        raise ValueError("f_ow must be nonnegative")
    n = forms.a.shape[1]
    sol = solve_sdp(phase_search_problem(forms, gamma_lin, sigma_sq))
    if sol.status is SdpStatus.INFEASIBLE:
        return PhaseOptResult(PhaseStatus.INFEASIBLE, current, f_ow, float("nan"))
    if sol.status is not SdpStatus.OPTIMAL:
        raise NumericalFailureError(sol.message or "phase relaxation did not converge")

    factor = psd_sqrt_factor(sol.psd_value)
    dim = factor.shape[1]
    draws = (rng.standard_normal((c, dim)) + 1j * rng.standard_normal((c, dim))) / np.sqrt(2.0)
    samples = draws @ factor.T  # (c, N+1)
    anchors = samples[:, n].copy()
    anchors[anchors == 0.0] = 1.0
    ratios = samples[:, :n] / anchors[:, None]
    mags = np.abs(ratios)
    zero = mags == 0.0
    phi_l = np.where(zero, 1.0 + 0.0j, ratios / np.where(zero, 1.0, mags))
    gains = np.min(np.abs(phi_l.conj() @ forms.a.T + forms.b[None, :]) ** 2, axis=1)
    f_vals = gains / forms.w_norm_sq if forms.w_norm_sq > 0 else gains

    qualifying = f_vals >= f_ow
    if not np.any(qualifying):
        return PhaseOptResult(PhaseStatus.NO_IMPROVEMENT, current, f_ow, float(np.sum(sol.residuals)))
    best = int(np.argmax(np.where(qualifying, f_vals, -np.inf)))
    theta = np.mod(-np.angle(phi_l[best]), 2.0 * np.pi)
    return PhaseOptResult(
        PhaseStatus.IMPROVED,
        PhaseVector(theta=theta),
        float(f_vals[best]),
        float(np.sum(sol.residuals)),
    )

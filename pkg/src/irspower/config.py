"""Scenario configuration shared by the optimizer, the bound, and the harness."""

import dataclasses
from dataclasses import dataclass

import numpy as np

from irspower.channel import Geometry, place_mus_half_circle
from irspower.units import db_to_linear, dbm_to_watts

PLACEMENTS = ("deterministic", "random")
BOUND_NSQ_GAINS = ("bs_irs", "bs_mu")


@dataclass
class ScenarioConfig:
    m_antennas: int = 8
    n_irs_units: int = 16
    k_users: int = 1
    gamma_db: float = 1.0
    sigma_sq_dbm: float = -30.0
    epsilon: float = 1e-4
    candidates_c: int = 1000
    max_iterations: int = 30
    seed: int = 0
    trials: int = 100
    bs_position: tuple = (0.0, 0.0, 0.0)
    irs_position: tuple = (0.0, 50.0, 0.0)
    mu_radius: float = 2.0
    mu_placement: str = "deterministic"
    antenna_spacing_bs: float = 0.5
    antenna_spacing_irs: float = 0.5
    alpha_bs_irs: float = 2.0
    alpha_irs_mu: float = 2.8
    alpha_bs_mu: float = 3.5
    c0_m: float = 1.0
    d0_gain_db: float = -30.0
    bound_nsq_gain: str = "bs_irs"

    def __post_init__(self):
        self.bs_position = tuple(float(v) for v in self.bs_position)
        self.irs_position = tuple(float(v) for v in self.irs_position)
        if self.m_antennas < 1:
            raise ValueError("m_antennas must be >= 1")
        if self.k_users < 1:
            raise ValueError("k_users must be >= 1")
        if self.n_irs_units < 0:
            raise ValueError("n_irs_units must be >= 0")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.candidates_c < 1:
            raise ValueError("candidates_c must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.mu_placement not in PLACEMENTS:
            raise ValueError(f"mu_placement must be one of {PLACEMENTS}")
        if self.bound_nsq_gain not in BOUND_NSQ_GAINS:
            raise ValueError(f"bound_nsq_gain must be one of {BOUND_NSQ_GAINS}")

    @property
    def gamma_lin(self):
        return float(db_to_linear(self.gamma_db))

    @property
    def sigma_sq_watts(self):
        return float(dbm_to_watts(self.sigma_sq_dbm))

    @property
    def d0_gain(self):
        return float(db_to_linear(self.d0_gain_db))

    def geometry(self, rng=None):
        """User positions on the half circle around the IRS facing the BS.

        ``mu_placement='random'`` draws the angles from the provided rng;
        otherwise placement is deterministic and evenly spaced.
        """
        placement_rng = rng if self.mu_placement == "random" else None
        mus = place_mus_half_circle(
            self.k_users, np.asarray(self.irs_position), self.mu_radius,
            rng=placement_rng, toward=np.asarray(self.bs_position),
        )
        return Geometry(
            bs_position=np.asarray(self.bs_position),
            irs_position=np.asarray(self.irs_position),
            mu_positions=mus,
            antenna_spacing_bs=self.antenna_spacing_bs,
            antenna_spacing_irs=self.antenna_spacing_irs,
        )

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

"""Channel generation: line-of-sight BS-IRS link, Rayleigh user links, path loss.

The BS and the reflecting surface are uniform linear arrays.  Their link is a
deterministic rank-one outer product of two constant-modulus steering vectors
whose progression angles follow from the array geometry; the links to each
single-antenna user are i.i.d. circularly-symmetric complex Gaussian with a
variance set by a distance power law.
"""

from dataclasses import dataclass

import numpy as np

#: reference gain of -30 dB at the 1 m reference distance
DEFAULT_REFERENCE_GAIN = 1e-3
DEFAULT_REFERENCE_DISTANCE_M = 1.0


@dataclass(frozen=True)
class Geometry:
    """Positions in meters; array spacings as fractions of the carrier wavelength."""

    bs_position: np.ndarray
    irs_position: np.ndarray
    mu_positions: np.ndarray  # (K, 3)
    antenna_spacing_bs: float = 0.5
    antenna_spacing_irs: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "bs_position", np.asarray(self.bs_position, dtype=float))
        object.__setattr__(self, "irs_position", np.asarray(self.irs_position, dtype=float))
        mus = np.asarray(self.mu_positions, dtype=float).reshape(-1, 3)
        object.__setattr__(self, "mu_positions", mus)
        if np.array_equal(self.bs_position, self.irs_position):
            raise ValueError("BS and IRS positions coincide")
        for name, pts in (("BS", self.bs_position), ("IRS", self.irs_position)):
            d = np.linalg.norm(mus - pts, axis=1)
            if np.any(d <= 0.0):
                raise ValueError(f"a user position coincides with the {name}")

    @property
    def n_users(self):
        return self.mu_positions.shape[0]

    def bs_irs_distance(self):
        return float(np.linalg.norm(self.irs_position - self.bs_position))

    def irs_mu_distances(self):
        return np.linalg.norm(self.mu_positions - self.irs_position, axis=1)

    def bs_mu_distances(self):
        return np.linalg.norm(self.mu_positions - self.bs_position, axis=1)


@dataclass(frozen=True)
class LinkBudget:
    """Path gains (squared amplitudes) for each link type."""

    beta_h_sq: float
    beta_r_sq: np.ndarray  # (K,)
    beta_b_sq: np.ndarray  # (K,)

    def __post_init__(self):
        object.__setattr__(self, "beta_r_sq", np.asarray(self.beta_r_sq, dtype=float))
        object.__setattr__(self, "beta_b_sq", np.asarray(self.beta_b_sq, dtype=float))
        if self.beta_h_sq < 0 or np.any(self.beta_r_sq < 0) or np.any(self.beta_b_sq < 0):
            raise ValueError("path gains must be nonnegative")


@dataclass
class ChannelRealization:
    """One draw of all channels.

    h_bs_irs is N x M (rank one, constant modulus), h_irs_mu is K x N, and
    h_bs_mu is K x M; the vectors are stored unconjugated, i.e. the effective
    downlink row for user i is h_irs_mu[i]^H diag(phases) h_bs_irs + h_bs_mu[i]^H.
    """

    h_bs_irs: np.ndarray
    h_irs_mu: np.ndarray
    h_bs_mu: np.ndarray
    budget: LinkBudget | None = None

    @property
    def n_units(self):
        return self.h_bs_irs.shape[0]

    @property
    def m_antennas(self):
        return self.h_bs_irs.shape[1] if self.h_bs_irs.ndim == 2 else self.h_bs_mu.shape[1]

    @property
    def k_users(self):
        return self.h_bs_mu.shape[0]


def path_loss(distance_m, alpha, c0_m=DEFAULT_REFERENCE_DISTANCE_M, d0_gain=DEFAULT_REFERENCE_GAIN):
    """Distance power law: gain = d0_gain * (distance / c0_m) ** (-alpha)."""
    distance_m = np.asarray(distance_m, dtype=float)
    if np.any(distance_m <= 0):
        raise ValueError("distance must be positive")
    return d0_gain * (distance_m / c0_m) ** (-alpha)


def rayleigh_vector(dim, variance, rng):
    """i.i.d. circularly-symmetric complex Gaussian entries with total per-entry variance."""
    if variance < 0:
        raise ValueError("variance must be nonnegative")
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(dim) + 1j * rng.standard_normal(dim))


def _los_angles(geom):
    """Departure/arrival angle products for the two steering vectors.

    The printed geometry formulas divide by coordinate differences that vanish
    for broadside placements, so both angles use the two-argument arctangent,
    which is their continuous limit.
    """
    delta = geom.irs_position - geom.bs_position
    d_bs_irs = geom.bs_irs_distance()
    theta1 = np.arctan2(d_bs_irs, delta[2])
    phi1 = np.pi - np.arctan2(delta[1], delta[0])
    theta2 = np.pi - theta1
    phi2 = np.pi + phi1
    return theta1, phi1, theta2, phi2


def los_bs_irs_channel(geom, beta_h_sq, m_antennas, n_units):
    """Deterministic rank-one BS-to-IRS channel of shape (n_units, m_antennas).

    Every entry has magnitude sqrt(beta_h_sq / 2); the row/column phase
    progressions are the array steering vectors at the line-of-sight angles.
    """
    theta1, phi1, theta2, phi2 = _los_angles(geom)
    s = np.exp(
        1j * 2.0 * np.pi * geom.antenna_spacing_bs * np.arange(m_antennas) * np.sin(phi1) * np.sin(theta1)
    )
    g = np.exp(
        1j * 2.0 * np.pi * geom.antenna_spacing_irs * np.arange(n_units) * np.sin(phi2) * np.sin(theta2)
    )
    return np.sqrt(beta_h_sq / 2.0) * np.outer(g, s)


def place_mus_half_circle(k, center, radius, rng=None, toward=None):
    """K points on the half circle of given radius around `center`, in the
    horizontal plane, on the side facing `toward` (default: the origin).

    Deterministic placement puts user i at angle pi*(i - 1/2)/K measured along
    the semicircle; passing an rng draws the angles uniformly instead.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    center = np.asarray(center, dtype=float)
    toward = np.zeros(3) if toward is None else np.asarray(toward, dtype=float)
    facing = toward - center
    facing[2] = 0.0
    norm = np.linalg.norm(facing)
    if norm == 0.0:
        raise ValueError("cannot orient the half circle: target is directly above the center")
    v_hat = facing / norm
    u_hat = np.cross(v_hat, np.array([0.0, 0.0, 1.0]))
    if rng is None:
        angles = np.pi * (np.arange(1, k + 1) - 0.5) / k
    else:
        angles = rng.uniform(0.0, np.pi, size=k)
    offsets = radius * (np.cos(angles)[:, None] * u_hat + np.sin(angles)[:, None] * v_hat)
    return center + offsets


def link_budget(geom, alpha_bs_irs, alpha_irs_mu, alpha_bs_mu, c0_m=DEFAULT_REFERENCE_DISTANCE_M,
                d0_gain=DEFAULT_REFERENCE_GAIN):
    """Path gains for every link from the geometry and per-link exponents."""
    return LinkBudget(
        beta_h_sq=float(path_loss(geom.bs_irs_distance(), alpha_bs_irs, c0_m, d0_gain)),
        beta_r_sq=path_loss(geom.irs_mu_distances(), alpha_irs_mu, c0_m, d0_gain),
        beta_b_sq=path_loss(geom.bs_mu_distances(), alpha_bs_mu, c0_m, d0_gain),
    )


def draw_realization(config, rng):
    """One channel draw for a scenario: deterministic BS-IRS link, Rayleigh user links."""
    geom = config.geometry(rng)
    budget = link_budget(
        geom, config.alpha_bs_irs, config.alpha_irs_mu, config.alpha_bs_mu,
        config.c0_m, config.d0_gain,
    )
    m, n, k = config.m_antennas, config.n_irs_units, config.k_users
    h_bs_irs = los_bs_irs_channel(geom, budget.beta_h_sq, m, n)
    h_irs_mu = np.stack([rayleigh_vector(n, budget.beta_r_sq[i], rng) for i in range(k)])
    h_bs_mu = np.stack([rayleigh_vector(m, budget.beta_b_sq[i], rng) for i in range(k)])
    return ChannelRealization(h_bs_irs=h_bs_irs, h_irs_mu=h_irs_mu, h_bs_mu=h_bs_mu, budget=budget)

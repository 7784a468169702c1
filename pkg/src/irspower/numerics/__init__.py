"""Dense complex linear algebra and a small interior-point SDP solver."""

from irspower.numerics.hermitian import HermitianMatrix, eigh_hermitian, hermitian_part, psd_sqrt_factor
from irspower.numerics.sdp import Objective, SdpConstraint, SdpProblem, SdpSolution, SdpStatus, solve_sdp

__all__ = [
    "HermitianMatrix",
    "Objective",
    "SdpConstraint",
    "SdpProblem",
    "SdpSolution",
    "SdpStatus",
    "eigh_hermitian",
    "hermitian_part",
    "psd_sqrt_factor",
    "solve_sdp",
]

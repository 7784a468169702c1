"""Exception types shared across the optimization modules."""


class NumericalFailureError(RuntimeError):
    """The conic solver stopped without an optimality or infeasibility certificate."""


class InfeasibleBeamformingError(RuntimeError):
    """The beamformer SDP was reported infeasible (only reachable through a degenerate channel)."""

"""Standard-form Hermitian SDPs and their solution via the interior-point core.

Two objective forms cover everything the optimizer needs:

* ``MIN_TRACE``: minimize trace(X) subject to trace(A_j X) {>=,=} b_j, X PSD.
* ``MAX_RESIDUAL_SUM``: maximize sum(alpha) subject to
  trace(A_j X) - alpha_j >= b_j for the first ``residual_count``
  inequality rows (alpha >= 0), the remaining rows as given, X PSD.

The complex Hermitian variable is embedded as a real symmetric matrix of twice
the dimension, [[Re, -Im], [Im, Re]].  The embedding doubles traces, so all
embedded coefficients carry a factor 1/2, which keeps objective and constraint
values on the complex problem's scale.  Rows and variables are rescaled to
order one before the solve and the solution is mapped back, so that reported
violations and gaps refer to the caller's units.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from irspower.numerics.embedding import embed_hermitian, unembed_symmetric
from irspower.numerics.hermitian import HermitianMatrix
from irspower.numerics.ipm import ConicProblem, solve_conic

MAX_PSD_DIM = 256

GE = ">="
EQ = "=="


class Objective(enum.Enum):
    MIN_TRACE = "min_trace"
    MAX_RESIDUAL_SUM = "max_residual_sum"


class SdpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass(frozen=True)
class SdpConstraint:
    coeff: HermitianMatrix
    bound: float
    sense: str = GE

    def __post_init__(self):
        if not isinstance(self.coeff, HermitianMatrix):
            object.__setattr__(self, "coeff", HermitianMatrix(self.coeff))
        if self.sense not in (GE, EQ):
            raise ValueError(f"sense must be '{GE}' or '{EQ}', got {self.sense!r}")


@dataclass
class SdpProblem:
    objective: Objective
    psd_dim: int
    constraints: list = field(default_factory=list)
    residual_count: int = 0

    def __post_init__(self):
        if not 1 <= self.psd_dim <= MAX_PSD_DIM:
            raise ValueError(f"psd_dim must be in [1, {MAX_PSD_DIM}], got {self.psd_dim}")
        self.constraints = [
            c if isinstance(c, SdpConstraint) else SdpConstraint(*c) for c in self.constraints
        ]
        for c in self.constraints:
            if c.coeff.dim != self.psd_dim:
                raise ValueError(f"constraint coefficient dim {c.coeff.dim} != psd_dim {self.psd_dim}")
        n_ge = sum(1 for c in self.constraints if c.sense == GE)
        if not 0 <= self.residual_count <= n_ge:
            raise ValueError(f"residual_count {self.residual_count} exceeds inequality count {n_ge}")
        if any(c.sense != GE for c in self.constraints[: self.residual_count]):
            raise ValueError("residual variables must couple to the leading inequality rows")


@dataclass
class SdpSolution:
    status: SdpStatus
    psd_value: HermitianMatrix | None
    residuals: np.ndarray
    objective_value: float
    duality_gap: float
    max_constraint_violation: float
    iterations: int = 0
    message: str = ""


def _as_diag_row(mat):
    """Return (indices, weights) if the Hermitian matrix is diagonal, else None."""
    d = np.diagonal(mat)
    if np.count_nonzero(mat - np.diag(d)):
        return None
    idx = np.flatnonzero(d)
    return idx, d[idx].real


def solve_sdp(problem, tol_feas=1e-8, tol_gap=1e-7, tol_infeas=1e-8, max_iter=200):
    """Solve a Hermitian SDP; see the module docstring for the problem forms.

    Returns an ``SdpSolution``; ``status`` is OPTIMAL only when the scaled
    primal/dual residuals are below ``tol_feas`` and the relative duality gap
    below ``tol_gap``, and INFEASIBLE only on a Farkas certificate of quality
    ``tol_infeas``.  Anything else is NUMERICAL_FAILURE.
    """
    d = problem.psd_dim
    maximize = problem.objective is Objective.MAX_RESIDUAL_SUM
    r_count = problem.residual_count if maximize else 0

    # Embedded rows: (scaled coeff or diag data, scaled bound, sense, alpha index or None).
    rows = []
    for j, con in enumerate(problem.constraints):
        alpha = j if j < r_count else None
        mat_c = con.coeff.entries
        norm = np.linalg.norm(mat_c)
        if norm == 0.0 and alpha is None:
            feas = con.bound <= 0.0 if con.sense == GE else con.bound == 0.0
            if feas:
                continue
            return SdpSolution(
                status=SdpStatus.INFEASIBLE,
                psd_value=None,
                residuals=np.zeros(r_count),
                objective_value=np.nan,
                duality_gap=np.nan,
                max_constraint_violation=np.nan,
                message=f"constraint {j} has a zero coefficient and unsatisfiable bound",
            )
        scale = norm if norm > 0.0 else 1.0
        diag = _as_diag_row(mat_c)
        if diag is not None:
            idx, wts = diag
            emb = ("diag", np.concatenate([idx, idx + d]), np.concatenate([wts, wts]) / (2.0 * scale))
        else:
            emb = ("dense", embed_hermitian(mat_c) / (2.0 * scale))
        rows.append((emb, con.bound / scale, con.sense, alpha, scale, j))

    m = len(rows)
    bounds = np.array([r[1] for r in rows]) if m else np.zeros(0)
    s_x = max(1.0, float(np.max(np.abs(bounds))) if m else 0.0)

    ge_rows = [i for i, r in enumerate(rows) if r[2] == GE]
    p_lin = r_count + len(ge_rows)
    a_lin = np.zeros((m, p_lin))
    for i, r in enumerate(rows):
        if r[3] is not None:
            a_lin[i, r[3]] = -1.0
    for k, i in enumerate(ge_rows):
        a_lin[i, r_count + k] = -1.0

    # alpha_j = row_scale_j * s_x * alpha_tilde_j; objective rescaled to order one
    alpha_units = np.array([r[4] * s_x for r in rows if r[3] is not None])
    if maximize:
        s_c = float(np.max(alpha_units)) if alpha_units.size else 1.0
        c_psd = np.zeros((2 * d, 2 * d))
        c_lin = np.zeros(p_lin)
        c_lin[:r_count] = -alpha_units / s_c
        sign = -1.0
    else:
        s_c = s_x
        c_psd = 0.5 * np.eye(2 * d)
        c_lin = np.zeros(p_lin)
        sign = 1.0

    dense_rows = []
    diag_rows = []
    for i, r in enumerate(rows):
        emb = r[0]
        if emb[0] == "dense":
            dense_rows.append((i, emb[1]))
        else:
            diag_rows.append((i, emb[1], emb[2]))

    conic = ConicProblem(
        n=2 * d,
        p=p_lin,
        c_psd=c_psd,
        c_lin=c_lin,
        b=bounds / s_x,
        a_lin=a_lin,
        dense_rows=dense_rows,
        diag_rows=diag_rows,
        row_units=np.array([r[4] for r in rows]) * s_x if m else None,
    )
    res = solve_conic(conic, tol_feas=tol_feas, tol_gap=tol_gap, tol_infeas=tol_infeas, max_iter=max_iter)

    if res.status == "infeasible":
        return SdpSolution(
            status=SdpStatus.INFEASIBLE,
            psd_value=None,
            residuals=np.zeros(r_count),
            objective_value=np.nan,
            duality_gap=np.nan,
            max_constraint_violation=np.nan,
            iterations=res.iterations,
            message=res.message,
        )

    x_c = None
    if res.x_psd is not None:
        x_c = HermitianMatrix(unembed_symmetric(s_x * res.x_psd))

    if res.status != "optimal":
        rescued = _degenerate_rescue(problem, res, x_c, sign * s_c, tol_feas, tol_gap)
        if rescued is not None:
            return rescued
        alphas = _clipped_residuals(problem, res, x_c, alpha_units, r_count)
        return SdpSolution(
            status=SdpStatus.NUMERICAL_FAILURE,
            psd_value=x_c,
            residuals=alphas,
            objective_value=np.nan,
            duality_gap=np.nan,
            max_constraint_violation=np.nan,
            iterations=res.iterations,
            message=res.message or res.status,
        )

    alphas = _clipped_residuals(problem, res, x_c, alpha_units, r_count)
    if maximize:
        objective_value = float(np.sum(alphas))
    else:
        objective_value = float(np.trace(x_c.entries).real)

    violation = _max_violation(problem, x_c.entries, alphas)
    return SdpSolution(
        status=SdpStatus.OPTIMAL,
        psd_value=x_c,
        residuals=alphas,
        objective_value=objective_value,
        duality_gap=res.rel_gap,
        max_constraint_violation=violation,
        iterations=res.iterations,
    )


def _clipped_residuals(problem, res, x_c, alpha_units, r_count):
    """Residual variables are determined by the PSD value: clip each to the
    headroom its constraint row actually offers."""
    alphas = np.zeros(r_count)
    if x_c is None or not r_count or res.u_lin is None:
        return alphas
    alphas = np.maximum(res.u_lin[:r_count] * alpha_units, 0.0)
    for j in range(r_count):
        con = problem.constraints[j]
        lhs = float(np.tensordot(con.coeff.entries, x_c.entries.conj()).real)
        alphas[j] = min(alphas[j], max(lhs - con.bound, 0.0))
    return alphas


def _diag_targets(problem):
    """Diagonal-entry targets implied by single-entry diagonal equality rows.

    Returns None when some equality row has any other shape (no polish
    available), else a possibly-empty {index: target} map.
    """
    targets = {}
    for con in problem.constraints:
        if con.sense != EQ:
            continue
        diag = _as_diag_row(con.coeff.entries)
        if diag is None or diag[0].size != 1:
            return None
        idx = int(diag[0][0])
        weight = float(diag[1][0])
        if weight <= 0.0 or con.bound <= 0.0:
            return None
        targets[idx] = con.bound / weight
    return targets


def _degenerate_rescue(problem, res, x_c, obj_unscale, tol_feas, tol_gap):
    """A-posteriori optimality certificate for a stalled iterate.

    Interior-point accuracy degrades to roughly sqrt(machine epsilon) at
    optima without strict complementarity; the converged phase search hits
    exactly that case.  When every equality row pins one diagonal entry, the
    candidate is polished onto that manifold by an exact diagonal congruence,
    the residual variables are recomputed from their rows' headroom, and the
    point is accepted only if it verifiably meets the feasibility tolerance
    with an objective within the gap tolerance of the solver's dual bound.
    """
    if x_c is None or res.u_lin is None or not np.isfinite(res.dual_residual):
        return None
    if res.dual_residual > tol_feas:
        return None
    targets = _diag_targets(problem)
    if targets is None:
        targets = {}
    v = np.array(x_c.entries)
    if targets:
        diag = np.diagonal(v).real
        scale = np.ones(v.shape[0])
        for idx, target in targets.items():
            if diag[idx] <= 0.5 * target:
                return None
            scale[idx] = np.sqrt(target / diag[idx])
        v = (v * scale[:, None]) * scale[None, :]
    polished = HermitianMatrix(v)

    maximize = problem.objective is Objective.MAX_RESIDUAL_SUM
    r_count = problem.residual_count if maximize else 0
    alphas = np.zeros(r_count)
    for j in range(r_count):
        con = problem.constraints[j]
        lhs = float(np.tensordot(con.coeff.entries, polished.entries.conj()).real)
        alphas[j] = max(lhs - con.bound, 0.0)

    violation = _max_violation(problem, polished.entries, alphas)
    if violation > tol_feas:
        return None
    if maximize:
        primal = float(np.sum(alphas))
    else:
        primal = float(np.trace(polished.entries).real)
    dual = obj_unscale * res.dual_objective
    rel_gap = abs(primal - dual) / (1.0 + abs(primal) + abs(dual))
    if not np.isfinite(rel_gap) or rel_gap > tol_gap:
        return None
    return SdpSolution(
        status=SdpStatus.OPTIMAL,
        psd_value=polished,
        residuals=alphas,
        objective_value=primal,
        duality_gap=rel_gap,
        max_constraint_violation=violation,
        iterations=res.iterations,
        message="stalled iterate accepted via a-posteriori certificate",
    )


def _max_violation(problem, x, alphas):
    """Largest constraint violation of (x, alphas) in the caller's units."""
    worst = max(0.0, -float(np.linalg.eigvalsh(x)[0]))
    for j, con in enumerate(problem.constraints):
        val = float(np.tensordot(con.coeff.entries, x.conj()).real)
        if j < alphas.shape[0]:
            val -= alphas[j]
        if con.sense == GE:
            worst = max(worst, con.bound - val)
        else:
            worst = max(worst, abs(val - con.bound))
    return worst

"""Primal-dual interior-point solver for dense conic programs over S+^n x R+^p.

Solves

    minimize    <C, X> + g . u
    subject to  <A_j, X> + e_j . u  =  b_j,   j = 1..m
                X  PSD (n x n real symmetric),   u >= 0  (p-vector)

with a homogeneous self-dual embedding, Nesterov-Todd scaling, and a Mehrotra
predictor-corrector step.  The embedding makes primal infeasibility detectable
through a Farkas certificate (y with A^T y + z = 0, b . y > 0) instead of by
divergence, which is what the phase-feasibility subproblem needs.

Constraint coefficient matrices may be dense or diagonal; diagonal ones (the
unit-diagonal rows of the lifted phase problem) are kept as sparse weight
vectors so that the Schur complement assembly does one congruence per dense
row plus a single congruence shared by all diagonal rows.

Sizes here are tiny (n of a few hundred, m of a couple hundred), so everything
is dense NumPy / LAPACK; no exploitation of low rank beyond the diagonal rows.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

# fraction of the distance to the cone boundary taken each step
_STEP_FRAC = 0.98
_MIN_STEP = 1e-13


@dataclass
class ConicProblem:
    """Data for one solve; see the module docstring for the meaning of each block."""

    n: int
    p: int
    c_psd: np.ndarray  # (n, n) symmetric
    c_lin: np.ndarray  # (p,)
    b: np.ndarray  # (m,)
    a_lin: np.ndarray  # (m, p)
    dense_rows: list  # [(row index, (n, n) symmetric matrix), ...]
    diag_rows: list  # [(row index, index array, weight array), ...]
    row_units: np.ndarray | None = None  # original units per unit of scaled row residual

    @property
    def m(self):
        return self.b.shape[0]


@dataclass
class ConicResult:
    status: str  # "optimal" | "infeasible" | "unbounded" | "numerical_failure"
    x_psd: np.ndarray | None = None
    u_lin: np.ndarray | None = None
    y: np.ndarray | None = None
    z_psd: np.ndarray | None = None
    v_lin: np.ndarray | None = None
    primal_objective: float = np.nan
    dual_objective: float = np.nan
    rel_gap: float = np.nan
    primal_residual: float = np.nan
    dual_residual: float = np.nan
    iterations: int = 0
    message: str = ""


def _apply_a(prob, x, u):
    """A(x, u): evaluate all constraint rows."""
    out = prob.a_lin @ u if prob.p else np.zeros(prob.m)
    d = np.diagonal(x)
    for j, mat in prob.dense_rows:
        out[j] += float(np.tensordot(mat, x))
    for j, idx, w in prob.diag_rows:
        out[j] += float(w @ d[idx])
    return out


def _apply_at_psd(prob, y):
    """PSD part of the adjoint: sum_j y_j A_j."""
    out = np.zeros((prob.n, prob.n))
    for j, mat in prob.dense_rows:
        out += y[j] * mat
    dg = np.zeros(prob.n)
    for j, idx, w in prob.diag_rows:
        dg[idx] += y[j] * w
    out[np.diag_indices(prob.n)] += dg
    return out


def _nt_scaling(x, z):
    """Nesterov-Todd scaling W for the PSD cone.

    Returns (W, W_inv, lam) with W^-1 X W^-T = W^T Z W = diag(lam).
    """
    lx = sla.cholesky(x, lower=True, check_finite=False)
    lz = sla.cholesky(z, lower=True, check_finite=False)
    u, lam, vt = sla.svd(lz.T @ lx, check_finite=False)
    sqrt_lam = np.sqrt(lam)
    w = (lx @ vt.T) / sqrt_lam
    lx_inv = sla.solve_triangular(lx, np.eye(x.shape[0]), lower=True, check_finite=False)
    w_inv = (vt.T * sqrt_lam).T @ lx_inv
    return w, w_inv, lam


def _max_step_psd(lam, d_scaled):
    """Largest a with diag(lam) + a * d_scaled PSD (inf if unrestricted)."""
    if lam.size == 0:
        return np.inf
    inv_sqrt = 1.0 / np.sqrt(lam)
    m = inv_sqrt[:, None] * d_scaled * inv_sqrt[None, :]
    emin = sla.eigvalsh(0.5 * (m + m.T), check_finite=False)[0]
    return np.inf if emin >= 0 else 1.0 / (-emin)


def _max_step_vec(vals, deltas):
    neg = deltas < 0
    if not np.any(neg):
        return np.inf
    return float(np.min(-vals[neg] / deltas[neg]))


class _State:
    def __init__(self, prob):
        self.x = np.eye(prob.n)
        self.z = np.eye(prob.n)
        self.u = np.ones(prob.p)
        self.v = np.ones(prob.p)
        self.y = np.zeros(prob.m)
        self.tau = 1.0
        self.kappa = 1.0


def solve_conic(prob, tol_feas=1e-8, tol_gap=1e-7, tol_infeas=1e-8, max_iter=200, verbose=False):
    """Run the homogeneous self-dual interior-point iteration.

    Data is assumed reasonably scaled by the caller (rows and variables of
    order one); see ``irspower.numerics.sdp`` for the normalization applied to
    user problems.
    """
    n, p, m = prob.n, prob.p, prob.m
    nu = n + p + 1.0
    st = _State(prob)
    norm_b = 1.0 + np.linalg.norm(prob.b)
    norm_c = 1.0 + np.hypot(np.linalg.norm(prob.c_psd), np.linalg.norm(prob.c_lin))
    row_units = prob.row_units if prob.row_units is not None else np.ones(m)
    # u-variables entering a row with a negative coefficient (slacks, residual
    # slack variables) can absorb a violation of that row by decreasing, so the
    # row's violation is credited with their value; rows without any such
    # variable are equalities and are charged the full residual.
    neg_coeff = np.where(prob.a_lin < 0.0, -prob.a_lin, 0.0) if p else np.zeros((m, 0))
    is_ineq = neg_coeff.sum(axis=1) > 0 if m else np.zeros(0, dtype=bool)

    def residuals():
        r_dm = _apply_at_psd(prob, st.y) + st.z - prob.c_psd * st.tau
        r_dl = (prob.a_lin.T @ st.y if p else np.zeros(0)) + st.v - prob.c_lin * st.tau
        r_p = _apply_a(prob, st.x, st.u) - prob.b * st.tau
        cx = float(np.tensordot(prob.c_psd, st.x)) + float(prob.c_lin @ st.u)
        by = float(prob.b @ st.y)
        r_g = cx - by + st.kappa
        return r_dm, r_dl, r_p, r_g, cx, by

    def violation_abs(r_p):
        """Largest per-row violation of the candidate x/tau in the caller's units."""
        if not m:
            return 0.0
        signed = r_p / st.tau
        viol = np.abs(signed)
        if p:
            credit = neg_coeff @ st.u / st.tau
            viol[is_ineq] = np.maximum(0.0, -signed[is_ineq] - credit[is_ineq])
        return float(np.max(row_units * viol))

    def check_optimal(it, res_tuple):
        r_dm, r_dl, r_p, r_g, cx, by = res_tuple
        gap = float(np.tensordot(st.x, st.z)) + float(st.u @ st.v)
        pobj = cx / st.tau
        dobj = by / st.tau
        pres = np.linalg.norm(r_p) / st.tau / norm_b
        dres = np.hypot(np.linalg.norm(r_dm), np.linalg.norm(r_dl)) / st.tau / norm_c
        relgap = (gap / st.tau**2) / (1.0 + abs(pobj) + abs(dobj))
        if verbose:
            print(
                f"  it={it:3d} pres={pres:9.2e} viol={violation_abs(r_p):9.2e} dres={dres:9.2e} "
                f"relgap={relgap:9.2e} tau={st.tau:9.2e} kappa={st.kappa:9.2e}"
            )
        if pres <= tol_feas and violation_abs(r_p) <= tol_feas and dres <= tol_feas and relgap <= tol_gap:
            return ConicResult(
                status="optimal",
                x_psd=st.x / st.tau,
                u_lin=st.u / st.tau,
                y=st.y / st.tau,
                z_psd=st.z / st.tau,
                v_lin=st.v / st.tau,
                primal_objective=pobj,
                dual_objective=dobj,
                rel_gap=relgap,
                primal_residual=pres,
                dual_residual=dres,
                iterations=it,
            )
        return None

    def score(res_tuple):
        r_dm, r_dl, r_p, _, cx, by = res_tuple
        gap = float(np.tensordot(st.x, st.z)) + float(st.u @ st.v)
        pres = np.linalg.norm(r_p) / st.tau / norm_b
        dres = np.hypot(np.linalg.norm(r_dm), np.linalg.norm(r_dl)) / st.tau / norm_c
        relgap = (gap / st.tau**2) / (1.0 + abs(cx / st.tau) + abs(by / st.tau))
        return max(pres / tol_feas, violation_abs(r_p) / tol_feas, dres / tol_feas, relgap / tol_gap)

    def snapshot():
        return (st.x.copy(), st.u.copy(), st.y.copy(), st.z.copy(), st.v.copy(), st.tau, st.kappa)

    result = ConicResult(status="numerical_failure")
    best_score = np.inf
    best_state = None
    for it in range(max_iter):
        res_tuple = residuals()
        opt = check_optimal(it, res_tuple)
        if opt is not None:
            return opt
        current = score(res_tuple)
        if np.isfinite(current) and current < best_score:
            best_score = current
            best_state = snapshot()
        r_dm, r_dl, r_p, r_g, cx, by = res_tuple
        gap = float(np.tensordot(st.x, st.z)) + float(st.u @ st.v)
        mu = (gap + st.tau * st.kappa) / nu

        # Farkas certificates.  Primal infeasible: A^T y + z = 0 with b.y > 0.
        if by > 0:
            cert = np.hypot(
                np.linalg.norm(_apply_at_psd(prob, st.y) + st.z),
                np.linalg.norm((prob.a_lin.T @ st.y if p else np.zeros(0)) + st.v),
            ) / by
            if cert <= tol_infeas * norm_c:
                return ConicResult(
                    status="infeasible",
                    y=st.y / by,
                    z_psd=st.z / by,
                    v_lin=st.v / by,
                    iterations=it,
                    message="primal infeasibility certificate found",
                )
        # Dual infeasible (primal unbounded): A x = 0, x in cone, c.x < 0.
        if cx < 0:
            cert = np.linalg.norm(_apply_a(prob, st.x, st.u)) / (-cx)
            if cert <= tol_infeas * norm_b:
                return ConicResult(
                    status="unbounded",
                    x_psd=st.x / (-cx),
                    u_lin=st.u / (-cx),
                    iterations=it,
                    message="dual infeasibility certificate found",
                )

        try:
            w, w_inv, lam = _nt_scaling(st.x, st.z)
        except np.linalg.LinAlgError:
            result.message = "cone variable lost positive definiteness"
            result.iterations = it
            break
        d_lin = np.sqrt(st.u / st.v)
        lam_lin = np.sqrt(st.u * st.v)
        d2_lin = d_lin * d_lin

        g = w @ w.T
        # Schur complement S[j,k] = <A_j, G A_k G> + a_lin[j] . (d^2 * a_lin[k])
        s_mat = np.zeros((m, m))
        g_aj_g = {j: g @ mat @ g for j, mat in prob.dense_rows}
        if prob.diag_rows:
            g2 = g * g
        for j, mat_j in prob.dense_rows:
            for k, _ in prob.dense_rows:
                if k <= j:
                    s_mat[j, k] = s_mat[k, j] = float(np.tensordot(mat_j, g_aj_g[k]))
            for k, idx, wt in prob.diag_rows:
                val = float(wt @ np.diagonal(g_aj_g[j])[idx])
                s_mat[j, k] = s_mat[k, j] = val
        for j, idx_j, wt_j in prob.diag_rows:
            for k, idx_k, wt_k in prob.diag_rows:
                if k <= j:
                    val = float(wt_j @ g2[np.ix_(idx_j, idx_k)] @ wt_k)
                    s_mat[j, k] = s_mat[k, j] = val
        if p:
            s_mat += (prob.a_lin * d2_lin) @ prob.a_lin.T

        gcg = g @ prob.c_psd @ g
        grg = g @ r_dm @ g
        q_c = np.zeros(m)
        diag_gcg = np.diagonal(gcg)
        for j, mat in prob.dense_rows:
            q_c[j] = float(np.tensordot(mat, gcg))
        for j, idx, wt in prob.diag_rows:
            q_c[j] = float(wt @ diag_gcg[idx])
        if p:
            q_c += prob.a_lin @ (d2_lin * prob.c_lin)

        try:
            s_factor = sla.cho_factor(s_mat, check_finite=False) if m else None
        except np.linalg.LinAlgError:
            jitter = 1e-12 * (np.trace(s_mat) / m + 1.0)
            try:
                s_factor = sla.cho_factor(s_mat + jitter * np.eye(m), check_finite=False)
            except np.linalg.LinAlgError:
                result.message = "Schur complement not positive definite"
                result.iterations = it
                break

        def s_solve(rhs):
            if not m:
                return rhs
            # one round of iterative refinement keeps directions useful once the
            # central path nears a degenerate face and S becomes ill-conditioned
            q = sla.cho_solve(s_factor, rhs, check_finite=False)
            q += sla.cho_solve(s_factor, rhs - s_mat @ q, check_finite=False)
            return q

        q1 = s_solve(q_c + prob.b)

        # tau-equation denominator, written as a sum of norms:
        #   (q_c - b) . S^-1 (q_c + b) - gamma_c - kappa/tau
        #     = -(gamma_c - q_c . S^-1 q_c) - b . S^-1 b - kappa/tau
        # where gamma_c - q_c.S^-1 q_c = |C - A^T S^-1 q_c|_G^2 >= 0.  The naive
        # difference cancels catastrophically near convergence and a noisy,
        # near-zero denominator produces wild tau steps.
        t_c = s_solve(q_c)
        r_cm = prob.c_psd - _apply_at_psd(prob, t_c)
        wrw = w.T @ r_cm @ w
        resid_c_sq = float(np.tensordot(wrw, wrw))
        if p:
            r_cl = prob.c_lin - prob.a_lin.T @ t_c
            resid_c_sq += float(r_cl @ (d2_lin * r_cl))
        b_s_b = float(prob.b @ s_solve(prob.b)) if m else 0.0
        tau_denom = -resid_c_sq - max(b_s_b, 0.0) - st.kappa / st.tau

        lam_sum = lam[:, None] + lam[None, :]

        def newton(eta, ds_psd, ds_lin, d_kappa):
            """Solve the scaled Newton system; returns the direction tuple."""
            h_s = w @ (2.0 * ds_psd / lam_sum) @ w.T
            t1 = h_s + eta * grg
            h_sl = d_lin * (ds_lin / lam_lin) if p else np.zeros(0)
            t1_lin = h_sl + eta * d2_lin * r_dl if p else np.zeros(0)
            p_s = np.zeros(m)
            diag_t1 = np.diagonal(t1)
            for j, mat in prob.dense_rows:
                p_s[j] = float(np.tensordot(mat, t1))
            for j, idx, wt in prob.diag_rows:
                p_s[j] = float(wt @ diag_t1[idx])
            if p:
                p_s += prob.a_lin @ t1_lin
            p_c = float(np.tensordot(prob.c_psd, t1)) + float(prob.c_lin @ t1_lin)

            q2 = s_solve(-eta * r_p - p_s)
            if abs(tau_denom) < 1e-300:
                raise np.linalg.LinAlgError("degenerate tau equation")
            d_tau = (-eta * r_g - p_c - d_kappa / st.tau - float((q_c - prob.b) @ q2)) / tau_denom
            d_y = q2 + d_tau * q1
            d_z = -eta * r_dm - _apply_at_psd(prob, d_y) + prob.c_psd * d_tau
            d_z = 0.5 * (d_z + d_z.T)
            d_x = h_s - g @ d_z @ g
            d_x = 0.5 * (d_x + d_x.T)
            d_v = (-eta * r_dl - prob.a_lin.T @ d_y + prob.c_lin * d_tau) if p else np.zeros(0)
            d_u = h_sl - d2_lin * d_v if p else np.zeros(0)
            d_kap = (d_kappa - st.kappa * d_tau) / st.tau
            return d_x, d_u, d_y, d_z, d_v, d_tau, d_kap

        def step_limit(d_x, d_u, d_z, d_v, d_tau, d_kap):
            dx_bar = w_inv @ d_x @ w_inv.T
            dz_bar = w.T @ d_z @ w
            a = min(
                _max_step_psd(lam, dx_bar),
                _max_step_psd(lam, dz_bar),
                _max_step_vec(lam_lin, d_u / d_lin) if p else np.inf,
                _max_step_vec(lam_lin, d_v * d_lin) if p else np.inf,
                np.inf if d_tau >= 0 else st.tau / -d_tau,
                np.inf if d_kap >= 0 else st.kappa / -d_kap,
            )
            return a, dx_bar, dz_bar

        lam_mat = np.diag(lam * lam)
        try:
            aff = newton(1.0, -lam_mat, -lam_lin * lam_lin, -st.tau * st.kappa)
        except np.linalg.LinAlgError as exc:
            result.message = str(exc)
            result.iterations = it
            break
        a_aff, dxb_a, dzb_a = step_limit(aff[0], aff[1], aff[3], aff[4], aff[5], aff[6])
        a_aff = min(1.0, a_aff)

        gap_aff = (
            float(np.tensordot(st.x + a_aff * aff[0], st.z + a_aff * aff[3]))
            + float((st.u + a_aff * aff[1]) @ (st.v + a_aff * aff[4]))
            + (st.tau + a_aff * aff[5]) * (st.kappa + a_aff * aff[6])
        )
        sigma = float(np.clip((max(gap_aff, 0.0) / (gap + st.tau * st.kappa)) ** 3, 1e-8, 0.999))

        corr_psd = 0.5 * (dxb_a @ dzb_a + dzb_a @ dxb_a)
        ds_psd = sigma * mu * np.eye(n) - lam_mat - corr_psd
        ds_lin = sigma * mu - lam_lin * lam_lin - (aff[1] / d_lin) * (aff[4] * d_lin) if p else np.zeros(0)
        d_kappa = sigma * mu - st.tau * st.kappa - aff[5] * aff[6]
        try:
            dirn = newton(1.0 - sigma, ds_psd, ds_lin, d_kappa)
        except np.linalg.LinAlgError as exc:
            result.message = str(exc)
            result.iterations = it
            break
        a_max, _, _ = step_limit(dirn[0], dirn[1], dirn[3], dirn[4], dirn[5], dirn[6])
        alpha = min(1.0, _STEP_FRAC * a_max)
        if alpha < _MIN_STEP:
            result.message = "step size collapsed"
            result.iterations = it
            break

        st.x += alpha * dirn[0]
        st.u += alpha * dirn[1]
        st.y += alpha * dirn[2]
        st.z += alpha * dirn[3]
        st.v += alpha * dirn[4]
        st.tau += alpha * dirn[5]
        st.kappa += alpha * dirn[6]
        result.iterations = it + 1
    else:
        result.message = result.message or "iteration limit reached without certificate"

    # the last step may have reached tolerance even though the loop stalled;
    # failing that, fall back to the best iterate seen and report its metrics
    # so the caller can attempt an a-posteriori certificate
    res_tuple = residuals()
    opt = check_optimal(result.iterations, res_tuple)
    if opt is not None:
        return opt
    if best_state is not None and (not np.isfinite(score(res_tuple)) or score(res_tuple) > best_score):
        st.x, st.u, st.y, st.z, st.v, st.tau, st.kappa = best_state
        res_tuple = residuals()
        opt = check_optimal(result.iterations, res_tuple)
        if opt is not None:
            return opt

    r_dm, r_dl, r_p, _, cx, by = res_tuple
    gap = float(np.tensordot(st.x, st.z)) + float(st.u @ st.v)
    result.status = "numerical_failure"
    result.x_psd = st.x / st.tau
    result.u_lin = st.u / st.tau
    result.y = st.y / st.tau
    result.z_psd = st.z / st.tau
    result.v_lin = st.v / st.tau
    result.primal_objective = cx / st.tau
    result.dual_objective = by / st.tau
    result.primal_residual = np.linalg.norm(r_p) / st.tau / norm_b
    result.dual_residual = np.hypot(np.linalg.norm(r_dm), np.linalg.norm(r_dl)) / st.tau / norm_c
    result.rel_gap = (gap / st.tau**2) / (1.0 + abs(result.primal_objective) + abs(result.dual_objective))
    return result

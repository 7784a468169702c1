import numpy as np
import pytest

from irspower.numerics import Objective, SdpConstraint, SdpProblem, SdpStatus, solve_sdp
from irspower.numerics.embedding import embed_hermitian, unembed_symmetric
from irspower.numerics.hermitian import hermitian_part

from .oracles import max_residual_factorized, min_trace_factorized


def lifted_form(a, b):
    n = a.shape[0]
    mat = np.zeros((n + 1, n + 1), dtype=complex)
    mat[:n, :n] = np.outer(a, a.conj())
    mat[:n, n] = a * np.conj(b)
    mat[n, :n] = b * a.conj()
    return mat


def phase_problem(a_list, b_list, rhs):
    n = a_list[0].shape[0]
    cons = [SdpConstraint(lifted_form(a, b), rhs - abs(b) ** 2) for a, b in zip(a_list, b_list)]
    for i in range(n + 1):
        e = np.zeros((n + 1, n + 1), dtype=complex)
        e[i, i] = 1.0
        cons.append(SdpConstraint(e, 1.0, "=="))
    return SdpProblem(Objective.MAX_RESIDUAL_SUM, n + 1, cons, residual_count=len(a_list))


def test_rank_one_trace_minimum():
    h = np.array([1.0, 0.0], dtype=complex)
    sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, 2, [SdpConstraint(np.outer(h, h.conj()), 2.0)]))
    assert sol.status is SdpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(2.0, rel=1e-7)
    assert np.allclose(sol.psd_value.entries, [[2.0, 0.0], [0.0, 0.0]], atol=1e-6)


def test_unconstrained_minimum_is_zero():
    sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, 3, []))
    assert sol.status is SdpStatus.OPTIMAL
    assert abs(sol.objective_value) <= 1e-7
    assert np.abs(sol.psd_value.entries).max() <= 1e-7


def test_random_instance_matches_factorization_oracle():
    rng = np.random.default_rng(2024)
    mats = []
    bounds = []
    for _ in range(3):
        g = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
        mats.append(g @ g.conj().T)
        bounds.append(float(rng.uniform(0.5, 2.0)))
    prob = SdpProblem(Objective.MIN_TRACE, 5, [SdpConstraint(m, b) for m, b in zip(mats, bounds)])
    sol = solve_sdp(prob)
    assert sol.status is SdpStatus.OPTIMAL
    ref = min_trace_factorized(mats, bounds, 5, np.random.default_rng(1))
    assert sol.objective_value == pytest.approx(ref, rel=1e-5)


def test_phase_form_matches_single_user_alignment():
    # one user: the best phases align every term, value (sum|a| + |b|)^2
    rng = np.random.default_rng(5)
    a = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    b = 1.5 - 0.5j
    peak = (np.abs(a).sum() + abs(b)) ** 2
    rhs = 0.25 * peak
    sol = solve_sdp(phase_problem([a], [b], rhs))
    assert sol.status is SdpStatus.OPTIMAL
    assert sol.objective_value == pytest.approx(peak - rhs, rel=1e-7)
    assert sol.residuals[0] == pytest.approx(peak - rhs, rel=1e-7)
    assert np.abs(np.diagonal(sol.psd_value.entries) - 1.0).max() <= 1e-7


def test_phase_form_residual_consistency():
    rng = np.random.default_rng(55)
    for _ in range(10):
        n, k = int(rng.integers(1, 9)), int(rng.integers(1, 4))
        a_list = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(k)]
        b_list = [complex(rng.standard_normal(), rng.standard_normal()) for _ in range(k)]
        rhs = 0.4 * min((np.abs(a).sum() + abs(b)) ** 2 for a, b in zip(a_list, b_list))
        sol = solve_sdp(phase_problem(a_list, b_list, rhs))
        if sol.status is not SdpStatus.OPTIMAL:
            continue
        v = sol.psd_value.entries
        assert np.abs(np.diagonal(v) - 1.0).max() <= 1e-7
        for i, (a, b) in enumerate(zip(a_list, b_list)):
            headroom = float(np.tensordot(lifted_form(a, b), v.conj()).real) + abs(b) ** 2 - rhs
            assert sol.residuals[i] <= max(0.0, headroom) + 1e-7
            assert sol.residuals[i] >= 0.0


def test_phase_form_matches_factorization_oracle():
    rng = np.random.default_rng(99)
    n, k = 6, 2
    a_list = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(k)]
    b_list = [complex(rng.standard_normal(), rng.standard_normal()) for _ in range(k)]
    rhs = 0.2 * min((np.abs(a).sum() + abs(b)) ** 2 for a, b in zip(a_list, b_list))
    sol = solve_sdp(phase_problem(a_list, b_list, rhs))
    assert sol.status is SdpStatus.OPTIMAL
    mats = [lifted_form(a, b) for a, b in zip(a_list, b_list)]
    offs = [abs(b) ** 2 for b in b_list]
    ref = max_residual_factorized(mats, offs, rhs, n + 1, np.random.default_rng(3))
    assert sol.objective_value == pytest.approx(ref, rel=1e-5)


def test_phase_form_infeasible_detected():
    a = np.array([1.0 + 0j])
    sol = solve_sdp(phase_problem([a], [2.0 + 0j], 9.5))  # best achievable is (1+2)^2 = 9
    assert sol.status is SdpStatus.INFEASIBLE


def test_zero_coefficient_infeasible_short_circuit():
    sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, 2, [SdpConstraint(np.zeros((2, 2)), 1.0)]))
    assert sol.status is SdpStatus.INFEASIBLE


def test_optimal_certificates_within_tolerances():
    rng = np.random.default_rng(31337)
    for _ in range(25):
        d = int(rng.integers(2, 12))
        k = int(rng.integers(1, 5))
        cons = []
        for _ in range(k):
            h = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            cons.append(SdpConstraint(np.outer(h, h.conj()), float(rng.uniform(0.2, 5.0))))
        sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, d, cons))
        assert sol.status is SdpStatus.OPTIMAL
        assert sol.duality_gap <= 1e-7
        assert sol.max_constraint_violation <= 1e-8
        assert np.linalg.eigvalsh(sol.psd_value.entries)[0] >= -1e-8


def test_complex_and_real_embedding_agree():
    # solving the hand-embedded real problem doubles the trace; halving its
    # objective must reproduce the complex solve
    rng = np.random.default_rng(11)
    d, k = 4, 3
    mats = []
    bounds = []
    for _ in range(k):
        h = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        mats.append(np.outer(h, h.conj()))
        bounds.append(float(rng.uniform(0.5, 2.0)))
    complex_sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, d, [SdpConstraint(m, b) for m, b in zip(mats, bounds)]))
    real_cons = [SdpConstraint(embed_hermitian(m).astype(complex), 2.0 * b) for m, b in zip(mats, bounds)]
    real_sol = solve_sdp(SdpProblem(Objective.MIN_TRACE, 2 * d, real_cons))
    assert complex_sol.status is SdpStatus.OPTIMAL and real_sol.status is SdpStatus.OPTIMAL
    assert complex_sol.objective_value == pytest.approx(0.5 * real_sol.objective_value, abs=1e-8, rel=1e-8)


def test_embedding_round_trip():
    rng = np.random.default_rng(8)
    m = hermitian_part(rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5)))
    assert np.allclose(unembed_symmetric(embed_hermitian(m)), m)
    assert np.trace(embed_hermitian(m)).real == pytest.approx(2 * np.trace(m).real)


def test_residual_count_validation():
    e = np.eye(2, dtype=complex)
    with pytest.raises(ValueError):
        SdpProblem(Objective.MAX_RESIDUAL_SUM, 2, [SdpConstraint(e, 1.0, "==")], residual_count=1)


def test_dimension_validation():
    with pytest.raises(ValueError):
        SdpProblem(Objective.MIN_TRACE, 3, [SdpConstraint(np.eye(2, dtype=complex), 1.0)])

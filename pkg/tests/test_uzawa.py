"""Relaxation sweep, fixed-point map, and splitting consistency."""

import numpy as np
import pytest

from helpers_saddle import (
    dense_saddle,
    direct_solution,
    scalar_system,
    synthetic_system,
)
from saddlebench.linalg import CsrMatrix
from saddlebench.saddle import (
    SaddleOps,
    UzawaConfig,
    split_operators,
    uzawa_fixed_point_map,
    uzawa_solve,
    uzawa_step,
)


def test_config_validation():
    with pytest.raises(ValueError):
        UzawaConfig(omega=0.0)
    with pytest.raises(ValueError):
        UzawaConfig(omega=-1.0)
    with pytest.raises(ValueError):
        UzawaConfig(omega=1.0, qb="mass")
    with pytest.raises(ValueError):
        UzawaConfig(omega=1.0, qa="diagonal")
    with pytest.raises(ValueError):
        UzawaConfig(omega=1.0, inner_tol=1e-3)
    cfg = UzawaConfig(omega=1.0, qa=CsrMatrix.identity(2), inner_tol=1e-9)
    assert not cfg.qa_is_exact


def test_scalar_first_sweep_by_hand():
    system = scalar_system()
    cfg = UzawaConfig(omega=1.0)
    u1, p1 = uzawa_step(system, cfg, np.zeros(1), np.zeros(1))
    assert np.allclose(u1, [0.5], atol=1e-12)
    assert np.allclose(p1, [0.5], atol=1e-12)


def test_scalar_solve_reaches_exact_solution():
    system = scalar_system()
    u, p, report = uzawa_solve(system, UzawaConfig(omega=1.0), tol=1e-10)
    assert report.converged
    assert np.allclose(u, [0.0], atol=1e-9)
    assert np.allclose(p, [1.0], atol=1e-9)


def test_zero_rhs_stays_at_zero():
    system = scalar_system()
    system.rhs_f = np.zeros(1)
    system.rhs_g = np.zeros(1)
    u, p, report = uzawa_solve(system, UzawaConfig(omega=1.0))
    assert report.converged
    assert report.iterations == 0
    assert np.all(u == 0.0) and np.all(p == 0.0)


def test_step_equals_fixed_point_map():
    system = synthetic_system(n_split=8, n_pressure=4, seed=7)
    assert system.total_dofs == 20
    cfg = UzawaConfig(omega=0.8, qb="pressure_mass")
    gmap = uzawa_fixed_point_map(system, cfg)
    rng = np.random.default_rng(9)
    xi = rng.standard_normal(system.total_dofs)
    u1, p1 = uzawa_step(system, cfg, xi[:16], xi[16:], ops=gmap.ops)
    assert np.allclose(gmap(xi), np.concatenate([u1, p1]), atol=1e-12)


def test_exact_velocity_update_forgets_previous_velocity():
    system = synthetic_system(n_split=6, n_pressure=5, seed=3)
    cfg = UzawaConfig(omega=1.2, qb="identity")
    ops = SaddleOps(system, cfg.inner_tol)
    rng = np.random.default_rng(4)
    p = rng.standard_normal(system.n_pressure)
    u_a = rng.standard_normal(system.n_velocity)
    u_b = rng.standard_normal(system.n_velocity)
    out_a = uzawa_step(system, cfg, u_a, p, ops=ops)
    out_b = uzawa_step(system, cfg, u_b, p, ops=ops)
    scale = max(np.linalg.norm(out_a[0]), 1.0)
    assert np.linalg.norm(out_a[0] - out_b[0]) <= 1e-10 * scale
    assert np.linalg.norm(out_a[1] - out_b[1]) <= 1e-10


def test_fixed_point_at_direct_solution():
    system = synthetic_system(n_split=7, n_pressure=3, seed=11)
    cfg = UzawaConfig(omega=0.9, qb="pressure_mass", inner_tol=1e-12)
    star = direct_solution(system)
    gmap = uzawa_fixed_point_map(system, cfg)
    drift = np.linalg.norm(gmap(star) - star)
    assert drift <= 10 * cfg.inner_tol * max(np.linalg.norm(star), 1.0)


@pytest.mark.parametrize("qb", ["identity", "pressure_mass"])
@pytest.mark.parametrize("qa_kind", ["exact", "matrix"])
def test_splitting_reassembles_coupled_matrix(qb, qa_kind):
    system = synthetic_system(n_split=5, n_pressure=4, seed=13)
    qa = "exact"
    if qa_kind == "matrix":
        qa = CsrMatrix.from_diagonal(system.a_matrix.diagonal() * 1.5)
    cfg = UzawaConfig(omega=0.7, qa=qa, qb=qb, inner_tol=1e-12)
    ops = SaddleOps(system, cfg.inner_tol)
    split = split_operators(system, cfg, ops)

    n = system.total_dofs
    m_dense = np.linalg.inv(split.m_apply_inverse.to_dense())
    n_dense = split.n_apply.to_dense()
    assert np.allclose(m_dense - n_dense, dense_saddle(system), atol=1e-9)


def test_map_agrees_with_splitting_correction():
    # G(x) = x + M^{-1}(b - K x) ties the sweep to the splitting through a
    # different code path than the step itself
    system = synthetic_system(n_split=6, n_pressure=4, seed=17)
    b = np.concatenate([system.rhs_f, system.rhs_g])
    for qb in ("identity", "pressure_mass"):
        cfg = UzawaConfig(omega=1.1, qb=qb, inner_tol=1e-12)
        ops = SaddleOps(system, cfg.inner_tol)
        gmap = uzawa_fixed_point_map(system, cfg, ops)
        split = split_operators(system, cfg, ops)
        rng = np.random.default_rng(19)
        xi = rng.standard_normal(system.total_dofs)
        corrected = xi + split.m_apply_inverse(b - ops.apply_saddle(xi))
        assert np.allclose(gmap(xi), corrected, atol=1e-10)


def test_given_velocity_preconditioner_step_by_hand():
    system = synthetic_system(n_split=4, n_pressure=3, seed=23)
    qa = CsrMatrix.from_diagonal(np.full(system.n_velocity, 4.0))
    cfg = UzawaConfig(omega=0.6, qa=qa, qb="identity", inner_tol=1e-12)
    rng = np.random.default_rng(29)
    u = rng.standard_normal(system.n_velocity)
    p = rng.standard_normal(system.n_pressure)
    u1, p1 = uzawa_step(system, cfg, u, p)

    a = system.a_matrix.to_dense()
    bmat = system.b_matrix.to_dense()
    u1_ref = u + (system.rhs_f - a @ u - bmat.T @ p) / 4.0
    p1_ref = p + 0.6 * (bmat @ u1_ref - system.rhs_g)
    assert np.allclose(u1, u1_ref, atol=1e-10)
    assert np.allclose(p1, p1_ref, atol=1e-10)


def test_plain_sweep_converges_on_synthetic_system():
    system = synthetic_system(n_split=6, n_pressure=3, seed=31)
    # a safe relaxation: under 2 / lambda_max of the dual operator
    a_inv = np.linalg.inv(system.a_matrix.to_dense())
    bmat = system.b_matrix.to_dense()
    schur = bmat @ a_inv @ bmat.T
    omega = 1.0 / np.linalg.eigvalsh(schur).max()
    u, p, report = uzawa_solve(
        system, UzawaConfig(omega=omega), tol=1e-8, max_iters=5000
    )
    assert report.converged
    star = direct_solution(system)
    assert np.allclose(np.concatenate([u, p]), star, atol=1e-5)


def test_window_accelerates_the_same_map():
    system = synthetic_system(n_split=6, n_pressure=3, seed=31)
    a_inv = np.linalg.inv(system.a_matrix.to_dense())
    bmat = system.b_matrix.to_dense()
    schur = bmat @ a_inv @ bmat.T
    omega = 1.0 / np.linalg.eigvalsh(schur).max()
    cfg = UzawaConfig(omega=omega)
    _, _, plain = uzawa_solve(system, cfg, tol=1e-8, max_iters=5000)
    u, p, windowed = uzawa_solve(system, cfg, window=5, tol=1e-8, max_iters=5000)
    assert windowed.converged
    assert windowed.iterations < plain.iterations
    star = direct_solution(system)
    assert np.allclose(np.concatenate([u, p]), star, atol=1e-5)


def test_report_history_tracks_coupled_residual():
    system = scalar_system()
    _, _, report = uzawa_solve(system, UzawaConfig(omega=1.0), tol=1e-10)
    assert len(report.residual_history) == report.iterations + 1
    assert report.residual_history[0] == pytest.approx(1.0)
    assert report.residual_history[-1] <= 1e-10

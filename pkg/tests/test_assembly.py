"""Assembled operators checked against closed forms and strong solutions."""

import numpy as np
import pytest

from saddlebench.fem import ProblemSpec, assemble, build_grid, element_matrices
from saddlebench.linalg import spmv_transpose


def _mass_1d_quadratic(h):
    return (h / 30.0) * np.array([[4.0, 2.0, -1.0], [2.0, 16.0, 2.0], [-1.0, 2.0, 4.0]])


def _stiffness_1d_quadratic(h):
    return (1.0 / (3.0 * h)) * np.array(
        [[7.0, -8.0, 1.0], [-8.0, 16.0, -8.0], [1.0, -8.0, 7.0]]
    )


def _mass_1d_linear(h):
    return (h / 6.0) * np.array([[2.0, 1.0], [1.0, 2.0]])


def _integrate_1d(f, h, n_points=8):
    nodes, weights = np.polynomial.legendre.leggauss(n_points)
    t = 0.5 * h * (nodes + 1.0)
    return 0.5 * h * np.sum(weights * f(t))


def _quadratic_shapes(h):
    return [
        lambda t: (1.0 - t / h) * (1.0 - 2.0 * t / h),
        lambda t: 4.0 * (t / h) * (1.0 - t / h),
        lambda t: (t / h) * (2.0 * t / h - 1.0),
    ]


def _quadratic_derivs(h):
    return [
        lambda t: (-3.0 + 4.0 * t / h) / h,
        lambda t: (4.0 - 8.0 * t / h) / h,
        lambda t: (-1.0 + 4.0 * t / h) / h,
    ]


def _linear_shapes(h):
    return [lambda t: 1.0 - t / h, lambda t: t / h]


def test_element_mass_and_stiffness_match_closed_forms():
    hx, hy = 0.5, 0.25
    parts = element_matrices(hx, hy)
    mass = np.kron(_mass_1d_quadratic(hy), _mass_1d_quadratic(hx))
    stiffness = np.kron(_mass_1d_quadratic(hy), _stiffness_1d_quadratic(hx)) + np.kron(
        _stiffness_1d_quadratic(hy), _mass_1d_quadratic(hx)
    )
    assert np.allclose(parts["mass"], mass, rtol=0, atol=1e-14)
    assert np.allclose(parts["stiffness"], stiffness, rtol=0, atol=1e-12)
    assert np.allclose(
        parts["pressure_mass"],
        np.kron(_mass_1d_linear(hy), _mass_1d_linear(hx)),
        rtol=0,
        atol=1e-15,
    )


def test_element_divergence_matches_independent_quadrature():
    hx, hy = 0.5, 0.25
    parts = element_matrices(hx, hy)
    lin_x, lin_y = _linear_shapes(hx), _linear_shapes(hy)
    quad_x, quad_y = _quadratic_shapes(hx), _quadratic_shapes(hy)
    dquad_x, dquad_y = _quadratic_derivs(hx), _quadratic_derivs(hy)
    div_x = np.zeros((4, 9))
    div_y = np.zeros((4, 9))
    for d in range(2):
        for c in range(2):
            for j in range(3):
                for i in range(3):
                    div_x[2 * d + c, 3 * j + i] = -_integrate_1d(
                        lambda t: lin_x[c](t) * dquad_x[i](t), hx
                    ) * _integrate_1d(lambda t: lin_y[d](t) * quad_y[j](t), hy)
                    div_y[2 * d + c, 3 * j + i] = -_integrate_1d(
                        lambda t: lin_x[c](t) * quad_x[i](t), hx
                    ) * _integrate_1d(lambda t: lin_y[d](t) * dquad_y[j](t), hy)
    assert np.allclose(parts["div_x"], div_x, rtol=0, atol=1e-14)
    assert np.allclose(parts["div_y"], div_y, rtol=0, atol=1e-14)


def test_element_stiffness_rows_sum_to_zero():
    parts = element_matrices(0.5, 0.5)
    assert np.allclose(parts["stiffness"].sum(axis=1), 0.0, atol=1e-13)
    assert np.isclose(parts["mass"].sum(), 0.25)


@pytest.mark.parametrize("domain,n,area", [
    ("channel", 16, 4.0),
    ("obstacle", 16, 15.75),
    ("step", 16, 11.0),
])
def test_pressure_mass_integrates_domain_area(domain, n, area):
    system = assemble(ProblemSpec(domain=domain, n=n))
    ones = np.ones(system.n_pressure)
    assert np.isclose(ones @ (system.pressure_mass @ ones), area, rtol=1e-12)


def test_velocity_mass_diagonal_matches_dense_assembly():
    system = assemble(ProblemSpec(domain="channel", n=4))
    grid = system.grid
    mass_e = element_matrices(grid.hx, grid.hy)["mass"]
    dense = np.zeros((grid.n_velocity_nodes, grid.n_velocity_nodes))
    for cell in grid.cell_velocity_nodes:
        dense[np.ix_(cell, cell)] += mass_e
    expected = np.concatenate([np.diag(dense), np.diag(dense)])
    assert np.allclose(system.velocity_mass_diagonal, expected, atol=1e-15)
    assert (system.velocity_mass_diagonal > 0).all()


def test_stokes_matrix_is_symmetric_positive_definite():
    system = assemble(ProblemSpec(domain="cavity", n=8, viscosity=0.3))
    dense = system.a_matrix.to_dense()
    assert np.allclose(dense, dense.T, atol=1e-13)
    assert np.linalg.eigvalsh(dense).min() > 0


def test_constrained_rows_are_identity_and_columns_cleared():
    system = assemble(ProblemSpec(domain="cavity", n=8))
    a_dense = system.a_matrix.to_dense()
    b_dense = system.b_matrix.to_dense()
    pinned = np.nonzero(system.dirichlet_mask)[0]
    free = np.nonzero(~system.dirichlet_mask)[0]
    for d in pinned[:: max(1, len(pinned) // 7)]:
        expected = np.zeros(system.n_velocity)
        expected[d] = 1.0
        assert np.array_equal(a_dense[d], expected)
        assert np.array_equal(a_dense[:, d], expected)
        assert not b_dense[:, d].any()
        assert system.rhs_f[d] == system.dirichlet_values[d]
    assert len(free) > 0


@pytest.mark.parametrize("domain,n", [("channel", 16), ("cavity", 16)])
def test_enclosed_flows_have_constant_pressure_null_vector(domain, n):
    system = assemble(ProblemSpec(domain=domain, n=n))
    assert system.enclosed
    ones = np.ones(system.n_pressure)
    assert np.max(np.abs(spmv_transpose(system.b_matrix, ones))) < 1e-12


@pytest.mark.parametrize("domain,n", [("obstacle", 16), ("step", 16)])
def test_outflow_domains_have_no_pressure_null_vector(domain, n):
    system = assemble(ProblemSpec(domain=domain, n=n))
    assert not system.enclosed
    ones = np.ones(system.n_pressure)
    assert np.max(np.abs(spmv_transpose(system.b_matrix, ones))) > 1e-6


@pytest.mark.parametrize("viscosity", [1.0, 0.7])
def test_parabolic_channel_flow_solves_discrete_system_exactly(viscosity):
    system = assemble(ProblemSpec(domain="channel", n=16, viscosity=viscosity))
    coords_v = system.grid.velocity_coords
    coords_p = system.grid.pressure_coords
    u = np.concatenate([1.0 - coords_v[:, 1] ** 2, np.zeros(len(coords_v))])
    p = -2.0 * viscosity * coords_p[:, 0]
    momentum = system.a_matrix @ u + spmv_transpose(system.b_matrix, p) - system.rhs_f
    continuity = system.b_matrix @ u - system.rhs_g
    scale = max(1.0, np.max(np.abs(system.rhs_f)))
    assert np.max(np.abs(momentum)) < 1e-12 * scale
    assert np.max(np.abs(continuity)) < 1e-12


def test_wind_term_is_skew_on_free_dofs_for_solenoidal_wind():
    # The field (x, -y) is divergence free and linear, so its discrete wind
    # operator restricted to unconstrained nodes must be exactly skew.
    spec = ProblemSpec(domain="cavity", n=8, equation="oseen")
    grid = build_grid("cavity", 8)
    wind = np.concatenate([grid.velocity_coords[:, 0], -grid.velocity_coords[:, 1]])
    convected = assemble(spec, wind=wind)
    symmetric = assemble(ProblemSpec(domain="cavity", n=8))
    split = convected.n_split
    f_conv = convected.a_matrix.to_dense()[:split, :split]
    f_sym = symmetric.a_matrix.to_dense()[:split, :split]
    free = ~convected.dirichlet_mask[:split]
    residual = (f_conv + f_conv.T - 2.0 * f_sym)[np.ix_(free, free)]
    assert np.max(np.abs(residual)) < 1e-13


def test_zero_wind_oseen_equals_stokes():
    zero_wind = np.zeros(2 * build_grid("channel", 8).n_velocity_nodes)
    convected = assemble(
        ProblemSpec(domain="channel", n=8, equation="oseen"), wind=zero_wind
    )
    symmetric = assemble(ProblemSpec(domain="channel", n=8))
    assert np.array_equal(convected.a_matrix.data, symmetric.a_matrix.data)
    assert np.array_equal(convected.a_matrix.indices, symmetric.a_matrix.indices)
    assert np.array_equal(convected.rhs_f, symmetric.rhs_f)
    assert np.array_equal(convected.rhs_g, symmetric.rhs_g)


def test_wind_validation():
    with pytest.raises(ValueError):
        assemble(ProblemSpec(domain="channel", n=8), wind=np.zeros(10))
    with pytest.raises(ValueError):
        assemble(
            ProblemSpec(domain="channel", n=8, equation="stokes"),
            wind=np.zeros(2 * build_grid("channel", 8).n_velocity_nodes),
        )
    with pytest.raises(ValueError):
        ProblemSpec(domain="channel", n=8, viscosity=0.0)
    with pytest.raises(ValueError):
        ProblemSpec(domain="channel", n=8, equation="navier")

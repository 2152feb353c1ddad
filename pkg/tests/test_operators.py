import numpy as np
import pytest

import psdolab as P


def test_identity_symbol_acts_as_identity(grid, packet):
    op = P.make_operator(P.preset_symbol("identity"), grid)
    out = P.apply(op, packet)
    assert np.max(np.abs(out.values - packet.values)) < 1e-12


def test_multiplier_application_is_diagonal_in_frequency(grid, packet):
    sym = P.preset_symbol("bessel_order_m", m=-0.75)
    op = P.make_operator(sym, grid)
    out = P.apply(op, packet)
    spec = P.dft(packet)
    xi = spec.grid.flat_points()[:, 0]
    scaled = P.SampledFunction(spec.grid, spec.values * (1.0 + xi ** 2) ** (-0.375))
    expect = P.idft(scaled)
    assert np.max(np.abs(out.values - expect.values)) < 1e-12


@pytest.mark.parametrize("preset,params", [
    ("bessel_order_m", {"m": -0.75}),
    ("rough_x_modulated", {"m": 0.0}),
])
def test_adjoint_pairing_is_exact(grid, packet, window, preset, params):
    op = P.make_operator(P.preset_symbol(preset, **params), grid)
    lhs = P.inner(P.apply(op, packet), window)
    rhs = P.inner(packet, P.apply_adjoint(op, window))
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


def test_adjoint_pairing_amplitude_path(grid_small):
    amp = P.preset_symbol("oscillating_amplitude", m=0.0, rho=1.0, delta=0.0,
                          spatial_scale=16.0)
    op = P.make_operator(amp, grid_small)
    f = P.sample(grid_small, lambda x: np.exp(-0.5 * (x - 2.0) ** 2))
    u = P.sample(grid_small, lambda x: np.cos(0.7 * x) * np.exp(-0.1 * x ** 2))
    lhs = P.inner(P.apply(op, f), u)
    rhs = P.inner(f, P.apply_adjoint(op, u))
    assert abs(lhs - rhs) < 1e-12


def test_amplitude_budget_refuses_large_grids(grid):
    amp = P.preset_symbol("oscillating_amplitude", m=0.0, rho=1.0, delta=0.0,
                          spatial_scale=16.0)
    op = P.make_operator(amp, grid, amplitude_budget=512)
    f = P.sample(grid, lambda x: np.exp(-x ** 2))
    with pytest.raises(ValueError):
        P.apply(op, f)


def test_dyadic_pieces_telescope_to_full(grid, lp, bessel_op, packet):
    acc = np.zeros_like(packet.values)
    for k in range(lp.max_index + 1):
        acc = acc + P.apply_dyadic_piece(bessel_op, k, packet).values
    full = P.apply(bessel_op, packet).values
    assert np.max(np.abs(acc - full)) < 1e-12


def test_dyadic_mode_needs_truncation(grid, lp):
    sym = P.preset_symbol("bessel_order_m", m=-0.75)
    with pytest.raises(ValueError):
        P.make_operator(sym, grid, mode="dyadic", family=lp)
    with pytest.raises(ValueError):
        P.make_operator(sym, grid, mode="dyadic", truncation=40, family=lp)


def test_truncated_operator_matches_on_bandlimited_input(grid, lp, bessel_op, packet):
    opd = P.make_operator(P.preset_symbol("bessel_order_m", m=-0.75), grid,
                          mode="dyadic", truncation=5, family=lp)
    # the packet's spectrum dies well inside piece 5, so nothing is lost
    d = P.apply(opd, packet).values - P.apply(bessel_op, packet).values
    assert np.max(np.abs(d)) < 1e-12


def test_commutator_with_identity_vanishes(grid, packet):
    op = P.make_operator(P.preset_symbol("identity"), grid)
    b = P.preset_bmo("linear", grid)
    c = P.commutator(op, b, packet)
    assert np.max(np.abs(c.values)) < 1e-12


def test_commutator_is_linear_in_the_multiplier(grid, bessel_op, packet):
    b1 = P.preset_bmo("linear", grid)
    b2 = P.preset_bmo("triangle", grid)
    combo = P.SampledFunction(grid, 2.0 * b1.values - 3.0 * b2.values)
    lhs = P.commutator(bessel_op, combo, packet).values
    rhs = (2.0 * P.commutator(bessel_op, b1, packet).values
           - 3.0 * P.commutator(bessel_op, b2, packet).values)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_commutator_requires_real_multiplier(grid, bessel_op, packet):
    bad = P.SampledFunction(grid, 1j * np.ones(grid.shape))
    with pytest.raises(ValueError):
        P.commutator(bessel_op, bad, packet)


def test_adjoint_commutator_pairs_with_negative_sign(grid, bessel_op, packet, window):
    """([b, T])* = -[b, T*], so the two pairings cancel."""
    b = P.preset_bmo("linear", grid)
    cb = P.commutator(bessel_op, b, packet)
    ac = P.adjoint_commutator(bessel_op, b, window)
    assert abs(P.inner(cb, window) + P.inner(packet, ac)) < 1e-12


def test_kernel_row_reproduces_application(grid_small):
    sym = P.preset_symbol("rough_x_modulated", m=0.0)
    op = P.make_operator(sym, grid_small)
    f = P.sample(grid_small, lambda x: np.exp(-0.3 * x ** 2))
    out = P.apply(op, f)
    pts = grid_small.flat_points()
    i = 77
    row = P.kernel_row(op, pts[i])
    quad = np.sum(row * f.values) * grid_small.cell_volume
    assert abs(quad - out.values[i]) < 1e-10


def test_operator_mode_validation(grid):
    sym = P.preset_symbol("identity")
    with pytest.raises(ValueError):
        P.make_operator(sym, grid, mode="banana")


def test_grid_mismatch_rejected(grid, grid_small, bessel_op):
    f = P.sample(grid_small, lambda x: np.exp(-x ** 2))
    with pytest.raises(ValueError):
        P.apply(bessel_op, f)

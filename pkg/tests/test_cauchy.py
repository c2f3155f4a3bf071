import numpy as np
import pytest

import symprod as sp
from symprod import catalog
from symprod.errors import (
    BoundaryProximityError,
    DegenerateTruncationError,
    KernelProximityError,
    WrongRegionError,
)


@pytest.fixture(scope="module")
def grids():
    domain = sp.disc(0, 1)
    grid = sp.sample_boundary(domain, 256)
    return domain, grid


def phi_samples(grid, phi):
    return sp.boundary_samples(grid, phi)


def test_boundary_samples_length_checked(grids):
    _, grid = grids
    with pytest.raises(ValueError):
        sp.BoundarySamples(grid=grid, values=np.zeros(3, dtype=complex))


def test_generic_transform_cauchy_kernel(grids):
    _, grid = grids
    ones = phi_samples(grid, catalog.monomial_phi(0))
    val = sp.generic_transform(lambda z, t: t - z, ones, 0.0, degree=1)
    assert abs(val - 1.0) < 1e-12


def test_generic_transform_two_node_kernel(grids):
    _, grid = grids
    ones = phi_samples(grid, catalog.monomial_phi(0))
    val = sp.generic_transform(lambda z, t: (t - z[0]) * (t - z[1]), ones, (0.0, 0.5), degree=2)
    # residues 1/(z1-z2) + 1/(z2-z1) cancel
    assert abs(val) < 1e-12


def test_generic_transform_pole_data(grids):
    _, grid = grids
    inv = phi_samples(grid, catalog.pole_phi(0.0))  # phi(t) = 1/t
    val = sp.generic_transform(lambda z, t: t - z, inv, 0.5, degree=1)
    assert abs(val) < 1e-12


def test_cauchy_transform_reproduces_cube(grids):
    _, grid = grids
    cube = phi_samples(grid, catalog.monomial_phi(3))
    assert abs(sp.cauchy_transform(cube, 0.2) - 0.008) < 1e-12


def test_cauchy_transform_pole(grids):
    _, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    assert abs(sp.cauchy_transform(pole, 0.1) - 1.0 / (0.1 - 3.0)) < 1e-12


def test_cauchy_transform_conj_trace(grids):
    _, grid = grids
    conj = phi_samples(grid, catalog.conj_phi())
    assert abs(sp.cauchy_transform(conj, 0.5)) < 1e-12


def test_cauchy_transform_rejects_exterior(grids):
    _, grid = grids
    cube = phi_samples(grid, catalog.monomial_phi(3))
    with pytest.raises(WrongRegionError):
        sp.cauchy_transform(cube, 2.0)
    with pytest.raises(BoundaryProximityError):
        sp.cauchy_transform(cube, 1.0 - 1e-9)


def test_norlund_reduces_to_cauchy(grids):
    _, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    a = sp.norlund_transform(pole, np.array([0.3 + 0.1j]))
    b = sp.cauchy_transform(pole, 0.3 + 0.1j)
    assert abs(a - b) < 1e-14


def test_norlund_square_data(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    assert abs(sp.norlund_transform(sq, np.array([0.1, 0.2])) - 0.3) < 1e-12


def test_norlund_pole_data(grids):
    _, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    got = sp.norlund_transform(pole, np.array([0.0, 0.5]))
    assert abs(got - (-1.0 / 7.5)) < 1e-12


def test_norlund_permutation_invariance_exact(grids, rng):
    _, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    for n in (2, 3, 4):
        w = 0.4 * (rng.random(n) - 0.5) + 0.4j * (rng.random(n) - 0.5)
        base = sp.norlund_transform(pole, w)
        for _ in range(4):
            perm = rng.permutation(n)
            assert sp.norlund_transform(pole, w[perm]) == base


def test_symmetrized_matches_norlund(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    z = sp.symmetrize(np.array([0.1, 0.2]))
    assert np.allclose(z, [0.3, 0.02])
    assert abs(sp.symmetrized_transform(sq, z) - 0.3) < 1e-12


def test_symmetrized_pole(grids):
    _, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    z = sp.symmetrize(np.array([0.0, 0.5]))
    assert np.allclose(z, [0.5, 0.0])
    assert abs(sp.symmetrized_transform(pole, z) - (-1.0 / 7.5)) < 1e-12


def test_symmetrized_rejects_outside_roots(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    z = sp.symmetrize(np.array([0.5, 3.0]))
    with pytest.raises((WrongRegionError, KernelProximityError)):
        sp.symmetrized_transform(sq, z)


def test_factorization_identity_batch(grids, rng):
    domain, grid = grids
    pole = phi_samples(grid, catalog.pole_phi(3.0))
    for n in (1, 2, 3):
        w = 0.8 * (rng.random((200, n)) - 0.5) + 0.8j * (rng.random((200, n)) - 0.5)
        z = sp.symmetrize(w)
        lhs = sp.symmetrized_transform(pole, z, check_region=False)
        rhs = sp.norlund_transform(pole, w)
        assert np.abs(lhs - rhs).max() <= 1e-9


def test_apply_multiplier_identity(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    out = sp.apply_multiplier(sq, (0, 0), 2)
    assert np.array_equal(out.values, sq.values)


def test_apply_multiplier_first_coefficient(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    out = sp.apply_multiplier(sq, (1, 0), 2)
    assert np.allclose(out.values, -grid.nodes * sq.values)


def test_apply_multiplier_second_coefficient(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    out = sp.apply_multiplier(sq, (0, 1), 2)
    assert np.allclose(out.values, -sq.values)


def test_derivative_zeroth_order(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    z = sp.symmetrize(np.array([0.1, 0.2]))
    a = sp.derivative_symmetrized((0, 0), sq, z)
    b = sp.symmetrized_transform(sq, z)
    assert abs(a - b) < 1e-14


def test_derivative_classical(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    got = sp.derivative_symmetrized((1,), sq, np.array([0.3]))
    assert abs(got - 0.6) < 1e-12


def test_derivative_matches_finite_difference(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    z = sp.symmetrize(np.array([0.1, 0.2]))
    got = sp.derivative_symmetrized((1, 0), sq, z)
    h = 1e-4
    e1 = np.array([h, 0.0])
    fd = (sp.symmetrized_transform(sq, z + e1) - sp.symmetrized_transform(sq, z - e1)) / (2 * h)
    assert abs(got - fd) <= 1e-6


def test_truncated_pv_chi_one_bounded(grids):
    _, grid8 = sp.disc(0, 1), sp.sample_boundary(sp.disc(0, 1), 8192)
    w = sp.boundary_samples(grid8, catalog.weierstrass_phi(0.5))
    t0 = grid8.nodes[100]
    mags = [abs(sp.truncated_pv(w, [t0], 2.0**-k)) for k in range(3, 9)]
    assert max(mags) < 10 * (min(mags) + 1.0)


def test_truncated_pv_requires_boundary_points(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    with pytest.raises(BoundaryProximityError):
        sp.truncated_pv(sq, [0.5], 0.1)


def test_truncated_pv_degenerate(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    # balls around the 8th roots of unity at this radius cover the circle
    eighth_roots = grid.nodes[::32]
    with pytest.raises(DegenerateTruncationError):
        sp.truncated_pv(sq, eighth_roots, 0.45)


def test_truncated_pv_radius_validation(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    with pytest.raises(ValueError):
        sp.truncated_pv(sq, [grid.nodes[0]], 0.9)


def test_coincidence_order():
    assert sp.coincidence_order([1, 2, 3], 1e-9) == 1
    assert sp.coincidence_order([1, 1, 3], 1e-9) == 2
    assert sp.coincidence_order([1 + 1e-12, 1, 1], 1e-9) == 3


def test_kernel_floor_rejection(grids):
    _, grid = grids
    sq = phi_samples(grid, catalog.monomial_phi(2))
    # root very close to the boundary trips the kernel floor
    z = sp.symmetrize(np.array([0.99995, 0.1]))
    with pytest.raises(KernelProximityError):
        sp.symmetrized_transform(sq, z, check_region=False)


def test_reproduction_on_annulus(annulus_domain):
    grid = sp.sample_boundary(annulus_domain, 256)
    # pole inside the hole is holomorphic on the annulus
    pole = sp.boundary_samples(grid, catalog.pole_phi(0.0))
    z = 0.6 + 0.1j
    assert abs(sp.cauchy_transform(pole, z) - 1.0 / z) < 1e-10


def test_monomial_range_identity(grids, rng):
    # transform of t^r equals the complete symmetric polynomial of degree
    # r-n+1 in the node coordinates (index shifted from naive expectation;
    # verified against the divided-difference oracle)
    _, grid = grids
    for n in (1, 2, 3):
        w = 0.6 * (rng.random(n) - 0.5) + 0.6j * (rng.random(n) - 0.5)
        for r in range(0, 6):
            data = phi_samples(grid, catalog.monomial_phi(r))
            got = sp.norlund_transform(data, w)
            expected = sp.complete_symmetric(r - n + 1, n, w)
            assert abs(got - expected) < 1e-10, (n, r)


def test_pole_range_identity(grids, rng):
    # transform of (t-a)^(-r) carries the sign (-1)^(n-1) relative to the
    # product-of-reciprocals times complete-symmetric form
    _, grid = grids
    a = 3.0
    for n in (1, 2, 3):
        w = 0.6 * (rng.random(n) - 0.5) + 0.6j * (rng.random(n) - 0.5)
        for r in (1, 2):
            data = phi_samples(grid, catalog.pole_phi(a, r))
            got = sp.norlund_transform(data, w)
            inv = 1.0 / (w - a)
            expected = (-1.0) ** (n - 1) * np.prod(inv) * sp.complete_symmetric(r - 1, n, inv)
            assert abs(got - expected) < 1e-10, (n, r)

import numpy as np
import pytest

import symprod as sp
from symprod import catalog
from symprod.divdiff import divdiff_table, node_spread
from symprod.errors import CoincidentNodesError


def test_square_two_nodes():
    f = catalog.monomial_function(2)
    assert abs(sp.divdiff_recursive(f, [0, 2]) - 2.0) < 1e-14


def test_cube_three_nodes():
    f = catalog.monomial_function(3)
    # equals the degree-1 complete symmetric polynomial of the nodes
    assert abs(sp.divdiff_recursive(f, [0, 1, 2]) - 3.0) < 1e-14


def test_pole_two_nodes():
    f = catalog.pole_function(3.0)
    got = sp.divdiff_recursive(f, [0, 0.5])
    assert abs(got - (-1.0 / 7.5)) < 1e-14


def test_coincident_nodes_rejected():
    f = catalog.exp_function()
    with pytest.raises(CoincidentNodesError):
        sp.divdiff_recursive(f, [0.5, 0.5 + 1e-12, 1.0])


def test_table_matches_recursive(rng):
    f = catalog.exp_function()
    z = rng.uniform(-0.5, 0.5, 4) + 1j * rng.uniform(-0.5, 0.5, 4)
    vals = f(z)
    assert divdiff_table(vals, z) == sp.divdiff_recursive(f, z)


def test_gh_linear_case():
    f = catalog.monomial_function(2)
    got = sp.divdiff_gh(f.derivative(1), [0, 2])
    assert abs(got - 2.0) < 1e-13


def test_gh_confluent():
    f = catalog.exp_function()
    got = sp.divdiff_gh(f.derivative(2), [0, 0, 0])
    assert abs(got - 0.5) < 1e-13


def test_gh_matches_recursive_exp():
    f = catalog.exp_function()
    nodes = [0.0, 0.5, 1.0]
    a = sp.divdiff_analytic(f, nodes)
    b = sp.divdiff_recursive(f, nodes)
    assert abs(a - b) < 1e-10


@pytest.mark.parametrize("fun", [
    catalog.exp_function(),
    catalog.monomial_function(2),
    catalog.monomial_function(4),
    catalog.monomial_function(6),
    catalog.pole_function(3.0),
])
def test_cross_representation(fun, rng):
    for m in (2, 3, 4, 5):
        for _ in range(10):
            z = rng.uniform(-0.6, 0.6, m) + 1j * rng.uniform(-0.6, 0.6, m)
            d = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() < 0.1:
                continue
            a = sp.divdiff_analytic(fun, z)
            b = sp.divdiff_recursive(fun, z)
            assert abs(a - b) < 1e-9


def test_contour_derivative_fallback():
    plain = catalog.AnalyticFunction("exp-no-deriv", np.exp)
    nodes = [0.1, 0.3, 0.5]
    got = sp.divdiff_analytic(plain, nodes, center=0.3, radius=1.5)
    ref = sp.divdiff_recursive(catalog.exp_function(), nodes)
    assert abs(got - ref) < 1e-10


def test_contour_derivative_values():
    deriv = sp.contour_derivative(np.exp, 3, center=0.0, radius=1.0)
    pts = np.array([0.0, 0.2 + 0.1j])
    assert np.abs(deriv(pts) - np.exp(pts)).max() < 1e-12


def test_confluent_limit():
    f = catalog.exp_function()
    spreads = [1e-2, 1e-3, 1e-4]
    target = np.exp(0.3) / 6.0  # f'''(0.3)/3!
    errs = []
    for s in spreads:
        # offsets with zero mean collapse onto 0.3 at second order
        nodes = [0.3 + s, 0.3 - s, 0.3 + 1j * s, 0.3 - 1j * s]
        errs.append(abs(sp.divdiff_analytic(f, nodes) - target))
    assert errs[0] > errs[-1]
    assert errs[-1] <= 1e-8


def test_symmetry_all_permutations():
    f = catalog.monomial_function(3)
    rep = sp.check_symmetry(f, [0, 1, 2])
    assert rep.permutations_checked == 5
    assert rep.max_deviation <= 1e-12


def test_symmetry_two_nodes():
    f = catalog.exp_function()
    rep = sp.check_symmetry(f, [0.2, 0.7])
    assert rep.max_deviation <= 1e-14


def test_symmetry_pole_complex_nodes():
    f = catalog.pole_function(3.0)
    rep = sp.check_symmetry(f, [0, 0.4, 0.8j])
    assert rep.max_deviation <= 1e-12


def test_symmetry_random_catalog(rng):
    funs = [catalog.exp_function(), catalog.monomial_function(4), catalog.pole_function(3.0)]
    for fun in funs:
        for _ in range(30):
            m = rng.integers(2, 6)
            z = rng.uniform(-0.6, 0.6, m) + 1j * rng.uniform(-0.6, 0.6, m)
            d = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(d, np.inf)
            if d.min() < 0.05 * node_spread(z):
                continue
            rep = sp.check_symmetry(fun, z)
            assert rep.max_deviation <= 1e-10

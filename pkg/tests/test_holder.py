import numpy as np
import pytest

import symprod as sp
from symprod.errors import MissingDerivativeFieldError
from symprod.holder import SampledField


def test_constant_field_seminorm():
    fld = SampledField(points=np.linspace(0, 1, 10), values=np.full(10, 2.0 + 1.0j))
    assert sp.holder_seminorm(fld, 0.5) == 0.0


def test_linear_seminorm_two_points():
    fld = SampledField(points=np.array([0.0, 1.0]), values=np.array([0.0, 1.0]))
    assert abs(sp.holder_seminorm(fld, 1.0) - 1.0) < 1e-15


def test_sqrt_seminorm_three_points():
    x = np.array([0.0, 0.25, 1.0])
    fld = SampledField(points=x, values=np.sqrt(x))
    assert abs(sp.holder_seminorm(fld, 0.5) - 1.0) < 1e-15


def test_seminorm_validation():
    fld = SampledField(points=np.array([0.0, 1.0]), values=np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        sp.holder_seminorm(fld, 1.5)
    big = SampledField(points=np.arange(5001, dtype=float), values=np.zeros(5001))
    with pytest.raises(ValueError):
        sp.holder_seminorm(big, 0.5)
    dup = SampledField(points=np.array([0.0, 0.0, 1.0]), values=np.array([0.0, 1.0, 2.0]))
    with pytest.raises(ValueError):
        sp.holder_seminorm(dup, 0.5)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        SampledField(points=np.array([0.0, 1.0]), values=np.array([0.0]))


def test_monotonicity_in_alpha(rng):
    # d**(-alpha) grows with alpha when all distances are below one, so the
    # sup is nondecreasing there, and the other way around above one
    x = rng.random(40) * 0.5
    x = np.unique(x)
    fld = SampledField(points=x, values=np.sin(3 * x))
    vals = [sp.holder_seminorm(fld, a) for a in (0.2, 0.4, 0.6, 0.8, 1.0)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    y = np.array([0.0, 1.5, 3.2, 5.0, 7.77])
    fld2 = SampledField(points=y, values=np.sin(y))
    vals2 = [sp.holder_seminorm(fld2, a) for a in (0.2, 0.5, 1.0)]
    assert all(a >= b for a, b in zip(vals2, vals2[1:]))


def test_scaling(rng):
    x = np.unique(rng.random(60))
    v = np.cos(5 * x) + 1j * x
    f1 = SampledField(points=x, values=v)
    f2 = SampledField(points=x, values=(2.0 - 1.0j) * v)
    c = abs(2.0 - 1.0j)
    assert abs(sp.holder_seminorm(f2, 0.5) - c * sp.holder_seminorm(f1, 0.5)) < 1e-12
    k0 = {(0,): f1}
    k0s = {(0,): f2}
    assert abs(sp.ck_norm(k0s, 0.5) - c * sp.ck_norm(k0, 0.5)) < 1e-12


def test_complex_points_accepted():
    z = np.array([0.0 + 0j, 1.0 + 0j, 1j])
    fld = SampledField(points=z, values=np.array([0.0, 1.0, 2.0]))
    assert fld.coords.shape == (3, 2)
    assert sp.holder_seminorm(fld, 1.0) > 0


def test_estimate_requires_points():
    fld = SampledField(points=np.linspace(0, 1, 50), values=np.zeros(50))
    with pytest.raises(ValueError):
        sp.estimate_exponent(fld)


def test_estimator_calibration():
    for name, truth, fld in sp.calibration_fields():
        fit = sp.estimate_exponent(fld)
        assert abs(fit.alpha_hat - truth) <= 0.07, (name, fit.alpha_hat)
        assert not fit.flagged


def test_estimator_example_bands():
    fits = {name: sp.estimate_exponent(fld) for name, _, fld in sp.calibration_fields()}
    assert 0.45 <= fits["abs_sqrt"].alpha_hat <= 0.55
    assert 0.95 <= fits["linear"].alpha_hat <= 1.05
    assert 0.25 <= fits["lacunar_0.3"].alpha_hat <= 0.38


def test_pair_statistics_csv_columns():
    _, _, fld = sp.calibration_fields()[0]
    bin_lo, bin_hi, counts, maxima = sp.pair_statistics(fld)
    assert len(bin_lo) == len(bin_hi) == len(counts) == len(maxima)
    assert (bin_hi > bin_lo).all()
    assert counts.sum() == 2000 * 1999 // 2


def test_ck_norm_k0():
    x = np.linspace(0.1, 1.0, 30)
    fld = SampledField(points=x, values=2.0 * x)
    got = sp.ck_norm({(0,): fld}, 0.5)
    assert abs(got - (2.0 + sp.holder_seminorm(fld, 0.5))) < 1e-12


def test_ck_norm_constant_any_k():
    x = np.linspace(0.0, 1.0, 20)
    const = SampledField(points=x, values=np.full(20, 3.0 + 4.0j))
    zero = SampledField(points=x, values=np.zeros(20))
    got = sp.ck_norm({(0,): const, (1,): zero}, 0.5)
    assert abs(got - 5.0) < 1e-12


def test_ck_norm_identity_on_disc(rng):
    # f(z) = z on disc samples, k = 1: sup|z| + sup|f'| + 0
    pts = 0.999 * np.exp(1j * rng.uniform(0, 2 * np.pi, 50)) * rng.random(50) ** 0.5
    f0 = SampledField(points=pts, values=pts)
    f10 = SampledField(points=pts, values=np.ones(50))
    f01 = SampledField(points=pts, values=np.zeros(50))
    got = sp.ck_norm({(0, 0): f0, (1, 0): f10, (0, 1): f01}, 0.5)
    assert abs(got - (np.abs(pts).max() + 1.0)) < 1e-12


def test_ck_norm_missing_field():
    x = np.linspace(0, 1, 10)
    fld = SampledField(points=x, values=x)
    with pytest.raises(MissingDerivativeFieldError):
        sp.ck_norm({(1,): fld}, 0.5)

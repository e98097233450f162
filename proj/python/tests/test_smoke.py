"""Smoke tests for the python bindings."""

import math

import pytest

import padenoise as pn


def test_version():
    assert pn.version() == "0.1.0"


def test_series_providers():
    f = pn.binomial_series("-1/9", 1, 6)
    cs = f.coeffs()
    assert cs[0] == 1.0
    assert abs(cs[1] + 1.0 / 9) < 1e-15
    assert f.all_exact()

    b = pn.painleve1_series(3)
    assert b.order == 5
    assert abs(b.coeffs()[1] - 4.0 / 25) < 1e-15
    assert b.coeff_str(3) == "-196/1875"


def test_pade_and_poles():
    f = pn.binomial_series("-1/9", 1, 20)
    p = pn.build_pade(f, 10)
    assert p.exact
    assert p.match_order == 20
    assert pn.taylor_match_residual(p, f) == 0.0
    poles = pn.find_poles(p)
    assert len(poles) == 10
    for pos, _res in poles:
        assert abs(pos.imag) < 1e-12
        assert pos.real <= -1 + 1e-12
    # evaluating inside the disk tracks the function
    v = p.eval(0.5 + 0j)
    assert abs(v - 1.5 ** (-1.0 / 9)) < 1e-10


def test_map_quantities():
    assert abs(pn.mcut_capacity(1) - 0.25) < 1e-14
    assert abs(pn.mcut_capacity(2) - 0.5) < 1e-14
    assert abs(pn.mcut_z_inf(1) - (math.sqrt(2) + 1) ** -2) < 1e-13
    z, angles = pn.find_z_inf(2, 512)
    assert abs(z - (math.sqrt(2) + 1) ** -1) < 1e-12
    assert len(angles) == 2


def test_noise_and_kink():
    f = pn.binomial_series("-1/9", 1, 30)
    noisy, r = pn.add_noise(f, "additive", epsilon="1e-10", seed=3)
    assert len(r) == 31
    assert all(-1 <= v <= 1 for v in r)
    trace, nc = pn.kink_scan(f, "1e-10", seed=3, n_max=15)
    assert nc is not None
    assert 4 <= nc <= 10


def test_theory_predictions():
    assert abs(pn.predict_nc1("1e-40") - 26.1249) < 0.01
    assert abs(pn.predict_ncM("1e-40", 2) - 2 * pn.predict_nc1("1e-40")) < 1e-9
    assert abs(pn.predict_final("1e-20", 2) - pn.predict_ncM("1e-20", 2)) < 1e-9
    assert abs(pn.variance_exact("1", 1) - 16.0 / 3) < 1e-12
    assert pn.variance_exact_str("1", 1) == "16/3"
    r = pn.variance_asymptotic("1", 50) / pn.variance_exact("1", 50)
    assert abs(r - 1) < 0.01


def test_composition():
    f = pn.binomial_series("1", 1, 1)  # 1 + w
    c = pn.compose_with_map(f, 1, 6)
    # 1 + phi(z): coefficients 1, 4k
    cs = c.coeffs()
    assert cs[0] == 1.0
    assert cs[3] == 12.0


def test_errors_raise():
    f = pn.binomial_series("-1/9", 2, 16)
    with pytest.raises(RuntimeError):
        pn.build_pade(f, 7)  # degenerate table on the even series

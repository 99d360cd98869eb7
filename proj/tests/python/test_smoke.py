"""Smoke tests for the python module (built in-tree; PYTHONPATH is set by ctest)."""

import math

import numpy as np
import pytest

import sqz


def test_version():
    assert sqz.__version__


def test_spectrum_values():
    p = sqz.symmetric_setting(10.0, 0.5, 0.0, 0.1, 0.0, 1e-5, 0.0)
    assert sqz.s_op(p, 0.0) == pytest.approx(0.4, rel=1e-13)
    a = sqz.response(p, 0.0)
    assert a == pytest.approx(5.0 + 0.0j)

    p = sqz.symmetric_setting(10.0, 0.5, 10.0, 0.1, 0.0, 1e-5, 0.0)
    assert sqz.s_op(p, 0.0) == pytest.approx(2.0 / 17.307692307692307, rel=1e-12)
    env = sqz.env_summary(p)
    assert env.c_e == pytest.approx(115.5555555, rel=1e-8)
    assert env.eps_plus == pytest.approx(env.eps_minus, rel=1e-12)


def test_variance_and_rates():
    p = sqz.symmetric_setting(10.0, 0.2, 5.0, 0.02, 0.5, 1e-5, 10.0)
    env = sqz.env_summary(p)
    stable, margin = sqz.stability(p, env)
    assert stable and margin > 0
    v = sqz.variance_x1(p, env)
    assert v == pytest.approx(sqz.variance_via_lindblad(sqz.rates(p, env)), rel=1e-10)
    assert sqz.squeezing_db(0.25) == pytest.approx(3.0103, abs=1e-4)


def test_optimizers():
    env_like = sqz.env_summary(sqz.symmetric_setting(10.0, 0.5, 10.0, 0.1, 0.0, 1e-5, 0.0))
    r = sqz.r_opt_exact(env_like, 0.0)
    assert 0.0 < r < 1.0
    assert sqz.variance_at_ropt(env_like, 0.0) < 0.25  # beyond 3 dB

    p5 = sqz.symmetric_setting(10.0, 0.1, 1.0, 0.1, 0.0, 1e-5, 10.0)
    cf = sqz.j_opt_closed_form(p5, 10.0)
    assert cf.c == pytest.approx(400.0, rel=1e-12)
    assert cf.j_opt == pytest.approx(6.6063, abs=2e-4)


def test_langevin_engine():
    p = sqz.symmetric_setting(10.0, 0.2, 5.0, 0.02, 0.5, 1e-5, 10.0)
    res = sqz.langevin_steady(p, include_cr=True, tol=1e-9, integrator_rtol=1e-10)
    assert res.converged
    analytic = sqz.variance_x1(p, sqz.env_summary(p))
    assert res.variance_x1_avg == pytest.approx(analytic, rel=0.01)
    cov = np.asarray(res.cov_avg)
    assert cov.shape == (8, 8)
    assert np.allclose(cov, cov.T)
    assert np.linalg.eigvalsh(cov).min() > 0

    # decoupled fixed point
    p0 = sqz.symmetric_setting(10.0, 0.5, 0.0, 0.0, 0.0, 1e-3, 3.0)
    res0 = sqz.langevin_steady(p0)
    assert res0.variance_x1_avg == pytest.approx(3.5, rel=1e-9)


def test_validation():
    p = sqz.SystemParams()
    p.kappa_c = -1.0
    msgs = sqz.validate(p)
    assert any("kappa_c" in m for m in msgs)


def test_preset(tmp_path):
    files = sqz.run_preset("fig2a", str(tmp_path))
    assert len(files) == 3
    header = open(files[0]).read()
    assert "omega,s_op,re_A,im_A" in header

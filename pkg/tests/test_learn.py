import cmath
import math

import numpy as np
import pytest

from eigenlearn import (
    SchemeId,
    amplification,
    convergence_order,
    learn,
    learn_lmm,
    learn_one_step,
    nyquist_ok,
    phase_error,
    predict_signs,
    richardson,
    rho_kappa,
)
from eigenlearn.errors import PoleError, UnsupportedSchemeError, ValidationError
from eigenlearn.learn import EXTRAP_IM_WINDOW, default_h_list
from eigenlearn.schemes import MULTISTEP_IDS, ONE_STEP_IDS

TWO_PI = 2 * math.pi


def _sign(x):
    return (x > 0) - (x < 0)


def _random_one_step_case(rng, re_max=0.0):
    """(lambda, h) with Re(lambda*h) in [-2, re_max] and Nyquist-valid Im."""
    a = rng.uniform(-2.0, re_max)
    theta = rng.uniform(-3.1, 3.1)
    omega = rng.uniform(0.5, 20.0)
    h = abs(theta) / omega if theta != 0 else 0.01
    return complex(a / h, theta / h), h


# --- Nyquist -----------------------------------------------------------------

def test_nyquist_examples():
    assert nyquist_ok(4j * math.pi, 0.1)
    assert not nyquist_ok(4j * math.pi, 0.25)  # Im(lambda h) = pi, boundary excluded
    assert nyquist_ok(complex(-1, 4 * math.pi), 0.2)


def test_nyquist_requires_positive_h():
    with pytest.raises(ValidationError):
        nyquist_ok(1j, 0.0)


# --- one-step learning -------------------------------------------------------

def test_root_condition_residual():
    rng = np.random.default_rng(2)
    ids = list(ONE_STEP_IDS)
    for i in range(100):
        lam, h = _random_one_step_case(rng)
        sid = ids[i % len(ids)]
        res = learn_one_step(sid, lam, h)
        w = cmath.exp(lam * h)
        assert abs(amplification(sid, res.selected) - w) <= 1e-12 * (1 + abs(w))


def test_learn_zero_eigenvalue_is_exact():
    for sid in ONE_STEP_IDS:
        assert learn_one_step(sid, 0, 0.3).selected == 0
    for sid in MULTISTEP_IDS:
        assert learn_lmm(sid, 0, 0.3).selected == 0


def test_backward_euler_closed_form():
    rng = np.random.default_rng(3)
    for _ in range(50):
        lam, h = _random_one_step_case(rng)
        res = learn_one_step("be", lam, h)
        assert res.selected == 1 - cmath.exp(-lam * h)


def test_trapezoidal_tanh_identity():
    rng = np.random.default_rng(4)
    for _ in range(50):
        lam, h = _random_one_step_case(rng)
        res = learn_one_step("itrap", lam, h)
        rational = 2 * (cmath.exp(lam * h) - 1) / (cmath.exp(lam * h) + 1)
        assert abs(res.selected - 2 * cmath.tanh(lam * h / 2)) <= 1e-12
        assert abs(res.selected - rational) <= 1e-12 * (1 + abs(rational))


def test_trapezoidal_pole():
    with pytest.raises(PoleError):
        learn_one_step("itrap", 1j * math.pi, 1.0)


def test_stability_confinement():
    # Re(lambda) < 0: |p(selected)| = |e^{lambda h}| < 1;  Re = 0: modulus 1
    rng = np.random.default_rng(5)
    ids = list(ONE_STEP_IDS)
    for i in range(100):
        lam, h = _random_one_step_case(rng, re_max=-0.05)
        sid = ids[i % len(ids)]
        res = learn_one_step(sid, lam, h)
        mod = abs(amplification(sid, res.selected))
        assert abs(mod - abs(cmath.exp(lam * h))) <= 1e-12
        assert mod < 1
        assert res.in_stability_region
    for i in range(50):
        theta = rng.uniform(0.05, 3.0)
        sid = ids[i % len(ids)]
        res = learn_one_step(sid, 1j, theta)
        assert abs(abs(amplification(sid, res.selected)) - 1) <= 1e-12


def test_rk2_unique_small_root_under_radius_condition():
    rng = np.random.default_rng(6)
    count = 0
    while count < 100:
        theta = rng.uniform(-0.5, 0.5)
        if abs(theta) < 0.01 or abs(1 - cmath.exp(1j * theta)) > 0.5:
            continue
        count += 1
        res = learn_one_step("rk2", 1j * theta, 1.0)
        assert abs(res.selected) <= 1
        inside = [r for r in res.candidates.roots if abs(r) <= 1]
        assert len(inside) == 1


def test_convection_mode_one_forward_euler():
    # mode-1 eigenvalue of u_t = 2 u_x + 0.01 u_xx at h = 1e-2
    lam = complex(-0.01 * TWO_PI**2, 2 * TWO_PI)
    res = learn_one_step("fe", lam, 1e-2)
    a_hat = res.lambda_hat.imag / TWO_PI
    eps_hat = -res.lambda_hat.real / TWO_PI**2
    assert a_hat == pytest.approx(1.9869, abs=5e-4)
    assert eps_hat == pytest.approx(0.0299, abs=5e-4)


def test_convection_mode_one_backward_euler_sign_flip():
    lam = complex(-0.01 * TWO_PI**2, 2 * TWO_PI)
    res = learn_one_step("be", lam, 1e-2)
    assert res.selected.real > 0
    eps_hat = -res.lambda_hat.real / TWO_PI**2
    assert eps_hat == pytest.approx(-0.0100, abs=5e-4)


# --- multistep learning ------------------------------------------------------

def test_leapfrog_learned_value_is_sinh():
    for theta in (0.1, 0.5, 1.0, 2.0):
        res = learn_lmm("leapfrog", 1j * theta / 0.1, 0.1)
        assert res.selected == pytest.approx(1j * math.sin(theta), abs=1e-14)


def test_lmm_closed_form_matches_rho_over_kappa():
    rng = np.random.default_rng(8)
    for sid in MULTISTEP_IDS:
        lam, h = _random_one_step_case(rng)
        z = cmath.exp(lam * h)
        rho, kap = rho_kappa(sid, z)
        assert learn_lmm(sid, lam, h).selected == rho / kap


def test_ab3_conservative_damping_condition():
    rng = np.random.default_rng(9)
    for _ in range(100):
        theta = rng.uniform(-3.1, 3.1)
        if math.cos(theta) >= 1 / 10:
            continue
        res = learn_lmm("ab3", 1j * theta, 1.0)
        assert res.selected.real < 0


def test_am4_conservative_damping_condition():
    rng = np.random.default_rng(10)
    for _ in range(100):
        theta = rng.uniform(-3.1, 3.1)
        if math.cos(theta) >= 11 / 38:
            continue
        res = learn_lmm("am4", 1j * theta, 1.0)
        assert res.selected.real < 0


def test_am2_equals_trapezoidal_learning():
    rng = np.random.default_rng(12)
    for _ in range(50):
        lam, h = _random_one_step_case(rng)
        a = learn_lmm("am2", lam, h).selected
        b = learn_one_step("itrap", lam, h).selected
        assert abs(a - b) <= 1e-12 * (1 + abs(b))


def test_lmm_pole_error():
    # leapfrog kappa(z) = 2z never vanishes on exp(...); use am2: kappa = (z+1)/2
    with pytest.raises(PoleError):
        learn_lmm("am2", 1j * math.pi, 1.0)


def test_learn_dispatch_and_family_validation():
    assert learn("fe", 1j, 0.1).scheme == SchemeId.FE
    assert learn("ab2", 1j, 0.1).scheme == SchemeId.AB2
    with pytest.raises(ValidationError):
        learn_one_step("ab2", 1j, 0.1)
    with pytest.raises(ValidationError):
        learn_lmm("fe", 1j, 0.1)


# --- sign predictions --------------------------------------------------------

def test_predict_signs_examples():
    assert predict_signs("fe", 2j, 0.3).re_sign == "neg"
    assert predict_signs("itrap", 2j, 0.3).re_sign == "zero"
    assert predict_signs("be", 2j, 0.3).re_sign == "pos"
    p = predict_signs("rk3", 0.15j, 1.0)  # |1 - e^{i 0.15}| < 1/6
    assert p.re_sign == "pos"
    assert p.im_sign_matches_true == "yes"


def test_predict_signs_nyquist_gate():
    p = predict_signs("fe", 4j * math.pi, 0.25)
    assert p.re_sign == "unclassified"
    assert "Nyquist" in p.condition_notes


def test_rk4_always_unclassified():
    assert predict_signs("rk4", 1j, 0.1).re_sign == "unclassified"


def _computed_signs(sid, lam, h):
    res = learn(sid, lam, h)
    sel = res.selected
    re = 0 if abs(sel.real) <= 1e-13 * (1 + abs(sel)) else _sign(sel.real)
    return re, _sign(sel.imag)


def test_sign_predictions_agree_with_computed():
    # classified predictions must match the computed learned signs exactly
    rng = np.random.default_rng(20)
    sign_of = {"neg": -1, "zero": 0, "pos": 1}
    checked = 0
    attempts = 0
    while checked < 10_000 and attempts < 200_000:
        attempts += 1
        sid = list(SchemeId)[attempts % len(SchemeId)]
        conservative = rng.random() < 0.5
        theta = rng.uniform(-3.1, 3.1)
        if abs(theta) < 0.02:
            continue
        a = 0.0 if conservative else rng.uniform(-1.5, -0.01)
        omega = rng.uniform(0.5, 20.0)
        h = abs(theta) / omega
        lam = complex(a / h, theta / h)
        pred = predict_signs(sid, lam, h)
        if pred.re_sign == "unclassified":
            continue
        checked += 1
        re, im = _computed_signs(sid, lam, h)
        assert sign_of[pred.re_sign] == re, (sid, lam, h, pred)
        if pred.im_sign_matches_true == "yes":
            assert im == _sign(lam.imag), (sid, lam, h)
    assert checked == 10_000


# --- phase errors ------------------------------------------------------------

def test_phase_forward_euler_lagging():
    rep = phase_error("fe", 0.0, 0.3)
    assert rep.im_hat == pytest.approx(math.sin(0.3), abs=1e-15)
    assert rep.classification == "lagging"


def test_phase_backward_euler_leading_under_damping():
    rep = phase_error("be", -0.35, 0.3)
    assert rep.im_hat == pytest.approx(math.exp(0.35) * math.sin(0.3), abs=1e-15)
    assert rep.classification == "leading"


def test_phase_leapfrog():
    rep = phase_error("leapfrog", 0.0, 0.3)
    assert rep.im_hat == pytest.approx(math.sin(0.3), abs=1e-15)
    assert rep.classification == "lagging"
    # learned frequency strictly below the true one
    assert abs(rep.im_hat) < 0.3


def test_phase_rk2_consistent_with_learned_root():
    rep = phase_error("rk2", -0.2, 0.4)
    sel = learn_one_step("rk2", complex(-0.2, 0.4), 1.0).selected
    assert rep.im_hat == pytest.approx(sel.imag, abs=1e-12)


def test_phase_trapezoidal_matches_learned_imaginary_part():
    for a, theta in ((-0.35, 0.3), (-0.1, 1.0), (0.0, 0.5)):
        rep = phase_error("itrap", a, theta)
        sel = learn_one_step("itrap", complex(a, theta), 1.0).selected
        assert rep.im_hat == pytest.approx(sel.imag, abs=1e-13)
    assert phase_error("itrap", -0.35, 0.3).classification == "lagging"


def test_phase_unsupported_scheme():
    with pytest.raises(UnsupportedSchemeError):
        phase_error("rk4", 0.0, 0.3)
    with pytest.raises(ValidationError):
        phase_error("fe", 0.0, 3.5)


# --- extrapolation and convergence orders ------------------------------------

def test_richardson_fixed_point():
    lam = 0.3 - 0.7j
    assert richardson(lam, lam) == lam


def test_richardson_order_four():
    errs = []
    hs = [2.0**-e for e in range(3, 9)]
    for h in hs:
        lh = learn_one_step("itrap", 2j, h).lambda_hat
        l2h = learn_one_step("itrap", 2j, 2 * h).lambda_hat
        errs.append(abs(richardson(lh, l2h) - 2j))
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.2)


def test_richardson_conservative_real_part_exact():
    for h in (0.1, 0.2, 0.5):
        lh = learn_one_step("itrap", 2j, h).lambda_hat
        l2h = learn_one_step("itrap", 2j, 2 * h).lambda_hat
        ex = richardson(lh, l2h)
        assert abs(ex.real) <= 1e-13
        assert _sign(ex.imag) == 1
        assert abs(2j * h) < EXTRAP_IM_WINDOW


def test_convergence_orders():
    assert convergence_order("fe", -0.5 + 2j) == pytest.approx(1.0, abs=0.1)
    assert convergence_order("itrap", -0.5 + 2j) == pytest.approx(2.0, abs=0.1)
    assert convergence_order("leapfrog", -0.5 + 2j) == pytest.approx(2.0, abs=0.1)


def test_convergence_order_validation():
    with pytest.raises(ValidationError):
        convergence_order("fe", 1j, [0.1, 0.2, 0.05, 0.01])  # not decreasing
    with pytest.raises(ValidationError):
        convergence_order("fe", 1j, [0.1, 0.05])  # too short
    with pytest.raises(ValidationError):
        convergence_order("fe", 100j, [0.1, 0.05, 0.025, 0.0125])  # Nyquist


def test_default_h_list_scales_with_lambda():
    hs = default_h_list(4j)
    assert len(hs) == 6
    assert hs[0] == pytest.approx(2.0**-4 / 4)

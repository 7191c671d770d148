import cmath
import math

import numpy as np
import pytest

from eigenlearn import (
    MultistepScheme,
    OneStepScheme,
    SchemeId,
    amplification,
    custom_lmm,
    lookup,
    rho_kappa,
)
from eigenlearn.errors import PoleError, SchemeLookupError, ValidationError
from eigenlearn.schemes import MULTISTEP_IDS, ONE_STEP_IDS, Polynomial, characteristic_poly


def test_registry_covers_all_ids():
    for sid in SchemeId:
        s = lookup(sid)
        assert s.name == sid.value
    assert len(ONE_STEP_IDS) == 7
    assert len(MULTISTEP_IDS) == 8


def test_lookup_fe():
    fe = lookup("fe")
    assert fe.p_num.coeffs == (1 + 0j, 1 + 0j)
    assert fe.p_den.coeffs == (1 + 0j,)
    assert fe.order == 1 and not fe.implicit


def test_lookup_unknown_raises():
    with pytest.raises(SchemeLookupError):
        lookup("xx")


def test_adams_moulton_two_step_coefficients():
    am3 = lookup(SchemeId.AM3)
    assert am3.k == 2
    assert am3.beta == pytest.approx((-1 / 12, 2 / 3, 5 / 12))
    assert am3.alpha == (0.0, -1.0, 1.0)


def test_leapfrog_coefficients_give_central_difference():
    lf = lookup(SchemeId.LEAPFROG)
    assert lf.alpha == (-1.0, 0.0, 1.0)
    # z_{n+2} = z_n + 2*xi*z_{n+1} requires kappa(z) = 2z
    rho, kap = rho_kappa(lf, 1.0)
    assert rho == 0
    assert kap == 2


def test_monic_and_zero_sum_invariants():
    for sid in MULTISTEP_IDS:
        s = lookup(sid)
        assert s.alpha[-1] == 1.0
        assert abs(sum(s.alpha)) < 1e-12
        # first-order consistency: kappa(1) = rho'(1)
        dr = sum(j * a for j, a in enumerate(s.alpha))
        assert sum(s.beta) == pytest.approx(dr, abs=1e-12)


def test_amplification_identity_at_zero():
    for sid in ONE_STEP_IDS:
        assert amplification(sid, 0) == pytest.approx(1.0)


def test_amplification_trapezoidal_imaginary_axis():
    val = amplification("itrap", 2j)
    assert val == pytest.approx(1j)
    assert abs(val) == pytest.approx(1.0)


def test_amplification_rk4_real_axis_endpoint():
    # independent bisection oracle for |p(x)| = 1 on the negative real axis
    def f(x):
        return abs(amplification("rk4", x)) - 1.0

    lo, hi = -3.0, -2.5
    assert f(lo) > 0 > f(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    endpoint = 0.5 * (lo + hi)
    assert endpoint == pytest.approx(-2.785, abs=2e-3)
    assert abs(amplification("rk4", endpoint)) == pytest.approx(1.0, abs=1e-12)


def test_amplification_poles():
    with pytest.raises(PoleError):
        amplification("be", 1.0)
    with pytest.raises(PoleError):
        amplification("itrap", 2.0)


def test_rho_kappa_consistency_at_one():
    rho, kap = rho_kappa("ab2", 1.0)
    assert rho == 0
    assert kap == pytest.approx(1.0)


def test_rho_kappa_bdf2_hand_value():
    # hand evaluation: rho(2) = 1/3 - 8/3 + 4 = 5/3, kappa(2) = (2/3)*4 = 8/3
    rho, kap = rho_kappa("bdf2", 2.0)
    assert rho == pytest.approx(5 / 3)
    assert kap == pytest.approx(8 / 3)


def test_one_step_order_of_accuracy():
    # p(xi) = e^xi + O(xi^{order+1}) on a small circle
    for sid in ONE_STEP_IDS:
        s = lookup(sid)
        for theta in np.linspace(0, 2 * math.pi, 17):
            xi = 1e-2 * cmath.exp(1j * theta)
            ratio = abs(amplification(s, xi) - cmath.exp(xi)) / abs(xi) ** (s.order + 1)
            assert ratio < 2.0, (s.name, theta, ratio)


@pytest.mark.parametrize("sid", MULTISTEP_IDS)
def test_lmm_order_of_accuracy(sid):
    # rho(e^h)/kappa(e^h) = h + O(h^{q+1}) with q the scheme order
    s = lookup(sid)
    hs = [2.0**-e for e in range(2, 8)] if s.order >= 4 else [2.0**-e for e in range(4, 11)]
    errs = []
    for h in hs:
        rho, kap = rho_kappa(s, cmath.exp(h))
        errs.append(abs(rho / kap - h))
    slope = np.polyfit(np.log(hs), np.log(errs), 1)[0]
    assert slope == pytest.approx(s.order + 1, abs=0.25), (s.name, slope)


def test_trapezoidal_and_midpoint_coincide():
    rng = np.random.default_rng(11)
    for _ in range(100):
        xi = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(xi - 2) < 1e-6:
            continue
        assert amplification("itrap", xi) == amplification("imid", xi)


def test_characteristic_poly_matches_rho_kappa():
    rng = np.random.default_rng(5)
    for sid in MULTISTEP_IDS:
        xi = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        pi = characteristic_poly(sid, xi)
        rho, kap = rho_kappa(sid, z)
        assert pi(z) == pytest.approx(rho - xi * kap, abs=1e-12)


def test_custom_lmm_roundtrip():
    cfg = {"k": 2, "alpha": [0, -1, 1], "beta": [-0.5, 1.5, 0]}
    s = custom_lmm(cfg)
    assert isinstance(s, MultistepScheme)
    ref = lookup("ab2")
    z = 0.3 + 0.7j
    assert rho_kappa(s, z) == rho_kappa(ref, z)
    assert s.order == ref.order


@pytest.mark.parametrize(
    "cfg",
    [
        {"k": 2, "alpha": [0, -1, 2], "beta": [0, 1, 0]},  # not monic
        {"k": 2, "alpha": [0.5, -1, 1], "beta": [0, 1, 0]},  # alpha sum != 0
        {"k": 2, "alpha": [0, 1], "beta": [0, 1, 0]},  # wrong length
        {"k": 0, "alpha": [1], "beta": [1]},
    ],
)
def test_custom_lmm_validation(cfg):
    with pytest.raises(ValidationError):
        custom_lmm(cfg)


def test_polynomial_trims_trailing_zeros():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert p(2.0) == 5
    assert Polynomial([0, 0]).coeffs == (0j,)


def test_validation_wrong_family():
    with pytest.raises(ValidationError):
        amplification("ab2", 0.1)
    with pytest.raises(ValidationError):
        rho_kappa("fe", 1.0)

"""Closed-form learned eigenvalues and their qualitative classification.

Fitting a trajectory of ``z' = lambda*z`` under a one-step method with
step ``h`` drives the fitted value ``xi = lambda_hat*h`` onto a root of
``p(xi) = e^{lambda*h}``; under a multistep method the unique exact-fit
value is ``rho(e^{lambda*h}) / kappa(e^{lambda*h})``.  This module
computes those values, selects among multiple roots, predicts the signs
of the learned real/imaginary parts, reports phase errors, and provides
step-halving extrapolation plus empirical convergence orders.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import polyroot
from .errors import PoleError, UnsupportedSchemeError, ValidationError
from .polyroot import RootSet
from .schemes import (
    MultistepScheme,
    OneStepScheme,
    Polynomial,
    SchemeId,
    amplification,
    characteristic_poly,
    lookup,
    rho_kappa,
)

_TIE_TOL = 1e-9
_ZERO_RE_TOL = 1e-14

SIGN_NEG = "neg"
SIGN_ZERO = "zero"
SIGN_POS = "pos"
UNCLASSIFIED = "unclassified"

# Largest admissible |Im(lambda*h)| for sign-preserving step-halving
# extrapolation of the trapezoidal closed form: 4*atan(sqrt((11-4*sqrt(7))/3)).
EXTRAP_IM_WINDOW = 4.0 * math.atan(math.sqrt((11.0 - 4.0 * math.sqrt(7.0)) / 3.0))

# Radius condition for the unique small root in third-order explicit
# learning with decaying data: positive solution of (6-d^2)/(2d) = sqrt(12.5).
_RK3_DELTA = math.sqrt(18.5) - math.sqrt(12.5)


@dataclass(frozen=True)
class LearnedEigen:
    scheme: SchemeId
    lambda_true: complex
    h: float
    candidates: RootSet
    selected: complex  # value of lambda_hat * h
    lambda_hat: complex
    in_stability_region: bool
    nyquist_ok: bool


@dataclass(frozen=True)
class SignPrediction:
    re_sign: str
    im_sign_matches_true: str
    condition_notes: str


@dataclass(frozen=True)
class PhaseReport:
    a: float
    theta: float
    im_hat: float
    classification: str  # leading | lagging | exact


def nyquist_ok(lam: complex, h: float) -> bool:
    """True iff -pi < Im(lambda*h) < pi (at least two samples per period)."""
    if h <= 0:
        raise ValidationError("step size h must be positive")
    return -math.pi < (lam * h).imag < math.pi


def _select_root(roots: Sequence[complex], lam: complex) -> complex:
    """Minimal-modulus candidate; near-ties resolved by matching Im sign."""
    best = min(roots, key=abs)
    ties = [r for r in roots if abs(r) - abs(best) <= _TIE_TOL]
    if len(ties) > 1:
        want = _sign(lam.imag)
        for r in sorted(ties, key=abs):
            if _sign(r.imag) == want:
                return r
    return best


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def learn_one_step(scheme_id, lam: complex, h: float) -> LearnedEigen:
    """Learned eigenvalue of a one-step method fitting data from z' = lam*z."""
    if h <= 0:
        raise ValidationError("step size h must be positive")
    s = lookup(scheme_id)
    if not isinstance(s, OneStepScheme):
        raise ValidationError(f"{s.name} is not a one-step scheme")
    lam = complex(lam)
    w = cmath.exp(lam * h)

    if s.name == "be":
        sel = 1 - cmath.exp(-lam * h)
        candidates = _single_root_set(s, sel, w)
    elif s.name in ("itrap", "imid"):
        if abs(w + 1) <= 1e-12 * (1 + abs(w)):
            raise PoleError("trapezoidal learning has a pole at exp(lambda*h) = -1")
        sel = 2 * cmath.tanh(lam * h / 2)
        candidates = _single_root_set(s, sel, w)
    else:
        shifted = [c for c in s.p_num.coeffs]
        shifted[0] -= w
        candidates = polyroot.roots(Polynomial(shifted))
        sel = _select_root(candidates.roots, lam)

    modulus = abs(amplification(s, sel))
    return LearnedEigen(
        scheme=_as_id(scheme_id),
        lambda_true=lam,
        h=h,
        candidates=candidates,
        selected=sel,
        lambda_hat=sel / h,
        in_stability_region=modulus <= 1 + 1e-12,
        nyquist_ok=nyquist_ok(lam, h),
    )


def learn_lmm(scheme_id, lam: complex, h: float) -> LearnedEigen:
    """Closed-form learned eigenvalue of a multistep method (sampling step = h)."""
    if h <= 0:
        raise ValidationError("step size h must be positive")
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    lam = complex(lam)
    z = cmath.exp(lam * h)
    rho, kap = rho_kappa(s, z)
    if abs(kap) <= 1e-14 * (1 + abs(z)) ** s.k:
        raise PoleError(f"kappa(exp(lambda*h)) vanishes for {s.name}")
    sel = rho / kap
    pi = characteristic_poly(s, sel)
    if pi.degree >= 1 and pi.coeffs[-1] != 0:
        max_mod = max(abs(r) for r in polyroot.roots(pi).roots)
        inside = max_mod <= 1 + 1e-12 and pi.degree == s.k
    else:
        inside = False
    return LearnedEigen(
        scheme=_as_id(scheme_id),
        lambda_true=lam,
        h=h,
        candidates=RootSet((), (), ()),
        selected=sel,
        lambda_hat=sel / h,
        in_stability_region=inside,
        nyquist_ok=nyquist_ok(lam, h),
    )


def learn(scheme_id, lam: complex, h: float) -> LearnedEigen:
    """Dispatch to the one-step or multistep learner by registry type."""
    s = lookup(scheme_id)
    if isinstance(s, OneStepScheme):
        return learn_one_step(scheme_id, lam, h)
    return learn_lmm(scheme_id, lam, h)


def _single_root_set(s: OneStepScheme, sel: complex, w: complex) -> RootSet:
    res = abs(amplification(s, sel) - w)
    return RootSet((sel,), (res,), (False,))


def _as_id(scheme_id) -> SchemeId:
    if isinstance(scheme_id, SchemeId):
        return scheme_id
    s = lookup(scheme_id)
    return SchemeId(s.name) if s.name in SchemeId._value2member_map_ else scheme_id


def predict_signs(scheme_id, lam: complex, h: float) -> SignPrediction:
    """Sign of Re(lambda_hat) and Im agreement, where the theory settles them.

    Classifications are emitted only under each result's hypotheses
    (conservative or dissipative data, scheme-specific radius conditions);
    everything else comes back unclassified with the failed condition noted.
    """
    lam = complex(lam)
    if not nyquist_ok(lam, h):
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "Nyquist condition violated")
    s = lookup(scheme_id)
    name = s.name
    lh = lam * h
    a, theta = lh.real, lh.imag
    w = cmath.exp(lh)
    conservative = abs(a) <= _ZERO_RE_TOL
    dissipative = a < -_ZERO_RE_TOL

    if name == "fe":
        return SignPrediction(SIGN_NEG, "yes", "first-order explicit: always damping")
    if name == "rk2":
        if abs(1 - w) <= 0.5:
            return SignPrediction(SIGN_NEG, "yes", "|1 - exp(lambda h)| <= 1/2 holds")
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "|1 - exp(lambda h)| <= 1/2 fails")
    if name == "rk3":
        if conservative:
            if abs(1 - w) <= 1 / 6:
                return SignPrediction(SIGN_POS, "yes", "|1 - exp(lambda h)| <= 1/6 holds")
            return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "|1 - exp(lambda h)| <= 1/6 fails")
        if dissipative:
            if 6 * abs(1 - w) <= _RK3_DELTA**2 and abs(w) <= math.sqrt(8 / 9):
                return SignPrediction(
                    SIGN_NEG,
                    "yes",
                    f"6|1-exp(lambda h)| <= delta^2 with delta={_RK3_DELTA:.6f} "
                    "and |exp(lambda h)| <= sqrt(8/9) hold",
                )
            return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "third-order radius condition fails")
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "expansive data not covered")
    if name == "rk4":
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "no sign result for fourth order")
    if name == "be":
        if conservative:
            return SignPrediction(SIGN_POS, "yes", "implicit first order: anti-damping on oscillatory data")
        if dissipative:
            if (1 - cmath.exp(-lh)).real < 0:
                return SignPrediction(SIGN_NEG, "yes", "Re(1 - exp(-lambda h)) < 0 holds")
            return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "conditionally dissipative: Re(1 - exp(-lambda h)) < 0 fails")
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "expansive data not covered")
    if name in ("itrap", "am2"):
        if conservative:
            return SignPrediction(SIGN_ZERO, "yes", "trapezoidal preserves conservative dynamics")
        if dissipative:
            return SignPrediction(SIGN_NEG, "yes", "trapezoidal preserves damping")
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "expansive data not covered")
    if name == "leapfrog":
        value = math.sinh(a) * math.cos(theta)
        re = SIGN_ZERO if value == 0 else (SIGN_NEG if value < 0 else SIGN_POS)
        return SignPrediction(re, "yes", "Re(lambda_hat h) = sinh(a) cos(theta)")
    if name == "imid":
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "not covered directly; trapezoidal analysis applies via linear equivalence")

    if name in ("ab2", "ab3", "ab4", "am3", "am4"):
        if not conservative:
            if name == "ab2":
                note = "damped data: learned sign varies (may flip to growth for strong decay)"
            else:
                note = "only purely oscillatory data covered"
            return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, note)
        if theta == 0:
            return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "trivial zero eigenvalue")
        if name == "ab2":
            return SignPrediction(SIGN_NEG, UNCLASSIFIED, "oscillatory data: always damping")
        if name == "am3":
            return SignPrediction(SIGN_NEG, "yes", "oscillatory data: always damping")
        thresholds = {"ab3": 1 / 10, "ab4": -4 / 9, "am4": 11 / 38}
        thr = thresholds[name]
        if math.cos(theta) < thr:
            return SignPrediction(SIGN_NEG, "yes", f"cos(Im(lambda h)) < {thr:.6g} holds")
        return SignPrediction(SIGN_POS, "yes", f"cos(Im(lambda h)) >= {thr:.6g}: Re(lambda_hat) >= 0")

    if name == "bdf2":
        return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, "sign varies over the unit circle (can be positive)")
    return SignPrediction(UNCLASSIFIED, UNCLASSIFIED, f"no sign result for {name}")


_PHASE_SCHEMES = ("fe", "be", "rk2", "itrap", "leapfrog")


def phase_error(scheme_id, a: float, theta: float) -> PhaseReport:
    """Imaginary part of the learned lambda_hat*h for data exp(a + i*theta).

    Classified as leading/lagging by comparing |Im(lambda_hat h)| with the
    true per-step phase |theta|; equality within 1e-14 reports "exact".
    """
    if not -math.pi < theta < math.pi:
        raise ValidationError("theta must lie in (-pi, pi)")
    s = lookup(scheme_id)
    name = s.name
    if name not in _PHASE_SCHEMES:
        raise UnsupportedSchemeError(f"phase error table does not cover {name}")
    if name == "fe":
        im_hat = math.exp(a) * math.sin(theta)
    elif name == "be":
        im_hat = math.exp(-a) * math.sin(theta)
    elif name == "rk2":
        sel = learn_one_step(SchemeId.RK2, complex(a, theta), 1.0).selected
        im_hat = math.exp(a) * math.sin(theta) / (1 + sel.real)
    elif name == "itrap":
        # Im of 2*tanh((a+i*theta)/2); equals 4 e^a sin(theta) / |e^{a+i theta}+1|^2
        im_hat = 2 * math.sin(theta) / (math.cosh(a) + math.cos(theta))
    else:  # leapfrog
        im_hat = math.cosh(a) * math.sin(theta)

    gap = abs(im_hat) - abs(theta)
    if abs(gap) <= 1e-14:
        cls = "exact"
    elif gap > 0:
        cls = "leading"
    else:
        cls = "lagging"
    return PhaseReport(a=a, theta=theta, im_hat=im_hat, classification=cls)


def richardson(lam_h: complex, lam_2h: complex) -> complex:
    """Step-halving extrapolation (4*x_h - x_2h)/3, cancelling the h^2 error."""
    return (4 * lam_h - lam_2h) / 3


def extrapolation_im_window_ok(lam: complex, h: float) -> bool:
    """True iff Im(lambda*h) lies in the sign-preserving extrapolation window."""
    return abs((lam * h).imag) < EXTRAP_IM_WINDOW


def convergence_order(scheme_id, lam: complex, h_list: Sequence[float] | None = None) -> float:
    """Least-squares slope of log|lambda_hat(h) - lambda| against log h."""
    lam = complex(lam)
    if h_list is None:
        h_list = default_h_list(lam)
    h_list = list(h_list)
    if len(h_list) < 4:
        raise ValidationError("need at least 4 step sizes")
    if any(h2 >= h1 for h1, h2 in zip(h_list, h_list[1:])):
        raise ValidationError("h_list must be strictly decreasing")
    for h in h_list:
        if not nyquist_ok(lam, h):
            raise ValidationError(f"h={h} violates the Nyquist condition")
    errs = [abs(learn(scheme_id, lam, h).lambda_hat - lam) for h in h_list]
    slope, _ = np.polyfit(np.log(h_list), np.log(errs), 1)
    return float(slope)


def default_h_list(lam: complex) -> list:
    scale = abs(lam) or 1.0
    return [2.0**-i / scale for i in range(4, 10)]

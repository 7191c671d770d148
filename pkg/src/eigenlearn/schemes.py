"""Integrator registry: amplification functions and multistep coefficient tables.

One-step methods are stored as a rational amplification function
``p(xi) = p_num(xi) / p_den(xi)`` with ``xi = lambda*h``; a single step
multiplies the solution of ``z' = lambda*z`` by ``p(xi)``.  Multistep
methods are stored as monic coefficient vectors ``(alpha, beta)`` of the
recurrence ``sum_j alpha_j z_{n+j} = xi * sum_j beta_j z_{n+j}``, whose
generating polynomials are ``rho(z) = sum alpha_j z^j`` and
``kappa(z) = sum beta_j z^j`` (ascending powers throughout).

All descriptors are immutable; every operation here is pure.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import Sequence, Union

from .errors import DegenerateError, PoleError, SchemeLookupError, ValidationError


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial with coefficients in ascending degree order."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[complex]):
        cs = [complex(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0j]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial([0j])
        return Polynomial([j * c for j, c in enumerate(self.coeffs)][1:])


@dataclass(frozen=True)
class OneStepScheme:
    name: str
    p_num: Polynomial
    p_den: Polynomial
    order: int
    implicit: bool


@dataclass(frozen=True)
class MultistepScheme:
    name: str
    k: int
    alpha: tuple
    beta: tuple
    order: int


class SchemeId(str, Enum):
    """CLI-facing identifiers; the value doubles as the command-line token."""

    FE = "fe"
    BE = "be"
    RK2 = "rk2"
    RK3 = "rk3"
    RK4 = "rk4"
    ITRAP = "itrap"
    IMID = "imid"
    AB2 = "ab2"
    AB3 = "ab3"
    AB4 = "ab4"
    AM2 = "am2"
    AM3 = "am3"
    AM4 = "am4"
    BDF2 = "bdf2"
    LEAPFROG = "leapfrog"


def _truncated_exp(order: int) -> Polynomial:
    return Polynomial([1 / factorial(j) for j in range(order + 1)])


_TRAP = OneStepScheme(
    "itrap", Polynomial([1, 0.5]), Polynomial([1, -0.5]), order=2, implicit=True
)

# The implicit midpoint rule shares the trapezoidal amplification function on
# linear problems, so both ids resolve to the same rational function.
_REGISTRY = {
    SchemeId.FE: OneStepScheme("fe", Polynomial([1, 1]), Polynomial([1]), 1, False),
    SchemeId.BE: OneStepScheme("be", Polynomial([1]), Polynomial([1, -1]), 1, True),
    SchemeId.RK2: OneStepScheme("rk2", _truncated_exp(2), Polynomial([1]), 2, False),
    SchemeId.RK3: OneStepScheme("rk3", _truncated_exp(3), Polynomial([1]), 3, False),
    SchemeId.RK4: OneStepScheme("rk4", _truncated_exp(4), Polynomial([1]), 4, False),
    SchemeId.ITRAP: _TRAP,
    SchemeId.IMID: OneStepScheme("imid", _TRAP.p_num, _TRAP.p_den, 2, True),
    SchemeId.AB2: MultistepScheme("ab2", 2, (0.0, -1.0, 1.0), (-1 / 2, 3 / 2, 0.0), 2),
    SchemeId.AB3: MultistepScheme(
        "ab3", 3, (0.0, 0.0, -1.0, 1.0), (5 / 12, -16 / 12, 23 / 12, 0.0), 3
    ),
    SchemeId.AB4: MultistepScheme(
        "ab4", 4, (0.0, 0.0, 0.0, -1.0, 1.0), (-9 / 24, 37 / 24, -59 / 24, 55 / 24, 0.0), 4
    ),
    SchemeId.AM2: MultistepScheme("am2", 1, (-1.0, 1.0), (1 / 2, 1 / 2), 2),
    SchemeId.AM3: MultistepScheme("am3", 2, (0.0, -1.0, 1.0), (-1 / 12, 8 / 12, 5 / 12), 3),
    SchemeId.AM4: MultistepScheme(
        "am4",
        4,
        (0.0, 0.0, 0.0, -1.0, 1.0),
        (-19 / 720, 106 / 720, -264 / 720, 646 / 720, 251 / 720),
        5,
    ),
    SchemeId.BDF2: MultistepScheme("bdf2", 2, (1 / 3, -4 / 3, 1.0), (0.0, 0.0, 2 / 3), 2),
    SchemeId.LEAPFROG: MultistepScheme("leapfrog", 2, (-1.0, 0.0, 1.0), (0.0, 2.0, 0.0), 2),
}

ONE_STEP_IDS = tuple(i for i, s in _REGISTRY.items() if isinstance(s, OneStepScheme))
MULTISTEP_IDS = tuple(i for i, s in _REGISTRY.items() if isinstance(s, MultistepScheme))

Scheme = Union[OneStepScheme, MultistepScheme]


def lookup(scheme_id) -> Scheme:
    """Return the canonical descriptor for a registry identifier or token."""
    if isinstance(scheme_id, (OneStepScheme, MultistepScheme)):
        return scheme_id
    if isinstance(scheme_id, str) and not isinstance(scheme_id, SchemeId):
        try:
            scheme_id = SchemeId(scheme_id.lower())
        except ValueError:
            raise SchemeLookupError(f"unknown scheme identifier: {scheme_id!r}") from None
    try:
        return _REGISTRY[scheme_id]
    except KeyError:
        raise SchemeLookupError(f"unknown scheme identifier: {scheme_id!r}") from None


def is_one_step(scheme_id) -> bool:
    return isinstance(lookup(scheme_id), OneStepScheme)


def amplification(scheme, xi: complex) -> complex:
    """Evaluate p(xi) = p_num(xi)/p_den(xi) for a one-step scheme."""
    s = lookup(scheme)
    if not isinstance(s, OneStepScheme):
        raise ValidationError(f"{s.name} is not a one-step scheme")
    den = s.p_den(xi)
    if den == 0:
        raise PoleError(f"amplification of {s.name} has a pole at xi={xi}")
    return s.p_num(xi) / den


def rho_kappa(scheme, z: complex):
    """Evaluate the generating polynomials (rho(z), kappa(z)) of a multistep scheme."""
    s = lookup(scheme)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    rho = 0j
    kap = 0j
    for a, b in zip(reversed(s.alpha), reversed(s.beta)):
        rho = rho * z + a
        kap = kap * z + b
    return rho, kap


def characteristic_poly(scheme, xi: complex) -> Polynomial:
    """Coefficients of pi_xi(z) = rho(z) - xi*kappa(z), ascending powers."""
    s = lookup(scheme)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    return Polynomial([a - xi * b for a, b in zip(s.alpha, s.beta)])


def custom_lmm(config: dict) -> MultistepScheme:
    """Build a user-supplied multistep scheme from ``{"k":, "alpha":, "beta":}``.

    Validates the monic normalization (alpha_k = 1) and zero-order
    consistency (sum of alpha_j = 0).  The order field is estimated from the
    expansion of rho(e^h)/kappa(e^h) - h and is informational only.
    """
    try:
        k = int(config["k"])
        alpha = tuple(float(a) for a in config["alpha"])
        beta = tuple(float(b) for b in config["beta"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed custom LMM config: {exc}") from exc
    if k < 1:
        raise ValidationError("custom LMM needs k >= 1")
    if len(alpha) != k + 1 or len(beta) != k + 1:
        raise ValidationError("alpha and beta must have length k + 1")
    if alpha[-1] != 1.0:
        raise ValidationError("custom LMM must be monic (alpha_k = 1)")
    if abs(sum(alpha)) > 1e-12:
        raise ValidationError("inconsistent custom LMM (sum of alpha_j must vanish)")
    scheme = MultistepScheme("custom", k, alpha, beta, order=_estimate_order(alpha, beta, k))
    return scheme


def load_custom_lmm(path: str) -> MultistepScheme:
    with open(path, "r", encoding="utf-8") as fh:
        return custom_lmm(json.load(fh))


def _estimate_order(alpha, beta, k) -> int:
    # order q is the largest exponent with rho(e^h)/kappa(e^h) = h + O(h^{q+1})
    for q in range(1, 9):
        h = 1e-2
        s = MultistepScheme("probe", k, tuple(alpha), tuple(beta), 0)
        rho, kap = rho_kappa(s, cmath.exp(h))
        if kap == 0 or abs(rho / kap - h) > 10 * h ** (q + 1):
            return max(q - 1, 0)
    return 8

"""Stability regions, boundary loci, and characteristic-root classification.

One-step membership is the closed-form |p(xi)| <= 1 (with the backward
Euler convention |1 - xi| >= 1 for its unbounded region); multistep
membership applies the strict root condition to rho(z) - xi*kappa(z).
Grid maps are pure per-cell functions, so scans can be partitioned
arbitrarily without changing the output.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import polyroot
from .errors import PoleError, UnsupportedSchemeError, ValidationError
from .schemes import MultistepScheme, OneStepScheme, amplification, characteristic_poly, lookup, rho_kappa

_CIRCLE_TOL = 1e-12

DEFAULT_ONE_STEP_WINDOW = (-4.0, 1.0, -3.0, 3.0)
DEFAULT_LMM_ATHETA_WINDOW = (-3.0, 0.0, -math.pi, math.pi)
DEFAULT_GRID = 401


class RootCode(Enum):
    ALL_INSIDE = "all_inside"
    COEXIST = "coexist"
    ALL_OUTSIDE = "all_outside"
    REPEATED = "repeated"
    ON_CIRCLE = "on_circle"


@dataclass(frozen=True)
class RootClassification:
    code: RootCode
    max_modulus: float
    min_modulus: float


@dataclass(frozen=True)
class RegionMap:
    re_range: tuple
    im_range: tuple
    nx: int
    ny: int
    cells: np.ndarray  # shape (nx, ny); modulus, membership, or code values

    def axes(self):
        re = np.linspace(self.re_range[0], self.re_range[1], self.nx)
        im = np.linspace(self.im_range[0], self.im_range[1], self.ny)
        return re, im


def one_step_modulus(scheme_id, xi: complex) -> float:
    """|p(xi)|; membership in the stability region is value <= 1."""
    return abs(amplification(scheme_id, xi))


def one_step_member(scheme_id, xi: complex) -> bool:
    s = lookup(scheme_id)
    if s.name == "be":
        return abs(1 - xi) >= 1
    try:
        return one_step_modulus(s, xi) <= 1
    except PoleError:
        return False


def lmm_membership(scheme_id, xi: complex) -> RootClassification:
    """Classify the roots of rho(z) - xi*kappa(z) against the unit circle."""
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    pi = characteristic_poly(s, complex(xi))
    degree_drop = s.k - pi.degree
    if pi.degree < 1:
        # everything escaped to infinity: treat as outside
        return RootClassification(RootCode.ALL_OUTSIDE, math.inf, math.inf)
    rs = polyroot.roots(pi)
    mods = [abs(r) for r in rs.roots]
    max_mod = max(mods) if degree_drop == 0 else math.inf
    min_mod = min(mods)
    if any(rs.multiplicity_flags):
        code = RootCode.REPEATED
    elif any(abs(m - 1) <= _CIRCLE_TOL for m in mods):
        code = RootCode.ON_CIRCLE
    elif all(m < 1 - _CIRCLE_TOL for m in mods) and degree_drop == 0:
        code = RootCode.ALL_INSIDE
    elif all(m > 1 + _CIRCLE_TOL for m in mods) or (degree_drop > 0 and min_mod > 1 - _CIRCLE_TOL):
        code = RootCode.ALL_OUTSIDE
    else:
        code = RootCode.COEXIST
    return RootClassification(code, max_mod, min_mod)


def boundary_locus(scheme_id, n_theta: int):
    """Candidate stability-boundary points xi(theta) = rho(e^{i theta})/kappa(e^{i theta}).

    theta is sampled uniformly on [0, 2*pi); samples where kappa vanishes
    are omitted and their theta values returned separately.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    if n_theta < 1:
        raise ValidationError("need at least one sample")
    points = []
    omitted = []
    for j in range(n_theta):
        theta = 2 * math.pi * j / n_theta
        z = cmath.exp(1j * theta)
        rho, kap = rho_kappa(s, z)
        if abs(kap) <= 1e-14 * max(1.0, abs(rho)):
            omitted.append(theta)
            continue
        points.append(rho / kap)
    return points, omitted


def one_step_region_map(scheme_id, window=None, nx=DEFAULT_GRID, ny=DEFAULT_GRID) -> RegionMap:
    """Grid of |p(xi)| over a window; pole cells hold +inf."""
    s = lookup(scheme_id)
    if not isinstance(s, OneStepScheme):
        raise ValidationError(f"{s.name} is not a one-step scheme")
    re0, re1, im0, im1 = window or DEFAULT_ONE_STEP_WINDOW
    re = np.linspace(re0, re1, nx)
    im = np.linspace(im0, im1, ny)
    xi = re[:, None] + 1j * im[None, :]
    with np.errstate(all="ignore"):
        num = _poly_grid(s.p_num.coeffs, xi)
        den = _poly_grid(s.p_den.coeffs, xi)
        vals = np.abs(num / den)
    vals = np.where(np.isfinite(vals), vals, np.inf)
    return RegionMap((re0, re1), (im0, im1), nx, ny, vals)


def classification_map(scheme_id, window=None, nx=DEFAULT_GRID, ny=DEFAULT_GRID) -> RegionMap:
    """Per-cell RootClassification codes over a complex-plane window.

    Cell values index into list(RootCode).  Two-step schemes use a
    vectorized quadratic solve; higher step counts fall back to the
    per-cell root finder.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    re0, re1, im0, im1 = window or DEFAULT_ONE_STEP_WINDOW
    re = np.linspace(re0, re1, nx)
    im = np.linspace(im0, im1, ny)
    codes = list(RootCode)
    if s.k == 2:
        xi = re[:, None] + 1j * im[None, :]
        cells = _classify_two_step(s, xi).astype(np.int8)
    else:
        cells = np.empty((nx, ny), dtype=np.int8)
        for i, x in enumerate(re):
            for j, y in enumerate(im):
                cells[i, j] = codes.index(lmm_membership(s, complex(x, y)).code)
    return RegionMap((re0, re1), (im0, im1), nx, ny, cells)


def _classify_two_step(s: MultistepScheme, xi: np.ndarray) -> np.ndarray:
    """Vectorized counterpart of lmm_membership for k = 2 (same thresholds)."""
    codes = list(RootCode)
    A = s.alpha[2] - xi * s.beta[2]
    B = s.alpha[1] - xi * s.beta[1]
    C = s.alpha[0] - xi * s.beta[0]
    scale = np.maximum(np.abs(A), np.maximum(np.abs(B), np.abs(C)))
    tol = 1e-12 * scale
    with np.errstate(all="ignore"):
        sq = np.sqrt(B * B - 4 * A * C + 0j)
        sq = np.where((np.conj(B) * sq).real < 0, -sq, sq)
        q = -0.5 * (B + sq)
        r1 = np.where(A != 0, q / np.where(A != 0, A, 1), np.inf)
        r2 = np.where(q != 0, C / np.where(q != 0, q, 1), 0)
        # C == 0 collapses the product identity; fall back to (-B/A, 0)
        r2 = np.where(C == 0, 0, r2)
        r1 = np.where((C == 0) & (A != 0), -B / np.where(A != 0, A, 1), r1)
        m1, m2 = np.abs(r1), np.abs(r2)
        hi = np.maximum(m1, m2)
        lo = np.minimum(m1, m2)
        repeated = np.abs(r1 - r2) <= 10 * tol
        on_circle = (np.abs(m1 - 1) <= _CIRCLE_TOL) | (np.abs(m2 - 1) <= _CIRCLE_TOL)
        all_inside = hi < 1 - _CIRCLE_TOL
        all_outside = lo > 1 + _CIRCLE_TOL
    out = np.full(xi.shape, codes.index(RootCode.COEXIST), dtype=np.int8)
    out[all_outside] = codes.index(RootCode.ALL_OUTSIDE)
    out[all_inside] = codes.index(RootCode.ALL_INSIDE)
    out[on_circle] = codes.index(RootCode.ON_CIRCLE)
    out[repeated] = codes.index(RootCode.REPEATED)
    return out


def re_sign_map(scheme_id, window=None, nx=DEFAULT_GRID, ny=DEFAULT_GRID) -> RegionMap:
    """Sign of Re(rho(e^{a+i theta})/kappa(e^{a+i theta})) over an (a, theta) window.

    Cells where kappa vanishes are flagged with NaN.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    a0, a1, t0, t1 = window or DEFAULT_LMM_ATHETA_WINDOW
    a_axis = np.linspace(a0, a1, nx)
    t_axis = np.linspace(t0, t1, ny)
    z = np.exp(a_axis[:, None] + 1j * t_axis[None, :])
    with np.errstate(all="ignore"):
        rho = _poly_grid(s.alpha, z)
        kap = _poly_grid(s.beta, z)
        re_vals = (rho / kap).real
    cells = np.sign(re_vals)
    cells = np.where(np.abs(kap) <= 1e-14 * np.maximum(1.0, np.abs(rho)), np.nan, cells)
    return RegionMap((a0, a1), (t0, t1), nx, ny, cells)


def repeated_root_locus(scheme_id):
    """xi values where the two-step characteristic quadratic has a double root.

    Solved from the closed-form discriminant (alpha_1 - xi*beta_1)^2
    - 4*(alpha_2 - xi*beta_2)*(alpha_0 - xi*beta_0) = 0, which is at most
    quadratic in xi.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme) or s.k != 2:
        name = s.name if hasattr(s, "name") else str(scheme_id)
        raise UnsupportedSchemeError(f"repeated-root locus needs a two-step scheme, got {name}")
    a0, a1, a2 = s.alpha
    b0, b1, b2 = s.beta
    c2 = b1 * b1 - 4 * b2 * b0
    c1 = -2 * a1 * b1 + 4 * (a2 * b0 + a0 * b2)
    c0 = a1 * a1 - 4 * a2 * a0
    if abs(c2) <= 1e-15:
        if abs(c1) <= 1e-15:
            return ()
        return (complex(-c0 / c1),)
    r1, r2 = polyroot.quadratic_roots(c2, c1, c0)
    return tuple(sorted((r1, r2), key=lambda z: (z.real, z.imag)))


def discriminant_residual(scheme_id, xi: complex) -> float:
    """|B^2 - 4AC| of rho - xi*kappa; zero exactly on the repeated-root locus."""
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme) or s.k != 2:
        raise UnsupportedSchemeError("discriminant residual needs a two-step scheme")
    a = s.alpha[2] - xi * s.beta[2]
    b = s.alpha[1] - xi * s.beta[1]
    c = s.alpha[0] - xi * s.beta[0]
    return abs(b * b - 4 * a * c)


def _poly_grid(coeffs, z):
    acc = np.zeros_like(z)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc

"""Trajectory generation, least-squares objectives, and derivative-free fits.

The objectives mirror the trajectory-fitting problems exactly: a one-step
candidate ``xi`` replays ``z_k = p(xi)^{mk} z_0`` against the samples, a
multistep candidate runs the seeded recurrence forward.  Minimization is
a multi-start Nelder-Mead search on (Re xi, Im xi); the closed-form
learned value (from a crude log-ratio eigenvalue estimate) is always one
of the starts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from . import polyroot
from .learn import learn as _learn_closed_form
from .errors import (
    EigenlearnError,
    MultiplicityError,
    NonConvergenceError,
    PoleError,
    StepSingularError,
    ValidationError,
)
from .schemes import MultistepScheme, OneStepScheme, characteristic_poly, lookup


@dataclass(frozen=True)
class TrajectoryData:
    """Sampled trajectory of z' = lambda*z, possibly with additive noise.

    ``samples[n-1]`` holds the observation at t = n*H for n = 1..N; ``Z0``
    is the (noisy, when sigma > 0) initial observation at t = 0.
    """

    Z0: complex
    H: float
    m: int
    samples: tuple
    sigma: float
    seed: int

    @property
    def N(self) -> int:
        return len(self.samples)


@dataclass(frozen=True)
class FitResult:
    xi_star: complex
    objective_value: float
    iterations: int
    starts_used: int
    converged: bool


@dataclass(frozen=True)
class ModeCoefficients:
    """Mode expansion z_n = sum_j c_j zeta_j^n, roots sorted by descending modulus."""

    c: tuple
    zeta: tuple
    growth_flag: bool


@dataclass(frozen=True)
class FitOptions:
    starts: int = 8
    max_iter: int = 2000
    tol: float = 1e-10


def generate(
    lam: complex,
    H: float,
    m: int,
    N: int,
    Z0: complex = 1.0 + 0j,
    sigma: float = 0.0,
    seed: int = 0,
) -> TrajectoryData:
    """Sample Z0*exp(lam*H*n) + eps_n for n = 1..N, deterministically per seed.

    The complex noise has independent Gaussian components of standard
    deviation sigma/sqrt(2) each, so E|eps|^2 = sigma^2; the initial value
    is perturbed by its own draw eps_0.
    """
    if H <= 0:
        raise ValidationError("sampling step H must be positive")
    if N < 2:
        raise ValidationError("need at least two samples")
    if m < 1:
        raise ValidationError("substep count m must be >= 1")
    rng = np.random.default_rng(seed)
    scale = sigma / math.sqrt(2.0)
    eps = rng.standard_normal(N + 1) * scale + 1j * rng.standard_normal(N + 1) * scale
    lam = complex(lam)
    Z0 = complex(Z0)
    samples = tuple(Z0 * cmath.exp(lam * H * n) + eps[n] for n in range(1, N + 1))
    return TrajectoryData(
        Z0=Z0 + eps[0], H=H, m=m, samples=samples, sigma=sigma, seed=seed
    )


def objective_one_step(scheme_id, xi: complex, data: TrajectoryData) -> float:
    """Mean squared replay error of a one-step candidate xi = lambda*h, h = H/m."""
    s = lookup(scheme_id)
    if not isinstance(s, OneStepScheme):
        raise ValidationError(f"{s.name} is not a one-step scheme")
    xi = complex(xi)
    den = s.p_den(xi)
    if den == 0:
        raise PoleError(f"objective of {s.name} hits a pole at xi={xi}")
    w = s.p_num(xi) / den
    wm = w**data.m
    acc = 0.0
    z = data.Z0
    for sample in data.samples:
        z = z * wm
        d = z - sample
        acc += d.real * d.real + d.imag * d.imag
    acc /= data.N
    return acc if math.isfinite(acc) else math.inf


def objective_lmm(scheme_id, xi: complex, data: TrajectoryData) -> float:
    """Mean squared deviation of the seeded k-step recurrence from the samples.

    The first k values are taken verbatim from the data (Z0 and the leading
    samples); implicit schemes solve the single linear unknown per step.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    if data.m != 1:
        raise ValidationError("multistep objective requires sampling step = scheme step (m = 1)")
    k = s.k
    if data.N <= k:
        raise ValidationError(f"need more than k={k} samples")
    xi = complex(xi)
    den = s.alpha[k] - xi * s.beta[k]
    if den == 0:
        raise StepSingularError(f"alpha_k - xi*beta_k vanished for {s.name} at xi={xi}")
    z = [data.Z0] + [data.samples[j] for j in range(k - 1)]
    alpha, beta = s.alpha, s.beta
    acc = 0.0
    count = 0
    for n in range(k, data.N + 1):
        rhs = 0j
        for j in range(k):
            rhs += (xi * beta[j] - alpha[j]) * z[n - k + j]
        zn = rhs / den
        z.append(zn)
        d = zn - data.samples[n - 1]
        acc += d.real * d.real + d.imag * d.imag
        count += 1
    acc /= count
    return acc if math.isfinite(acc) else math.inf


def objective(scheme_id, xi: complex, data: TrajectoryData) -> float:
    s = lookup(scheme_id)
    if isinstance(s, OneStepScheme):
        return objective_one_step(scheme_id, xi, data)
    return objective_lmm(scheme_id, xi, data)


def landscape(scheme_id, data: TrajectoryData, re_range, im_range, nx: int, ny: int):
    """Objective values over a complex-plane grid (vectorized over cells).

    Returns (re_axis, im_axis, values) with values[i, j] the objective at
    re_axis[i] + 1j*im_axis[j]; poles and overflow come back as +inf.
    """
    s = lookup(scheme_id)
    re_axis = np.linspace(re_range[0], re_range[1], nx)
    im_axis = np.linspace(im_range[0], im_range[1], ny)
    xi = re_axis[:, None] + 1j * im_axis[None, :]
    with np.errstate(all="ignore"):
        if isinstance(s, OneStepScheme):
            num = _horner_grid(s.p_num.coeffs, xi)
            den = _horner_grid(s.p_den.coeffs, xi)
            w = num / den
            wm = w**data.m
            acc = np.zeros_like(w, dtype=float)
            z = np.full_like(w, complex(data.Z0))
            for sample in data.samples:
                z = z * wm
                acc += np.abs(z - sample) ** 2
            acc /= data.N
        else:
            if data.m != 1:
                raise ValidationError("multistep landscape requires m = 1")
            k = s.k
            if data.N <= k:
                raise ValidationError(f"need more than k={k} samples")
            den = s.alpha[k] - xi * s.beta[k]
            zs = [np.full_like(xi, complex(data.Z0))]
            zs += [np.full_like(xi, data.samples[j]) for j in range(k - 1)]
            acc = np.zeros_like(den, dtype=float)
            for n in range(k, data.N + 1):
                rhs = np.zeros_like(xi)
                for j in range(k):
                    rhs += (xi * s.beta[j] - s.alpha[j]) * zs[n - k + j]
                zn = rhs / den
                zs.append(zn)
                acc += np.abs(zn - data.samples[n - 1]) ** 2
            acc /= data.N - k + 1
    acc = np.where(np.isfinite(acc), acc, np.inf)
    return re_axis, im_axis, acc


def _horner_grid(coeffs, z):
    acc = np.zeros_like(z)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def minimize(scheme_id, data: TrajectoryData, opts: FitOptions | None = None) -> FitResult:
    """Best local minimum of the fitting objective over multi-start simplex runs."""
    opts = opts or FitOptions()
    s = lookup(scheme_id)
    h = data.H / data.m if isinstance(s, OneStepScheme) else data.H

    def f(x) -> float:
        try:
            return objective(scheme_id, complex(x[0], x[1]), data)
        except (PoleError, StepSingularError):
            return math.inf

    starts = _build_starts(scheme_id, data, h, opts.starts)
    best = None
    iterations = 0
    for x0 in starts:
        f0 = f([x0.real, x0.imag])
        fatol = max(1e-24, 1e-12 * abs(f0)) if math.isfinite(f0) else 1e-24
        res = optimize.minimize(
            f,
            [x0.real, x0.imag],
            method="Nelder-Mead",
            options={
                "xatol": opts.tol,
                "fatol": fatol,
                "maxiter": opts.max_iter,
                "maxfev": 2 * opts.max_iter,
            },
        )
        iterations = max(iterations, int(res.nit))
        if best is None or res.fun < best.fun:
            best = res
    if best is None or not math.isfinite(best.fun):
        raise NonConvergenceError(
            "all starts failed",
            best=None if best is None else complex(best.x[0], best.x[1]),
            objective=None if best is None else float(best.fun),
        )
    xi_star = complex(best.x[0], best.x[1])
    return FitResult(
        xi_star=xi_star,
        objective_value=objective(scheme_id, xi_star, data),
        iterations=iterations,
        starts_used=len(starts),
        converged=bool(best.success),
    )


def _build_starts(scheme_id, data: TrajectoryData, h: float, n_starts: int):
    if data.Z0 != 0:
        ratio = data.samples[0] / data.Z0
    else:
        ratio = data.samples[1] / data.samples[0]
    try:
        lam_est = cmath.log(ratio) / data.H
        center = _learn_closed_form(scheme_id, lam_est, h).selected
    except (EigenlearnError, ValueError, ZeroDivisionError):
        center = 0j
    starts = [center]
    radius = 0.3 * (1 + abs(center))
    for j in range(max(n_starts - 1, 0)):
        ang = 2 * math.pi * j / max(n_starts - 1, 1)
        starts.append(center + radius * cmath.exp(1j * ang))
    return starts[:n_starts]


def mode_coefficients(
    scheme_id, xi: complex, data: TrajectoryData, coeff_tol: float = 1e-10
) -> ModeCoefficients:
    """Characteristic roots of rho - xi*kappa and their least-squares weights.

    The weights solve the overdetermined system sum_j c_j zeta_j^n = Z_n over
    all N+1 observations (n = 0..N).  ``growth_flag`` marks an excited root
    outside the unit circle: some |zeta_j| > 1 with |c_j| > coeff_tol.
    """
    s = lookup(scheme_id)
    if not isinstance(s, MultistepScheme):
        raise ValidationError(f"{s.name} is not a multistep scheme")
    pi = characteristic_poly(s, complex(xi))
    if pi.degree < s.k:
        raise StepSingularError("leading coefficient alpha_k - xi*beta_k vanished")
    rootset = polyroot.roots(pi)
    if any(rootset.multiplicity_flags):
        raise MultiplicityError(
            "repeated characteristic roots: expansion needs polynomial-in-n terms"
        )
    zeta = sorted(rootset.roots, key=abs, reverse=True)
    n_obs = data.N + 1
    A = np.empty((n_obs, len(zeta)), dtype=complex)
    A[0, :] = 1.0
    for j, z in enumerate(zeta):
        A[1:, j] = np.cumprod(np.full(data.N, z))
    b = np.empty(n_obs, dtype=complex)
    b[0] = data.Z0
    b[1:] = data.samples
    c, *_ = np.linalg.lstsq(A, b, rcond=None)
    growth = any(
        abs(z) > 1 and abs(cj) > coeff_tol for z, cj in zip(zeta, c)
    )
    return ModeCoefficients(c=tuple(c), zeta=tuple(zeta), growth_flag=growth)


def replay_modes(modes: ModeCoefficients, n_steps: int) -> list:
    """Forward evaluation of the mode expansion, n = 0..n_steps inclusive."""
    out = []
    for n in range(n_steps + 1):
        out.append(sum(cj * z**n for cj, z in zip(modes.c, modes.zeta)))
    return out

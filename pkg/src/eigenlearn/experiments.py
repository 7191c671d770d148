"""End-to-end studies: 2x2 matrix recovery, noise sweeps, spectral
convection-diffusion coefficient recovery, extrapolation and order sweeps.

The planar rotation system x' = [[0, w], [-w, 0]] x is the conservative
test bed: its propagator under each scheme is closed-form, the reference
matrix is recovered by derivative-free fitting, and sweeping the noise
level exposes the first-order sensitivity of the recovered matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from .errors import NonConvergenceError, NyquistError, SingularStepError, ValidationError
from .fitting import FitOptions, generate, minimize as fit_minimize
from .learn import (
    EXTRAP_IM_WINDOW,
    default_h_list,
    learn,
    learn_one_step,
    nyquist_ok,
    richardson,
)
from .schemes import lookup

_STEP_MATRIX_IDS = ("fe", "rk2", "rk4", "be", "itrap", "imid")


@dataclass(frozen=True)
class ConvDiffResult:
    scheme: str
    k: int
    h: float
    a_hat: float
    eps_hat: float


@dataclass(frozen=True)
class SweepReport:
    xs: tuple
    ys: tuple
    slope: float
    intercept: float
    per_trial: np.ndarray


@dataclass(frozen=True)
class MatrixFitOptions:
    starts: int = 3
    max_iter: int = 4000
    tol: float = 1e-9


def step_matrix(scheme_id, A: np.ndarray, h: float) -> np.ndarray:
    """Exact one-step propagator of y' = A*y for the supported schemes."""
    s = lookup(scheme_id)
    if s.name not in _STEP_MATRIX_IDS:
        raise ValidationError(f"step_matrix does not support {s.name}")
    A = np.asarray(A, dtype=float)
    eye = np.eye(A.shape[0])
    hA = h * A
    try:
        if s.name == "fe":
            return eye + hA
        if s.name == "rk2":
            return eye + hA + hA @ hA / 2
        if s.name == "rk4":
            hA2 = hA @ hA
            return eye + hA + hA2 / 2 + hA2 @ hA / 6 + hA2 @ hA2 / 24
        if s.name == "be":
            return np.linalg.solve(eye - hA, eye)
        # itrap / imid coincide on linear systems
        return np.linalg.solve(eye - hA / 2, eye + hA / 2)
    except np.linalg.LinAlgError as exc:
        raise SingularStepError(f"implicit step solve is singular for {s.name}") from exc


def fit_matrix(
    scheme_id,
    data: Sequence[np.ndarray],
    x0: np.ndarray,
    h: float,
    opts: MatrixFitOptions | None = None,
) -> np.ndarray:
    """Recover the system matrix whose scheme-replayed trajectory fits the data.

    Minimizes sum_n ||S_h(A)^n x0 - data_n||^2 over all four entries with
    multi-start Nelder-Mead.  The first start is the one-step least-squares
    regression seed M with A0 = (M - I)/h; further starts perturb it.
    """
    opts = opts or MatrixFitOptions()
    data = np.asarray(data, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    if data.shape[0] < 3:
        raise ValidationError("need at least 3 samples to fit a 2x2 matrix")
    rows = [(float(r[0]), float(r[1])) for r in data]
    x00, x01 = float(x0[0]), float(x0[1])

    def objective(entries: np.ndarray) -> float:
        try:
            S = step_matrix(scheme_id, entries.reshape(2, 2), h)
        except SingularStepError:
            return math.inf
        s00, s01 = float(S[0, 0]), float(S[0, 1])
        s10, s11 = float(S[1, 0]), float(S[1, 1])
        y0, y1 = x00, x01
        acc = 0.0
        for r0, r1 in rows:
            y0, y1 = s00 * y0 + s01 * y1, s10 * y0 + s11 * y1
            d0 = y0 - r0
            d1 = y1 - r1
            acc += d0 * d0 + d1 * d1
        return acc if math.isfinite(acc) else math.inf

    seed = _regression_seed(data, x0, h)
    starts = [seed]
    scale = np.linalg.norm(seed) + 0.1
    offsets = [
        np.array([[1.0, 0.0], [0.0, -1.0]]),
        np.array([[0.0, 1.0], [-1.0, 0.0]]),
        np.array([[1.0, 1.0], [1.0, 1.0]]),
        np.array([[-1.0, 0.0], [0.0, 1.0]]),
    ]
    for j in range(opts.starts - 1):
        starts.append(seed + 0.05 * scale * offsets[j % len(offsets)])

    best = None
    for A0 in starts:
        f0 = objective(A0.ravel())
        fatol = max(1e-24, 1e-12 * abs(f0)) if math.isfinite(f0) else 1e-24
        res = optimize.minimize(
            objective,
            A0.ravel(),
            method="Nelder-Mead",
            options={
                "xatol": opts.tol,
                "fatol": fatol,
                "maxiter": opts.max_iter,
                "maxfev": 2 * opts.max_iter,
            },
        )
        if best is None or res.fun < best.fun:
            best = res
    if best is None or not math.isfinite(best.fun):
        raise NonConvergenceError(
            "matrix fit failed on all starts",
            best=None if best is None else best.x.reshape(2, 2),
            objective=None if best is None else float(best.fun),
        )
    return best.x.reshape(2, 2)


def _regression_seed(data: np.ndarray, x0: np.ndarray, h: float) -> np.ndarray:
    prev = np.vstack([x0, data[:-1]])
    M, *_ = np.linalg.lstsq(prev, data, rcond=None)
    return (M.T - np.eye(2)) / h


def spectral_norm_2x2(M: np.ndarray) -> float:
    """Largest singular value of a 2x2 matrix, in closed form."""
    M = np.asarray(M, dtype=float)
    frob2 = float(np.sum(M * M))
    det = float(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])
    gap = max(frob2 * frob2 - 4 * det * det, 0.0)
    return math.sqrt((frob2 + math.sqrt(gap)) / 2)


def rotation_trajectory(rate: float, h: float, n: int, x0=(1.0, 0.0)) -> np.ndarray:
    """Exact samples of the harmonic oscillator x' = [[0, rate], [-rate, 0]] x."""
    x0 = np.asarray(x0, dtype=float)
    out = np.empty((n, 2))
    for i in range(1, n + 1):
        c, s = math.cos(rate * h * i), math.sin(rate * h * i)
        out[i - 1] = (c * x0[0] + s * x0[1], -s * x0[0] + c * x0[1])
    return out


def noise_sweep(
    scheme_id,
    sigma_list: Sequence[float],
    trials: int,
    seed: int,
    h: float = 1.0 / 128.0,
    n_samples: int = 64,
    rate: float = 1.0,
    opts: MatrixFitOptions | None = None,
) -> SweepReport:
    """Mean recovered-matrix deviation ||A_ref - A_hat||_2 versus noise level.

    A_ref is fitted once from noise-free rotation data; each (sigma, trial)
    pair derives its own RNG stream from the seed, so trials can run in any
    order without changing the report.
    """
    sigma_list = [float(s) for s in sigma_list]
    if len(sigma_list) < 4:
        raise ValidationError("need at least 4 noise levels")
    x0 = np.array([1.0, 0.0])
    clean = rotation_trajectory(rate, h, n_samples, x0)
    a_ref = fit_matrix(scheme_id, clean, x0, h, opts)
    per_trial = np.empty((len(sigma_list), trials))
    for i, sigma in enumerate(sigma_list):
        for t in range(trials):
            rng = np.random.default_rng([seed, i * trials + t])
            noisy = clean + rng.normal(0.0, sigma, size=clean.shape)
            a_hat = fit_matrix(scheme_id, noisy, x0, h, opts)
            per_trial[i, t] = spectral_norm_2x2(a_ref - a_hat)
    ys = per_trial.mean(axis=1)
    slope, intercept = np.polyfit(np.log(sigma_list), np.log(ys), 1)
    return SweepReport(
        xs=tuple(sigma_list),
        ys=tuple(float(y) for y in ys),
        slope=float(slope),
        intercept=float(intercept),
        per_trial=per_trial,
    )


def convdiff_recover(
    scheme_id,
    k: int,
    h: float,
    mode: str = "closed_form",
    a: float = 2.0,
    eps: float = 0.01,
    n_samples: int = 500,
    fit_opts: FitOptions | None = None,
) -> ConvDiffResult:
    """Recover convection speed and diffusion from one spectral mode.

    Mode k of u_t = a*u_x + eps*u_xx evolves with eigenvalue
    lambda_k = 2*pi*i*k*a - (2*pi*k)^2*eps.  The learned eigenvalue maps
    back to (a_hat, eps_hat) through the same relations.  ``mode`` selects
    the closed-form map or an actual optimization run on generated samples.
    """
    if k < 1:
        raise ValidationError("mode index k must be >= 1")
    two_pi_k = 2 * math.pi * k
    lam = complex(-eps * two_pi_k**2, two_pi_k * a)
    im_lh = abs((lam * h).imag)
    if im_lh >= math.pi:
        raise NyquistError(
            f"Nyquist condition violated: |Im(lambda_k*h)| = {im_lh:.6g} >= pi "
            f"for k={k}, h={h}"
        )
    if mode == "closed_form":
        lam_hat = learn(scheme_id, lam, h).lambda_hat
    elif mode == "fit":
        data = generate(lam, H=h, m=1, N=n_samples, Z0=1.0, sigma=0.0, seed=0)
        result = fit_minimize(scheme_id, data, fit_opts)
        lam_hat = result.xi_star / h
    else:
        raise ValidationError(f"unknown mode {mode!r} (want closed_form or fit)")
    return ConvDiffResult(
        scheme=lookup(scheme_id).name,
        k=k,
        h=h,
        a_hat=lam_hat.imag / two_pi_k,
        eps_hat=-lam_hat.real / two_pi_k**2,
    )


def extrapolation_study(lam: complex, h_list: Sequence[float]) -> SweepReport:
    """Accuracy of step-halving extrapolation of the trapezoidal learner.

    per_trial rows hold (|extrapolated - lambda|, Re(extrapolated),
    window_ok) per step size; a violated sign-preservation window flags the
    row but the study still runs.
    """
    lam = complex(lam)
    h_list = [float(h) for h in h_list]
    for h in h_list:
        if not nyquist_ok(lam, 2 * h):
            raise ValidationError(f"h={h}: doubled step violates the Nyquist condition")
    rows = []
    errs = []
    for h in h_list:
        lh = learn_one_step("itrap", lam, h).lambda_hat
        l2h = learn_one_step("itrap", lam, 2 * h).lambda_hat
        lam_exp = richardson(lh, l2h)
        err = abs(lam_exp - lam)
        window_ok = abs((lam * h).imag) < EXTRAP_IM_WINDOW and abs(
            (lam * 2 * h).imag
        ) < EXTRAP_IM_WINDOW
        rows.append((err, lam_exp.real, 1.0 if window_ok else 0.0))
        errs.append(err)
    slope, intercept = np.polyfit(np.log(h_list), np.log(errs), 1)
    return SweepReport(
        xs=tuple(h_list),
        ys=tuple(errs),
        slope=float(slope),
        intercept=float(intercept),
        per_trial=np.array(rows),
    )


def order_study(scheme_id, lam: complex, h_list: Sequence[float] | None = None) -> SweepReport:
    """Empirical convergence order of the learned eigenvalue.

    ys (and slope) measure |lambda_hat - lambda|; per_trial column 0 holds
    the step-scaled differences |lambda*h - lambda_hat*h|, whose log-log
    slope is exactly one higher.
    """
    lam = complex(lam)
    if h_list is None:
        h_list = default_h_list(lam)
    h_list = [float(h) for h in h_list]
    for h in h_list:
        if not nyquist_ok(lam, h):
            raise ValidationError(f"h={h} violates the Nyquist condition")
    errs = []
    scaled = []
    for h in h_list:
        lam_hat = learn(scheme_id, lam, h).lambda_hat
        errs.append(abs(lam_hat - lam))
        scaled.append(abs(lam * h - lam_hat * h))
    slope, intercept = np.polyfit(np.log(h_list), np.log(errs), 1)
    return SweepReport(
        xs=tuple(h_list),
        ys=tuple(errs),
        slope=float(slope),
        intercept=float(intercept),
        per_trial=np.array([scaled]).T,
    )


def lambdah_slope(report: SweepReport) -> float:
    """Slope of the step-scaled differences stored in an order_study report."""
    return float(np.polyfit(np.log(report.xs), np.log(report.per_trial[:, 0]), 1)[0])

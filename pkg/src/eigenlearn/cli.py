"""Command-line frontend.

Every run is fully determined by the parsed configuration (plus --seed
where randomness exists): no wall-clock or environment dependence, so
identical invocations produce byte-identical output.

Exit codes: 0 success, 2 usage error, 3 domain validation error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import experiments, fitting, output, stability
from .errors import EigenlearnError, SchemeLookupError, ValidationError
from .learn import learn as learn_mod_learn, phase_error, predict_signs
from .schemes import OneStepScheme, load_custom_lmm, lookup
from .stability import RootCode


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    args: dict


def _scheme_arg(token: str):
    """Registry token, or a path to a JSON file with a custom LMM."""
    try:
        if token.endswith(".json"):
            return load_custom_lmm(token)
        return lookup(token)
    except (SchemeLookupError, ValidationError, OSError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _window_arg(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("window must be re0,re1,im0,im1")
    return tuple(float(p) for p in parts)


def _sigma_list(text: str):
    """Either '2^-10..2^-4' (inclusive power range) or a comma list of floats."""
    if ".." in text:
        lo, hi = text.split("..")
        elo = int(lo.split("^")[1])
        ehi = int(hi.split("^")[1])
        step = 1 if ehi >= elo else -1
        return [2.0**e for e in range(elo, ehi + step, step)]
    return [float(p) for p in text.split(",")]


def _h_list(text: str):
    if ".." in text:
        lo, hi = text.split("..")
        elo = int(lo.split("^")[1])
        ehi = int(hi.split("^")[1])
        step = 1 if ehi >= elo else -1
        return [2.0**e for e in range(elo, ehi + step, step)]
    return [float(p) for p in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="eigenlearn",
        description="Eigenvalues learned through numerical integrators: "
        "closed forms, fits, stability maps, and experiment recipes.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    s = sub.add_parser("learn", formatter_class=fmt, help="closed-form learned eigenvalue")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--lambda", dest="lam", required=True, type=_complex_pair, metavar="RE,IM")
    s.add_argument("--h", required=True, type=float, help="step size (> 0)")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out", default="-")

    s = sub.add_parser("fit", formatter_class=fmt, help="optimize the fitting objective on a trajectory CSV")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--data", required=True, help="trajectory CSV (header t,re,im)")
    s.add_argument("--starts", type=int, default=8, help="multi-start count")
    s.add_argument("--out", default="-")

    s = sub.add_parser("gen", formatter_class=fmt, help="generate a sampled trajectory CSV")
    s.add_argument("--lambda", dest="lam", required=True, type=_complex_pair, metavar="RE,IM")
    s.add_argument("--H", required=True, type=float, help="sampling step (> 0)")
    s.add_argument("--m", type=int, default=1, help="integrator substeps per sample")
    s.add_argument("--N", required=True, type=int, help="number of samples")
    s.add_argument("--z0", type=_complex_pair, default=complex(1, 0), metavar="RE,IM")
    s.add_argument("--sigma", type=float, default=0.0, help="noise scale, E|eps|^2 = sigma^2")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", default="-")

    s = sub.add_parser("landscape", formatter_class=fmt, help="objective over a complex-plane grid")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--data", required=True, help="trajectory CSV (header t,re,im)")
    s.add_argument("--re-min", type=float, default=-4.0)
    s.add_argument("--re-max", type=float, default=1.0)
    s.add_argument("--im-min", type=float, default=-3.0)
    s.add_argument("--im-max", type=float, default=3.0)
    s.add_argument("--nx", type=int, default=401)
    s.add_argument("--ny", type=int, default=401)
    s.add_argument("--out", default="-", help="CSV (re,im,log10_objective) or .svg heatmap")

    s = sub.add_parser("region", formatter_class=fmt, help="stability-region membership map")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--window", type=_window_arg, default=(-4.0, 1.0, -3.0, 3.0), metavar="RE0,RE1,IM0,IM1")
    s.add_argument("--nx", type=int, default=401)
    s.add_argument("--ny", type=int, default=401)
    s.add_argument("--out", default="-")

    s = sub.add_parser("locus", formatter_class=fmt, help="multistep boundary locus rho(e^it)/kappa(e^it)")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--n", type=int, default=2048, help="theta samples on [0, 2pi)")
    s.add_argument("--out", default="-", help="CSV (theta,re,im) or .svg curve")

    s = sub.add_parser("rootsmap", formatter_class=fmt, help="characteristic-root classification map")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--window", type=_window_arg, default=(-4.0, 1.0, -3.0, 3.0), metavar="RE0,RE1,IM0,IM1")
    s.add_argument("--nx", type=int, default=401)
    s.add_argument("--ny", type=int, default=401)
    s.add_argument("--out", default="-")

    s = sub.add_parser("resign-map", formatter_class=fmt, help="sign of Re(rho(e^z)/kappa(e^z)) over (a, theta)")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--window", type=_window_arg, default=(-3.0, 0.0, -math.pi, math.pi), metavar="A0,A1,T0,T1")
    s.add_argument("--nx", type=int, default=401)
    s.add_argument("--ny", type=int, default=401)
    s.add_argument("--out", default="-")

    s = sub.add_parser("repeated", formatter_class=fmt, help="repeated-root locus of a two-step scheme")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out", default="-")

    s = sub.add_parser("phase", formatter_class=fmt, help="phase error of the learned oscillation")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--a", required=True, type=float, help="Re(lambda*h) of the data")
    s.add_argument("--theta", required=True, type=float, help="Im(lambda*h), in (-pi, pi)")
    s.add_argument("--out", default="-")

    s = sub.add_parser("extrap", formatter_class=fmt, help="step-halving extrapolation study (trapezoidal)")
    s.add_argument("--lambda", dest="lam", required=True, type=_complex_pair, metavar="RE,IM")
    s.add_argument("--h-list", type=_h_list, default=[2.0**-e for e in range(3, 9)], metavar="2^-3..2^-8")
    s.add_argument("--out", default="-", help="'-' emits the JSON summary; a .csv path also gets rows")

    s = sub.add_parser("order", formatter_class=fmt, help="empirical convergence order of the learned eigenvalue")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--lambda", dest="lam", required=True, type=_complex_pair, metavar="RE,IM")
    s.add_argument("--h-list", type=_h_list, default=None, metavar="H1,H2,...",
                   help="defaults to 2^-4..2^-9 scaled by 1/|lambda|")
    s.add_argument("--out", default="-")

    s = sub.add_parser("convdiff", formatter_class=fmt, help="convection-diffusion coefficient recovery (a=2, eps=0.01)")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--k", required=True, type=int, help="Fourier mode index")
    s.add_argument("--h", required=True, type=float)
    s.add_argument("--mode", choices=("closed", "fit"), default="closed")
    s.add_argument("--N", type=int, default=500, help="samples in fit mode")
    s.add_argument("--out", default="-")

    s = sub.add_parser("noise-sweep", formatter_class=fmt, help="matrix-recovery error versus noise level")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--sigmas", type=_sigma_list, default=[2.0**-e for e in range(10, 3, -1)], metavar="2^-10..2^-4")
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--h", type=float, default=1.0 / 128.0)
    s.add_argument("--n-samples", type=int, default=64)
    s.add_argument("--out", default="-")

    s = sub.add_parser("matrix-fit", formatter_class=fmt, help="fit a 2x2 system matrix to a planar trajectory CSV")
    s.add_argument("--scheme", required=True, type=_scheme_arg)
    s.add_argument("--data", required=True, help="CSV (header t,x,y), first row is the initial state")
    s.add_argument("--out", default="-")

    return p


# flags whose values may start with '-' (e.g. --lambda -1,12.566); merged
# into --flag=value form so argparse does not mistake them for options
_VALUE_FLAGS = ("--lambda", "--z0", "--window", "--h-list", "--sigmas")


def _merge_flag_values(argv):
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_args(argv) -> RunConfig:
    ns = build_parser().parse_args(_merge_flag_values(list(argv)))
    args = vars(ns)
    return RunConfig(subcommand=args.pop("subcommand"), args=args)


def _read_trajectory_csv(path: str) -> fitting.TrajectoryData:
    rows = _read_csv_rows(path, ("t", "re", "im"))
    if len(rows) < 3:
        raise ValidationError("trajectory CSV needs at least 3 rows (t=0 plus 2 samples)")
    H = rows[1][0] - rows[0][0]
    if H <= 0:
        raise ValidationError("trajectory CSV times must be increasing")
    z0 = complex(rows[0][1], rows[0][2])
    samples = tuple(complex(r[1], r[2]) for r in rows[1:])
    return fitting.TrajectoryData(Z0=z0, H=H, m=1, samples=samples, sigma=0.0, seed=0)


def _read_csv_rows(path: str, expected_header):
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or tuple(lines[0].split(",")) != tuple(expected_header):
        raise ValidationError(f"expected CSV header {','.join(expected_header)!r} in {path}")
    out = []
    for ln in lines[1:]:
        try:
            out.append([float(tok) for tok in ln.split(",")])
        except ValueError as exc:
            raise ValidationError(f"bad CSV row {ln!r}: {exc}") from exc
    return out


def _cmd_learn(a):
    scheme = a["scheme"]
    result = learn_mod_learn(scheme, a["lam"], a["h"])
    signs = predict_signs(scheme, a["lam"], a["h"])
    lh = a["lam"] * a["h"]
    phase_class = None
    if scheme.name in ("fe", "be", "rk2", "itrap", "leapfrog") and -math.pi < lh.imag < math.pi:
        phase_class = phase_error(scheme, lh.real, lh.imag).classification
    payload = {
        "scheme": scheme.name,
        "lambda": a["lam"],
        "h": a["h"],
        "lambda_hat": result.lambda_hat,
        "lambda_hat_h": result.selected,
        "candidates": [c for c in result.candidates.roots],
        "in_stability_region": result.in_stability_region,
        "nyquist_ok": result.nyquist_ok,
        "re_sign": signs.re_sign,
        "im_sign_matches": signs.im_sign_matches_true,
        "phase_class": phase_class,
    }
    if a["format"] == "json":
        output.write_text(output.to_json(payload), a["out"])
    else:
        header = (
            "scheme,lambda_re,lambda_im,h,lambda_hat_re,lambda_hat_im,"
            "lambda_hat_h_re,lambda_hat_h_im,in_stability_region,nyquist_ok,"
            "re_sign,im_sign_matches,phase_class"
        ).split(",")
        row = [
            scheme.name, a["lam"].real, a["lam"].imag, a["h"],
            result.lambda_hat.real, result.lambda_hat.imag,
            result.selected.real, result.selected.imag,
            result.in_stability_region, result.nyquist_ok,
            signs.re_sign, signs.im_sign_matches_true, phase_class,
        ]
        output.write_text(output.to_csv(header, [row]), a["out"])


def _cmd_fit(a):
    data = _read_trajectory_csv(a["data"])
    opts = fitting.FitOptions(starts=a["starts"])
    res = fitting.minimize(a["scheme"], data, opts)
    h = data.H / data.m if isinstance(a["scheme"], OneStepScheme) else data.H
    payload = {
        "scheme": a["scheme"].name,
        "xi_star": res.xi_star,
        "lambda_hat": res.xi_star / h,
        "objective_value": res.objective_value,
        "iterations": res.iterations,
        "starts_used": res.starts_used,
        "converged": res.converged,
    }
    output.write_text(output.to_json(payload), a["out"])


def _cmd_gen(a):
    data = fitting.generate(
        a["lam"], H=a["H"], m=a["m"], N=a["N"], Z0=a["z0"], sigma=a["sigma"], seed=a["seed"]
    )
    rows = [(0.0, data.Z0.real, data.Z0.imag)]
    rows += [
        (n * data.H, z.real, z.imag) for n, z in enumerate(data.samples, start=1)
    ]
    output.write_text(output.to_csv(("t", "re", "im"), rows), a["out"])


def _cmd_landscape(a):
    data = _read_trajectory_csv(a["data"])
    re_axis, im_axis, vals = fitting.landscape(
        a["scheme"], data, (a["re_min"], a["re_max"]), (a["im_min"], a["im_max"]),
        a["nx"], a["ny"],
    )
    with np.errstate(divide="ignore"):
        logs = np.log10(vals)
    if a["out"].endswith(".svg"):
        finite = logs[np.isfinite(logs)]
        floor = float(finite.min()) if finite.size else 0.0
        rmap = stability.RegionMap(
            (a["re_min"], a["re_max"]), (a["im_min"], a["im_max"]), a["nx"], a["ny"], logs
        )

        def color(v):
            if math.isfinite(v) and v <= floor + 1.0:
                return "rgb(40,80,200)"  # minimum decade contour
            return output.log_heat_color(v)

        svg = output.heatmap_svg(
            rmap, color, "Re", "Im",
            f"log10 objective, {a['scheme'].name}; blue = minimum decade",
        )
        output.write_text(svg, a["out"])
        return
    rows = []
    for i, x in enumerate(re_axis):
        for j, y in enumerate(im_axis):
            rows.append((x, y, logs[i, j]))
    output.write_text(output.to_csv(("re", "im", "log10_objective"), rows), a["out"])


def _cmd_region(a):
    scheme = a["scheme"]
    if isinstance(scheme, OneStepScheme):
        rmap = stability.one_step_region_map(scheme, a["window"], a["nx"], a["ny"])
        re_axis, im_axis = rmap.axes()
        if a["out"].endswith(".svg"):
            if scheme.name == "be":
                def member(i, j):
                    return abs(complex(1 - re_axis[i], -im_axis[j])) >= 1
            else:
                def member(i, j):
                    return rmap.cells[i, j] <= 1
            svg = _membership_svg(rmap, member, f"stability region, {scheme.name}")
            output.write_text(svg, a["out"])
            return
        rows = []
        for i, x in enumerate(re_axis):
            for j, y in enumerate(im_axis):
                xi = complex(x, y)
                rows.append((x, y, rmap.cells[i, j], stability.one_step_member(scheme, xi)))
        output.write_text(output.to_csv(("re", "im", "modulus", "member"), rows), a["out"])
        return
    rmap = stability.classification_map(scheme, a["window"], a["nx"], a["ny"])
    codes = list(RootCode)
    inside = codes.index(RootCode.ALL_INSIDE)
    re_axis, im_axis = rmap.axes()
    if a["out"].endswith(".svg"):
        points, _ = stability.boundary_locus(scheme, 1024)
        svg = _membership_svg(
            rmap, lambda i, j: rmap.cells[i, j] == inside,
            f"absolute stability region, {scheme.name}",
            polyline=points,
        )
        output.write_text(svg, a["out"])
        return
    rows = []
    for i, x in enumerate(re_axis):
        for j, y in enumerate(im_axis):
            rows.append((x, y, rmap.cells[i, j] == inside))
    output.write_text(output.to_csv(("re", "im", "member"), rows), a["out"])


def _membership_svg(rmap, member_fn, legend, polyline=None):
    cells = np.empty((rmap.nx, rmap.ny))
    for i in range(rmap.nx):
        for j in range(rmap.ny):
            cells[i, j] = 1.0 if member_fn(i, j) else 0.0
    shaded = stability.RegionMap(rmap.re_range, rmap.im_range, rmap.nx, rmap.ny, cells)
    return output.heatmap_svg(
        shaded, lambda v: "rgb(180,180,180)" if v else None, "Re", "Im", legend,
        polyline=polyline,
    )


def _cmd_locus(a):
    points, omitted = stability.boundary_locus(a["scheme"], a["n"])
    if a["out"].endswith(".svg"):
        svg = output.curve_svg(points, "Re", "Im", f"boundary locus, {a['scheme'].name}")
        output.write_text(svg, a["out"])
        return
    thetas = [2 * math.pi * j / a["n"] for j in range(a["n"])]
    kept = [t for t in thetas if t not in omitted]
    rows = [(t, p.real, p.imag) for t, p in zip(kept, points)]
    output.write_text(output.to_csv(("theta", "re", "im"), rows), a["out"])
    if omitted:
        sys.stderr.write(f"omitted {len(omitted)} theta samples where kappa vanishes\n")


def _cmd_rootsmap(a):
    rmap = stability.classification_map(a["scheme"], a["window"], a["nx"], a["ny"])
    codes = list(RootCode)
    re_axis, im_axis = rmap.axes()
    if a["out"].endswith(".svg"):
        palette = {
            codes.index(RootCode.ALL_INSIDE): "rgb(210,210,210)",
            codes.index(RootCode.COEXIST): "rgb(110,110,110)",
            codes.index(RootCode.ALL_OUTSIDE): None,
            codes.index(RootCode.REPEATED): "rgb(200,60,60)",
            codes.index(RootCode.ON_CIRCLE): "rgb(60,60,200)",
        }
        svg = output.heatmap_svg(
            rmap, lambda v: palette[int(v)], "Re", "Im",
            f"root classification, {a['scheme'].name}: light=all inside, dark=coexist",
        )
        output.write_text(svg, a["out"])
        return
    rows = []
    for i, x in enumerate(re_axis):
        for j, y in enumerate(im_axis):
            rows.append((x, y, codes[int(rmap.cells[i, j])].value))
    output.write_text(output.to_csv(("re", "im", "code"), rows), a["out"])


def _cmd_resign_map(a):
    rmap = stability.re_sign_map(a["scheme"], a["window"], a["nx"], a["ny"])
    re_axis, im_axis = rmap.axes()
    if a["out"].endswith(".svg"):
        def color(v):
            if math.isnan(v):
                return "rgb(255,200,200)"
            return "rgb(90,90,90)" if v > 0 else None

        svg = output.heatmap_svg(
            rmap, color, "a", "theta",
            f"dark: Re(learned) > 0, {a['scheme'].name}",
        )
        output.write_text(svg, a["out"])
        return
    rows = []
    for i, x in enumerate(re_axis):
        for j, y in enumerate(im_axis):
            rows.append((x, y, rmap.cells[i, j]))
    output.write_text(output.to_csv(("a", "theta", "sign"), rows), a["out"])


def _cmd_repeated(a):
    points = stability.repeated_root_locus(a["scheme"])
    if a["format"] == "json":
        payload = {"scheme": a["scheme"].name, "points": list(points)}
        output.write_text(output.to_json(payload), a["out"])
    else:
        rows = [(p.real, p.imag) for p in points]
        output.write_text(output.to_csv(("re", "im"), rows), a["out"])


def _cmd_phase(a):
    rep = phase_error(a["scheme"], a["a"], a["theta"])
    payload = {
        "scheme": a["scheme"].name,
        "a": rep.a,
        "theta": rep.theta,
        "im_hat": rep.im_hat,
        "classification": rep.classification,
    }
    output.write_text(output.to_json(payload), a["out"])


def _sweep_outputs(report, csv_header, csv_rows, summary, out):
    if out != "-" and out.endswith(".csv"):
        output.write_text(output.to_csv(csv_header, csv_rows), out)
        output.write_text(output.to_json(summary), "-")
    else:
        output.write_text(output.to_json(summary), out)


def _cmd_extrap(a):
    rep = experiments.extrapolation_study(a["lam"], a["h_list"])
    rows = [
        (h, rep.per_trial[i, 0], rep.per_trial[i, 1], bool(rep.per_trial[i, 2]))
        for i, h in enumerate(rep.xs)
    ]
    summary = {
        "lambda": a["lam"],
        "slope": rep.slope,
        "intercept": rep.intercept,
        "h": list(rep.xs),
        "abs_err": list(rep.ys),
        "re_extrapolated": [rep.per_trial[i, 1] for i in range(len(rep.xs))],
        "window_ok": [bool(rep.per_trial[i, 2]) for i in range(len(rep.xs))],
    }
    _sweep_outputs(rep, ("h", "abs_err", "re_extrapolated", "window_ok"), rows, summary, a["out"])


def _cmd_order(a):
    rep = experiments.order_study(a["scheme"], a["lam"], a["h_list"])
    slope_lh = experiments.lambdah_slope(rep)
    rows = [
        (h, rep.ys[i], rep.per_trial[i, 0]) for i, h in enumerate(rep.xs)
    ]
    summary = {
        "scheme": a["scheme"].name,
        "lambda": a["lam"],
        "slope": rep.slope,
        "slope_lambda_h": slope_lh,
        "intercept": rep.intercept,
        "h": list(rep.xs),
        "abs_err": list(rep.ys),
        "abs_err_lambda_h": [rep.per_trial[i, 0] for i in range(len(rep.xs))],
    }
    _sweep_outputs(rep, ("h", "abs_err", "abs_err_lambda_h"), rows, summary, a["out"])


def _cmd_convdiff(a):
    mode = "closed_form" if a["mode"] == "closed" else "fit"
    res = experiments.convdiff_recover(a["scheme"], a["k"], a["h"], mode, n_samples=a["N"])
    payload = {
        "scheme": res.scheme,
        "k": res.k,
        "h": res.h,
        "mode": a["mode"],
        "a_hat": res.a_hat,
        "eps_hat": res.eps_hat,
    }
    output.write_text(output.to_json(payload), a["out"])


def _cmd_noise_sweep(a):
    rep = experiments.noise_sweep(
        a["scheme"], a["sigmas"], a["trials"], a["seed"], h=a["h"], n_samples=a["n_samples"]
    )
    header = ["sigma", "mean_err"] + [f"trial_{t}" for t in range(rep.per_trial.shape[1])]
    rows = [
        [sig, rep.ys[i]] + list(rep.per_trial[i]) for i, sig in enumerate(rep.xs)
    ]
    summary = {
        "scheme": a["scheme"].name,
        "seed": a["seed"],
        "slope": rep.slope,
        "intercept": rep.intercept,
        "sigma": list(rep.xs),
        "mean_err": list(rep.ys),
    }
    _sweep_outputs(rep, header, rows, summary, a["out"])


def _cmd_matrix_fit(a):
    rows = _read_csv_rows(a["data"], ("t", "x", "y"))
    if len(rows) < 4:
        raise ValidationError("matrix-fit CSV needs at least 4 rows")
    h = rows[1][0] - rows[0][0]
    if h <= 0:
        raise ValidationError("matrix-fit CSV times must be increasing")
    x0 = np.array([rows[0][1], rows[0][2]])
    data = np.array([[r[1], r[2]] for r in rows[1:]])
    a_hat = experiments.fit_matrix(a["scheme"], data, x0, h)
    payload = {
        "scheme": a["scheme"].name,
        "h": h,
        "a_hat": [[a_hat[0, 0], a_hat[0, 1]], [a_hat[1, 0], a_hat[1, 1]]],
    }
    output.write_text(output.to_json(payload), a["out"])


_HANDLERS = {
    "learn": _cmd_learn,
    "fit": _cmd_fit,
    "gen": _cmd_gen,
    "landscape": _cmd_landscape,
    "region": _cmd_region,
    "locus": _cmd_locus,
    "rootsmap": _cmd_rootsmap,
    "resign-map": _cmd_resign_map,
    "repeated": _cmd_repeated,
    "phase": _cmd_phase,
    "extrap": _cmd_extrap,
    "order": _cmd_order,
    "convdiff": _cmd_convdiff,
    "noise-sweep": _cmd_noise_sweep,
    "matrix-fit": _cmd_matrix_fit,
}


def run(config: RunConfig) -> int:
    try:
        _HANDLERS[config.subcommand](config.args)
    except EigenlearnError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return 4
    return 0


def main(argv=None) -> int:
    config = parse_args(sys.argv[1:] if argv is None else argv)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

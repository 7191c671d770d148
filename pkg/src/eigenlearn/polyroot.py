"""Complex polynomial root finding.

Degrees one and two are dispatched to cancellation-safe closed forms so
that repeated-root inputs come back with zero separation; higher degrees
run a simultaneous Aberth-Ehrlich iteration (no deflation, so clustered
roots do not accumulate error from earlier extractions).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DegenerateError, IterationError
from .schemes import Polynomial

_MAX_ITER = 120


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    residuals: tuple
    multiplicity_flags: tuple

    def __len__(self) -> int:
        return len(self.roots)


def quadratic_roots(a: complex, b: complex, c: complex):
    """Both roots of a*z^2 + b*z + c, larger-magnitude root computed first.

    The smaller root is recovered from the product identity c/(a*q), which
    avoids the subtractive cancellation of the textbook formula.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if a == 0:
        raise DegenerateError("quadratic_roots requires a != 0")
    if c == 0:
        return (-b / a, 0j)
    sq = cmath.sqrt(b * b - 4 * a * c)
    if (b.conjugate() * sq).real < 0:
        sq = -sq
    q = -0.5 * (b + sq)
    return (q / a, c / q)


def roots(poly: Polynomial, tol: float | None = None) -> RootSet:
    """All complex roots of ``poly`` with residuals and multiplicity flags.

    ``tol`` bounds the acceptable residual |P(root)|; it defaults to
    1e-12 times the largest coefficient magnitude.  Two roots closer than
    10*tol are both flagged as (numerically) multiple.
    """
    coeffs = poly.coeffs
    n = poly.degree
    if n < 1 or coeffs[-1] == 0:
        raise DegenerateError("root finding needs degree >= 1 with nonzero leading coefficient")
    scale = max(abs(c) for c in coeffs)
    if tol is None:
        tol = 1e-12 * scale

    if n == 1:
        rts = [-coeffs[0] / coeffs[1]]
    elif n == 2:
        rts = list(quadratic_roots(coeffs[2], coeffs[1], coeffs[0]))
    else:
        rts = [_polish(poly, r) for r in _aberth(poly, tol)]

    residuals = tuple(abs(poly(r)) for r in rts)
    flags = [False] * len(rts)
    for i in range(len(rts)):
        for j in range(i + 1, len(rts)):
            if abs(rts[i] - rts[j]) <= 10 * tol:
                flags[i] = True
                flags[j] = True
    return RootSet(tuple(rts), residuals, tuple(flags))


def _polish(poly: Polynomial, z: complex) -> complex:
    """A few Newton steps; keeps the new iterate only when the residual drops."""
    dpoly = poly.derivative()
    best, best_res = z, abs(poly(z))
    for _ in range(3):
        dv = dpoly(z)
        if dv == 0:
            break
        z = z - poly(z) / dv
        res = abs(poly(z))
        if res < best_res:
            best, best_res = z, res
    return best


def _aberth(poly: Polynomial, tol: float) -> list:
    n = poly.degree
    dpoly = poly.derivative()
    lead = abs(poly.coeffs[-1])
    radius = 1.0 + max(abs(c) for c in poly.coeffs[:-1]) / lead
    # perturbed circle start; the offset breaks conjugate symmetry traps
    z = [
        0.5 * radius * cmath.exp(1j * (2 * cmath.pi * k / n + 0.4))
        for k in range(n)
    ]
    for _ in range(_MAX_ITER):
        vals = [poly(zi) for zi in z]
        # residual target scales with the evaluation magnitude at each iterate
        if all(
            abs(v) <= tol * max(1.0, sum(abs(c) * abs(zi) ** k for k, c in enumerate(poly.coeffs)) / max(abs(c) for c in poly.coeffs))
            for v, zi in zip(vals, z)
        ):
            return z
        max_step = 0.0
        for i in range(n):
            dv = dpoly(z[i])
            if dv == 0:
                z[i] += tol + 1e-8
                max_step = math.inf
                continue
            w = vals[i] / dv
            s = 0j
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff == 0:
                        diff = tol + 1e-12
                    s += 1 / diff
            denom = 1 - w * s
            step = w if denom == 0 else w / denom
            z[i] -= step
            max_step = max(max_step, abs(step) / (1 + abs(z[i])))
        if max_step <= 4e-16:
            return z
    residuals = [abs(poly(zi)) for zi in z]
    raise IterationError(
        f"Aberth iteration did not converge within {_MAX_ITER} steps",
        best_roots=z,
        residuals=residuals,
    )

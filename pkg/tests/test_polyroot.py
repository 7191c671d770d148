import cmath
import math

import numpy as np
import pytest

from eigenlearn import Polynomial, quadratic_roots, roots
from eigenlearn.errors import DegenerateError


def _sorted(zs):
    return sorted(zs, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def test_simple_quadratic():
    rs = roots(Polynomial([-1, 0, 1]))
    assert _sorted(rs.roots) == [(-1 + 0j), (1 + 0j)]
    assert all(r <= 1e-12 for r in rs.residuals)
    assert not any(rs.multiplicity_flags)


def test_rk2_shifted_roots_sum():
    # roots of z^2 + 2z + 2(1 - e^{lambda h}) sum to -2 (Vieta)
    rng = np.random.default_rng(0)
    for _ in range(50):
        lh = complex(rng.uniform(-1, 0), rng.uniform(-3, 3))
        w = cmath.exp(lh)
        rs = roots(Polynomial([2 * (1 - w), 2, 1]))
        assert sum(rs.roots) == pytest.approx(-2, abs=1e-10)


def test_leapfrog_characteristic_root_product():
    # pi_xi(z) = z^2 - 2 xi z - 1 has root product -1 for every xi
    rng = np.random.default_rng(1)
    for _ in range(200):
        xi = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        rs = roots(Polynomial([-1, -2 * xi, 1]))
        prod = rs.roots[0] * rs.roots[1]
        assert prod == pytest.approx(-1, abs=1e-12)


def test_quadratic_examples():
    assert _sorted(quadratic_roots(1, 0, -1)) == [(-1 + 0j), (1 + 0j)]
    r1, r2 = quadratic_roots(1, 2, 2)
    assert _sorted([r1, r2]) == [(-1 - 1j), (-1 + 1j)]


def test_quadratic_repeated_root_exact():
    # Leap-Frog at xi = i: z^2 - 2i z - 1 = (z - i)^2
    r1, r2 = quadratic_roots(1, -2j, -1)
    assert r1 == r2 == 1j
    rs = roots(Polynomial([-1, -2j, 1]))
    assert all(rs.multiplicity_flags)
    assert abs(rs.roots[0] - rs.roots[1]) <= 1e-10


def test_quadratic_degenerate():
    with pytest.raises(DegenerateError):
        quadratic_roots(0, 1, 1)
    with pytest.raises(DegenerateError):
        roots(Polynomial([3]))


def test_reconstruction_up_to_degree_8():
    rng = np.random.default_rng(7)
    for degree in range(1, 9):
        for _ in range(20):
            coeffs = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
            coeffs[-1] += 2.0  # keep the problem well-scaled
            rs = roots(Polynomial(coeffs))
            rebuilt = np.array([1.0 + 0j])
            for r in rs.roots:
                rebuilt = np.convolve(rebuilt, [-r, 1.0])
            rebuilt = rebuilt * coeffs[-1]
            scale = max(abs(c) for c in coeffs)
            err = max(abs(a - b) for a, b in zip(rebuilt, coeffs))
            assert err / scale <= 1e-9, (degree, err / scale)


def test_quadratic_agrees_with_companion_matrix():
    # independent oracle: numpy companion-matrix roots
    rng = np.random.default_rng(13)
    for _ in range(1000):
        mags = 10.0 ** rng.uniform(-3, 3, size=3)
        phases = rng.uniform(0, 2 * math.pi, size=3)
        a, b, c = (m * cmath.exp(1j * p) for m, p in zip(mags, phases))
        ours = _sorted(quadratic_roots(a, b, c))
        ref = _sorted(np.roots([a, b, c]))
        for u, v in zip(ours, ref):
            assert abs(u - v) <= 1e-10 * (1 + abs(v)), (a, b, c)


def test_quadratic_matches_general_root_finder():
    rng = np.random.default_rng(17)
    for _ in range(200):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) + 3
        b = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        c = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        ours = _sorted(quadratic_roots(a, b, c))
        general = _sorted(roots(Polynomial([c, b, a])).roots)
        for u, v in zip(ours, general):
            assert abs(u - v) <= 1e-10


def test_residual_tolerance_default():
    # residuals scale with the largest coefficient magnitude
    big = Polynomial([1e6, -3e6, 2e6])
    rs = roots(big)
    assert all(r <= 1e-12 * 3e6 for r in rs.residuals)


def test_near_repeated_flagging():
    eps = 1e-13
    rs = roots(Polynomial([(1 + eps) * 1, -(2 + eps), 1]))  # roots near 1, 1+eps
    assert any(rs.multiplicity_flags)

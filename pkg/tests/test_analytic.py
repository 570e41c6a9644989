"""Zeta/eta evaluation and the certified inequality chains.

Oracle: mpmath at 50 digits, frozen where a single float suffices.
"""

import math

import numpy as np
import pytest

from mobius_bounds.analytic import (
    ComplexParameter,
    constants,
    eps_zeta,
    eps_zeta_grid,
    eta,
    eta_prime,
    eta_reference,
    inv_zeta,
    phi_ratio,
    phi_s,
    zeta,
    zeta_inequalities,
    zeta_prime,
    zp_over_z2,
)
from mobius_bounds.util import PASS

mpmath = pytest.importorskip("mpmath")
mpmath.mp.dps = 50


def test_eta_special_points():
    assert abs(eta(1.0).value.real - math.log(2)) <= 1e-13
    assert abs(eta(2.0).value.real - math.pi**2 / 12) <= 1e-13
    # err fields are honest
    assert eta(1.0).err < 1e-12
    assert eta(2.0).err < 1e-12


@pytest.mark.parametrize("s", [0.5, 1.0, 1.3, 2.0, 1 + 1j, 2 + 3j, 0.8 + 10j])
def test_eta_against_mpmath(s):
    want = complex(mpmath.altzeta(s))
    got = eta(s)
    assert abs(got.value - want) <= got.err + 1e-13


@pytest.mark.parametrize("s", [1.5, 2.0, 3.7, 1.001, 2 + 3j, 1.2 + 0.5j])
def test_zeta_against_mpmath(s):
    want = complex(mpmath.zeta(s))
    got = zeta(s)
    assert abs(got.value - want) <= got.err + 1e-12 * abs(want)


def test_zeta_prime_frozen():
    got = zeta_prime(2.0)
    assert got.value.real == pytest.approx(-0.9375482543158438, abs=1e-13)
    want = complex(mpmath.zeta(2 + 3j, derivative=1))
    got2 = zeta_prime(2 + 3j)
    assert abs(got2.value - want) <= got2.err + 1e-11


def test_eta_prime_against_reference():
    for s in (1.0, 1.5, 2 + 1j):
        got = eta_prime(s)
        # reference: the raw alternating series with its tail envelope
        ref = eta_reference(s, log_weight=True)
        assert abs(got.value - ref.value) <= got.err + ref.err + 1e-11


def test_inv_zeta_and_ratio():
    assert abs(inv_zeta(2.0).value.real - 6 / math.pi**2) < 1e-13
    want = complex(mpmath.zeta(2, derivative=1) / mpmath.zeta(2) ** 2)
    got = zp_over_z2(2.0)
    assert abs(got.value - want) <= got.err + 1e-12


def test_eps_zeta_values_and_continuity():
    assert eps_zeta(0.0) == 1.0
    assert eps_zeta(1.0) == pytest.approx(math.pi**2 / 6, abs=1e-13)
    want = float(mpmath.mpf("0.25") * mpmath.zeta(mpmath.mpf("1.25")))
    assert eps_zeta(0.25) == pytest.approx(want, abs=1e-13)
    # continuity across the small-eps crossover
    lo, hi = eps_zeta(1e-8 * (1 - 1e-9)), eps_zeta(1e-8 * (1 + 1e-9))
    assert abs(lo - hi) < 1e-12
    # grid evaluation agrees with the scalar everywhere
    grid = np.array([0.0, 1e-9, 1e-6, 1e-3, 0.1, 0.5, 1.0])
    gv = eps_zeta_grid(grid)
    for e, g in zip(grid, gv):
        assert g == pytest.approx(eps_zeta(float(e)), abs=5e-14)


def test_eps_zeta_monotone_small():
    # eps*zeta(1+eps) = 1 + gamma*eps - ... increases off zero
    vals = [eps_zeta(e) for e in (0.0, 1e-6, 1e-4, 1e-2, 0.1)]
    assert vals == sorted(vals)


def test_phi_s_exact():
    assert phi_s(6, 1.0) == pytest.approx(2.0, abs=1e-14)
    assert phi_s(6, 2.0) == pytest.approx(24.0, abs=1e-13)
    assert phi_s(1, 0.7 + 2j) == 1.0
    got = phi_s(10, 1 + 1j)
    want = 10 ** (1 + 1j) * (1 - 2 ** (-1 - 1j)) * (1 - 5 ** (-1 - 1j))
    assert abs(got - want) < 1e-13 * abs(want)


def test_phi_ratio():
    want = 1.0 / ((1 - 2**-0.5) * (1 - 3**-0.5))
    assert phi_ratio(6, 0.5) == pytest.approx(want, rel=1e-14)
    assert phi_ratio(1, 0.5) == 1.0
    with pytest.raises(ValueError):
        phi_ratio(6, 0.0)
    with pytest.raises(ValueError):
        phi_ratio(6, -1.0)


@pytest.mark.parametrize("eps", [1e-3, 1e-2, 0.1, 0.5, 1.0])
def test_zeta_inequality_chains(eps):
    checks = zeta_inequalities(eps)
    assert len(checks) == 6
    for c in checks:
        assert c.verdict == PASS, (eps, c.chain, c.lower, c.value, c.upper)


def test_zeta_inequalities_guard():
    with pytest.raises(ValueError):
        zeta_inequalities(0.0)


def test_constants_finite():
    p = ComplexParameter(complex(1.5), 0.5)
    c = constants(p, 1e6)
    for name, val in vars(c).items():
        if isinstance(val, float):
            assert math.isfinite(val), name

"""Prime harmonic sum vs log X: kernels, sawtooth masses, defect envelope."""

import math

import pytest
from scipy.integrate import quad

from mobius_bounds import harmonic
from mobius_bounds.harmonic import (
    SawtoothPiece,
    alpha,
    beta,
    f_of,
    g_of,
    g_slope,
    hanson_scan,
    kernel_identity_check,
    lambda_harmonic_sum,
    neg_alpha_integral,
    sawtooth_log_integral,
    signed_alpha_integral,
    stirling_eps,
    verify_harmonic,
)
from mobius_bounds.util import GAMMA


def test_alpha_beta_pointwise():
    assert alpha(0.5) == -1.0
    assert alpha(0.25) == -1.0
    assert alpha(1.5) == pytest.approx(-1.0 / 9.0, abs=1e-16)
    assert alpha(3.0) == pytest.approx(1.0 / 3.0, abs=1e-16)
    assert beta(1.5) == pytest.approx(1.0 / 6.0, abs=1e-16)
    assert beta(2.0) == 0.0
    with pytest.raises(ValueError):
        alpha(0.0)
    with pytest.raises(ValueError):
        beta(-1.0)


def test_alpha_beta_triangular_relation():
    # k(k+1)/t^2 - 1 and ({t}-{t}^2)/t tie together through 1 + alpha = 2*avg
    for t in (1.25, 2.5, 3.75, 10.1, 99.9):
        k = math.floor(t)
        tri = k * (k + 1) / 2.0
        assert (1.0 + alpha(t)) * t * t / 2.0 == pytest.approx(tri, rel=1e-14)


def test_sawtooth_piece_invariants():
    for k in (1, 2, 10, 999):
        piece = SawtoothPiece.at(k)
        assert 0.0 < piece.t_k < 0.5
        assert abs(piece.alpha(k + piece.t_k)) < 1e-12
        assert piece.alpha(k + piece.t_k - 1e-6) > 0.0
        assert piece.alpha(k + piece.t_k + 1e-6) < 0.0
        with pytest.raises(ValueError):
            piece.alpha(k + 1.5)


def test_neg_alpha_integral_values():
    assert neg_alpha_integral(0) == 0.0
    assert neg_alpha_integral(1) == pytest.approx(0.5 * (math.log(2) - 0.5), abs=1e-17)
    assert neg_alpha_integral(1) == pytest.approx(0.09657359027997264, abs=1e-17)
    with pytest.raises(ValueError):
        neg_alpha_integral(-1)


def test_neg_alpha_integral_limit():
    K = 10**6
    val = neg_alpha_integral(K)
    lim = (1.0 - GAMMA) / 2.0
    diff = lim - val
    # remainder lies in (0, 1/(2(K+1)))
    assert 0.0 < diff < 0.5 / (K + 1)
    assert diff < 1e-6


def test_signed_alpha_integral_limit():
    K = 10**4
    val = signed_alpha_integral(K)
    lim = GAMMA - 0.5
    diff = lim - val
    assert 0.0 < diff < 1.0 / (11.0 * K * K)


def test_stirling_eps():
    assert stirling_eps(1.0) == pytest.approx(0.08106146679532722, abs=1e-16)
    for t in (1.0, 2.5, 7.0, 100.3, 5000.0):
        assert abs(stirling_eps(t)) <= 1.0 / (8.0 * t), t
    with pytest.raises(ValueError):
        stirling_eps(0.5)


def test_sawtooth_log_integral_against_quadrature():
    def f(t):
        return (0.5 - (t - math.floor(t))) * math.log(t)

    for X in (1.0, 1.5, 9.5, 11.0, 100.25, 2000.5):
        want = 0.0
        # integrate piecewise so quad never brackets a sawtooth jump
        k = 1
        while k < X:
            hi = min(k + 1.0, X)
            got, _ = quad(f, k, hi, limit=200)
            want += got
            k += 1
        assert sawtooth_log_integral(X) == pytest.approx(want, abs=5e-9), X
        assert abs(sawtooth_log_integral(X)) <= math.log(max(X, math.e)) / 8.0 + 1e-12


def test_sawtooth_log_integral_series_matches_closed_form():
    # the m >= 11 series path and the closed antiderivative agree where
    # both are exact enough to compare
    lo = sawtooth_log_integral(10.999999999)
    hi = sawtooth_log_integral(11.000000001)
    assert lo == pytest.approx(hi, abs=1e-8)


@pytest.mark.parametrize("kind", ["psi", "indicator_test"])
@pytest.mark.parametrize("X", [1.0, 2.0, 3.5, 10.0, 100.0, 999.5])
def test_kernel_identity(table_small, kind, X):
    assert abs(kernel_identity_check(table_small, X, kind)) <= 1e-9


def test_kernel_identity_unknown_kind(table_small):
    with pytest.raises(ValueError):
        kernel_identity_check(table_small, 10.0, "nope")


def test_f_exact_values(table_small):
    assert f_of(table_small, 1.0) == 0.0
    assert f_of(table_small, 1.5) == pytest.approx(-math.log(1.5), abs=1e-13)
    assert f_of(table_small, 4.0) == pytest.approx(-0.5002298794772289, abs=1e-13)
    with pytest.raises(ValueError):
        f_of(table_small, 0.5)


@pytest.mark.parametrize("X", [1.0, 1.5, 4.0, 12.0, 144.5, 1e4])
def test_harmonic_identity_residual(table_small, X):
    lhs = lambda_harmonic_sum(table_small, X)
    assert abs(lhs - math.log(X) - f_of(table_small, X)) <= 1e-9


def test_g_envelope(table_small):
    assert g_of(12.0) == pytest.approx(-0.011679182088564576, abs=1e-15)
    assert g_of(12.0) == pytest.approx(-0.011679, abs=1e-6)
    for X in (1.0, 12.0, 50.0, 1e3, 1e4):
        assert f_of(table_small, X) <= g_of(X), X
        assert g_slope(X) < 0.0, X
    # envelope decreases toward its limit value
    assert g_of(1e9) > math.log(3) - 1.5 + (1 - GAMMA) * math.log(3) / 2


def test_verify_harmonic_rows(table_small):
    rows = verify_harmonic(table_small, 10_000.0)
    assert all(r.verdict == "pass" for r in rows)
    listed = {r.X for r in rows if r.param == ""}
    assert {2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 9.0, 11.0} <= listed
    scan = [r for r in rows if r.param.startswith("scan")]
    assert len(scan) == 1


def test_hanson_scan(table_small):
    margin, arg = hanson_scan(table_small)
    assert margin == pytest.approx(math.log(3) - 0.0, abs=1e-12)
    assert arg == 1
    assert margin > 0.0


def test_suites(table_small):
    assert set(harmonic.SUITES) == {"harmonic", "defect"}
    rows = harmonic.SUITES["defect"](table_small)
    assert rows and all(r.verdict == "pass" for r in rows)

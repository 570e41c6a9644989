"""Two-integral convolution identities: raw form, printed forms, known defects."""

import math

import pytest

from mobius_bounds.identities import (
    CATALOG_NAMES,
    CATALOG_SPECS,
    IdentitySpec,
    catalog_check,
    evaluate_ofd,
    meissel_scan,
)

X_GRID = (1.0, 1.5, 2.0, math.e, 10.0, 100.0, 1000.0)


@pytest.mark.parametrize("name", sorted(CATALOG_SPECS))
@pytest.mark.parametrize("X", X_GRID)
def test_raw_ofd_residual(table_small, name, X):
    rep = catalog_check(table_small, name, X)
    assert abs(rep.ofd_residual) <= 1e-9, (name, X, rep.ofd_residual)


@pytest.mark.parametrize("name", ["meissel", "elmarraki", "macleod"])
@pytest.mark.parametrize("X", X_GRID)
def test_printed_forms_hold(table_small, name, X):
    rep = catalog_check(table_small, name, X)
    assert rep.residual <= 1e-9, (name, X, rep.residual)


@pytest.mark.parametrize("X", X_GRID)
def test_euler_gamma_corrected_bracket(table_small, X):
    rep = catalog_check(table_small, "euler_gamma", X)
    # corrected bracket matches; the literal printed one drifts with X
    assert rep.alt_residual <= 1e-9, (X, rep.alt_residual)
    assert "1/t" in rep.note


def test_euler_gamma_printed_actually_off(table_small):
    # the defect is real, not a rounding artifact
    rep = catalog_check(table_small, "euler_gamma", 100.0)
    assert rep.residual > 1e-6


def test_liouville_printed_defect_at_one(table_small):
    rep = catalog_check(table_small, "liouville", 1.0)
    assert abs(rep.residual - 1.0) <= 1e-9
    assert abs(rep.ofd_residual) <= 1e-12
    assert rep.note != ""


@pytest.mark.parametrize(
    "spec",
    [
        IdentitySpec("mobius", "one", "power", "id", s=0.5),
        IdentitySpec("mobius", "one", "power", "power", s=0.3),
        IdentitySpec("mobius_over_id", "one", "one", "id"),
        IdentitySpec("liouville", "one", "one", "id"),
        IdentitySpec("mangoldt", "one", "one", "id"),
        IdentitySpec("mobius_coprime", "one", "one", "id", q=6),
        IdentitySpec("mobius", "alternating", "dirac_at_1", "id"),
        IdentitySpec("mobius", "one", "inverse_id", "id_log_variant"),
    ],
)
@pytest.mark.parametrize("X", (1.0, 7.5, 100.0))
def test_generic_ofd_instances(table_small, spec, X):
    res = evaluate_ofd(table_small, spec, X)
    assert abs(res.residual) <= 1e-9, (spec, X, res.residual)


def test_daval_general_default(table_small):
    rep = catalog_check(table_small, "daval_general", 50.0)
    assert abs(rep.ofd_residual) <= 1e-9
    assert rep.name in CATALOG_NAMES


def test_meissel_scan_sweep(table_small):
    assert meissel_scan(table_small, 10_000) <= 1e-9


def test_catalog_guards(table_small):
    with pytest.raises(ValueError):
        catalog_check(table_small, "nope", 10.0)
    with pytest.raises(ValueError):
        catalog_check(table_small, "meissel", 0.5)

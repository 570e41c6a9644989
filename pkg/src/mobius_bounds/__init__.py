"""Desk-scale verification toolkit for explicit Mobius-sum estimates."""
from __future__ import annotations

from .analytic import (
    AnalyticConstants,
    ComplexParameter,
    constants,
    eps_zeta,
    eta,
    eta_prime,
    phi_ratio,
    phi_s,
    zeta,
    zeta_inequalities,
    zeta_prime,
)
from .arith import (
    ArithmeticTable,
    Modulus,
    build_table,
    chebyshev_psi,
    g1_window,
    load_mu_cache,
    m_check_q,
    m_check_q_s,
    m_q,
    m_q_s,
    q_inf_divisors,
    save_mu_cache,
)
from .bounds import delta_q, solve_y0, verify_easy, verify_special
from .delta_sign import (
    DeltaCertificate,
    caps_scan,
    certificate_from_json,
    certificate_to_json,
    certify_sign,
    derivative_bound,
    interval_max,
    replay_certificate,
)
from .harmonic import (
    alpha,
    beta,
    f_of,
    g_of,
    kernel_identity_check,
    neg_alpha_integral,
    verify_harmonic,
)
from .identities import CATALOG_NAMES, IdentitySpec, catalog_check, evaluate_ofd
from .reports import BoundRow, bound_row, rows_to_csv, write_rows
from .util import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    Approx,
    BracketError,
    CapacityError,
    NearZeroError,
    PrecisionError,
    cert_le,
    floor_int,
)

__all__ = [
    "AnalyticConstants",
    "Approx",
    "ArithmeticTable",
    "BoundRow",
    "BracketError",
    "CATALOG_NAMES",
    "CapacityError",
    "ComplexParameter",
    "DeltaCertificate",
    "FAIL",
    "IdentitySpec",
    "INCONCLUSIVE",
    "Modulus",
    "NearZeroError",
    "PASS",
    "PrecisionError",
    "alpha",
    "beta",
    "bound_row",
    "build_table",
    "caps_scan",
    "catalog_check",
    "cert_le",
    "certificate_from_json",
    "certificate_to_json",
    "certify_sign",
    "chebyshev_psi",
    "constants",
    "delta_q",
    "derivative_bound",
    "eps_zeta",
    "eta",
    "eta_prime",
    "evaluate_ofd",
    "f_of",
    "floor_int",
    "g1_window",
    "g_of",
    "interval_max",
    "kernel_identity_check",
    "load_mu_cache",
    "m_check_q",
    "m_check_q_s",
    "m_q",
    "m_q_s",
    "neg_alpha_integral",
    "phi_ratio",
    "phi_s",
    "q_inf_divisors",
    "replay_certificate",
    "rows_to_csv",
    "save_mu_cache",
    "solve_y0",
    "verify_easy",
    "verify_harmonic",
    "verify_special",
    "write_rows",
    "zeta",
    "zeta_inequalities",
    "zeta_prime",
]

"""Acceptance gate: the eight headline checks, one printed verdict line each.

Each test prints `ACCEPTANCE <n> <tag>: PASS|FAIL <detail>` before asserting,
so a scan of the log shows the full scoreboard even on partial failure.
Runtime caps are asserted alongside the numeric criteria.
"""

import math
import time

import pytest

from mobius_bounds import bounds, delta_sign, harmonic
from mobius_bounds.analytic import ComplexParameter, eta, phi_ratio, zeta_inequalities
from mobius_bounds.arith import build_table
from mobius_bounds.identities import CATALOG_SPECS, catalog_check
from mobius_bounds.util import GAMMA, PASS


@pytest.fixture(scope="module")
def table_e7():
    return build_table(10_000_000)


@pytest.fixture
def verdict(capfd):
    # print outside capture so the scoreboard line shows on every run
    def _verdict(n, tag, ok, detail):
        with capfd.disabled():
            print(f"\nACCEPTANCE {n} {tag}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, f"acceptance {n} ({tag}): {detail}"

    return _verdict


def _squarefree_divisors_30030():
    out = [1]
    for p in (2, 3, 5, 7, 11, 13):
        out.extend([d * p for d in out])
    return sorted(out)


def test_acceptance_1_root_of_integral_equation(verdict):
    t0 = time.perf_counter()
    res = bounds.solve_y0(1e12)
    elapsed = time.perf_counter() - t0
    want = 1.3653965481343708e15
    rel = abs(res.y0 - want) / want
    ok = rel <= 1e-6 and res.t_max <= 1.03 and elapsed < 5.0
    verdict(
        1,
        "integral-equation-root",
        ok,
        f"y0={res.y0!r} rel_err={rel:.2e} t_max={res.t_max:.6f} {elapsed:.2f}s",
    )


def test_acceptance_2_sign_certification(table_small, verdict):
    t0 = time.perf_counter()
    c1 = delta_sign.certify_sign(table_small, 1, 10.8)
    c2 = delta_sign.certify_sign(table_small, 1, 11.0)
    c3 = delta_sign.certify_sign(table_small, 2, 41.0)
    witness_ok = (
        c2.status == delta_sign.FAILED
        and c2.failure[0] == 10
        and 5e-4 <= c2.failure[2] <= 1e-3
    )
    scan = delta_sign.caps_scan(table_small, 1, 47.0)
    cap_margin = 0.014 - scan.rigorous_cap
    elapsed = time.perf_counter() - t0
    ok = (
        c1.certified
        and witness_ok
        and c3.certified
        and cap_margin > 0.0
        and elapsed < 600.0
    )
    verdict(
        2,
        "defect-sign-table",
        ok,
        f"X0=10.8:{c1.status} X0=11:{c2.status}(value={c2.failure[2]:.6g} at "
        f"N={c2.failure[0]}) q=2,X0=41:{c3.status} "
        f"cap_margin={cap_margin:.6f} {elapsed:.1f}s",
    )


def test_acceptance_3_easy_moment_suite(table_mid, verdict):
    t0 = time.perf_counter()
    worst = math.inf
    fails = 0
    for q in _squarefree_divisors_30030():
        for k in (1, 2, 3):
            for sigma in (1.0, 1.2, 1.5, 2.0):
                lo, _, margin, _ = bounds.easy_scan(table_mid, 100_000, q, k, sigma)
                if lo < -1e-12 or margin < 0.0:
                    fails += 1
                worst = min(worst, margin)
    elapsed = time.perf_counter() - t0
    ok = fails == 0 and elapsed < 300.0
    verdict(
        3,
        "easy-moment-suite",
        ok,
        f"grids=64x3x4 X<=1e5 failures={fails} min_margin={worst:.3g} {elapsed:.1f}s",
    )


def test_acceptance_4_identity_suite(table_small, verdict):
    xs = (1.0, 1.5, 2.0, math.e, 10.0, 100.0, 1000.0)
    bad = []
    for name in sorted(CATALOG_SPECS):
        for X in xs:
            rep = catalog_check(table_small, name, X)
            if abs(rep.ofd_residual) > 1e-9:
                bad.append(("ofd", name, X, rep.ofd_residual))
            if name in ("meissel", "elmarraki", "macleod") and rep.residual > 1e-9:
                bad.append(("printed", name, X, rep.residual))
    liou = catalog_check(table_small, "liouville", 1.0)
    liou_ok = abs(liou.residual - 1.0) <= 1e-9
    ok = not bad and liou_ok
    verdict(
        4,
        "identity-suite",
        ok,
        f"violations={bad[:3]} liouville_printed_residual_at_1={liou.residual!r} "
        "(reported, not asserted as pass)",
    )


def test_acceptance_5_eta_and_chains(verdict):
    e1 = abs(eta(1.0).value.real - math.log(2))
    e2 = abs(eta(2.0).value.real - math.pi**2 / 12)
    chain_bad = []
    for eps in (1e-3, 1e-2, 0.1, 0.5, 1.0):
        for c in zeta_inequalities(eps):
            if c.verdict != PASS:
                chain_bad.append((eps, c.chain, c.verdict))
    ok = e1 <= 1e-12 and e2 <= 1e-12 and not chain_bad
    verdict(
        5,
        "eta-and-chains",
        ok,
        f"|eta(1)-log2|={e1:.2e} |eta(2)-pi^2/12|={e2:.2e} "
        f"non_certified={chain_bad}",
    )


def test_acceptance_6_eps_family_desk_scale(table_big, verdict):
    t0 = time.perf_counter()
    n = 1_000_000
    fails = []
    qs = (1, 2, 3, 6, 30, 210, 2310, 30030)
    for q in qs:
        for eps in (0.0, 0.01, 0.1, 0.5, 1.0):
            margin, arg, floor_slack = bounds.mqeps_scan(table_big, n, q, eps)
            if margin <= 0.0 or floor_slack <= 0.0:
                fails.append(("mqeps", q, eps, arg))
        for eps in (0.0, 0.02, 0.05, 0.1):
            margin, arg = bounds.mcheckqeps_scan(table_big, n, q, eps)
            if margin <= 0.0:
                fails.append(("mcheckqeps", q, eps, arg))
    for s in (complex(1.5), 1.2 + 1j, 1 + 2j):
        p = ComplexParameter(s, 0.5)
        for X in (15.0, 1e2, 1e4, 1e6):
            for which in ("mqdex", "mcheckqdex"):
                row = bounds.verify_dex(table_big, X, 1, p, which)
                if row.verdict != PASS:
                    fails.append((which, s, X))
    special_worst = math.inf
    for sigma in (1.0, 1.01, 1.04):
        margin, arg = bounds.special_scan(table_big, n, sigma)
        special_worst = min(special_worst, margin)
        if margin <= 0.0:
            fails.append(("special", sigma, arg))
    # desk scale: the 1e12/1e14-gated first terms must drop out structurally
    q = 30030
    gated = bounds.mqeps_bound(1e6, q, 0.5) - (
        (4.1 * bounds.g0(q) + (5.0 + 0.5 * 2.0**0.5) / 2.0)
        * phi_ratio(q, 0.5)
        * 2.0**0.5
        / math.sqrt(1e6)
    )
    structural_ok = gated == 0.0
    elapsed = time.perf_counter() - t0
    ok = not fails and structural_ok and special_worst > 0.0
    verdict(
        6,
        "eps-family-desk-scale",
        ok,
        f"failures={fails[:4]} special_min_margin={special_worst:.4g} "
        f"gated_first_terms_zero={structural_ok} {elapsed:.1f}s "
        "(X>=1e12 thresholds not reproducible at desk scale; first terms "
        "removed per the in-range form of the bounds)",
    )


def test_acceptance_7_appendix_masses_and_kernel(table_small, table_big, table_e7, verdict):
    t0 = time.perf_counter()
    mass = harmonic.neg_alpha_integral(10**6)
    mass_err = abs(mass - (1.0 - GAMMA) / 2.0)
    g12 = harmonic.g_of(12.0)
    g12_err = abs(g12 - (-0.011679))
    rows = harmonic.verify_harmonic(table_big, 1_000_000.0)
    listed = {r.X for r in rows if r.param == ""}
    rows_ok = all(r.verdict == PASS for r in rows) and {
        2.0, 3.0, 4.0, 5.0, 7.0, 8.0, 9.0, 11.0,
    } <= listed
    kernel_worst = 0.0
    for X in (1.0, 2.0, 3.5, 10.0, 81.0, 100.0, 1024.0, 4999.5, 9973.0, 10000.0):
        kernel_worst = max(
            kernel_worst, abs(harmonic.kernel_identity_check(table_small, X, "psi"))
        )
    hanson_margin, hanson_arg = harmonic.hanson_scan(table_e7)
    elapsed = time.perf_counter() - t0
    ok = (
        mass_err <= 1e-6
        and g12_err <= 1e-6
        and rows_ok
        and kernel_worst <= 1e-9
        and hanson_margin > 0.0
        and elapsed < 600.0
    )
    verdict(
        7,
        "appendix-and-kernel",
        ok,
        f"alpha_mass_err={mass_err:.2e} g(12)_err={g12_err:.2e} "
        f"harmonic_rows_pass={rows_ok} kernel_worst={kernel_worst:.2e} "
        f"psi<=Xlog3_margin={hanson_margin:.4f}@n={hanson_arg} {elapsed:.1f}s",
    )


def test_acceptance_8_small_m_envelopes(table_big, table_e7, verdict):
    t0 = time.perf_counter()
    fails = []
    out1 = bounds.small_m_scan(table_e7, 10_000_000, 1)
    if out1["small-m-update"][0] <= 0.0:
        fails.append(("update", out1["small-m-update"]))
    out2 = bounds.small_m_scan(table_e7, 10_000_000, 2)
    # both branches of the q=2 pair on their stated ranges; the sqrt branch
    # touches equality as X -> 3^- so its sweep margin is exactly zero
    if out2["small-m2-sqrt"][0] < 0.0:
        fails.append(("m2-sqrt", out2["small-m2-sqrt"]))
    if out2["small-m2-log"][0] <= 0.0:
        fails.append(("m2-log", out2["small-m2-log"]))
    base_worst = math.inf
    for q in _squarefree_divisors_30030():
        out = bounds.small_m_scan(table_big, 100_000, q)
        m, arg = out["small-m-basemq"]
        base_worst = min(base_worst, m)
        if m < 0.0:
            fails.append(("basemq", q, arg))
    elapsed = time.perf_counter() - t0
    ok = not fails
    verdict(
        8,
        "small-m-envelopes",
        ok,
        f"update_margin={out1['small-m-update'][0]:.3g}@"
        f"{out1['small-m-update'][1]} m2_log_margin={out2['small-m2-log'][0]:.3g} "
        f"basemq_min_margin={base_worst:.3g} failures={fails[:4]} {elapsed:.1f}s",
    )

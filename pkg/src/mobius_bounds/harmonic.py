"""Partial sums of Lambda(n)/n measured against log X.

The driver is an exact integral identity: for a step function phi vanishing
near 0,

    int_0^X phi(t) dt/t^2
        = (2/X^2) int_0^X (sum_n phi(t/n)) dt
          - int_0^X phi(t) alpha(X/t) dt/t^2,

where alpha is the sawtooth kernel (2/X^2) sum_{n<=X} n - 1.  Applying it
to phi = psi (the Chebyshev step) and integrating the Stirling formula
turns sum_{n<=X} Lambda(n)/n - log X into a defect f(X) made of explicitly
integrable pieces; f is bounded by a smooth decreasing envelope g that is
negative from X = 12 on, and the finitely many integers below that are
checked directly.  Everything here integrates step-by-rational pieces in
closed form -- the final inequality has margin about 0.01 at X = 12, which
quadrature noise could eat.

A linear envelope psi(X) <= a*X with a < 3/(3 - gamma) = 1.23824... would
also close the argument from some threshold onward; that variant is only
noted here, not implemented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import ArithmeticTable, chebyshev_psi
from .reports import BoundRow, bound_row
from .util import GAMMA, LOG_2PI_HALF, CapacityError, floor_int

LOG3 = math.log(3.0)

# limits of the alpha mass integrals int_1^inf ... dx/x
ALPHA_NEG_MASS = (1.0 - GAMMA) / 2.0
ALPHA_TOTAL_MASS = GAMMA - 0.5

_PIECE_CAP = 4_000_000


# ----------------------------------------------------------------------
# The sawtooth kernel alpha and its primitive beta.


def alpha(t: float) -> float:
    """(1 - 2{t})/t - ({t} - {t}^2)/t^2, evaluated as k(k+1)/t^2 - 1 with
    k = [t]; right-continuous at integers, identically -1 on (0, 1)."""
    if t <= 0.0:
        raise ValueError("alpha is defined for t > 0")
    k = math.floor(t)
    return k * (k + 1.0) / (t * t) - 1.0


def beta(t: float) -> float:
    """({t} - {t}^2)/t; alpha is its right derivative."""
    if t <= 0.0:
        raise ValueError("beta is defined for t > 0")
    u = t - math.floor(t)
    return (u - u * u) / t


@dataclass(frozen=True)
class SawtoothPiece:
    """Closed form of alpha and beta on [k, k+1).

    x^2 alpha(x) = top - x^2 with top = k(k+1), so alpha changes sign
    exactly once on the piece, at x = sqrt(top) = k + t_k with
    0 < t_k < 1/2: positive before, negative after.
    """

    k: int
    t_k: float
    top: int

    @classmethod
    def at(cls, k: int) -> "SawtoothPiece":
        if k < 1:
            raise ValueError("piece index must be >= 1")
        top = k * (k + 1)
        return cls(k=k, t_k=math.sqrt(top) - k, top=top)

    def _check(self, x: float) -> None:
        if not self.k <= x < self.k + 1:
            raise ValueError(f"x={x} outside [{self.k}, {self.k + 1})")

    def alpha(self, x: float) -> float:
        self._check(x)
        return self.top / (x * x) - 1.0

    def beta(self, x: float) -> float:
        self._check(x)
        u = x - self.k
        return (u - u * u) / x


def neg_alpha_integral(K: int) -> float:
    """Mass of the negative part: sum_{k<=K} int over {alpha < 0} of
    |alpha(x)| dx/x on [k, k+1).

    Each piece integrates in closed form to (1/2)(log(1 + 1/k) - 1/(k+1)),
    which is positive and below 1/(2k(k+1)), so the partial sums increase
    to (1 - gamma)/2 with remainder in (0, 1/(2(K+1))).
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    if K == 0:
        return 0.0
    k = np.arange(1, K + 1, dtype=np.float64)
    terms = 0.5 * (np.log1p(1.0 / k) - 1.0 / (k + 1.0))
    return math.fsum(terms.tolist())


def signed_alpha_integral(K: int) -> float:
    """sum_{k<=K} int_k^{k+1} alpha(x) dx/x; increases to gamma - 1/2
    like 1/(12 K^2)."""
    if K < 0:
        raise ValueError("K must be >= 0")
    if K == 0:
        return 0.0
    k = np.arange(1, K + 1, dtype=np.float64)
    terms = (2.0 * k + 1.0) / (2.0 * k * (k + 1.0)) - np.log1p(1.0 / k)
    return math.fsum(terms.tolist())


# ----------------------------------------------------------------------
# Integrated Stirling formula.


def stirling_eps(t: float) -> float:
    """Remainder of sum_{n<=t} log n against
    t log t - t + (1/2 - {t}) log t + log(2 pi)/2; satisfies
    |stirling_eps(t)| <= 1/(8t)."""
    if t < 1.0:
        raise ValueError("t must be >= 1")
    n = math.floor(t)
    lt = math.log(t)
    main = t * lt - t + (0.5 - (t - n)) * lt + LOG_2PI_HALF
    return math.lgamma(n + 1.0) - main


def sawtooth_log_integral(X: float) -> float:
    """int_1^X (1/2 - {t}) log t dt, exact piecewise.

    Small pieces use the polynomial antiderivative; from m = 11 on the
    per-period value expands as sum_j (-1)^j / (2 (j+1)(j+2) m^j), which
    avoids the m^2 log m cancellation of the antiderivative route.  The
    result stays within log(X)/8 in absolute value.
    """
    if X < 1.0:
        raise ValueError("X must be >= 1")
    m_top = math.floor(X)
    parts = []
    for m in range(1, min(m_top, 10) + 1):
        hi = min(m + 1.0, X)
        if hi > m:
            parts.append(_sawtooth_log_piece_closed(m, float(m), hi))
    if m_top > 10:
        full = np.arange(11, m_top, dtype=np.float64)
        if full.size:
            acc = np.zeros_like(full)
            sign = -1.0
            for j in range(1, 19):
                acc += sign / (2.0 * (j + 1) * (j + 2)) * full ** (-float(j))
                sign = -sign
            parts.extend(acc.tolist())
        if X > m_top:
            parts.append(_sawtooth_log_piece_series(m_top, X - m_top))
    return math.fsum(parts)


def _sawtooth_log_piece_closed(m: int, a: float, b: float) -> float:
    # int_a^b (1/2 + m - t) log t dt on [m, m+1] via the antiderivative
    # (1/2 + m)(t log t - t) - t^2/2 log t + t^2/4; fine for small m only
    def anti(t: float) -> float:
        lt = math.log(t)
        return (0.5 + m) * (t * lt - t) - 0.5 * t * t * lt + 0.25 * t * t

    return anti(b) - anti(a)


def _sawtooth_log_piece_series(m: int, u1: float) -> float:
    # int_0^{u1} (1/2 - u) log(m + u) du with log(m+u) split off log m;
    # the log1p part expands in u1^j / m^j, alternating from j covering
    # the omitted tail
    head = math.log(m) * 0.5 * u1 * (1.0 - u1)
    acc = 0.0
    sign = 1.0
    for j in range(1, 40):
        term = (u1 ** (j + 1) / (2.0 * (j + 1)) - u1 ** (j + 2) / (j + 2)) / (
            j * float(m) ** j
        )
        acc += sign * term
        sign = -sign
        if abs(term) < 1e-18:
            break
    return head + acc


# ----------------------------------------------------------------------
# Exact integrals of step * alpha(X/t) / t^2.


def _alpha_kernel_integral(X, start, jumps, values_at):
    """int_start^X step(t) alpha(X/t) dt/t^2 with step constant between
    the given jump points.

    alpha(X/t) = (k^2+k) t^2/X^2 - 1 on the t-piece where k = [X/t], so a
    piece [a, b] with step value P contributes exactly
    P (b - a) ((k^2+k)/X^2 - 1/(a b)).  Breakpoints: the jumps, X/k, and
    the sign-change points X/(k + t_k).
    """
    if X <= start:
        return 0.0
    k_top = int(X / start) + 1
    if 2 * k_top + len(jumps) > _PIECE_CAP:
        raise CapacityError(f"breakpoint count near {2 * k_top} exceeds cap")
    k = np.arange(1, k_top + 1, dtype=np.float64)
    pts = np.concatenate([X / k, X / np.sqrt(k * (k + 1.0)), np.asarray(jumps, float)])
    pts = pts[(pts > start) & (pts < X)]
    bps = np.unique(np.concatenate([[start], pts, [X]]))
    a, b = bps[:-1], bps[1:]
    mid = 0.5 * (a + b)
    kk = np.floor(X / mid)
    vals = values_at(mid) * (b - a) * ((kk * kk + kk) / (X * X) - 1.0 / (a * b))
    return math.fsum(vals.tolist())


def psi_alpha_integral(table: ArithmeticTable, X: float) -> float:
    """int_0^X psi(t) alpha(X/t) dt/t^2, exact piecewise; psi steps at the
    prime powers and vanishes below 2."""
    if X < 1.0:
        raise ValueError("X must be >= 1")
    n = floor_int(X)
    table._check_range(n)
    jumps = np.nonzero(table.mangoldt_log[: n + 1] > 0.0)[0].astype(np.float64)
    psi = table.psi_prefix

    def values_at(mid: np.ndarray) -> np.ndarray:
        return psi[np.floor(mid).astype(np.int64)]

    return _alpha_kernel_integral(X, 2.0, jumps, values_at)


def lambda_harmonic_sum(table: ArithmeticTable, X: float) -> float:
    """sum_{n<=X} Lambda(n)/n."""
    n = floor_int(X)
    if n < 1:
        raise ValueError("X must be >= 1")
    table._check_range(n)
    nn = np.arange(n + 1, dtype=np.float64)
    nn[0] = 1.0
    return math.fsum((table.mangoldt_log[: n + 1] / nn).tolist())


def kernel_identity_check(table: ArithmeticTable, X: float, kind: str = "psi") -> float:
    """Residual of the two-route evaluation of int_0^X phi(t) dt/t^2.

    Left route: the integral directly (phi steps, so it is an exact sum).
    Right route: (2/X^2) int_0^X (sum_n phi(t/n)) dt minus the alpha-kernel
    integral.  kind "psi" takes phi = the Chebyshev step, for which
    sum_n phi(t/n) = log([t]!); kind "indicator_test" takes phi = 1_{t>=1},
    for which it is [t].  Both routes are closed-form; the residual should
    sit at float noise (<= 1e-9).
    """
    if X < 1.0:
        raise ValueError("X must be >= 1")
    n = floor_int(X)
    if kind == "psi":
        table._check_range(n)
        nn = np.arange(n + 1, dtype=np.float64)
        nn[0] = 1.0
        lam = table.mangoldt_log[: n + 1]
        lhs = math.fsum((lam * (1.0 / nn - 1.0 / X)).tolist())
        # int_0^X log([t]!) dt: unit pieces plus the clipped last one
        js = np.arange(1, n, dtype=np.float64)
        area = math.fsum(
            [math.lgamma(j + 1.0) for j in js.tolist()]
            + [(X - n) * math.lgamma(n + 1.0)]
        )
        rhs = 2.0 / (X * X) * area - psi_alpha_integral(table, X)
        return lhs - rhs
    if kind == "indicator_test":
        lhs = 1.0 - 1.0 / X
        area = 0.5 * n * (n - 1.0) + (X - n) * n  # int_0^X [t] dt
        kernel = _alpha_kernel_integral(
            X, 1.0, np.empty(0), lambda mid: np.ones_like(mid)
        )
        rhs = 2.0 / (X * X) * area - kernel
        return lhs - rhs
    raise ValueError(f"unknown kind {kind!r}")


# ----------------------------------------------------------------------
# The defect f and its envelope g.


def f_of(table: ArithmeticTable, X: float) -> float:
    """Defect of the prime harmonic sum: sum_{n<=X} Lambda(n)/n - log X,
    assembled from its closed-form pieces.

        f(X) = psi(X)/X - 3/2 - int_0^X psi(t) alpha(X/t) dt/t^2
               + log(2 pi)/X + (2/X^2) int_1^X (1/2 - {t}) log t dt
               - 1/(2 X^2) + 2 eps(X)/X + ({X} - {X}^2)/X^2

    with eps = stirling_eps.  Matches the direct sum to float noise.
    """
    if X < 1.0:
        raise ValueError("X must be >= 1")
    u = X - math.floor(X)
    return math.fsum(
        [
            chebyshev_psi(table, X) / X,
            -1.5,
            -psi_alpha_integral(table, X),
            2.0 * LOG_2PI_HALF / X,
            2.0 * sawtooth_log_integral(X) / (X * X),
            -0.5 / (X * X),
            2.0 * stirling_eps(X) / X,
            (u - u * u) / (X * X),
        ]
    )


def g_of(X: float) -> float:
    """Decreasing envelope of the defect:
    log 3 - 3/2 + (1 - gamma) log(3)/2 + log(2 pi)/X + log(X)/(4 X^2);
    negative from X = 12 on."""
    if X < 1.0:
        raise ValueError("X must be >= 1")
    return math.fsum(
        [
            LOG3 - 1.5,
            ALPHA_NEG_MASS * LOG3,
            2.0 * LOG_2PI_HALF / X,
            math.log(X) / (4.0 * X * X),
        ]
    )


def g_slope(X: float) -> float:
    """g'(X) = -log(2 pi)/X^2 + 1/(4 X^3) - log(X)/(2 X^3); < 0 for X >= 1."""
    if X < 1.0:
        raise ValueError("X must be >= 1")
    x2 = X * X
    return -2.0 * LOG_2PI_HALF / x2 + 0.25 / (x2 * X) - math.log(X) / (2.0 * x2 * X)


# ----------------------------------------------------------------------
# The inequality itself.


def verify_harmonic(table: ArithmeticTable, x_max: float) -> list[BoundRow]:
    """sum_{n<=X} Lambda(n)/n <= log X for all X in [1, x_max].

    The left side jumps only at integers and log grows, so checking each
    integer N (sum taken inclusive of Lambda(N)) covers the continuum.
    Returns rows for the small cases plus one aggregate row at the integer
    with the least slack; the scan itself runs over every integer.
    """
    n = floor_int(x_max)
    if n < 1:
        raise ValueError("x_max must be >= 1")
    table._check_range(n)
    nn = np.arange(n + 1, dtype=np.float64)
    nn[0] = 1.0
    csum = np.cumsum(table.mangoldt_log[: n + 1] / nn)
    rows = []
    for small in (1, 2, 3, 4, 5, 7, 8, 9, 11):
        if small > n:
            continue
        lhs = lambda_harmonic_sum(table, float(small))
        rows.append(
            bound_row("harmonic", float(small), 1, "", lhs=lhs, bound=math.log(small))
        )
    if n >= 2:
        margins = np.log(nn[2:]) - csum[2:]
        worst = int(margins.argmin()) + 2
        lhs = lambda_harmonic_sum(table, float(worst))
        rows.append(
            bound_row(
                "harmonic",
                float(worst),
                1,
                f"scan n<={n}",
                lhs=lhs,
                bound=math.log(worst),
                lhs_err=float(n) * 4e-16,
            )
        )
    return rows


def hanson_scan(table: ArithmeticTable, n_max: int | None = None) -> tuple[float, int]:
    """min over integers 1..n_max of (X log 3 - psi(X)); positive iff the
    linear psi envelope with slope log 3 holds on the range."""
    n = table.limit if n_max is None else int(n_max)
    table._check_range(n)
    nn = np.arange(n + 1, dtype=np.float64)
    margins = nn[1:] * LOG3 - table.psi_prefix[1 : n + 1]
    k = int(margins.argmin())
    return float(margins[k]), k + 1


# ----------------------------------------------------------------------
# Suites.


def _suite_harmonic(table: ArithmeticTable) -> list[BoundRow]:
    return verify_harmonic(table, float(min(table.limit, 100_000)))


def _suite_defect(table: ArithmeticTable) -> list[BoundRow]:
    lim = table.limit
    rows = []
    for X in (1.0, 1.5, 4.0, 12.0, 144.5, 1e4):
        if X > lim:
            continue
        resid = abs(lambda_harmonic_sum(table, X) - math.log(X) - f_of(table, X))
        rows.append(bound_row("harmonic-f", X, 1, "sum identity", lhs=resid, bound=1e-9))
    for X in (1.0, 12.0, 50.0, 1e3, 1e5):
        if X > lim:
            continue
        rows.append(
            bound_row(
                "harmonic-fg", X, 1, "f below g", lhs=f_of(table, X), bound=g_of(X)
            )
        )
    for X in (1.0, 2.0, 10.0, 1e3):
        if X > lim:
            continue
        for kind in ("psi", "indicator_test"):
            resid = abs(kernel_identity_check(table, X, kind))
            rows.append(
                bound_row("kernel-identity", X, 1, kind, lhs=resid, bound=1e-9)
            )
    margin, arg = hanson_scan(table)
    rows.append(
        bound_row(
            "hanson",
            float(arg),
            1,
            f"scan n<={lim}",
            lhs=float(table.psi_prefix[arg]),
            bound=arg * LOG3,
            lhs_err=float(lim) * 4e-16,
        )
    )
    K = 10**6
    rows.append(
        bound_row(
            "alpha-mass",
            float(K),
            1,
            "negative part",
            lhs=abs(neg_alpha_integral(K) - ALPHA_NEG_MASS),
            bound=0.5 / (K + 1),
        )
    )
    return rows


SUITES = {
    "harmonic": _suite_harmonic,
    "defect": _suite_defect,
}

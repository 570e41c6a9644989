"""Shared numeric helpers: exact-ish floors, stable exponentials, constants.

Everything here is plain float64 arithmetic.  Error control is by construction
(expm1/log1p style reformulations) rather than by interval arithmetic; the
certified comparisons elsewhere attach explicit error budgets on top.
"""
from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass

EPS = sys.float_info.epsilon

LOG2 = math.log(2.0)
LOG10 = math.log(10.0)
LOG_2PI_HALF = 0.91893853320467274178032973640561763986139747363778  # log(2*pi)/2

# Euler-Mascheroni constant and the first Stieltjes constants, 30+ digits.
GAMMA = 0.57721566490153286060651209008240243104
GAMMA1 = -0.07281584548367672486058637587490131914
GAMMA2 = -0.00969036319287231848453038603521252936
GAMMA3 = 0.00205383442030334586616004654271182072

# Exponents fixed once and for all by the bound formulas.
XI = 1.0 - 1.0 / (12.0 * LOG10)
THETA = 1.0 - 1.0 / (14.0 * LOG10)


class CapacityError(ValueError):
    """Requested work exceeds the configured table/breakpoint budget."""


class PrecisionError(ArithmeticError):
    """A requested tolerance could not be reached within the iteration cap."""


class BracketError(RuntimeError):
    """A root-finding bracket failed to straddle a sign change."""


class NearZeroError(ArithmeticError):
    """A denominator is smaller than its own evaluation error."""


def floor_int(x: float) -> int:
    """Floor of a real input with an exactness guard.

    Values within a few ulp of an integer are snapped to that integer, so
    that e.g. 0.1*30 = 2.9999999999999996 counts as 3 while a deliberate
    2.999 still floors to 2.
    """
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"floor_int: non-finite input {x!r}")
    r = round(x)
    if abs(x - r) <= 32.0 * EPS * max(1.0, abs(x)):
        return int(r)
    return math.floor(x)


def frac(x: float) -> float:
    """Fractional part {x} = x - floor(x), in [0, 1)."""
    return x - math.floor(x)


def expm1c(z: complex | float) -> complex | float:
    """exp(z) - 1, stable for small z; accepts real or complex arguments."""
    if isinstance(z, complex):
        if z.imag == 0.0:
            return complex(math.expm1(z.real), 0.0)
        if abs(z) < 1e-4:
            # Taylor head keeps relative error at the 1e-16 scale.
            return z * (1.0 + z / 2.0 * (1.0 + z / 3.0 * (1.0 + z / 4.0)))
        return cmath.exp(z) - 1.0
    return math.expm1(z)


def one_minus_two_pow(w: complex | float) -> complex | float:
    """1 - 2^(-w), stable near w = 0.  Equals (s-1)*c(s) with w = s-1."""
    return -expm1c(-w * LOG2)


def powm1_over(w: float, lny: float) -> float:
    """(1 - y^(-w))/w for y = exp(lny), with the w -> 0 limit lny.

    Used for interval suprema where the naive quotient cancels badly.
    """
    if w == 0.0:
        return lny
    return -math.expm1(-w * lny) / w


# ----------------------------------------------------------------------
# Certified three-way comparisons.
#
# A comparison whose value intervals overlap returns "inconclusive", never
# a verdict: an inequality must not be claimed on rounding noise.

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Approx:
    """A computed value together with an absolute evaluation-error bound."""

    value: complex
    err: float

    @property
    def real(self) -> float:
        return self.value.real if isinstance(self.value, complex) else self.value

    def __abs__(self) -> "Approx":
        return Approx(abs(self.value), self.err)

    def scale(self, factor: float) -> "Approx":
        return Approx(self.value * factor, self.err * abs(factor))


def as_approx(x: "Approx | float", err: float = 0.0) -> Approx:
    if isinstance(x, Approx):
        return x
    return Approx(float(x), err)


def approx_div(a: Approx, b: Approx) -> Approx:
    """a/b with first-order error propagation; refuses near-zero divisors."""
    bv = abs(b.value)
    if bv <= 4.0 * b.err:
        raise NearZeroError(
            f"divisor {b.value!r} smaller than 4x its error bound {b.err:g}"
        )
    val = a.value / b.value
    err = (a.err + abs(val) * b.err) / (bv - b.err)
    return Approx(val, err)


def approx_mul(a: Approx, b: Approx) -> Approx:
    val = a.value * b.value
    err = abs(a.value) * b.err + abs(b.value) * a.err + a.err * b.err
    return Approx(val, err)


def approx_add(a: Approx, b: Approx) -> Approx:
    return Approx(a.value + b.value, a.err + b.err)


def cert_le(a: "Approx | float", b: "Approx | float", strict: bool = False) -> str:
    """Three-way verdict for a <= b (or a < b when strict)."""
    aa, bb = as_approx(a), as_approx(b)
    av, bv = aa.real, bb.real
    lo_gap = (bv - bb.err) - (av + aa.err)
    hi_gap = (av - aa.err) - (bv + bb.err)
    if strict:
        if lo_gap > 0.0:
            return PASS
        if hi_gap >= 0.0:
            return FAIL
        return INCONCLUSIVE
    if lo_gap >= 0.0:
        return PASS
    if hi_gap > 0.0:
        return FAIL
    return INCONCLUSIVE


def combine_verdicts(*verdicts: str) -> str:
    if any(v == FAIL for v in verdicts):
        return FAIL
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE
    return PASS

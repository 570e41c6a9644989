"""Sieve tables and truncated Mobius / Chebyshev sums.

The central object is an ArithmeticTable holding, for 0 <= n <= limit,

    mu[n]             Mobius function (int8)
    liouville[n]      Liouville function (-1)^Omega(n) (int8)
    mangoldt_log[n]   von Mangoldt weight: log p if n = p^k else 0 (float64)
    mertens_prefix[n] sum_{m<=n} mu[m] (int64)

built by a segmented sieve with a fixed 2^20-entry segment.  On top of the
table live the weighted partial sums used everywhere else:

    m_q(X)          = sum_{n<=X, (n,q)=1} mu(n)/n
    m_q(X; s)       = sum_{n<=X, (n,q)=1} mu(n)/n^s
    mcheck_q(X; s)  = sum_{n<=X, (n,q)=1} mu(n) log(X/n)/n^s

Scalar evaluations accumulate with math.fsum (exactly rounded), so the
relative error budget of 2^-40 is met with a wide margin on the supported
domain.  Complex powers use n^-s = exp(-(s-1) log n)/n, which makes the
s = 1 path bit-identical to the plain harmonic-weighted sum.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from math import fsum, isqrt
from pathlib import Path

import numpy as np

from .util import CapacityError, floor_int

SEGMENT = 1 << 20
DEFAULT_LIMIT_BUDGET = 200_000_000  # ~18 bytes/entry across the four arrays

_CACHE_MAGIC = b"MUT1"
_CACHE_VERSION = 1


# ----------------------------------------------------------------------
# Moduli


@dataclass(frozen=True)
class Modulus:
    """A squarefree-kernel view of a modulus q.

    Only the set of primes dividing q matters for coprimality filters and
    for the Euler products q^s/phi_s(q), so the kernel (radical) is stored
    alongside the original q.
    """

    q: int
    primes: tuple[int, ...]
    kernel: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"modulus must be positive, got {self.q}")
        k = 1
        for p in self.primes:
            if p < 2:
                raise ValueError(f"bad prime {p} in modulus")
            k *= p
        if k != self.kernel:
            raise ValueError("kernel does not match the prime list")
        if self.q % self.kernel:
            raise ValueError("kernel must divide q")

    @classmethod
    def from_int(cls, q: int) -> "Modulus":
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        primes = []
        m = q
        d = 2
        while d * d <= m:
            if m % d == 0:
                primes.append(d)
                while m % d == 0:
                    m //= d
            d += 1 if d == 2 else 2
        if m > 1:
            primes.append(m)
        kernel = 1
        for p in primes:
            kernel *= p
        return cls(q=q, primes=tuple(primes), kernel=kernel)

    @classmethod
    def coerce(cls, q: "Modulus | int") -> "Modulus":
        if isinstance(q, Modulus):
            return q
        return cls.from_int(int(q))

    @property
    def q_over_phi(self) -> float:
        """q/phi(q) = prod_{p|q} p/(p-1); depends on the kernel only."""
        out = 1.0
        for p in self.primes:
            out *= p / (p - 1.0)
        return out

    def coprime_mask(self, n: int) -> np.ndarray:
        """Boolean array of length n+1; entry k is True iff gcd(k, q) = 1.

        Index 0 is False by convention.
        """
        mask = np.ones(n + 1, dtype=bool)
        mask[0] = False
        for p in self.primes:
            if p <= n:
                mask[p::p] = False
        return mask

    def is_coprime(self, n: int) -> bool:
        return math.gcd(n, self.kernel) == 1


ONE = Modulus(q=1, primes=(), kernel=1)


# ----------------------------------------------------------------------
# Segmented sieve


def _small_primes(limit: int) -> np.ndarray:
    """Primes <= limit via a plain boolean sieve."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.nonzero(is_prime)[0].astype(np.int64)


class ArithmeticTable:
    """Immutable sieve table up to `limit` (inclusive)."""

    def __init__(
        self,
        limit: int,
        mu: np.ndarray,
        liouville: np.ndarray,
        mangoldt_log: np.ndarray,
        mertens_prefix: np.ndarray,
    ) -> None:
        self.limit = limit
        self.mu = mu
        self.liouville = liouville
        self.mangoldt_log = mangoldt_log
        self.mertens_prefix = mertens_prefix
        for arr in (mu, liouville, mangoldt_log, mertens_prefix):
            arr.flags.writeable = False
        self._psi_prefix: np.ndarray | None = None

    @property
    def psi_prefix(self) -> np.ndarray:
        """psi(n) = sum_{m<=n} Lambda(m), cached on first use."""
        if self._psi_prefix is None:
            psi = np.cumsum(self.mangoldt_log)
            psi.flags.writeable = False
            self._psi_prefix = psi
        return self._psi_prefix

    def mertens(self, x: float) -> int:
        n = floor_int(x)
        if n < 0:
            return 0
        self._check_range(n)
        return int(self.mertens_prefix[n]) if n >= 1 else 0

    def _check_range(self, n: int) -> None:
        if n > self.limit:
            raise CapacityError(
                f"argument needs sieve data up to {n}, table holds {self.limit}"
            )


def build_table(limit: int, budget: int = DEFAULT_LIMIT_BUDGET) -> ArithmeticTable:
    """Sieve mu, liouville, mangoldt_log and the Mertens prefix up to limit."""
    if limit < 1:
        raise CapacityError(f"table limit must be >= 1, got {limit}")
    if limit > budget:
        raise CapacityError(f"table limit {limit} exceeds budget {budget}")

    n = limit + 1
    mu = np.zeros(n, dtype=np.int8)
    liou = np.zeros(n, dtype=np.int8)
    mangoldt = np.zeros(n, dtype=np.float64)
    base = _small_primes(isqrt(limit))

    for lo in range(1, n, SEGMENT):
        hi = min(lo + SEGMENT, n)
        _sieve_segment(lo, hi, base, mu, liou, mangoldt)

    # prime powers p^k with p <= sqrt(limit); larger primes were caught in
    # the segments (their residue after small-prime division equals n).
    for p in base.tolist():
        logp = math.log(p)
        pk = p
        while pk <= limit:
            mangoldt[pk] = logp
            pk *= p

    mertens = np.cumsum(mu, dtype=np.int64)
    liou[0] = 0
    return ArithmeticTable(limit, mu, liou, mangoldt, mertens)


def _sieve_segment(
    lo: int,
    hi: int,
    base: np.ndarray,
    mu: np.ndarray,
    liou: np.ndarray,
    mangoldt: np.ndarray,
) -> None:
    length = hi - lo
    omega = np.zeros(length, dtype=np.int8)
    squarefree = np.ones(length, dtype=bool)
    nvals = np.arange(lo, hi, dtype=np.int64)
    rem = nvals.copy()

    for p in base.tolist():
        if p >= hi:
            break
        pk = p
        while pk < hi:
            start = (-lo) % pk
            if start < length:
                sl = slice(start, length, pk)
                omega[sl] += 1
                rem[sl] //= p
            pk *= p
        p2 = p * p
        start = (-lo) % p2
        if start < length:
            squarefree[slice(start, length, p2)] = False

    large = rem > 1
    omega[large] += 1
    lam = np.where(omega & 1, -1, 1).astype(np.int8)
    mu[lo:hi] = np.where(squarefree, lam, 0).astype(np.int8)
    liou[lo:hi] = lam

    # n > 1 untouched by every small prime is itself prime (n <= limit < p'^2).
    prime_here = (rem == nvals) & (nvals > 1)
    if prime_here.any():
        idx = np.nonzero(prime_here)[0]
        mangoldt[lo + idx] = np.log(nvals[idx].astype(np.float64))


# ----------------------------------------------------------------------
# Binary cache of the packed mu table

_HEADER = struct.Struct("<4sIQ")


def save_mu_cache(path: str | Path, table: ArithmeticTable) -> None:
    """Write the mu array as 2-bit codes (mu+1 in {0,1,2}), 4 values/byte."""
    codes = (table.mu.astype(np.int16) + 1).astype(np.uint8)
    pad = (-len(codes)) % 4
    if pad:
        codes = np.concatenate([codes, np.zeros(pad, dtype=np.uint8)])
    packed = (
        codes[0::4] | (codes[1::4] << 2) | (codes[2::4] << 4) | (codes[3::4] << 6)
    )
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_CACHE_MAGIC, _CACHE_VERSION, table.limit))
        fh.write(packed.tobytes())


def load_mu_cache(path: str | Path) -> tuple[int, np.ndarray]:
    """Read a packed mu cache; returns (limit, mu) with an exact round-trip."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise ValueError("mu cache: truncated header")
        magic, version, limit = _HEADER.unpack(head)
        if magic != _CACHE_MAGIC:
            raise ValueError(f"mu cache: bad magic {magic!r}")
        if version != _CACHE_VERSION:
            raise ValueError(f"mu cache: unsupported version {version}")
        payload = np.frombuffer(fh.read(), dtype=np.uint8)
    need = (limit + 1 + 3) // 4
    if len(payload) != need:
        raise ValueError(
            f"mu cache: payload has {len(payload)} bytes, expected {need}"
        )
    codes = np.empty(4 * len(payload), dtype=np.uint8)
    codes[0::4] = payload & 3
    codes[1::4] = (payload >> 2) & 3
    codes[2::4] = (payload >> 4) & 3
    codes[3::4] = (payload >> 6) & 3
    mu = codes[: limit + 1].astype(np.int8) - 1
    return limit, mu


# ----------------------------------------------------------------------
# Weighted partial sums


def _selected_terms(
    table: ArithmeticTable, n: int, q: Modulus
) -> tuple[np.ndarray, np.ndarray]:
    """Indices k <= n with mu(k) != 0 and gcd(k, q) = 1, plus mu values."""
    table._check_range(n)
    mu = table.mu[: n + 1]
    keep = mu != 0
    if q.primes:
        keep = keep & q.coprime_mask(n)
    idx = np.nonzero(keep)[0]
    return idx, mu[idx].astype(np.float64)


def m_q(table: ArithmeticTable, x: float, q: Modulus | int = ONE) -> float:
    """sum_{n<=x, (n,q)=1} mu(n)/n, exactly-rounded accumulation."""
    q = Modulus.coerce(q)
    n = floor_int(x)
    if n < 1:
        return 0.0
    idx, muv = _selected_terms(table, n, q)
    return fsum((muv / idx).tolist())


def m_q_s(
    table: ArithmeticTable, x: float, q: Modulus | int, s: complex
) -> complex:
    """sum_{n<=x, (n,q)=1} mu(n)/n^s for Re s > 0.

    n^-s is computed as exp(-(s-1) log n)/n so that s = 1 reproduces m_q
    exactly, term by term.
    """
    s = complex(s)
    if s.real <= 0.0:
        raise ValueError(f"requires Re s > 0, got s = {s}")
    q = Modulus.coerce(q)
    n = floor_int(x)
    if n < 1:
        return 0j
    if s == 1.0:
        return complex(m_q(table, x, q))
    idx, muv = _selected_terms(table, n, q)
    logs = np.log(idx.astype(np.float64))
    terms = muv / idx * np.exp(-(s - 1.0) * logs)
    return complex(fsum(terms.real.tolist()), fsum(terms.imag.tolist()))


def m_check_q_s(
    table: ArithmeticTable, x: float, q: Modulus | int = ONE, s: complex = 1.0
) -> complex:
    """sum_{n<=x, (n,q)=1} mu(n) log(x/n)/n^s; real s gives a real value.

    Continuous in x: each term enters with weight log(x/n) = 0 at n = x.
    """
    s = complex(s)
    if s.real <= 0.0:
        raise ValueError(f"requires Re s > 0, got s = {s}")
    q = Modulus.coerce(q)
    n = floor_int(x)
    if n < 1:
        return 0j
    idx, muv = _selected_terms(table, n, q)
    logs = np.log(idx.astype(np.float64))
    weights = math.log(x) - logs
    base = muv / idx * weights
    if s == 1.0:
        return complex(fsum(base.tolist()), 0.0)
    terms = base * np.exp(-(s - 1.0) * logs)
    return complex(fsum(terms.real.tolist()), fsum(terms.imag.tolist()))


def m_check_q(table: ArithmeticTable, x: float, q: Modulus | int = ONE) -> float:
    """Real shortcut for the log-weighted sum at s = 1."""
    return m_check_q_s(table, x, q, 1.0).real


def log_moment_sum(
    table: ArithmeticTable,
    x: float,
    q: Modulus | int,
    sigma: float,
    k: int,
) -> tuple[float, float]:
    """sum_{n<=x,(n,q)=1} mu(n) log^k(x/n)/n^sigma with an error estimate.

    Returns (value, err) where err bounds the accumulated rounding of the
    term-wise powers/logs (the fsum itself is exactly rounded).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    q = Modulus.coerce(q)
    n = floor_int(x)
    if n < 1:
        return 0.0, 0.0
    idx, muv = _selected_terms(table, n, q)
    logs = np.log(idx.astype(np.float64))
    weights = (math.log(x) - logs) ** k
    terms = muv / idx * weights
    if sigma != 1.0:
        terms = terms * np.exp(-(sigma - 1.0) * logs)
    mass = fsum(np.abs(terms).tolist())
    err = 8.0 * (2.0 + k) * np.finfo(float).eps * mass
    return fsum(terms.tolist()), err


# ----------------------------------------------------------------------
# Prefix-sum builders for vectorized scans


def prefix_m_q(
    table: ArithmeticTable, n: int, q: Modulus | int = ONE, sigma: float = 1.0
) -> np.ndarray:
    """Array P with P[k] = m_q(k; sigma) for 0 <= k <= n (float64 cumsum)."""
    q = Modulus.coerce(q)
    table._check_range(n)
    vals = table.mu[: n + 1].astype(np.float64)
    if q.primes:
        vals[~q.coprime_mask(n)] = 0.0
    vals[0] = 0.0
    kk = np.arange(n + 1, dtype=np.float64)
    kk[0] = 1.0
    if sigma == 1.0:
        vals[1:] /= kk[1:]
    else:
        vals[1:] *= kk[1:] ** (-sigma)
    return np.cumsum(vals)


def prefix_log_moment(
    table: ArithmeticTable,
    n: int,
    q: Modulus | int,
    sigma: float,
    j: int,
) -> np.ndarray:
    """Cumsum of mu(k) (-log k)^j / k^sigma over coprime k <= n."""
    q = Modulus.coerce(q)
    table._check_range(n)
    vals = table.mu[: n + 1].astype(np.float64)
    if q.primes:
        vals[~q.coprime_mask(n)] = 0.0
    vals[0] = 0.0
    kk = np.arange(n + 1, dtype=np.float64)
    kk[0] = 1.0
    logs = np.log(kk)
    vals[1:] *= kk[1:] ** (-sigma)
    if j:
        vals[1:] *= (-logs[1:]) ** j
    return np.cumsum(vals)


# ----------------------------------------------------------------------
# q^infty divisors and the dyadic tail window


def q_inf_divisors(q: Modulus | int, x: float) -> list[int]:
    """All integers <= x whose prime factors all divide q, sorted.

    q = 1 gives [1].  The enumeration is a DFS over prime exponents, so the
    cost is proportional to the output size (O((log x)^omega(q)) entries).
    """
    q = Modulus.coerce(q)
    if x < 1:
        return []
    bound = x
    out: list[int] = []
    primes = q.primes

    def rec(i: int, val: int) -> None:
        if i == len(primes):
            out.append(val)
            return
        p = primes[i]
        while val <= bound:
            rec(i + 1, val)
            val *= p

    rec(0, 1)
    out.sort()
    return out


def g1_window(q: Modulus | int, x: float) -> float:
    """sum of 1/l over q^infty-divisors l with x/2 < l <= x."""
    q = Modulus.coerce(q)
    half = x / 2.0
    ells = [ell for ell in q_inf_divisors(q, x) if ell > half]
    return fsum(1.0 / ell for ell in ells)


# ----------------------------------------------------------------------
# Chebyshev psi


def chebyshev_psi(table: ArithmeticTable, x: float) -> float:
    """psi(x) = sum_{n<=x} Lambda(n)."""
    n = floor_int(x)
    if n < 2:
        return 0.0
    table._check_range(n)
    return float(table.psi_prefix[n])

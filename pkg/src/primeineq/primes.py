"""Prime generation, primality testing, counting, and Chebyshev theta sums.

The central object is :class:`PrimeTable`, a segmented-sieve-backed store of
every prime up to a limit.  Tables are immutable after construction and safe
to share between threads; they never grow on their own, so callers that need
a larger range build a new table explicitly.
"""

from __future__ import annotations

import math
import os
import struct
from array import array
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import gcd, isqrt, log

from .errors import InputError, OutOfRangeError, ResourceLimitError

# Memory cap for build_table: estimated prime storage plus sieve buffers must
# fit below this many bytes.  Generous enough for limits around 5*10^8.
DEFAULT_MEMORY_BUDGET = 256 * 1024 * 1024

# One segment byte covers one odd number, so the default spans ~2M integers.
DEFAULT_SEGMENT_BYTES = 1 << 20

# Strong-pseudoprime bases proven sufficient for every n < 2^64
# (Sinclair/Feitsma verification; each base may itself be composite).
_BASES_64 = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)

# Above 2^64 the answer is probabilistic: 24 strong-probable-prime rounds
# with the first 24 primes as bases (error probability < 4^-24).
_BASES_BIG = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37,
              41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89)
PROBABLE_PRIME_ROUNDS = len(_BASES_BIG)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

DETERMINISTIC_LIMIT = 1 << 64

_CACHE_MAGIC = b"PIQSIEVE"
_CACHE_VERSION = 1


def _strong_probable_prime(n: int, bases) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality of n: exact below 2^64, strong-probable-prime beyond.

    Below 2^64 the fixed witness set decides deterministically.  For larger n
    the answer is a probable-prime verdict after PROBABLE_PRIME_ROUNDS rounds;
    callers that report on such numbers should flag the result as
    probabilistic (see requires_probable_prime).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < DETERMINISTIC_LIMIT:
        return _strong_probable_prime(n, _BASES_64)
    return _strong_probable_prime(n, _BASES_BIG)


def requires_probable_prime(n: int) -> bool:
    """True when is_prime(n) falls back to the probable-prime test."""
    return n >= DETERMINISTIC_LIMIT


def euler_phi(b: int) -> int:
    """Euler totient via trial-division factorization of b."""
    if b < 1:
        raise InputError(f"euler_phi requires b >= 1, got {b}")
    result = b
    m = b
    d = 2
    while d * d <= m:
        if m % d == 0:
            result -= result // d
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        result -= result // m
    return result


@dataclass(frozen=True)
class ThetaValue:
    """Sum of ln p over primes p <= x, optionally restricted to p = a (mod b).

    modulus 1 is the unrestricted sum.  value is accumulated with math.fsum,
    so it is the correctly rounded double of the exact sum.
    """

    x: int
    modulus: int
    residue: int
    value: float


class PrimeTable:
    """All primes up to ``limit``, in ascending order.

    Immutable after construction; answers membership, counting, nth-prime,
    and theta queries.  Use :func:`build_table` to construct one.
    """

    __slots__ = ("limit", "primes", "count", "_logs")

    def __init__(self, limit: int, primes: array):
        self.limit = limit
        self.primes = primes
        self.count = len(primes)
        self._logs = None

    def __len__(self) -> int:
        return self.count

    def __iter__(self):
        return iter(self.primes)

    def __contains__(self, n) -> bool:
        i = bisect_left(self.primes, n)
        return i < self.count and self.primes[i] == n

    def __repr__(self) -> str:
        return f"PrimeTable(limit={self.limit}, count={self.count})"

    def nth_prime(self, i: int) -> int:
        """The i-th prime, 1-based: nth_prime(1) == 2."""
        if i < 1 or i > self.count:
            raise OutOfRangeError(
                f"prime index {i} outside table (count {self.count}); "
                "build a larger table")
        return self.primes[i - 1]

    def prime_pi(self, x: int) -> int:
        """Number of primes <= x."""
        if x > self.limit:
            raise OutOfRangeError(
                f"pi({x}) beyond table limit {self.limit}; build a larger table")
        if x < 2:
            return 0
        return bisect_right(self.primes, x)

    def _log_cache(self):
        # Lazily computed; recomputation by a racing thread is idempotent.
        if self._logs is None:
            self._logs = array("d", map(log, self.primes))
        return self._logs

    def theta(self, x: int) -> ThetaValue:
        """Chebyshev theta: sum of ln p over primes p <= x."""
        if x > self.limit:
            raise OutOfRangeError(
                f"theta({x}) beyond table limit {self.limit}")
        n = self.prime_pi(x) if x >= 2 else 0
        value = math.fsum(self._log_cache()[:n]) if n else 0.0
        return ThetaValue(x=x, modulus=1, residue=0, value=value)

    def theta_ap(self, x: int, b: int, a: int) -> ThetaValue:
        """Theta restricted to the progression p = a (mod b); needs gcd(a,b)=1."""
        if b < 1:
            raise InputError(f"modulus must be >= 1, got {b}")
        if gcd(a, b) != 1:
            raise InputError(
                f"residue {a} not coprime to modulus {b}: the progression "
                "carries at most one prime")
        if x > self.limit:
            raise OutOfRangeError(
                f"theta({x}; {b}, {a}) beyond table limit {self.limit}")
        residue = a % b
        n = self.prime_pi(x) if x >= 2 else 0
        logs = self._log_cache()
        primes = self.primes
        value = math.fsum(logs[i] for i in range(n) if primes[i] % b == residue)
        return ThetaValue(x=x, modulus=b, residue=residue, value=value)


def _simple_odd_sieve(limit: int) -> bytearray:
    """Flags for odd numbers: flags[i] == 0 iff 2*i+1 is prime (i >= 1)."""
    size = (limit + 1) // 2
    flags = bytearray(size)
    if size:
        flags[0] = 1  # 1 is not prime
    i = 1
    while True:
        p = 2 * i + 1
        if p * p > limit:
            break
        if not flags[i]:
            start = (p * p) // 2
            step_count = len(range(start, size, p))
            flags[start::p] = b"\x01" * step_count
        i += 1
    return flags


def _estimated_prime_count(limit: int) -> int:
    if limit < 17:
        return 7
    return int(1.26 * limit / log(limit)) + 16


def build_table(limit: int,
                memory_budget: int = DEFAULT_MEMORY_BUDGET,
                segment_bytes: int = DEFAULT_SEGMENT_BYTES) -> PrimeTable:
    """Sieve all primes up to ``limit`` (inclusive) into a PrimeTable.

    The sieve is segmented: peak memory is the prime storage itself plus a
    base sieve up to sqrt(limit) and one segment buffer, and the estimated
    total is checked against ``memory_budget`` before any allocation.
    """
    if limit < 2:
        raise InputError(f"build_table requires limit >= 2, got {limit}")
    estimate = 8 * _estimated_prime_count(limit) + isqrt(limit) + segment_bytes
    if estimate > memory_budget:
        raise ResourceLimitError(
            f"limit {limit} needs ~{estimate} bytes, over the budget of "
            f"{memory_budget}; raise memory_budget to proceed")

    primes = array("q", [2])
    if limit < 3:
        return PrimeTable(limit, primes)

    root = isqrt(limit)
    base_flags = _simple_odd_sieve(max(root, 3))
    base_primes = [2 * i + 1 for i in range(1, len(base_flags)) if not base_flags[i]]

    ones = b"\x01" * (segment_bytes // 3 + 2)
    low = 3
    seg = bytearray(segment_bytes)
    while low <= limit:
        high = min(low + 2 * segment_bytes - 2, limit)
        size = (high - low) // 2 + 1  # odd numbers low, low+2, ..., high
        if size != len(seg):
            seg = bytearray(size)
        else:
            seg[:] = bytes(size)
        for p in base_primes:
            if p * p > high:
                break
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start > high:
                continue
            idx = (start - low) // 2
            count = (size - idx + p - 1) // p
            seg[idx::p] = ones[:count]
        # bytearray.find runs in C; cheaper than a Python-level scan
        i = seg.find(0)
        while i != -1:
            primes.append(low + 2 * i)
            i = seg.find(0, i + 1)
        low = high + 2 if high % 2 == 1 else high + 1

    return PrimeTable(limit, primes)


def save_table(table: PrimeTable, path: str) -> None:
    """Write a table as a versioned bit-packed odd-number sieve file."""
    nbits = table.limit // 2 + 1
    bitmap = bytearray((nbits + 7) // 8)
    for p in table.primes:
        if p == 2:
            continue
        j = p // 2
        bitmap[j >> 3] |= 1 << (j & 7)
    header = _CACHE_MAGIC + struct.pack("<IQQ", _CACHE_VERSION, table.limit,
                                        table.count)
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(bitmap)
    os.replace(tmp, path)


def load_table(path: str) -> PrimeTable:
    """Load a table written by save_table; rejects foreign or corrupt files."""
    with open(path, "rb") as fh:
        data = fh.read()
    head_len = len(_CACHE_MAGIC) + struct.calcsize("<IQQ")
    if len(data) < head_len or not data.startswith(_CACHE_MAGIC):
        raise InputError(f"{path}: not a prime table cache file")
    version, limit, count = struct.unpack_from("<IQQ", data, len(_CACHE_MAGIC))
    if version != _CACHE_VERSION:
        raise InputError(f"{path}: unsupported cache version {version}")
    nbits = limit // 2 + 1
    if len(data) != head_len + (nbits + 7) // 8:
        raise InputError(f"{path}: truncated or oversized cache file")
    primes = array("q", [2] if limit >= 2 else [])
    for j in range(1, nbits):
        if data[head_len + (j >> 3)] >> (j & 7) & 1:
            primes.append(2 * j + 1)
    if len(primes) != count:
        raise InputError(f"{path}: prime count mismatch, file is corrupt")
    return PrimeTable(limit, primes)

"""Characteristic-dependent operations on multiplicities.

The central operation is ``wedge``: given that two linear recurrence
sequences have roots of multiplicities i and j, ``wedge(i, j)`` is the
multiplicity of the corresponding product root.  In characteristic 0 it is
i + j - 1; in characteristic p it is computed from the p-ary digits of
i - 1 and j - 1.  ``wedge_oracle`` is a brute-force second definition
(maximising i + j + 1 over pairs with a nonvanishing binomial) kept
deliberately independent of the digit formula so the two can be checked
against each other.

Everything here is plain, exact integer arithmetic.  All functions are
pure; a ``WedgeContext`` only carries the characteristic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

__all__ = [
    "WedgeContext",
    "PExpansion",
    "binom_mod",
    "wedge",
    "wedge_details",
    "wedge_oracle",
    "wedge_lambda",
    "wedge_fold",
    "struct_const",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class WedgeContext:
    """The characteristic (0 or a prime) that parameterises the operations."""

    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def is_modular(self) -> bool:
        return self.characteristic != 0


@dataclass(frozen=True)
class PExpansion:
    """Base-p digit expansion, least-significant digit first, no trailing zeros."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError("digit out of range")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("trailing zero digit")

    @classmethod
    def of(cls, n: int, base: int) -> "PExpansion":
        if n < 0:
            raise ValueError("expansion of a negative integer")
        digits = []
        while n:
            n, d = divmod(n, base)
            digits.append(d)
        return cls(base, tuple(digits))

    @property
    def value(self) -> int:
        return sum(d * self.base**m for m, d in enumerate(self.digits))


@functools.lru_cache(maxsize=None)
def _binom_char(n: int, k: int, char: int) -> int:
    if k < 0 or k > n:
        return 0
    if char == 0:
        return math.comb(n, k)
    # Lucas: multiply digit-wise binomials of the base-p expansions.
    p = char
    out = 1
    while n or k:
        n, nd = divmod(n, p)
        k, kd = divmod(k, p)
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % p
    return out


def binom_mod(n: int, k: int, ctx: WedgeContext) -> int:
    """C(n, k) reduced in the context's characteristic (exact in char 0)."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    return _binom_char(n, k, ctx.characteristic)


def wedge(i: int, j: int, ctx: WedgeContext) -> int:
    """Multiplicity of a product of roots of multiplicities i and j."""
    if i < 0 or j < 0:
        raise ValueError("wedge arguments must be non-negative")
    if i == 0 or j == 0:
        return 0
    if not ctx.is_modular:
        return i + j - 1
    d, _ = _wedge_modular(i, j, ctx.characteristic)
    return d


def _wedge_modular(i: int, j: int, p: int) -> tuple[int, int]:
    # Returns (value, q) where q is the cutoff index of the digit formula.
    di = PExpansion.of(i - 1, p).digits
    dj = PExpansion.of(j - 1, p).digits
    length = max(len(di), len(dj))
    sums = [
        (di[m] if m < len(di) else 0) + (dj[m] if m < len(dj) else 0)
        for m in range(length)
    ]
    q = 0
    for m, s in enumerate(sums):
        if s >= p:
            q = m + 1
    d = p**q + sum(s * p**m for m, s in enumerate(sums) if m >= q)
    return d, q


@dataclass(frozen=True)
class WedgeDetails:
    """Digit-level breakdown of a modular wedge computation."""

    i: int
    j: int
    characteristic: int
    expansion_i: PExpansion | None
    expansion_j: PExpansion | None
    q: int | None
    value: int


def wedge_details(i: int, j: int, ctx: WedgeContext) -> WedgeDetails:
    """Like :func:`wedge` but keeps the expansions and cutoff for reporting."""
    value = wedge(i, j, ctx)
    if not ctx.is_modular or i == 0 or j == 0:
        return WedgeDetails(i, j, ctx.characteristic, None, None, None, value)
    p = ctx.characteristic
    _, q = _wedge_modular(i, j, p)
    return WedgeDetails(
        i, j, p, PExpansion.of(i - 1, p), PExpansion.of(j - 1, p), q, value
    )


def wedge_oracle(i: int, j: int, ctx: WedgeContext) -> int:
    """Brute-force wedge: max e + t + 1 with C(e+t, e) nonzero, e < i, t < j.

    Scans the candidate sums in descending order, which changes nothing
    about the maximum but exits early on typical inputs.  This is the test
    oracle; it never looks at digit expansions.
    """
    if i < 1 or j < 1:
        raise ValueError("wedge_oracle requires positive arguments")
    for s in range(i + j - 2, -1, -1):
        for e in range(max(0, s - j + 1), min(i - 1, s) + 1):
            if binom_mod(s, e, ctx) != 0:
                return s + 1
    raise AssertionError("unreachable: C(0, 0) never vanishes")


def wedge_lambda(t: int, s: int, lambda_is_zero: bool) -> int:
    """Multiplicity rule for a zero root of multiplicity t against a root
    of multiplicity s which is zero or not according to ``lambda_is_zero``."""
    if t < 0 or s < 0:
        raise ValueError("multiplicities must be non-negative")
    if lambda_is_zero:
        return min(t, s)
    return t if s != 0 else 0


def wedge_fold(values, ctx: WedgeContext) -> int:
    """Left fold of :func:`wedge`; the operation is associative so the
    grouping does not matter."""
    values = list(values)
    if not values:
        raise ValueError("wedge_fold of an empty list")
    acc = values[0]
    for v in values[1:]:
        acc = wedge(acc, v, ctx)
    return acc


def struct_const(e: int, t: int, m: int, ctx: WedgeContext) -> int:
    """Structure constant C(m, max(e,t)) * C(max(e,t), m - min(e,t)).

    Defined for max(e, t) <= m <= e + t; these are the coefficients of the
    expansion of a product of two binomial-coefficient sequences back into
    binomial-coefficient sequences.
    """
    if e < 0 or t < 0:
        raise ValueError("indices must be non-negative")
    hi, lo = max(e, t), min(e, t)
    if not hi <= m <= e + t:
        raise ValueError(f"m={m} outside [{hi}, {e + t}]")
    out = binom_mod(m, hi, ctx) * binom_mod(hi, m - lo, ctx)
    return out % ctx.characteristic if ctx.is_modular else out

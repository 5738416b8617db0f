"""Dense univariate polynomials over any supported field.

Coefficients are stored constant term first with no trailing zeros; the
zero polynomial has an empty coefficient tuple and degree -1.  Complete
factorisation is available over finite fields (squarefree decomposition,
then distinct-degree, then randomised equal-degree splitting driven by an
explicit seed).  Over the rationals only the zero root and rational roots
are split off; anything left of degree >= 2 is reported verbatim as an
unfactored remainder for the caller to deal with.

The text syntax accepted by ``parse_polynomial`` (and emitted by
``format_polynomial``, which round-trips) is sums/products of terms such
as ``x^3 + 2*x + 1``, ``(x-1)^2 * x``, with coefficients written as
integers, as fractions ``a/b`` over Q, or as generator-coefficient arrays
``[c0,c1,...]`` over extension fields.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import fields
from .fields import FieldDescriptor, FieldElement, element, one, zero

__all__ = [
    "Polynomial",
    "Factorization",
    "PolyParseError",
    "poly_gcd",
    "poly_lcm",
    "squarefree_decompose",
    "factor",
    "splitting_degree",
    "roots_in_splitting_field",
    "is_irreducible",
    "one_root_in_field",
    "parse_polynomial",
    "format_polynomial",
]


class Polynomial:
    """Immutable dense polynomial over a fixed field."""

    __slots__ = ("field", "_coeffs")

    def __init__(self, field: FieldDescriptor, coeffs):
        cs = [element(field, c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, *_):
        raise AttributeError("polynomials are immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field) -> "Polynomial":
        return cls(field, [])

    @classmethod
    def one(cls, field) -> "Polynomial":
        return cls(field, [1])

    @classmethod
    def x(cls, field) -> "Polynomial":
        return cls(field, [0, 1])

    @classmethod
    def monomial(cls, field, k: int, c=1) -> "Polynomial":
        return cls(field, [0] * k + [c])

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coefficients(self) -> tuple[FieldElement, ...]:
        return self._coeffs

    def coeff(self, i: int) -> FieldElement:
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return zero(self.field)

    @property
    def lead(self) -> FieldElement:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_one(self) -> bool:
        return len(self._coeffs) == 1 and self._coeffs[0].is_one

    @property
    def is_monic(self) -> bool:
        return bool(self._coeffs) and self._coeffs[-1].is_one

    def _check_field(self, other: "Polynomial"):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("polynomials over different fields")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(self.field, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [-c for c in self._coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Polynomial.zero(self.field)
        out = [zero(self.field)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Polynomial(self.field, out)

    def scale(self, c: FieldElement) -> "Polynomial":
        return Polynomial(self.field, [c * v for v in self._coeffs])

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        self._check_field(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        div = other._coeffs
        dlen = len(div)
        inv_lc = other.lead.inverse()
        q = [zero(self.field)] * max(0, len(rem) - dlen + 1)
        for i in range(len(rem) - dlen, -1, -1):
            c = rem[i + dlen - 1] * inv_lc
            if c.is_zero:
                continue
            q[i] = c
            for j, dc in enumerate(div):
                rem[i + j] = rem[i + j] - c * dc
        return Polynomial(self.field, q), Polynomial(self.field, rem[: dlen - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Polynomial":
        out = []
        for i, c in enumerate(self._coeffs[1:], start=1):
            out.append(element(self.field, i) * c)
        return Polynomial(self.field, out)

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = zero(self.field)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def normalized(self) -> tuple[FieldElement, "Polynomial"]:
        """(leading coefficient, monic polynomial); the unit of the zero
        polynomial is 1."""
        if self.is_zero:
            return one(self.field), self
        lc = self.lead
        if lc.is_one:
            return lc, self
        return lc, self.scale(lc.inverse())

    def monic(self) -> "Polynomial":
        return self.normalized()[1]

    def split_x_power(self) -> tuple[int, "Polynomial"]:
        """Write self = x^s * Q with Q(0) != 0; returns (s, Q)."""
        if self.is_zero:
            raise ValueError("the zero polynomial has no x-power decomposition")
        s = 0
        while self._coeffs[s].is_zero:
            s += 1
        return s, Polynomial(self.field, self._coeffs[s:])

    def canonical_key(self):
        return (self.degree, tuple(c.canonical_index() for c in self._coeffs))

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.field.characteristic, self.field.degree, self._coeffs))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"<{format_polynomial(self)} over {fields.format_field(self.field)}>"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    a._check_field(b)
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if a.is_zero or b.is_zero:
        return Polynomial.zero(a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


def _powmod(a: Polynomial, e: int, m: Polynomial) -> Polynomial:
    out = Polynomial.one(a.field)
    base = a % m
    while e:
        if e & 1:
            out = out * base % m
        base = base * base % m
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# Squarefree decomposition
# ---------------------------------------------------------------------------


def _pth_root_poly(f: Polynomial) -> Polynomial:
    # f = g(x^p); recover g by taking p-th roots of the surviving coefficients
    # (valid because finite fields are perfect: the root is c^(p^(k-1))).
    p = f.field.characteristic
    k = f.field.degree
    cs = f.coefficients()
    out = []
    for i in range(0, len(cs), p):
        out.append(cs[i] ** (p ** (k - 1)))
    return Polynomial(f.field, out)


def squarefree_decompose(P: Polynomial) -> list[tuple[Polynomial, int]]:
    """Pairwise-coprime squarefree parts with their multiplicities.

    Over finite fields a vanishing derivative triggers descent through
    p-th roots of the coefficients, multiplying the recovered
    multiplicities by p.
    """
    if P.is_zero:
        raise ValueError("cannot decompose the zero polynomial")
    if not P.is_monic:
        raise ValueError("monic input required")
    if P.degree == 0:
        return []
    p = P.field.characteristic
    factors: list[tuple[Polynomial, int]] = []
    f, n = P, 1
    while True:
        d = f.derivative()
        sqf = False
        if not d.is_zero:
            g = poly_gcd(f, d)
            h = f // g
            i = 1
            while not h.is_one:
                grp = poly_gcd(g, h)
                part = h // grp
                if part.degree > 0:
                    factors.append((part, i * n))
                g, h, i = g // grp, grp, i + 1
            if g.is_one:
                sqf = True
            else:
                f = g
        if sqf:
            break
        if p == 0:  # pragma: no cover - unreachable: char-0 derivatives never vanish
            raise AssertionError("derivative vanished in characteristic 0")
        f = _pth_root_poly(f)
        n *= p
    factors.sort(key=lambda fm: (fm[1], fm[0].canonical_key()))
    return factors


# ---------------------------------------------------------------------------
# Factorisation over finite fields
# ---------------------------------------------------------------------------


def _distinct_degree(f: Polynomial) -> list[tuple[Polynomial, int]]:
    # f monic squarefree; returns (product of irreducibles of degree d, d)
    q = f.field.order
    out = []
    h = Polynomial.x(f.field)
    xp = Polynomial.x(f.field)
    d = 1
    while 2 * d <= f.degree:
        h = _powmod(h, q, f)
        g = poly_gcd(f, h - xp)
        if not g.is_one:
            out.append((g, d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(field, degree: int, rng) -> Polynomial:
    coeffs = [fields.random_element(field, rng) for _ in range(degree)]
    return Polynomial(field, coeffs)


def _equal_degree(f: Polynomial, d: int, rng) -> list[Polynomial]:
    # Cantor-Zassenhaus split of a product of degree-d irreducibles.
    if f.degree == d:
        return [f]
    field = f.field
    q = field.order
    while True:
        r = _random_poly(field, f.degree, rng)
        if r.degree < 1:
            continue
        if field.characteristic == 2:
            # trace map down to GF(2); q^d = 2^(e*d)
            e = field.degree * d
            acc = r % f
            cur = r % f
            for _ in range(e - 1):
                cur = cur * cur % f
                acc = acc + cur
            g = poly_gcd(f, acc)
        else:
            h = _powmod(r, (q**d - 1) // 2, f)
            g = poly_gcd(f, h - Polynomial.one(field))
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def _divisors_of(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factors^mult) * (remainder or 1) equals the input.

    ``remainder`` is only ever set over Q: a monic polynomial of degree
    >= 2 without rational roots that this library does not factor.
    """

    unit: FieldElement
    factors: tuple[tuple[Polynomial, int], ...]
    remainder: Polynomial | None = None

    @property
    def is_complete(self) -> bool:
        return self.remainder is None

    def expand(self) -> Polynomial:
        field = self.unit.field
        out = Polynomial(field, [self.unit])
        for f, m in self.factors:
            out = out * f**m
        if self.remainder is not None:
            out = out * self.remainder
        return out

    def multiplicity_of_x(self) -> int:
        x = Polynomial.x(self.unit.field)
        for f, m in self.factors:
            if f == x:
                return m
        return 0


def factor(P: Polynomial, rng_seed: int = 0) -> Factorization:
    """Complete factorisation over finite fields; zero/rational roots over Q.

    The equal-degree stage draws randomness from ``rng_seed`` only, and the
    factor list is sorted canonically afterwards, so output is a pure
    function of (P, rng_seed) and in practice of P alone.
    """
    if P.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit, monic = P.normalized()
    if monic.degree == 0:
        return Factorization(unit, ())
    if P.field.is_rationals:
        return _factor_rationals(unit, monic)
    rng = random.Random(rng_seed)
    out = []
    for part, mult in squarefree_decompose(monic):
        for block, d in _distinct_degree(part):
            for irr in _equal_degree(block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: fm[0].canonical_key())
    return Factorization(unit, tuple(out))


def _factor_rationals(unit: FieldElement, M: Polynomial) -> Factorization:
    field = M.field
    out = []
    s, Q = M.split_x_power()
    if s:
        out.append((Polynomial.x(field), s))
    if Q.degree > 0:
        denom_lcm = 1
        for c in Q.coefficients():
            denom_lcm = denom_lcm * c.value.denominator // math.gcd(
                denom_lcm, c.value.denominator
            )
        ints = [int(c.value * denom_lcm) for c in Q.coefficients()]
        candidates = []
        for a in _divisors_of(ints[0]):
            for b in _divisors_of(ints[-1]):
                if math.gcd(a, b) == 1:
                    candidates.append(Fraction(a, b))
                    candidates.append(Fraction(-a, b))
        for r in sorted(set(candidates)):
            root = element(field, r)
            linear = Polynomial(field, [-root, one(field)])
            mult = 0
            while Q.degree > 0 and Q(root).is_zero:
                Q = Q // linear
                mult += 1
            if mult:
                out.append((linear, mult))
    remainder = Q if Q.degree >= 1 else None
    out.sort(key=lambda fm: fm[0].canonical_key())
    return Factorization(unit, tuple(out), remainder)


def splitting_degree(f: Factorization) -> int:
    """lcm of the irreducible factor degrees (relative to the coefficient
    field)."""
    if f.remainder is not None:
        raise ValueError("factorisation is incomplete (unfactored remainder)")
    d = 1
    for g, _ in f.factors:
        d = d * g.degree // math.gcd(d, g.degree)
    return d


def roots_in_splitting_field(
    f: Factorization, D: int, seed: int = 0
) -> tuple[list[tuple[FieldElement, int]], int]:
    """All nonzero roots, with multiplicities, in the degree-D extension of
    the coefficient field; the multiplicity of the zero root is returned
    separately.  Every factor degree must divide D."""
    if f.remainder is not None:
        raise ValueError("factorisation is incomplete (unfactored remainder)")
    base = f.unit.field
    zero_mult = f.multiplicity_of_x()
    if base.is_rationals:
        if D != 1:
            raise ValueError("no proper extensions of Q are supported")
        roots = [
            (-g.coeff(0), m) for g, m in f.factors if g.degree == 1 and not g.coeff(0).is_zero
        ]
        roots.sort(key=lambda rm: rm[0].canonical_index())
        return roots, zero_mult
    p = base.characteristic
    container = base if D == 1 else fields.make_field(p, base.degree * D)
    q_base = p**base.degree
    out = []
    x = Polynomial.x(base)
    for idx, (g, mult) in enumerate(f.factors):
        if g == x:
            continue
        d = g.degree
        if D % d:
            raise ValueError(f"factor degree {d} does not divide D={D}")
        if d == 1:
            root = fields.embed(-g.coeff(0), container)
            out.append((root, mult))
            continue
        small = fields.make_field(p, base.degree * d)
        lifted = Polynomial(small, [fields.embed(c, small) for c in g.coefficients()])
        first = one_root_in_field(lifted, seed=seed * 7919 + idx)
        orbit = [first]
        cur = first**q_base
        while cur != first:
            orbit.append(cur)
            cur = cur**q_base
        if len(orbit) != d:  # pragma: no cover - sanity check
            raise AssertionError("root orbit size does not match factor degree")
        for r in orbit:
            out.append((fields.embed(r, container), mult))
    out.sort(key=lambda rm: rm[0].canonical_index())
    return out, zero_mult


def one_root_in_field(f: Polynomial, seed: int = 0) -> FieldElement:
    """One root of a monic polynomial all of whose roots lie in its own
    coefficient field and are simple (deterministic for a fixed seed)."""
    field = f.field
    if field.is_rationals:
        raise ValueError("root extraction is for finite fields")
    rng = random.Random(seed)
    if field.degree > 12 and f.degree > 1:
        return _one_root_block(f, rng)
    q = field.order
    while f.degree > 1:
        r = _random_poly(field, f.degree, rng)
        if r.degree < 1:
            continue
        if field.characteristic == 2:
            acc = r % f
            cur = r % f
            for _ in range(field.degree - 1):
                cur = cur * cur % f
                acc = acc + cur
            g = poly_gcd(f, acc)
        else:
            h = _powmod(r, (q - 1) // 2, f)
            g = poly_gcd(f, h - Polynomial.one(field))
        if 0 < g.degree < f.degree:
            f = g if 2 * g.degree <= f.degree else f // g
    return -f.coeff(0)


# ---------------------------------------------------------------------------
# Vectorised polynomial arithmetic over large extension fields.
#
# A polynomial of degree n over GF(p^K) is held as an (n+1, K) int array of
# GF(p) coordinates.  Multiplication packs the rows into one long GF(p)
# vector with stride 2K-1 (products of coefficient pairs then land in
# disjoint blocks), convolves once (FFT for large sizes), and reduces all
# blocks modulo the field modulus with a single matrix product.  Remainders
# use Newton/Barrett inversion of the reversed divisor.  Only root
# extraction needs this speed; everything else uses the scalar path.
# ---------------------------------------------------------------------------


class _Blocks:
    def __init__(self, field: FieldDescriptor):
        self.field = field
        self.ops = fields._ops(field)
        self.p = field.characteristic
        self.K = field.degree
        self.W = 2 * self.K - 1
        self.red = self.ops._red  # (K-1, K) rows of x^(K+i) mod modulus
        self.two = np.array(element(field, 2).value, dtype=np.int64)

    def from_poly(self, f: Polynomial) -> np.ndarray:
        return np.array([list(c.value) for c in f.coefficients()], dtype=np.int64)

    def to_elem(self, row) -> FieldElement:
        return FieldElement(self.field, tuple(int(v) for v in row))

    @staticmethod
    def trim(a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        while n and not a[n - 1].any():
            n -= 1
        return a[:n]

    @staticmethod
    def fixlen(a: np.ndarray, rows: int) -> np.ndarray:
        if a.shape[0] == rows:
            return a
        if a.shape[0] > rows:
            return a[:rows]
        out = np.zeros((rows, a.shape[1]), dtype=np.int64)
        out[: a.shape[0]] = a
        return out

    def conv(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        n = a.size + b.size - 1
        if a.size * b.size <= 1 << 20:
            return np.convolve(a, b) % self.p
        size = 1 << (n - 1).bit_length()
        fa = np.fft.rfft(a, size)
        fb = np.fft.rfft(b, size)
        c = np.fft.irfft(fa * fb, size)[:n]
        # exact: coefficients stay far below the float53 integer range
        return np.rint(c).astype(np.int64) % self.p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ra, rb = a.shape[0], b.shape[0]
        if ra == 0 or rb == 0:
            return np.zeros((0, self.K), dtype=np.int64)
        pa = np.zeros(ra * self.W, dtype=np.int64)
        pa.reshape(ra, self.W)[:, : self.K] = a
        pb = np.zeros(rb * self.W, dtype=np.int64)
        pb.reshape(rb, self.W)[:, : self.K] = b
        c = self.conv(pa, pb)
        rows = ra + rb - 1
        # the raw convolution runs W-1 slots past the last block; that tail
        # is structurally zero (the packed inputs are zero there)
        buf = np.zeros(rows * self.W, dtype=np.int64)
        take = min(c.size, buf.size)
        buf[:take] = c[:take]
        blocks = buf.reshape(rows, self.W)
        low = blocks[:, : self.K]
        high = blocks[:, self.K :]
        if high.size:
            low = low + high @ self.red
        return self.trim(low % self.p)

    def inv_rev_series(self, f: np.ndarray, length: int) -> np.ndarray:
        # inverse of the reversed (monic) f modulo x^length
        rev = f[::-1].copy()
        inv = np.zeros((1, self.K), dtype=np.int64)
        inv[0, 0] = 1 % self.p
        if self.K > 1:
            inv[0] = np.array(self.ops.one_v, dtype=np.int64)
        t = 1
        while t < length:
            t2 = min(2 * t, length)
            fi = self.fixlen(self.mul(rev[:t2], inv), t2)
            corr = (-fi) % self.p
            corr[0] = (corr[0] + self.two) % self.p
            inv = self.fixlen(self.mul(inv, corr), t2)
            t = t2
        return self.fixlen(inv, length)

    def divmod(self, c: np.ndarray, f: np.ndarray, inv_rev: np.ndarray | None = None):
        c = self.trim(c)
        m = f.shape[0] - 1
        n = c.shape[0] - 1
        if n < m:
            return np.zeros((0, self.K), dtype=np.int64), c
        l = n - m + 1
        if inv_rev is None or inv_rev.shape[0] < l:
            inv_rev = self.inv_rev_series(f, l)
        q_rev = self.fixlen(self.mul(self.fixlen(c[::-1], l), inv_rev[:l]), l)
        q = q_rev[::-1]
        r = (self.fixlen(c, n + 1) - self.fixlen(self.mul(f, q), n + 1)) % self.p
        return self.trim(q), self.trim(r[:m])

    def gcd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = self.trim(a), self.trim(b)
        while b.shape[0]:
            lead = self.to_elem(b[-1])
            if not lead.is_one:
                inv = np.array(self.ops.inv_v(lead.value), dtype=np.int64).reshape(1, -1)
                b = self.mul(b, inv)
            _, r = self.divmod(a, b)
            a, b = b, r
        if a.shape[0]:
            lead = self.to_elem(a[-1])
            if not lead.is_one:
                inv = np.array(self.ops.inv_v(lead.value), dtype=np.int64).reshape(1, -1)
                a = self.mul(a, inv)
        return a

    def powmod(self, a: np.ndarray, e: int, f: np.ndarray) -> np.ndarray:
        inv_rev = self.inv_rev_series(f, max(1, f.shape[0] - 1))
        out = np.array(self.ops.one_v, dtype=np.int64).reshape(1, -1)
        _, base = self.divmod(a, f, inv_rev)
        while e:
            if e & 1:
                _, out = self.divmod(self.mul(out, base), f, inv_rev)
            e >>= 1
            if e:
                _, base = self.divmod(self.mul(base, base), f, inv_rev)
        return out


def _one_root_block(f: Polynomial, rng) -> FieldElement:
    field = f.field
    blocks = _Blocks(field)
    cur = blocks.from_poly(f)
    q = field.order
    one_row = np.array(blocks.ops.one_v, dtype=np.int64).reshape(1, -1)
    while cur.shape[0] > 2:
        deg = cur.shape[0] - 1
        r = np.array(
            [[rng.randrange(field.characteristic) for _ in range(blocks.K)] for _ in range(deg)],
            dtype=np.int64,
        )
        r = blocks.trim(r)
        if r.shape[0] < 2:
            continue
        if field.characteristic == 2:
            inv_rev = blocks.inv_rev_series(cur, max(1, cur.shape[0] - 1))
            _, acc = blocks.divmod(r, cur, inv_rev)
            step = acc
            for _ in range(field.degree - 1):
                _, step = blocks.divmod(blocks.mul(step, step), cur, inv_rev)
                width = max(acc.shape[0], step.shape[0])
                acc = (blocks.fixlen(acc, width) + blocks.fixlen(step, width)) % 2
                acc = blocks.trim(acc)
            g = blocks.gcd(cur, acc)
        else:
            h = blocks.powmod(r, (q - 1) // 2, cur)
            width = max(h.shape[0], 1)
            h = blocks.fixlen(h, width).copy()
            h[0] = (h[0] - one_row[0]) % field.characteristic
            g = blocks.gcd(cur, blocks.trim(h))
        if 1 < g.shape[0] < cur.shape[0]:
            if 2 * (g.shape[0] - 1) <= cur.shape[0] - 1:
                cur = g
            else:
                quo, _ = blocks.divmod(cur, g)
                cur = quo
    return -blocks.to_elem(cur[0])


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's irreducibility test over a finite field."""
    if f.field.is_rationals:
        raise ValueError("irreducibility testing over Q is out of scope")
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    q = f.field.order
    n = f.degree
    x = Polynomial.x(f.field)
    checks = set()
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            checks.add(n // d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        checks.add(n // m)
    h = x
    for j in range(1, n + 1):
        h = _powmod(h, q, f)
        if j in checks and not poly_gcd(f, h - x).is_one:
            return False
    return ((h - x) % f).is_zero


# ---------------------------------------------------------------------------
# Text syntax
# ---------------------------------------------------------------------------


class PolyParseError(ValueError):
    """Parse failure carrying the offending position for caret diagnostics."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


_SIMPLE_TOKENS = set("^*+-()[],/")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
        elif ch == "x":
            tokens.append(("X", "x", i))
            i += 1
        elif ch in _SIMPLE_TOKENS:
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, field):
        self.tokens = tokens
        self.pos = 0
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        out = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            raise PolyParseError(f"unexpected token {tok[1]!r}", tok[2])
        return out

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.primary()
        while self.peek()[0] == "^":
            self.take()
            tok = self.take("INT")
            base = base**tok[1]
        return base

    def primary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "(":
            self.take()
            inner = self.expr()
            closing = self.peek()
            if closing[0] != ")":
                raise PolyParseError("unbalanced parenthesis", closing[2])
            self.take()
            return inner
        if tok[0] == "X":
            self.take()
            return Polynomial.x(self.field)
        if tok[0] == "INT":
            self.take()
            value = tok[1]
            if self.peek()[0] == "/":
                slash = self.take()
                if not self.field.is_rationals:
                    raise PolyParseError(
                        "fractional coefficients only make sense over Q", slash[2]
                    )
                den = self.take("INT")
                if den[1] == 0:
                    raise PolyParseError("zero denominator", den[2])
                return Polynomial(self.field, [Fraction(value, den[1])])
            return Polynomial(self.field, [value])
        if tok[0] == "[":
            if not self.field.is_extension:
                raise PolyParseError(
                    "coefficient arrays only make sense over extension fields", tok[2]
                )
            self.take()
            entries = [self.take("INT")[1]]
            while self.peek()[0] == ",":
                self.take()
                entries.append(self.take("INT")[1])
            closing = self.peek()
            if closing[0] != "]":
                raise PolyParseError("unbalanced bracket", closing[2])
            self.take()
            if len(entries) > self.field.degree:
                raise PolyParseError("too many generator coefficients", tok[2])
            return Polynomial(self.field, [element(self.field, entries)])
        raise PolyParseError(f"unexpected token {tok[1]!r}", tok[2])


def parse_polynomial(text: str, field: FieldDescriptor) -> Polynomial:
    return _Parser(_tokenize(text), field).parse()


def format_polynomial(poly: Polynomial) -> str:
    if poly.is_zero:
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly.coeff(k)
        if c.is_zero:
            continue
        negative = poly.field.is_rationals and c.value < 0
        mag = -c if negative else c
        if k == 0:
            body = fields.format_element(mag)
        elif mag.is_one:
            body = "x" if k == 1 else f"x^{k}"
        else:
            xpart = "x" if k == 1 else f"x^{k}"
            body = f"{fields.format_element(mag)}*{xpart}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)

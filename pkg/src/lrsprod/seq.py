"""Recurrence sequences and the brute-force product oracle.

This module never looks at roots or splitting fields.  It generates
sequences from (characteristic polynomial, initial terms), multiplies them
termwise, and recovers minimal annihilators of the resulting spans by
exact linear algebra, which makes it a fully independent check on the
spectrum layer.

The annihilator solver works on the window matrix of the prefixes: the
first linearly dependent column gives both the minimal degree and the
recurrence coefficients in one elimination pass.  Finite-field matrices
are eliminated as numpy code arrays (native modular arithmetic for prime
fields, lookup tables for small extensions); the rationals use exact
Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import fields
from .fields import FieldDescriptor, FieldElement, element, one, zero
from .poly import Polynomial

__all__ = [
    "LinearRecurrence",
    "SequencePrefix",
    "generate",
    "impulse_basis",
    "hadamard",
    "satisfies",
    "min_annihilator_span",
    "product_space_rank",
    "oracle_product_char_poly",
    "DEFAULT_ORACLE_BUDGET",
]

DEFAULT_ORACLE_BUDGET = 512


@dataclass(frozen=True)
class LinearRecurrence:
    """A sequence given by a monic characteristic polynomial and initial terms."""

    char_poly: Polynomial
    initial: tuple[FieldElement, ...]

    def __post_init__(self):
        P = self.char_poly
        if P.is_zero or not P.is_monic or P.degree < 1:
            raise ValueError("characteristic polynomial must be monic of degree >= 1")
        if len(self.initial) != P.degree:
            raise ValueError(
                f"expected {P.degree} initial terms, got {len(self.initial)}"
            )
        for t in self.initial:
            if t.field != P.field:
                raise ValueError("initial terms outside the coefficient field")


@dataclass(frozen=True)
class SequencePrefix:
    field: FieldDescriptor
    terms: tuple[FieldElement, ...]

    def __len__(self):
        return len(self.terms)


def generate(r: LinearRecurrence, n: int) -> SequencePrefix:
    """First n terms of the recurrence."""
    if n < 0:
        raise ValueError("negative length")
    d = r.char_poly.degree
    lower = r.char_poly.coefficients()[:d]
    terms = list(r.initial[:n])
    while len(terms) < n:
        nxt = zero(r.char_poly.field)
        for k, c in enumerate(lower):
            if not c.is_zero:
                nxt = nxt - c * terms[len(terms) - d + k]
        terms.append(nxt)
    return SequencePrefix(r.char_poly.field, tuple(terms))


def impulse_basis(P: Polynomial) -> list[LinearRecurrence]:
    """The deg(P) recurrences with unit initial vectors; a basis of the
    space annihilated by P."""
    if P.is_zero or not P.is_monic or P.degree < 1:
        raise ValueError("impulse basis needs a monic polynomial of degree >= 1")
    d = P.degree
    f = P.field
    out = []
    for i in range(d):
        init = tuple(one(f) if j == i else zero(f) for j in range(d))
        out.append(LinearRecurrence(P, init))
    return out


def hadamard(a: SequencePrefix, b: SequencePrefix) -> SequencePrefix:
    """Termwise product, truncated to the shorter prefix."""
    if a.field != b.field:
        raise ValueError("prefixes over different fields")
    n = min(len(a.terms), len(b.terms))
    return SequencePrefix(a.field, tuple(x * y for x, y in zip(a.terms[:n], b.terms[:n])))


def satisfies(P: Polynomial, s: SequencePrefix) -> bool:
    """Whether the recurrence of P holds on every checkable window of s
    (vacuously true when the prefix is shorter than deg P + 1)."""
    if P.is_zero or not P.is_monic:
        raise ValueError("satisfies() takes a monic polynomial")
    d = P.degree
    coeffs = P.coefficients()
    for n in range(len(s.terms) - d):
        acc = zero(s.field)
        for k in range(d + 1):
            if not coeffs[k].is_zero:
                acc = acc + coeffs[k] * s.terms[n + k]
        if not acc.is_zero:
            return False
    return True


# ---------------------------------------------------------------------------
# Exact elimination
# ---------------------------------------------------------------------------


def _first_dependency_prime(rows: np.ndarray, p: int, stop_early: bool):
    m = rows % p
    nrows, ncols = m.shape
    pivots = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivots, nrows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            if stop_early:
                coeffs = [int(m[t, col]) for t in range(pivots)]
                return pivots, coeffs
            continue
        m[[pivots, pivot]] = m[[pivot, pivots]]
        m[pivots] = m[pivots] * pow(int(m[pivots, col]), -1, p) % p
        factors = m[:, col].copy()
        factors[pivots] = 0
        nz = np.nonzero(factors)[0]
        if nz.size:
            m[nz] = (m[nz] - factors[nz, None] * m[pivots][None, :]) % p
        pivots += 1
    return pivots, None


def _first_dependency_tabled(rows: np.ndarray, tables, stop_early: bool):
    MUL, SUB, INV = tables["MUL"], tables["SUB"], tables["INV"]
    m = rows.copy()
    nrows, ncols = m.shape
    pivots = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivots, nrows):
            if m[r, col]:
                pivot = r
                break
        if pivot is None:
            if stop_early:
                coeffs = [int(m[t, col]) for t in range(pivots)]
                return pivots, coeffs
            continue
        m[[pivots, pivot]] = m[[pivot, pivots]]
        m[pivots] = MUL[INV[m[pivots, col]]][m[pivots]]
        factors = m[:, col].copy()
        factors[pivots] = 0
        nz = np.nonzero(factors)[0]
        if nz.size:
            m[nz] = SUB[m[nz], MUL[factors[nz, None], m[pivots][None, :]]]
        pivots += 1
    return pivots, None


def _first_dependency_objects(rows: list[list], field, stop_early: bool):
    # Fractions over Q, or FieldElement fallback for untabled fields.
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    zero_v = 0 if field.is_rationals else zero(field)
    pivots = 0
    for col in range(ncols):
        pivot = None
        for r in range(pivots, nrows):
            if rows[r][col] != zero_v:
                pivot = r
                break
        if pivot is None:
            if stop_early:
                return pivots, [rows[t][col] for t in range(pivots)]
            continue
        rows[pivots], rows[pivot] = rows[pivot], rows[pivots]
        inv = (
            1 / rows[pivots][col]
            if field.is_rationals
            else rows[pivots][col].inverse()
        )
        rows[pivots] = [v * inv for v in rows[pivots]]
        prow = rows[pivots]
        for r in range(nrows):
            if r != pivots and rows[r][col] != zero_v:
                c = rows[r][col]
                rows[r] = [v - c * w for v, w in zip(rows[r], prow)]
        pivots += 1
    return pivots, None


def _elimination(prefix_rows: list[list[FieldElement]], field, stop_early: bool):
    """Shared entry point: returns (pivot count, dependency coefficients or
    None).  With stop_early the scan stops at the first dependent column
    and reports how that column combines the pivot columns."""
    if not prefix_rows:
        return 0, ([] if stop_early else None)
    if field.is_rationals:
        rows = [[t.value for t in row] for row in prefix_rows]
        return _first_dependency_objects(rows, field, stop_early)
    ops = fields._ops(field)
    if ops.size <= 256:
        codes = np.array(
            [[ops.encode(t.value) for t in row] for row in prefix_rows], dtype=np.int64
        )
        if field.degree == 1:
            return _first_dependency_prime(codes, field.characteristic, stop_early)
        return _first_dependency_tabled(codes, ops.np_tables, stop_early)
    rows = [list(row) for row in prefix_rows]
    return _first_dependency_objects(rows, field, stop_early)


def _decode_coeff(c, field) -> FieldElement:
    if isinstance(c, FieldElement):
        return c
    if field.is_rationals:
        return element(field, c)
    return FieldElement(field, fields._ops(field).decode(int(c)))


def min_annihilator_span(
    prefixes: list[SequencePrefix], degree_bound: int
) -> Polynomial:
    """Unique monic polynomial of least degree annihilating every prefix.

    Valid when the span is known a priori to be annihilated by something of
    degree <= degree_bound and every prefix carries at least 2*degree_bound
    terms.  Raises when no annihilator exists within the bound."""
    if degree_bound < 0:
        raise ValueError("negative degree bound")
    if not prefixes:
        raise ValueError("empty span")
    field = prefixes[0].field
    need = max(1, 2 * degree_bound)
    for s in prefixes:
        if s.field != field:
            raise ValueError("prefixes over different fields")
        if len(s.terms) < need:
            raise ValueError(
                f"prefix of length {len(s.terms)} is too short for bound "
                f"{degree_bound} (need {need})"
            )
    width = degree_bound + 1
    rows = []
    for s in prefixes:
        for n in range(len(s.terms) - width + 1):
            rows.append(list(s.terms[n : n + width]))
    degree, coeffs = _elimination(rows, field, stop_early=True)
    if coeffs is None:
        raise ValueError(f"no annihilator of degree <= {degree_bound}")
    # window relation: a(n+degree) = sum coeffs[k] * a(n+k)
    poly_coeffs = [-_decode_coeff(c, field) for c in coeffs] + [one(field)]
    return Polynomial(field, poly_coeffs)


def product_space_rank(bases: list[list[LinearRecurrence]], n: int) -> int:
    """Rank of the matrix of length-n prefixes of all termwise products of
    one basis element per list."""
    dims = 1
    for basis in bases:
        dims *= len(basis)
    if n < dims:
        raise ValueError(f"need at least {dims} terms to determine the rank")
    rows = [list(s.terms) for s in _product_prefixes(bases, n)]
    field = bases[0][0].char_poly.field
    rank, _ = _elimination(rows, field, stop_early=False)
    return rank


def _product_prefixes(bases, length) -> list[SequencePrefix]:
    pregen = [[generate(r, length) for r in basis] for basis in bases]
    out = []
    for combo in itertools.product(*pregen):
        acc = combo[0]
        for s in combo[1:]:
            acc = hadamard(acc, s)
        out.append(acc)
    return out


def oracle_product_char_poly(
    polys: list[Polynomial], budget: int = DEFAULT_ORACLE_BUDGET
) -> Polynomial:
    """Characteristic polynomial of the product span, from sequences alone.

    Forms all termwise products of impulse-basis sequences, recovers their
    minimal common annihilator, and certifies that its degree matches the
    rank of the product span (containment plus dimension, so the space of
    the returned polynomial is exactly the product space)."""
    if not polys:
        raise ValueError("need at least one polynomial")
    field = polys[0].field
    total = 1
    for P in polys:
        if P.field != field:
            raise ValueError("polynomials over different fields")
        if P.is_zero or not P.is_monic or P.degree < 1:
            raise ValueError("inputs must be monic and nonconstant")
        total *= P.degree
    if total > budget:
        raise ValueError(
            f"product dimension bound {total} exceeds the oracle budget {budget}"
        )
    length = 2 * total
    bases = [impulse_basis(P) for P in polys]
    prefixes = _product_prefixes(bases, length)
    result = min_annihilator_span(prefixes, total)
    rank = product_space_rank(bases, length)
    if rank != result.degree:  # pragma: no cover - internal consistency
        raise AssertionError(
            f"annihilator degree {result.degree} does not match span rank {rank}"
        )
    return result

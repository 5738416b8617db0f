"""Root spectra of recurrence spaces, with sum, product, and the m-ary
product formula.

A spectrum records everything the space of recurrences annihilated by a
monic split polynomial knows about itself: the multiplicity of the zero
root, plus a finite map from nonzero roots (living in a splitting
extension of the base field) to multiplicities.  Addition takes pointwise
maxima of multiplicities; multiplication pairs roots multiplicatively and
combines multiplicities through ``wedge``.  ``product_char_poly`` then
answers the headline question: the characteristic polynomial x^rho *
Upsilon of a termwise product of recurrence spaces, computed both by
direct class enumeration and by folding binary products, with the two
paths asserted equal.

Convention for bases (documented rather than guessed silently): the space
annihilated by (x - u)^s is spanned by n |-> C(n, j) * u^(n - j) for
0 <= j < s, the impulse sequences delta(n, j) spanning the x^s part.
Under this reading all multiplicity rules implemented here check out
against the brute-force sequence oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import fields
from .fields import DescentError, FieldDescriptor, FieldElement
from .poly import Factorization, Polynomial, factor, roots_in_splitting_field, splitting_degree
from .wedge import WedgeContext, wedge, wedge_fold, wedge_lambda

__all__ = [
    "RootSpectrum",
    "OmegaClass",
    "ProductReport",
    "from_poly",
    "to_poly",
    "spec_add",
    "spec_mul",
    "omega_classes",
    "upsilon_mary",
    "product_report",
    "product_char_poly",
    "DEFAULT_TUPLE_CAP",
]

DEFAULT_TUPLE_CAP = 10**6


class RootSpectrum:
    """Zero-root multiplicity plus a map from nonzero roots to multiplicities.

    ``splitting_degree`` is relative to the base field: entries live in the
    degree-D extension of the base (the base itself over Q or when D = 1).
    """

    __slots__ = ("base", "splitting_degree", "zero_mult", "entries", "container")

    def __init__(
        self,
        base: FieldDescriptor,
        splitting_degree: int,
        zero_mult: int,
        entries: dict[FieldElement, int],
    ):
        if splitting_degree < 1:
            raise ValueError("splitting degree must be at least 1")
        if zero_mult < 0:
            raise ValueError("negative zero multiplicity")
        container = _container(base, splitting_degree)
        for root, mult in entries.items():
            if mult < 1:
                raise ValueError("entry multiplicities must be at least 1")
            if root.field != container:
                raise ValueError("entry outside the splitting container")
            if root.is_zero:
                raise ValueError("the zero root is tracked separately")
        self.base = base
        self.splitting_degree = splitting_degree
        self.zero_mult = zero_mult
        self.entries = dict(entries)
        self.container = container

    @property
    def dimension(self) -> int:
        return self.zero_mult + sum(self.entries.values())

    @property
    def is_zero_space(self) -> bool:
        return self.zero_mult == 0 and not self.entries

    def items_sorted(self) -> list[tuple[FieldElement, int]]:
        return sorted(self.entries.items(), key=lambda kv: kv[0].canonical_index())

    def __eq__(self, other):
        if not isinstance(other, RootSpectrum):
            return NotImplemented
        return (
            self.base == other.base
            and self.splitting_degree == other.splitting_degree
            and self.zero_mult == other.zero_mult
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash(
            (
                self.base,
                self.splitting_degree,
                self.zero_mult,
                tuple(sorted((k.canonical_index(), m) for k, m in self.entries.items())),
            )
        )

    def __repr__(self):
        inner = ", ".join(
            f"{fields.format_element(k)}:{m}" for k, m in self.items_sorted()
        )
        return (
            f"RootSpectrum({fields.format_field(self.base)}, D={self.splitting_degree},"
            f" zero^{self.zero_mult}, {{{inner}}})"
        )

    def to_json_dict(self) -> dict:
        return {
            "field": fields.format_field(self.base),
            "splitting_degree": self.splitting_degree,
            "zero_multiplicity": self.zero_mult,
            "entries": [
                [fields.format_element(k), m] for k, m in self.items_sorted()
            ],
        }


@dataclass(frozen=True)
class OmegaClass:
    """A group of root tuples sharing a product value.

    ``best`` is the maximum over the class of the folded wedge of the
    tuple's multiplicities; ``witness`` is one tuple attaining it.
    """

    product_value: FieldElement
    best: int
    witness: tuple[FieldElement, ...]
    tuple_count: int


def _container(base: FieldDescriptor, D: int) -> FieldDescriptor:
    if base.is_rationals:
        if D != 1:
            raise ValueError("no proper extensions of Q are supported")
        return base
    if D == 1:
        return base
    return fields.make_field(base.characteristic, base.degree * D)


def _reembed(spec: RootSpectrum, D: int) -> RootSpectrum:
    if D == spec.splitting_degree:
        return spec
    if D % spec.splitting_degree:
        raise ValueError("can only re-embed into a multiple splitting degree")
    container = _container(spec.base, D)
    entries = {fields.embed(k, container): m for k, m in spec.entries.items()}
    return RootSpectrum(spec.base, D, spec.zero_mult, entries)


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


# ---------------------------------------------------------------------------
# Polynomial <-> spectrum
# ---------------------------------------------------------------------------


def _spectrum_from_factorization(
    fac: Factorization, D: int, seed: int
) -> RootSpectrum:
    base = fac.unit.field
    roots, zero_mult = roots_in_splitting_field(fac, D, seed=seed)
    return RootSpectrum(base, D, zero_mult, dict(roots))


def from_poly(P: Polynomial, seed: int = 0) -> RootSpectrum:
    """Spectrum of the space annihilated by monic P (must split: over Q
    this means rational roots only)."""
    if P.is_zero or not P.is_monic:
        raise ValueError("from_poly requires a monic polynomial")
    fac = factor(P, rng_seed=seed)
    if fac.remainder is not None:
        raise ValueError(
            "polynomial does not split into rational roots; "
            "use the sequence oracle for such inputs"
        )
    D = splitting_degree(fac)
    spec = _spectrum_from_factorization(fac, D, seed)
    if spec.dimension != P.degree:
        raise AssertionError("root bookkeeping lost dimensions")  # pragma: no cover
    return spec


def to_poly(spec: RootSpectrum) -> Polynomial:
    """Monic polynomial over the base field whose spectrum is ``spec``.

    Requires the entries to be closed under Frobenius orbits over the base
    with constant multiplicity along each orbit; violations raise
    DescentError.
    """
    base = spec.base
    out = Polynomial.monomial(base, spec.zero_mult)
    if base.is_rationals:
        for root, mult in spec.items_sorted():
            out = out * Polynomial(base, [-root, fields.one(base)]) ** mult
        return out
    seen: set[FieldElement] = set()
    for root, mult in spec.items_sorted():
        if root in seen:
            continue
        orbit = fields.frobenius_orbit(root, over=base)
        for conj in orbit:
            if spec.entries.get(conj) != mult:
                raise DescentError(
                    "spectrum is not closed under conjugation over the base "
                    f"field at root {fields.format_element(conj)}"
                )
            seen.add(conj)
        minimal = fields.minimal_poly_of_element(root, base)
        out = out * minimal**mult
    return out


# ---------------------------------------------------------------------------
# Semiring operations
# ---------------------------------------------------------------------------


def _common(a: RootSpectrum, b: RootSpectrum) -> tuple[RootSpectrum, RootSpectrum]:
    if a.base != b.base:
        raise ValueError("spectra over different base fields")
    D = _lcm([a.splitting_degree, b.splitting_degree])
    return _reembed(a, D), _reembed(b, D)


def spec_add(a: RootSpectrum, b: RootSpectrum) -> RootSpectrum:
    """Sum of spaces: pointwise maximum of multiplicities."""
    a, b = _common(a, b)
    entries = dict(a.entries)
    for root, mult in b.entries.items():
        if entries.get(root, 0) < mult:
            entries[root] = mult
    return RootSpectrum(
        a.base, a.splitting_degree, max(a.zero_mult, b.zero_mult), entries
    )


def spec_mul(a: RootSpectrum, b: RootSpectrum) -> RootSpectrum:
    """Product of spaces: roots multiply, multiplicities combine by wedge.

    The zero root follows the interaction rule: against the other factor's
    zero part it contributes min of the multiplicities, and it survives at
    its own multiplicity whenever the other factor has any nonzero root.
    """
    a, b = _common(a, b)
    ctx = WedgeContext(a.base.characteristic)
    entries: dict[FieldElement, int] = {}
    for lam, i in a.entries.items():
        for mu, j in b.entries.items():
            root = lam * mu
            mult = wedge(i, j, ctx)
            if entries.get(root, 0) < mult:
                entries[root] = mult
    dim_a = sum(a.entries.values())
    dim_b = sum(b.entries.values())
    zero_mult = max(
        wedge_lambda(a.zero_mult, dim_b, False),
        wedge_lambda(b.zero_mult, dim_a, False),
        min(a.zero_mult, b.zero_mult),
    )
    return RootSpectrum(a.base, a.splitting_degree, zero_mult, entries)


def omega_classes(
    specs: list[RootSpectrum], cap: int = DEFAULT_TUPLE_CAP
) -> tuple[list[OmegaClass], int, FieldDescriptor]:
    """Enumerate all root tuples (one root per spectrum), grouped by
    product value.  Returns (classes, common splitting degree, container)."""
    if not specs:
        raise ValueError("need at least one spectrum")
    base = specs[0].base
    for s in specs:
        if s.base != base:
            raise ValueError("spectra over different base fields")
        if s.zero_mult:
            raise ValueError("m-ary products take spectra without a zero part")
    D = _lcm([s.splitting_degree for s in specs])
    specs = [_reembed(s, D) for s in specs]
    container = _container(base, D)
    total = 1
    for s in specs:
        total *= len(s.entries)
    if total > cap:
        raise ValueError(
            f"{total} root tuples exceed the enumeration cap {cap}; "
            "fold spec_mul over the list instead"
        )
    ctx = WedgeContext(base.characteristic)
    best: dict[FieldElement, tuple[int, tuple[FieldElement, ...], int]] = {}
    for combo in itertools.product(*(s.items_sorted() for s in specs)):
        roots = tuple(r for r, _ in combo)
        mults = [m for _, m in combo]
        value = roots[0]
        for r in roots[1:]:
            value = value * r
        folded = wedge_fold(mults, ctx)
        prev = best.get(value)
        if prev is None:
            best[value] = (folded, roots, 1)
        else:
            score, witness, count = prev
            if folded > score:
                best[value] = (folded, roots, count + 1)
            else:
                best[value] = (score, witness, count + 1)
    classes = [
        OmegaClass(value, score, witness, count)
        for value, (score, witness, count) in best.items()
    ]
    classes.sort(key=lambda c: c.product_value.canonical_index())
    return classes, D, container


def upsilon_mary(
    specs: list[RootSpectrum], cap: int = DEFAULT_TUPLE_CAP
) -> RootSpectrum:
    """Direct m-ary product of zero-free spectra via class enumeration.

    A list containing an empty spectrum yields the empty spectrum (the
    product space collapses)."""
    classes, D, _ = omega_classes(specs, cap)
    entries = {c.product_value: c.best for c in classes}
    return RootSpectrum(specs[0].base, D, 0, entries)


# ---------------------------------------------------------------------------
# The product theorem, both paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductReport:
    """Everything the product computation knows, for reporting."""

    field: FieldDescriptor
    inputs: tuple[Polynomial, ...]
    x_powers: tuple[int, ...]
    nonzero_parts: tuple[Polynomial, ...]
    theta: tuple[int, ...]  # 1-based indices with trivial nonzero part
    rho: int
    classes: tuple[OmegaClass, ...]
    upsilon_spectrum: RootSpectrum
    upsilon: Polynomial
    result: Polynomial


def product_report(
    polys: list[Polynomial], seed: int = 0, cap: int = DEFAULT_TUPLE_CAP
) -> ProductReport:
    """Characteristic polynomial of the termwise product space.

    Splits every input as x^s * Q, applies the rho rule to the x-powers,
    computes Upsilon by class enumeration over the common splitting field,
    and cross-checks the result against a fold of binary products before
    returning."""
    if not polys:
        raise ValueError("need at least one polynomial")
    base = polys[0].field
    for P in polys:
        if P.field != base:
            raise ValueError("polynomials over different fields")
        if P.is_zero or not P.is_monic:
            raise ValueError("inputs must be monic")
        if P.degree < 1:
            raise ValueError("inputs must be nonconstant")
    split = [P.split_x_power() for P in polys]
    x_powers = tuple(s for s, _ in split)
    nonzero_parts = tuple(q for _, q in split)
    theta = tuple(i + 1 for i, (_, q) in enumerate(split) if q.degree == 0)
    if theta:
        rho = min(x_powers[i - 1] for i in theta)
    else:
        rho = max(x_powers)
    facs = []
    for q in nonzero_parts:
        fac = factor(q, rng_seed=seed)
        if fac.remainder is not None:
            raise ValueError(
                "input does not split into rational roots; "
                "use the sequence oracle for such inputs"
            )
        facs.append(fac)
    T = _lcm([splitting_degree(fac) for fac in facs])
    q_specs = [_spectrum_from_factorization(fac, T, seed) for fac in facs]
    classes, _, _ = omega_classes(q_specs, cap)
    upsilon_spec = RootSpectrum(base, T, 0, {c.product_value: c.best for c in classes})
    upsilon = to_poly(upsilon_spec)
    result = Polynomial.monomial(base, rho) * upsilon
    # Independent fold over binary products, kept in the same container so
    # the comparison is structural.
    folded = RootSpectrum(base, T, x_powers[0], q_specs[0].entries)
    for s, q_spec in zip(x_powers[1:], q_specs[1:]):
        folded = spec_mul(folded, RootSpectrum(base, T, s, q_spec.entries))
    direct = RootSpectrum(base, T, rho, upsilon_spec.entries)
    if folded != direct:  # pragma: no cover - internal consistency
        raise AssertionError("fold of binary products disagrees with the rho rule")
    return ProductReport(
        field=base,
        inputs=tuple(polys),
        x_powers=x_powers,
        nonzero_parts=nonzero_parts,
        theta=theta,
        rho=rho,
        classes=tuple(classes),
        upsilon_spectrum=upsilon_spec,
        upsilon=upsilon,
        result=result,
    )


def product_char_poly(
    polys: list[Polynomial], seed: int = 0, cap: int = DEFAULT_TUPLE_CAP
) -> Polynomial:
    return product_report(polys, seed=seed, cap=cap).result

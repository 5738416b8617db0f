"""Exact characteristic polynomials for termwise products of linear
recurrence sequences, over Q and over finite fields GF(p^k).

Two independent computation paths are provided: a root-spectrum formula
(``spectrum.product_char_poly``) and a brute-force sequence oracle
(``seq.oracle_product_char_poly``); the ``verify`` CLI subcommand runs
both and compares.
"""

from .fields import (
    DescentError,
    FieldDescriptor,
    FieldElement,
    descend,
    element,
    embed,
    format_element,
    format_field,
    frobenius_orbit,
    make_field,
    minimal_poly_of_element,
    parse_field,
    rationals,
)
from .poly import (
    Factorization,
    PolyParseError,
    Polynomial,
    factor,
    format_polynomial,
    is_irreducible,
    parse_polynomial,
    poly_gcd,
    poly_lcm,
    roots_in_splitting_field,
    splitting_degree,
    squarefree_decompose,
)
from .seq import (
    LinearRecurrence,
    SequencePrefix,
    generate,
    hadamard,
    impulse_basis,
    min_annihilator_span,
    oracle_product_char_poly,
    product_space_rank,
    satisfies,
)
from .spectrum import (
    OmegaClass,
    RootSpectrum,
    from_poly,
    omega_classes,
    product_char_poly,
    product_report,
    spec_add,
    spec_mul,
    to_poly,
    upsilon_mary,
)
from .wedge import (
    PExpansion,
    WedgeContext,
    binom_mod,
    struct_const,
    wedge,
    wedge_fold,
    wedge_lambda,
    wedge_oracle,
)

__version__ = "0.1.0"

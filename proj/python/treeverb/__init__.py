from ._treeverb import (
    Automorphism,
    DomainError,
    ParseError,
    alt_exponent,
    commutator_form,
    conjugator_to_odometer,
    decompose,
    order_two,
    selftest,
    solve_conjugacy,
    verify_chain,
)

__all__ = [
    "Automorphism",
    "DomainError",
    "ParseError",
    "alt_exponent",
    "commutator_form",
    "conjugator_to_odometer",
    "decompose",
    "order_two",
    "selftest",
    "solve_conjugacy",
    "verify_chain",
]

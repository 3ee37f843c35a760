"""Python bindings for the sqf library."""

from ._core import (
    CertificateFormatError,
    bs_derivation_passes,
    classify_square,
    duplicate_search,
    fields_equal,
    fundamental_unit,
    galois_orbit_check,
    integer_points,
    issue_certificate,
    parse_certificate,
    quad_invariant,
    root_number_E1,
    root_number_E3,
    run,
    theorem_hypotheses,
    u_term,
    uv_mod,
    v_term,
    verify_certificate,
)

__all__ = [
    "CertificateFormatError",
    "bs_derivation_passes",
    "classify_square",
    "duplicate_search",
    "fields_equal",
    "fundamental_unit",
    "galois_orbit_check",
    "integer_points",
    "issue_certificate",
    "parse_certificate",
    "quad_invariant",
    "root_number_E1",
    "root_number_E3",
    "run",
    "theorem_hypotheses",
    "u_term",
    "uv_mod",
    "v_term",
    "verify_certificate",
]

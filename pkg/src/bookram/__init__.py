"""Toolkit for monochromatic book statistics on coloured complete graphs:
exact maximum-book extraction, small book Ramsey numbers by exhaustive
search, SAT export, lower-bound constructions, inequality certification,
and a desk-scale density-partition pipeline."""

from .colouring import (
    BLUE,
    RED,
    BookCertificate,
    Colouring,
    FormatError,
    HyperColouring,
    common_pages,
    count_mono_cliques,
    emit_certificate,
    emit_colouring,
    emit_hypercolouring,
    mono_cliques,
    parse_certificate,
    parse_colouring,
    parse_hypercolouring,
)
from .books import (
    BookProfile,
    Verdict,
    has_mono_book,
    local_profile,
    max_book,
    verify_certificate,
)
from .search import Budget, ExactResult, WitnessResult, find_witness, ramsey_book

__all__ = [
    "BLUE",
    "RED",
    "BookCertificate",
    "BookProfile",
    "Budget",
    "Colouring",
    "ExactResult",
    "FormatError",
    "HyperColouring",
    "Verdict",
    "WitnessResult",
    "common_pages",
    "count_mono_cliques",
    "emit_certificate",
    "emit_colouring",
    "emit_hypercolouring",
    "find_witness",
    "has_mono_book",
    "local_profile",
    "max_book",
    "mono_cliques",
    "parse_certificate",
    "parse_colouring",
    "parse_hypercolouring",
    "ramsey_book",
    "verify_certificate",
]

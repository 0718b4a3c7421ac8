"""lcpinfer: reconstruct strings and cyclic string multisets from LCP arrays."""

from .cyclic import (
    OMEGA,
    CyclicMultiset,
    Position,
    bwt,
    canonical_rotation,
    ibwt,
    lcp_array,
    lcp_array_from_bwt,
    parse_lcp,
    render_lcp,
    standard_permutation,
    suffix_array,
)

__version__ = "0.1.0"

__all__ = [
    "OMEGA",
    "CyclicMultiset",
    "Position",
    "bwt",
    "canonical_rotation",
    "ibwt",
    "lcp_array",
    "lcp_array_from_bwt",
    "parse_lcp",
    "render_lcp",
    "standard_permutation",
    "suffix_array",
    "__version__",
]

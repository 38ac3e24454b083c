"""Spectral analysis of quasi-cyclic and nested-circulant parity-check matrices.

The eigenvalues of H^T H for a QC code come from r small L x L Hermitian
problems (one per r-th root of unity) instead of one rL x rL problem; the two
largest drive the AWGNC pseudo-weight and minimum-distance lower bounds.
"""

from .bounds import (
    BoundReport,
    EqualityReport,
    SpectrumSummary,
    awgnc_pw_bound,
    bound_report,
    check_equality_condition,
    check_necessary_condition,
    cone_membership,
    pseudo_weight,
    summarize,
    tanner_dmin_bound,
)
from .linalg import Spectrum, block_circulant_spectrum, gram, herm_eig, sym_eig
from .nested import NestedCirculant, nested_detect, nested_expand, nested_gram, nested_spectrum
from .polyring import (
    IntPoly,
    cyclic_autocorrelation,
    cyclic_mul,
    eval_at_root,
    exact_divide,
    parse_poly,
    reciprocal,
)
from .qc import (
    CodeProfile,
    Layout,
    PolyMatrix,
    ScalarMatrix,
    circulant_spectrum,
    expand_scalar,
    gram_spectrum_dense,
    gram_spectrum_reduced,
    parse_poly_matrix,
    profile,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CodeProfile",
    "EqualityReport",
    "IntPoly",
    "Layout",
    "NestedCirculant",
    "PolyMatrix",
    "ScalarMatrix",
    "Spectrum",
    "SpectrumSummary",
    "awgnc_pw_bound",
    "block_circulant_spectrum",
    "bound_report",
    "check_equality_condition",
    "check_necessary_condition",
    "circulant_spectrum",
    "cone_membership",
    "cyclic_autocorrelation",
    "cyclic_mul",
    "eval_at_root",
    "exact_divide",
    "expand_scalar",
    "gram",
    "gram_spectrum_dense",
    "gram_spectrum_reduced",
    "herm_eig",
    "nested_detect",
    "nested_expand",
    "nested_gram",
    "nested_spectrum",
    "parse_poly",
    "parse_poly_matrix",
    "profile",
    "pseudo_weight",
    "reciprocal",
    "summarize",
    "sym_eig",
    "tanner_dmin_bound",
]

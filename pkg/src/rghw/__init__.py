"""Cyclic codes with two nonzeros and their relative generalized Hamming weights."""

from .charsum import (
    CharacterHandle,
    char_eval,
    gauss_sum,
    incomplete_character_sum,
    nj_via_charsum,
    orthogonality_sum,
    unit_roots,
)
from .closed_forms import (
    binary_pair_nj,
    detect_family,
    evaluate_closed_form,
    index_one_qminus1_nj,
    index_qminus1_one_nj,
)
from .codes import (
    CodeSpec,
    Codeword,
    basis_codewords,
    build_code,
    codeword,
    parity_check_polynomial,
    subcode_codeword,
    support,
    to_codeword_basis,
)
from .errors import RghwError
from .gf import (
    DEFAULT_SIZE_CAP,
    Embedding,
    FieldElement,
    FieldTable,
    Polynomial,
    build_field,
    element_order,
    embed_subfield,
    field_for_size,
    minimal_polynomial,
    trace,
)
from .subspaces import (
    SubspaceBasis,
    dual_subspace,
    enumerate_subspaces,
    gaussian_binomial,
    intersect_with_cyclic_group,
    member_matrix,
    project,
    subspace_from_rows,
)
from .weights import (
    DEFAULT_ENUM_CAP,
    RghwReport,
    RouteOutcome,
    compute_report,
    ghw_bruteforce,
    mj_dual_count,
    nj_of_subspace,
    rghw_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterHandle",
    "CodeSpec",
    "Codeword",
    "DEFAULT_ENUM_CAP",
    "DEFAULT_SIZE_CAP",
    "Embedding",
    "FieldElement",
    "FieldTable",
    "Polynomial",
    "RghwError",
    "RghwReport",
    "RouteOutcome",
    "SubspaceBasis",
    "basis_codewords",
    "binary_pair_nj",
    "build_code",
    "build_field",
    "char_eval",
    "codeword",
    "compute_report",
    "detect_family",
    "dual_subspace",
    "element_order",
    "embed_subfield",
    "enumerate_subspaces",
    "evaluate_closed_form",
    "field_for_size",
    "gauss_sum",
    "gaussian_binomial",
    "ghw_bruteforce",
    "incomplete_character_sum",
    "intersect_with_cyclic_group",
    "member_matrix",
    "minimal_polynomial",
    "mj_dual_count",
    "nj_of_subspace",
    "nj_via_charsum",
    "orthogonality_sum",
    "parity_check_polynomial",
    "project",
    "rghw_bruteforce",
    "subcode_codeword",
    "subspace_from_rows",
    "support",
    "to_codeword_basis",
    "trace",
    "unit_roots",
]
